#pragma once

#include <string>

#include "qclif/errors.hpp"
#include "qclif/lang/ast.hpp"

namespace qclif::lang {

/// Project out the non-phase component of a Pc-expression as a C-expression
/// over the same free variable.
inline CExprPtr psi_of(const PExprPtr& e) {
    switch (e->kind) {
        case PExpr::Kind::Var: return cvar(e->name, e->loc);
        case PExpr::Kind::Let: return clet(e->name, psi_of(e->p1), psi_of(e->p2), e->loc);
        case PExpr::Kind::Embed: return e->ce;
        case PExpr::Kind::Phase: return psi_of(e->p1);
        case PExpr::Kind::Star: return cadd(psi_of(e->p1), psi_of(e->p2), e->loc);
        case PExpr::Kind::Pow: return cscale(cconst(e->r), psi_of(e->p1), e->loc);
        case PExpr::Kind::CaseXZ: {
            std::string x1 = fresh_name("px");
            std::string x2 = fresh_name("pz");
            return ccase(psi_of(e->p1), x1, cscale(cvar(x1), psi_of(e->p2)), x2,
                         cscale(cvar(x2), psi_of(e->p3)), e->loc);
        }
        case PExpr::Kind::Inj: {
            CExprPtr inner = psi_of(e->p1);
            if (e->r == 1) return cpair(inner, czero(bar(e->inj_type->b)), e->loc);
            return cpair(czero(bar(e->inj_type->a)), inner, e->loc);
        }
        case PExpr::Kind::CaseSum:
            return ccase(psi_of(e->p1), e->name, psi_of(e->p2), e->name2, psi_of(e->p3), e->loc);
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

/// The closed term omega_sigma : sigma -o sigma -o Unit computing the
/// symplectic form, built by induction on the symplectic type.
inline CExprPtr omega_type(const CTypePtr& sigma) {
    if (!is_symplectic_type(sigma))
        fail(ErrorCode::TypeMismatch, "omega_type: not a symplectic type");
    std::string x = fresh_name("w");
    std::string y = fresh_name("w");
    bool leaf = sigma->a->kind == CType::Kind::Unit;
    std::string x1 = fresh_name("w"), x2 = fresh_name("w");
    std::string y1 = fresh_name("w"), y2 = fresh_name("w");
    CExprPtr body;
    if (leaf) {
        // omega [rx,rz] [rx',rz'] = rx' rz - rx rz'  (realized as rz.rx' + (-1).(rx.rz'))
        CExprPtr when_xx = czero(CType::unit());
        CExprPtr when_xz = cscale(cconst(-1), cscale(cvar(x1), cvar(y2)));
        CExprPtr when_zx = cscale(cvar(x2), cvar(y1));
        CExprPtr when_zz = czero(CType::unit());
        CExprPtr inner_x = ccase(cvar(y), y1, when_xx, y2, when_xz);
        CExprPtr inner_z = ccase(cvar(y), y1, when_zx, y2, when_zz);
        body = ccase(cvar(x), x1, inner_x, x2, inner_z);
    } else {
        CExprPtr om1 = omega_type(sigma->a);
        CExprPtr om2 = omega_type(sigma->b);
        CExprPtr when_11 = capp(capp(om1, cvar(x1)), cvar(y1));
        CExprPtr when_12 = czero(CType::unit());
        CExprPtr when_21 = czero(CType::unit());
        CExprPtr when_22 = capp(capp(om2, cvar(x2)), cvar(y2));
        CExprPtr inner_1 = ccase(cvar(y), y1, when_11, y2, when_12);
        CExprPtr inner_2 = ccase(cvar(y), y1, when_21, y2, when_22);
        body = ccase(cvar(x), x1, inner_1, x2, inner_2);
    }
    return clam(x, sigma, clam(y, sigma, body));
}

}  // namespace qclif::lang
