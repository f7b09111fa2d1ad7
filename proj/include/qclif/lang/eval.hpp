#pragma once

#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "qclif/dim.hpp"
#include "qclif/errors.hpp"
#include "qclif/lang/ast.hpp"
#include "qclif/pauli.hpp"
#include "qclif/vec.hpp"

namespace qclif::lang {

struct CValue;
using CValuePtr = std::shared_ptr<const CValue>;

/// Normal forms of C-expressions: a scalar, a pair, or a lambda term.
struct CValue {
    enum class Kind { Scalar, Pair, Lambda };
    Kind kind;
    int r = 0;
    CValuePtr a, b;
    CExprPtr lam;

    static CValuePtr scalar(int r, const Dim& dim) {
        return std::make_shared<CValue>(CValue{Kind::Scalar, mod_reduce(r, dim.d), nullptr, nullptr, nullptr});
    }
    static CValuePtr pair(CValuePtr x, CValuePtr y) {
        return std::make_shared<CValue>(CValue{Kind::Pair, 0, std::move(x), std::move(y), nullptr});
    }
    static CValuePtr lambda(CExprPtr lam) {
        return std::make_shared<CValue>(CValue{Kind::Lambda, 0, nullptr, nullptr, std::move(lam)});
    }
};

inline bool value_equal(const CValuePtr& x, const CValuePtr& y) {
    if (x->kind != y->kind) return false;
    switch (x->kind) {
        case CValue::Kind::Scalar: return x->r == y->r;
        case CValue::Kind::Pair: return value_equal(x->a, y->a) && value_equal(x->b, y->b);
        case CValue::Kind::Lambda: return x->lam == y->lam;  // identity only
    }
    return false;
}

inline std::string to_string(const CValuePtr& v) {
    switch (v->kind) {
        case CValue::Kind::Scalar: return std::to_string(v->r);
        case CValue::Kind::Pair: return "[" + to_string(v->a) + "," + to_string(v->b) + "]";
        case CValue::Kind::Lambda: return "<lambda>";
    }
    return "?";
}

inline CExprPtr value_to_expr(const CValuePtr& v) {
    switch (v->kind) {
        case CValue::Kind::Scalar: return cconst(v->r);
        case CValue::Kind::Pair: return cpair(value_to_expr(v->a), value_to_expr(v->b));
        case CValue::Kind::Lambda: return v->lam;
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

/// Step budget for the evaluators.  Exhaustion signals an implementation
/// bug, never a legal program.
struct Fuel {
    long long remaining = 10'000'000;
    void tick() {
        if (--remaining < 0)
            fail(ErrorCode::FuelExhausted, "evaluator fuel exhausted (internal error)");
    }
};

inline long long default_fuel() {
    if (const char* env = std::getenv("QCLIF_FUEL")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 10'000'000;
}

/// Capture-free substitution of a closed expression for a variable.
inline CExprPtr subst(const CExprPtr& e, const std::string& x, const CExprPtr& v) {
    switch (e->kind) {
        case CExpr::Kind::Var:
            return e->name == x ? v : e;
        case CExpr::Kind::Const:
        case CExpr::Kind::Zero:
            return e;
        case CExpr::Kind::Let: {
            CExprPtr bound = subst(e->a, x, v);
            CExprPtr body = e->name == x ? e->b : subst(e->b, x, v);
            return clet(e->name, bound, body, e->loc);
        }
        case CExpr::Kind::Scale: return cscale(subst(e->a, x, v), subst(e->b, x, v), e->loc);
        case CExpr::Kind::Add: return cadd(subst(e->a, x, v), subst(e->b, x, v), e->loc);
        case CExpr::Kind::Pair: return cpair(subst(e->a, x, v), subst(e->b, x, v), e->loc);
        case CExpr::Kind::Case: {
            CExprPtr scrut = subst(e->a, x, v);
            CExprPtr b1 = e->name == x ? e->b : subst(e->b, x, v);
            CExprPtr b2 = e->name2 == x ? e->c : subst(e->c, x, v);
            return ccase(scrut, e->name, b1, e->name2, b2, e->loc);
        }
        case CExpr::Kind::Lam:
            if (e->name == x) return e;
            return clam(e->name, e->type, subst(e->a, x, v), e->loc);
        case CExpr::Kind::App: return capp(subst(e->a, x, v), subst(e->b, x, v), e->loc);
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

inline CValuePtr zero_value(const CTypePtr& t, const Dim& dim) {
    switch (t->kind) {
        case CType::Kind::Unit: return CValue::scalar(0, dim);
        case CType::Kind::Sum: return CValue::pair(zero_value(t->a, dim), zero_value(t->b, dim));
        case CType::Kind::Arrow: {
            std::string x = fresh_name("z");
            return CValue::lambda(clam(x, t->a, czero(t->b)));
        }
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

inline CValuePtr value_add(const CValuePtr& x, const CValuePtr& y, const Dim& dim) {
    if (x->kind != y->kind) fail(ErrorCode::TypeMismatch, "adding values of different shapes");
    switch (x->kind) {
        case CValue::Kind::Scalar: return CValue::scalar(mod_add(x->r, y->r, dim.d), dim);
        case CValue::Kind::Pair:
            return CValue::pair(value_add(x->a, y->a, dim), value_add(x->b, y->b, dim));
        case CValue::Kind::Lambda: {
            std::string fx = fresh_name("s");
            CExprPtr b1 = subst(x->lam->a, x->lam->name, cvar(fx));
            CExprPtr b2 = subst(y->lam->a, y->lam->name, cvar(fx));
            return CValue::lambda(clam(fx, x->lam->type, cadd(b1, b2)));
        }
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

inline CValuePtr value_scale(int r, const CValuePtr& v, const Dim& dim) {
    switch (v->kind) {
        case CValue::Kind::Scalar: return CValue::scalar(mod_mul(r, v->r, dim.d), dim);
        case CValue::Kind::Pair:
            return CValue::pair(value_scale(r, v->a, dim), value_scale(r, v->b, dim));
        case CValue::Kind::Lambda:
            return CValue::lambda(clam(v->lam->name, v->lam->type,
                                       cscale(cconst(mod_reduce(r, dim.d)), v->lam->a)));
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

/// Big-step normalizer for closed C-expressions.
inline CValuePtr eval_c(const CExprPtr& e, const Dim& dim, Fuel& fuel) {
    fuel.tick();
    switch (e->kind) {
        case CExpr::Kind::Var:
            fail(ErrorCode::UnboundVariable, "free variable '" + e->name + "' during evaluation");
        case CExpr::Kind::Const: return CValue::scalar(e->r, dim);
        case CExpr::Kind::Zero: return zero_value(e->type, dim);
        case CExpr::Kind::Let: {
            CValuePtr v = eval_c(e->a, dim, fuel);
            return eval_c(subst(e->b, e->name, value_to_expr(v)), dim, fuel);
        }
        case CExpr::Kind::Scale: {
            CValuePtr s = eval_c(e->a, dim, fuel);
            if (s->kind != CValue::Kind::Scalar)
                fail(ErrorCode::TypeMismatch, "scalar position did not evaluate to Unit");
            return value_scale(s->r, eval_c(e->b, dim, fuel), dim);
        }
        case CExpr::Kind::Add:
            return value_add(eval_c(e->a, dim, fuel), eval_c(e->b, dim, fuel), dim);
        case CExpr::Kind::Pair:
            return CValue::pair(eval_c(e->a, dim, fuel), eval_c(e->b, dim, fuel));
        case CExpr::Kind::Case: {
            CValuePtr s = eval_c(e->a, dim, fuel);
            if (s->kind != CValue::Kind::Pair)
                fail(ErrorCode::TypeMismatch, "case scrutinee is not a direct sum value");
            CValuePtr v1 = eval_c(subst(e->b, e->name, value_to_expr(s->a)), dim, fuel);
            CValuePtr v2 = eval_c(subst(e->c, e->name2, value_to_expr(s->b)), dim, fuel);
            return value_add(v1, v2, dim);
        }
        case CExpr::Kind::Lam: return CValue::lambda(e);
        case CExpr::Kind::App: {
            CValuePtr f = eval_c(e->a, dim, fuel);
            if (f->kind != CValue::Kind::Lambda)
                fail(ErrorCode::TypeMismatch, "applying a non-function value");
            CValuePtr v = eval_c(e->b, dim, fuel);
            return eval_c(subst(f->lam->a, f->lam->name, value_to_expr(v)), dim, fuel);
        }
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

inline CValuePtr eval_c(const CExprPtr& e, const Dim& dim) {
    Fuel fuel{default_fuel()};
    return eval_c(e, dim, fuel);
}

// ---- value <-> phase-space vector correspondence -----------------------

/// Flatten a first-order value of a symplectic type into the interlaced
/// vector x_1 z_1 ... x_n z_n.
inline void flatten_into(const CValuePtr& v, std::vector<int>& out) {
    if (v->kind == CValue::Kind::Scalar) {
        out.push_back(v->r);
        return;
    }
    if (v->kind == CValue::Kind::Pair) {
        flatten_into(v->a, out);
        flatten_into(v->b, out);
        return;
    }
    fail(ErrorCode::TypeMismatch, "cannot flatten a lambda value");
}

inline Vec flatten(const CValuePtr& v, const Dim& proto) {
    std::vector<int> out;
    flatten_into(v, out);
    if (out.size() % 2 != 0)
        fail(ErrorCode::TypeMismatch, "flattened value has odd length");
    Dim dim(proto.d, static_cast<int>(out.size() / 2));
    return Vec(dim, Layout::interlaced, std::move(out));
}

inline CValuePtr unflatten(const CTypePtr& t, const std::vector<int>& v, size_t& pos, const Dim& dim) {
    switch (t->kind) {
        case CType::Kind::Unit:
            if (pos >= v.size()) fail(ErrorCode::TypeMismatch, "unflatten: vector too short");
            return CValue::scalar(v[pos++], dim);
        case CType::Kind::Sum: {
            CValuePtr a = unflatten(t->a, v, pos, dim);
            CValuePtr b = unflatten(t->b, v, pos, dim);
            return CValue::pair(a, b);
        }
        case CType::Kind::Arrow:
            fail(ErrorCode::TypeMismatch, "unflatten: arrow type");
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

inline CValuePtr unflatten(const CTypePtr& t, const Vec& v) {
    Vec inter = v.relayout(Layout::interlaced);
    size_t pos = 0;
    CValuePtr r = unflatten(t, inter.entries(), pos, v.dim());
    if (pos != inter.entries().size())
        fail(ErrorCode::TypeMismatch, "unflatten: vector too long");
    return r;
}

/// Basis value of a symplectic type: 1 at interlaced position `index`.
inline CValuePtr basis_value(const CTypePtr& t, int index, const Dim& dim) {
    std::vector<int> v(rank(t), 0);
    v[index] = 1;
    size_t pos = 0;
    return unflatten(t, v, pos, dim);
}

// ---- P-layer evaluation -------------------------------------------------

/// Normal form <r> v of a closed Pc-expression.
struct PValue {
    int r = 0;
    CValuePtr v;
};

inline std::string to_string(const PValue& pv) {
    return "<" + std::to_string(pv.r) + ">" + to_string(pv.v);
}

/// Substitute a C-value for a P-variable: plain occurrences become embedded
/// constants, occurrences inside phase expressions become C-substitutions.
inline PExprPtr psubst(const PExprPtr& e, const std::string& x, const CValuePtr& v) {
    CExprPtr cv = value_to_expr(v);
    switch (e->kind) {
        case PExpr::Kind::Var: return e->name == x ? pembed(cv, e->loc) : e;
        case PExpr::Kind::Let: {
            PExprPtr bound = psubst(e->p1, x, v);
            PExprPtr body = e->name == x ? e->p2 : psubst(e->p2, x, v);
            return plet(e->name, bound, body, e->loc);
        }
        case PExpr::Kind::Embed: return pembed(subst(e->ce, x, cv), e->loc);
        case PExpr::Kind::Phase:
            return pphase(subst(e->ce, x, cv), psubst(e->p1, x, v), e->loc);
        case PExpr::Kind::Star: return pstar(psubst(e->p1, x, v), psubst(e->p2, x, v), e->loc);
        case PExpr::Kind::Pow: return ppow(psubst(e->p1, x, v), e->r, e->loc);
        case PExpr::Kind::CaseXZ:
            return pcase_xz(psubst(e->p1, x, v), psubst(e->p2, x, v), psubst(e->p3, x, v), e->loc);
        case PExpr::Kind::Inj: return pinj(e->r, e->inj_type, psubst(e->p1, x, v), e->loc);
        case PExpr::Kind::CaseSum: {
            PExprPtr scrut = psubst(e->p1, x, v);
            PExprPtr b1 = e->name == x ? e->p2 : psubst(e->p2, x, v);
            PExprPtr b2 = e->name2 == x ? e->p3 : psubst(e->p3, x, v);
            return pcase_sum(scrut, e->name, b1, e->name2, b2, e->loc);
        }
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

/// sgn of the Z_{d'} product of two included scalars: the `k` correction of
/// the Pauli-case beta rule.
inline int sgn_scalar_product(int rx, int rz, const Dim& dim) {
    if (!dim.even()) return 0;
    int prod = mod_mul(include_scalar(rx, dim), include_scalar(rz, dim), dim.dprime());
    return sgn(prod, dim);
}

inline PValue eval_p(const PExprPtr& e, const Dim& proto, Fuel& fuel) {
    fuel.tick();
    const int d = proto.d;
    switch (e->kind) {
        case PExpr::Kind::Var:
            fail(ErrorCode::UnboundVariable, "free variable '" + e->name + "' during evaluation");
        case PExpr::Kind::Embed:
            return PValue{0, eval_c(e->ce, proto, fuel)};
        case PExpr::Kind::Let: {
            PValue bound = eval_p(e->p1, proto, fuel);
            PValue body = eval_p(psubst(e->p2, e->name, bound.v), proto, fuel);
            return PValue{mod_add(bound.r, body.r, d), body.v};
        }
        case PExpr::Kind::Phase: {
            CValuePtr a = eval_c(e->ce, proto, fuel);
            if (a->kind != CValue::Kind::Scalar)
                fail(ErrorCode::TypeMismatch, "phase did not evaluate to Unit");
            PValue inner = eval_p(e->p1, proto, fuel);
            return PValue{mod_add(a->r, inner.r, d), inner.v};
        }
        case PExpr::Kind::Star: {
            PValue l = eval_p(e->p1, proto, fuel);
            PValue r = eval_p(e->p2, proto, fuel);
            CondensedPauli pl(l.r, flatten(l.v, proto));
            CondensedPauli pr(r.r, flatten(r.v, proto));
            CondensedPauli out = cprod(pl, pr);
            return PValue{out.t, value_add(l.v, r.v, proto)};
        }
        case PExpr::Kind::Pow: {
            PValue inner = eval_p(e->p1, proto, fuel);
            CondensedPauli out = power(CondensedPauli(inner.r, flatten(inner.v, proto)), e->r);
            return PValue{out.t, value_scale(mod_reduce(e->r, d), inner.v, proto)};
        }
        case PExpr::Kind::CaseXZ: {
            PValue scrut = eval_p(e->p1, proto, fuel);
            if (scrut.v->kind != CValue::Kind::Pair || scrut.v->a->kind != CValue::Kind::Scalar ||
                scrut.v->b->kind != CValue::Kind::Scalar)
                fail(ErrorCode::TypeMismatch, "Pauli case scrutinee is not a single-qudit value");
            int rx = scrut.v->a->r, rz = scrut.v->b->r;
            int k = proto.even() ? mod_mul(d / 2, sgn_scalar_product(rx, rz, proto), d) : 0;
            PValue prod = eval_p(pstar(ppow(e->p3, rz), ppow(e->p2, rx)), proto, fuel);
            return PValue{mod_add(mod_add(scrut.r, k, d), prod.r, d), prod.v};
        }
        case PExpr::Kind::Inj: {
            PValue inner = eval_p(e->p1, proto, fuel);
            CValuePtr z1 = zero_value(bar(e->inj_type->a), proto);
            CValuePtr z2 = zero_value(bar(e->inj_type->b), proto);
            CValuePtr v = e->r == 1 ? CValue::pair(inner.v, z2) : CValue::pair(z1, inner.v);
            return PValue{inner.r, v};
        }
        case PExpr::Kind::CaseSum: {
            PValue scrut = eval_p(e->p1, proto, fuel);
            if (scrut.v->kind != CValue::Kind::Pair)
                fail(ErrorCode::TypeMismatch, "sum case scrutinee is not a pair value");
            PExprPtr b1 = psubst(e->p2, e->name, scrut.v->a);
            PExprPtr b2 = psubst(e->p3, e->name2, scrut.v->b);
            PValue prod = eval_p(pstar(b1, b2), proto, fuel);
            return PValue{mod_add(scrut.r, prod.r, d), prod.v};
        }
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

inline PValue eval_p(const PExprPtr& e, const Dim& proto) {
    Fuel fuel{default_fuel()};
    return eval_p(e, proto, fuel);
}

}  // namespace qclif::lang
