#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "qclif/errors.hpp"
#include "qclif/lang/ast.hpp"
#include "qclif/lang/eval.hpp"
#include "qclif/lang/psiof.hpp"
#include "qclif/vec.hpp"

namespace qclif::lang {

// ---- C layer -------------------------------------------------------------

/// Result of checking a C-expression: its type, the set of context variables
/// it consumes, and whether zeros give it slack to absorb arbitrary extra
/// context (the zero rule types under any context).
struct CCheck {
    CTypePtr type;
    std::set<std::string> used;
    bool slack = false;
};

using CCtx = std::map<std::string, CTypePtr>;

namespace detail {

inline CCheck combine_additive(const CExpr& e, CCheck l, CCheck r) {
    if (l.slack && r.slack) {
        for (const auto& u : r.used) l.used.insert(u);
        return {l.type, std::move(l.used), true};
    }
    auto subset = [](const std::set<std::string>& a, const std::set<std::string>& b) {
        for (const auto& x : a)
            if (!b.count(x)) return false;
        return true;
    };
    if (l.slack) {
        if (!subset(l.used, r.used))
            fail(ErrorCode::LinearityViolation, "branches consume different variables" + at(e.loc));
        return {l.type, std::move(r.used), false};
    }
    if (r.slack) {
        if (!subset(r.used, l.used))
            fail(ErrorCode::LinearityViolation, "branches consume different variables" + at(e.loc));
        return {l.type, std::move(l.used), false};
    }
    if (l.used != r.used)
        fail(ErrorCode::LinearityViolation, "branches consume different variables" + at(e.loc));
    return {l.type, std::move(l.used), false};
}

inline std::set<std::string> disjoint_union(const CExpr& e, std::set<std::string> a,
                                            const std::set<std::string>& b) {
    for (const auto& x : b)
        if (!a.insert(x).second)
            fail(ErrorCode::LinearityViolation, "variable '" + x + "' used twice" + at(e.loc));
    return a;
}

inline void close_binder(const CExpr& e, CCheck& c, const std::string& x) {
    if (c.used.erase(x) == 0 && !c.slack)
        fail(ErrorCode::LinearityViolation, "linear variable '" + x + "' unused" + at(e.loc));
}

}  // namespace detail

/// Synthesize the type of a C-expression under a linear context.
inline CCheck typecheck_c(const CCtx& ctx, const CExprPtr& e) {
    switch (e->kind) {
        case CExpr::Kind::Var: {
            auto it = ctx.find(e->name);
            if (it == ctx.end())
                fail(ErrorCode::UnboundVariable, "unbound variable '" + e->name + "'" + at(e->loc));
            return {it->second, {e->name}, false};
        }
        case CExpr::Kind::Const:
            return {CType::unit(), {}, false};
        case CExpr::Kind::Zero:
            if (!e->type) fail(ErrorCode::TypeMismatch, "zero without a type annotation" + at(e->loc));
            return {e->type, {}, true};
        case CExpr::Kind::Let: {
            CCheck bound = typecheck_c(ctx, e->a);
            CCtx inner = ctx;
            inner[e->name] = bound.type;
            CCheck body = typecheck_c(inner, e->b);
            detail::close_binder(*e, body, e->name);
            return {body.type, detail::disjoint_union(*e, std::move(bound.used), body.used),
                    bound.slack || body.slack};
        }
        case CExpr::Kind::Scale: {
            CCheck s = typecheck_c(ctx, e->a);
            if (s.type->kind != CType::Kind::Unit)
                fail(ErrorCode::TypeMismatch, "scalar of non-Unit type" + at(e->loc));
            CCheck v = typecheck_c(ctx, e->b);
            return {v.type, detail::disjoint_union(*e, std::move(s.used), v.used), s.slack || v.slack};
        }
        case CExpr::Kind::Add: {
            CCheck l = typecheck_c(ctx, e->a);
            CCheck r = typecheck_c(ctx, e->b);
            if (!equal(l.type, r.type))
                fail(ErrorCode::TypeMismatch, "sum of different types" + at(e->loc));
            return detail::combine_additive(*e, std::move(l), std::move(r));
        }
        case CExpr::Kind::Pair: {
            CCheck l = typecheck_c(ctx, e->a);
            CCheck r = typecheck_c(ctx, e->b);
            CTypePtr ty = CType::sum(l.type, r.type);
            CCheck combined = detail::combine_additive(*e, std::move(l), std::move(r));
            return {ty, std::move(combined.used), combined.slack};
        }
        case CExpr::Kind::Case: {
            CCheck scrut = typecheck_c(ctx, e->a);
            if (scrut.type->kind != CType::Kind::Sum)
                fail(ErrorCode::TypeMismatch, "case scrutinee is not a direct sum" + at(e->loc));
            CCtx c1 = ctx;
            c1[e->name] = scrut.type->a;
            CCheck b1 = typecheck_c(c1, e->b);
            detail::close_binder(*e, b1, e->name);
            CCtx c2 = ctx;
            c2[e->name2] = scrut.type->b;
            CCheck b2 = typecheck_c(c2, e->c);
            detail::close_binder(*e, b2, e->name2);
            if (!equal(b1.type, b2.type))
                fail(ErrorCode::TypeMismatch, "case branches have different types" + at(e->loc));
            CCheck branches = detail::combine_additive(*e, std::move(b1), std::move(b2));
            return {branches.type,
                    detail::disjoint_union(*e, std::move(scrut.used), branches.used),
                    scrut.slack || branches.slack};
        }
        case CExpr::Kind::Lam: {
            if (!e->type) fail(ErrorCode::TypeMismatch, "lambda without parameter type" + at(e->loc));
            CCtx inner = ctx;
            inner[e->name] = e->type;
            CCheck body = typecheck_c(inner, e->a);
            detail::close_binder(*e, body, e->name);
            return {CType::arrow(e->type, body.type), std::move(body.used), body.slack};
        }
        case CExpr::Kind::App: {
            CCheck f = typecheck_c(ctx, e->a);
            if (f.type->kind != CType::Kind::Arrow)
                fail(ErrorCode::TypeMismatch, "applying a non-function" + at(e->loc));
            CCheck x = typecheck_c(ctx, e->b);
            if (!equal(f.type->a, x.type))
                fail(ErrorCode::TypeMismatch, "argument type mismatch" + at(e->loc));
            return {f.type->b, detail::disjoint_union(*e, std::move(f.used), x.used),
                    f.slack || x.slack};
        }
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

/// Check a C-expression against an exact context: every context variable
/// must be consumed (or absorbable by slack) and the type must match.
inline void typecheck_c_exact(const CCtx& ctx, const CExprPtr& e, const CTypePtr& want) {
    CCheck c = typecheck_c(ctx, e);
    if (!equal(c.type, want))
        fail(ErrorCode::TypeMismatch,
             "expected " + to_string(want) + ", found " + to_string(c.type) + at(e->loc));
    for (const auto& [name, ty] : ctx)
        if (!c.used.count(name) && !c.slack)
            fail(ErrorCode::LinearityViolation, "linear variable '" + name + "' unused" + at(e->loc));
}

// ---- P layer -------------------------------------------------------------

/// Typing context for Pc-expressions: at most one linear variable.
struct PCtx {
    std::optional<std::pair<std::string, QTypePtr>> lin;

    static PCtx empty() { return {}; }
    static PCtx single(std::string name, QTypePtr q) {
        PCtx c;
        c.lin = {std::move(name), std::move(q)};
        return c;
    }
    CCtx bar_ctx() const {
        CCtx c;
        if (lin) c[lin->first] = bar(lin->second);
        return c;
    }
};

namespace detail {

/// Evaluate omega(psi-of e1, psi-of e2) on concrete values of the bound
/// variables, via the value/vector correspondence.
inline int omega_on_values(const CExprPtr& a1, const std::optional<std::string>& x1,
                           const CValuePtr& v1, const CExprPtr& a2,
                           const std::optional<std::string>& x2, const CValuePtr& v2,
                           const Dim& proto) {
    CExprPtr e1 = x1 ? subst(a1, *x1, value_to_expr(v1)) : a1;
    CExprPtr e2 = x2 ? subst(a2, *x2, value_to_expr(v2)) : a2;
    Vec u = flatten(eval_c(e1, proto), proto);
    Vec v = flatten(eval_c(e2, proto), proto);
    return omega(u, v);
}

}  // namespace detail

/// Typecheck a Pc-expression, discharging the symplectic side conditions
/// semantically (on basis values, which suffice by bilinearity).
inline QTypePtr typecheck_p(const PCtx& ctx, const PExprPtr& e, const Dim& proto) {
    switch (e->kind) {
        case PExpr::Kind::Var:
            if (!ctx.lin || ctx.lin->first != e->name)
                fail(ErrorCode::UnboundVariable, "unbound Pauli variable '" + e->name + "'" + at(e->loc));
            return ctx.lin->second;
        case PExpr::Kind::Let: {
            QTypePtr q = typecheck_p(ctx, e->p1, proto);
            return typecheck_p(PCtx::single(e->name, q), e->p2, proto);
        }
        case PExpr::Kind::Embed: {
            if (ctx.lin)
                fail(ErrorCode::LinearityViolation,
                     "embedded vector must be closed; '" + ctx.lin->first + "' unused" + at(e->loc));
            CCheck c = typecheck_c({}, e->ce);
            QTypePtr q = un_bar(c.type);
            if (!q)
                fail(ErrorCode::TypeMismatch,
                     "embedded vector type " + to_string(c.type) + " is not a Pauli type" + at(e->loc));
            return q;
        }
        case PExpr::Kind::Phase: {
            typecheck_c_exact(ctx.bar_ctx(), e->ce, CType::unit());
            return typecheck_p(ctx, e->p1, proto);
        }
        case PExpr::Kind::Star: {
            if (ctx.lin)
                fail(ErrorCode::LinearityViolation, "star operands must be closed" + at(e->loc));
            QTypePtr l = typecheck_p(PCtx::empty(), e->p1, proto);
            QTypePtr r = typecheck_p(PCtx::empty(), e->p2, proto);
            if (!equal(l, r)) fail(ErrorCode::TypeMismatch, "star of different Pauli types" + at(e->loc));
            return l;
        }
        case PExpr::Kind::Pow: {
            if (ctx.lin)
                fail(ErrorCode::LinearityViolation, "pow operand must be closed" + at(e->loc));
            return typecheck_p(PCtx::empty(), e->p1, proto);
        }
        case PExpr::Kind::CaseXZ: {
            QTypePtr qs = typecheck_p(ctx, e->p1, proto);
            if (qs->kind != QType::Kind::Pauli)
                fail(ErrorCode::TypeMismatch, "X/Z case scrutinee must be Pauli" + at(e->loc));
            QTypePtr qx = typecheck_p(PCtx::empty(), e->p2, proto);
            QTypePtr qz = typecheck_p(PCtx::empty(), e->p3, proto);
            if (!equal(qx, qz))
                fail(ErrorCode::TypeMismatch, "X and Z branches have different types" + at(e->loc));
            // Side condition <e_z, e_x> == 1.
            int w = detail::omega_on_values(psi_of(e->p3), std::nullopt, nullptr,
                                            psi_of(e->p2), std::nullopt, nullptr, proto);
            if (w != 1)
                fail(ErrorCode::SymplecticConditionFailed,
                     "omega(Z-image, X-image) = " + std::to_string(w) + ", need 1" + at(e->loc));
            return qx;
        }
        case PExpr::Kind::Inj: {
            if (!e->inj_type || e->inj_type->kind != QType::Kind::Tensor)
                fail(ErrorCode::TypeMismatch, "injection lacks a tensor annotation" + at(e->loc));
            QTypePtr comp = typecheck_p(ctx, e->p1, proto);
            const QTypePtr& want = e->r == 1 ? e->inj_type->a : e->inj_type->b;
            if (!equal(comp, want))
                fail(ErrorCode::TypeMismatch, "injection component type mismatch" + at(e->loc));
            return e->inj_type;
        }
        case PExpr::Kind::CaseSum: {
            QTypePtr qs = typecheck_p(ctx, e->p1, proto);
            if (qs->kind != QType::Kind::Tensor)
                fail(ErrorCode::TypeMismatch, "sum case scrutinee must be a tensor" + at(e->loc));
            QTypePtr q1 = typecheck_p(PCtx::single(e->name, qs->a), e->p2, proto);
            QTypePtr q2 = typecheck_p(PCtx::single(e->name2, qs->b), e->p3, proto);
            if (!equal(q1, q2))
                fail(ErrorCode::TypeMismatch, "case branches have different types" + at(e->loc));
            // Side condition <e_1, e_2> == 0 on all basis pairs of the bound types.
            CExprPtr psi1 = psi_of(e->p2);
            CExprPtr psi2 = psi_of(e->p3);
            CTypePtr s1 = bar(qs->a), s2 = bar(qs->b);
            for (int i = 0; i < rank(s1); ++i)
                for (int j = 0; j < rank(s2); ++j) {
                    CValuePtr b1 = basis_value(s1, i, proto);
                    CValuePtr b2 = basis_value(s2, j, proto);
                    int w = detail::omega_on_values(psi1, e->name, b1, psi2, e->name2, b2, proto);
                    if (w != 0)
                        fail(ErrorCode::SymplecticConditionFailed,
                             "omega(branch images) = " + std::to_string(w) + " on basis pair (" +
                                 std::to_string(i) + "," + std::to_string(j) + "), need 0" + at(e->loc));
                }
            return q1;
        }
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

}  // namespace qclif::lang
