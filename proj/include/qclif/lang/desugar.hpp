#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qclif/errors.hpp"
#include "qclif/lang/ast.hpp"
#include "qclif/lang/eval.hpp"
#include "qclif/lang/parser.hpp"
#include "qclif/lang/psiof.hpp"

namespace qclif::lang {

namespace detail {

/// Path of injections (1/2 steps) from a tensor type to its i-th Pauli leaf
/// (1-based, left to right).
inline std::vector<int> leaf_path(const QTypePtr& q, int leaf, SrcLoc loc) {
    if (q->kind == QType::Kind::Pauli) {
        if (leaf != 1)
            fail(ErrorCode::SyntaxError, "index " + std::to_string(leaf) + " out of range" + at(loc));
        return {};
    }
    int left = qudits(q->a);
    if (leaf <= left) {
        std::vector<int> p = leaf_path(q->a, leaf, loc);
        p.insert(p.begin(), 1);
        return p;
    }
    std::vector<int> p = leaf_path(q->b, leaf - left, loc);
    p.insert(p.begin(), 2);
    return p;
}

inline QTypePtr step(const QTypePtr& q, int which) { return which == 1 ? q->a : q->b; }

/// The index template variable of a clause pattern, if any.
inline std::optional<std::string> pattern_index_var(const SPatPtr& p) {
    switch (p->kind) {
        case SPat::Kind::Leaf:
            if (p->idx && p->idx->uses_var()) return p->idx->var;
            return std::nullopt;
        case SPat::Kind::In1:
        case SPat::Kind::In2: return pattern_index_var(p->sub);
        case SPat::Kind::Var: return std::nullopt;
    }
    return std::nullopt;
}

/// Number of leaves at the pattern position where the indexed leaf sits.
inline int template_arity(const SPatPtr& p, const QTypePtr& q) {
    switch (p->kind) {
        case SPat::Kind::Leaf: return qudits(q);
        case SPat::Kind::In1:
            if (q->kind != QType::Kind::Tensor)
                fail(ErrorCode::TypeMismatch, "in1 pattern at non-tensor type" + at(p->loc));
            return template_arity(p->sub, q->a);
        case SPat::Kind::In2:
            if (q->kind != QType::Kind::Tensor)
                fail(ErrorCode::TypeMismatch, "in2 pattern at non-tensor type" + at(p->loc));
            return template_arity(p->sub, q->b);
        case SPat::Kind::Var: return 0;
    }
    return 0;
}

inline SPatPtr instantiate_pattern(const SPatPtr& p, const std::string& var, int value) {
    auto q = std::make_shared<SPat>(*p);
    if (q->kind == SPat::Kind::In1 || q->kind == SPat::Kind::In2) {
        q->sub = instantiate_pattern(p->sub, var, value);
    } else if (q->kind == SPat::Kind::Leaf && q->idx && q->idx->uses_var()) {
        IdxExpr ix;
        ix.literal = true;
        ix.value = q->idx->resolve(var, value);
        ix.loc = q->idx->loc;
        q->idx = ix;
    }
    return q;
}

inline SExprPtr instantiate_body(const SExprPtr& e, const std::string& var, int value) {
    auto q = std::make_shared<SExpr>(*e);
    if (e->a) q->a = instantiate_body(e->a, var, value);
    if (e->b) q->b = instantiate_body(e->b, var, value);
    if (e->kind == SExpr::Kind::DotIdx && e->idx && e->idx->uses_var()) {
        IdxExpr ix;
        ix.literal = true;
        ix.value = e->idx->resolve(var, value);
        ix.loc = e->idx->loc;
        q->idx = ix;
    }
    if (e->kind == SExpr::Kind::Phase) {
        // omega arguments inside phases may also carry indices
        auto walk_phase = [&](auto&& self, const SPhasePtr& ph) -> SPhasePtr {
            auto np = std::make_shared<SPhase>(*ph);
            if (ph->a) np->a = self(self, ph->a);
            if (ph->b) np->b = self(self, ph->b);
            if (ph->e1) np->e1 = instantiate_body(ph->e1, var, value);
            if (ph->e2) np->e2 = instantiate_body(ph->e2, var, value);
            return np;
        };
        q->phase = walk_phase(walk_phase, e->phase);
    }
    return q;
}

}  // namespace detail

/// Desugaring environment: the d in play, pattern-bound variables, and
/// parameters (which may appear only inside phase expressions).
struct DesugarEnv {
    Dim proto;
    std::map<std::string, QTypePtr> vars;
    std::map<std::string, QTypePtr> params;
};

inline PExprPtr desugar_expr(const SExprPtr& e, const QTypePtr& expected, const DesugarEnv& env);

/// Desugar a named atom: a Pauli letter, a bound variable, or `I`.
inline PExprPtr desugar_name(const SExprPtr& e, const QTypePtr& expected, const DesugarEnv& env) {
    const std::string& n = e->name;
    auto var = env.vars.find(n);
    if (var != env.vars.end()) {
        if (!equal(var->second, expected))
            fail(ErrorCode::TypeMismatch, "variable '" + n + "' has type " + to_string(var->second) +
                                              ", expected " + to_string(expected) + at(e->loc));
        return pvar(n, e->loc);
    }
    if (env.params.count(n))
        fail(ErrorCode::SyntaxError,
             "parameter '" + n + "' may appear only inside phase expressions" + at(e->loc));
    if (n == "I") {
        CValuePtr z = zero_value(bar(expected), env.proto);
        return pembed(value_to_expr(z), e->loc);
    }
    if (n == "X" || n == "Y" || n == "Z") {
        if (expected->kind != QType::Kind::Pauli)
            fail(ErrorCode::TypeMismatch,
                 "'" + n + "' has type Pauli, expected " + to_string(expected) + at(e->loc));
        int x = n == "Z" ? 0 : 1;
        int z = n == "X" ? 0 : 1;
        return pembed(cpair(cconst(x), cconst(z)), e->loc);
    }
    fail(ErrorCode::UnboundVariable, "unknown name '" + n + "'" + at(e->loc));
}

/// Wrap an expression for the i-th leaf of a tensor type in its injections.
inline PExprPtr inject_at_leaf(const QTypePtr& q, int leaf, const SExprPtr& inner,
                               const DesugarEnv& env, SrcLoc loc) {
    std::vector<int> path = detail::leaf_path(q, leaf, loc);
    // innermost expression first
    QTypePtr cur = q;
    std::vector<QTypePtr> types;
    for (int stepi : path) {
        types.push_back(cur);
        cur = detail::step(cur, stepi);
    }
    PExprPtr out = desugar_expr(inner, cur, env);
    for (int i = static_cast<int>(path.size()) - 1; i >= 0; --i)
        out = pinj(path[i], types[i], out, loc);
    return out;
}

/// Desugar an omega argument, synthesizing its type (variables, parameters
/// and plain letters only).
inline std::pair<PExprPtr, QTypePtr> desugar_omega_arg(const SExprPtr& e, const DesugarEnv& env) {
    if (e->kind != SExpr::Kind::Name)
        fail(ErrorCode::SyntaxError, "omega arguments must be variables or Pauli letters" + at(e->loc));
    auto var = env.vars.find(e->name);
    if (var != env.vars.end()) return {pvar(e->name, e->loc), var->second};
    auto par = env.params.find(e->name);
    if (par != env.params.end()) return {pvar(e->name, e->loc), par->second};
    if (e->name == "X" || e->name == "Y" || e->name == "Z" || e->name == "I")
        return {desugar_name(e, QType::pauli(), env), QType::pauli()};
    fail(ErrorCode::UnboundVariable, "unknown name '" + e->name + "'" + at(e->loc));
}

inline CExprPtr desugar_phase(const SPhasePtr& ph, const DesugarEnv& env) {
    switch (ph->kind) {
        case SPhase::Kind::Int: return cconst(mod_reduce(ph->value, env.proto.d), ph->loc);
        case SPhase::Kind::Neg:
            return cscale(cconst(mod_reduce(-1, env.proto.d)), desugar_phase(ph->a, env), ph->loc);
        case SPhase::Kind::Add: return cadd(desugar_phase(ph->a, env), desugar_phase(ph->b, env), ph->loc);
        case SPhase::Kind::Sub:
            return cadd(desugar_phase(ph->a, env),
                        cscale(cconst(mod_reduce(-1, env.proto.d)), desugar_phase(ph->b, env)), ph->loc);
        case SPhase::Kind::Mul:
            return cscale(desugar_phase(ph->a, env), desugar_phase(ph->b, env), ph->loc);
        case SPhase::Kind::Omega: {
            auto [p1, q1] = desugar_omega_arg(ph->e1, env);
            auto [p2, q2] = desugar_omega_arg(ph->e2, env);
            if (!equal(q1, q2))
                fail(ErrorCode::TypeMismatch, "omega arguments have different types" + at(ph->loc));
            CExprPtr om = omega_type(bar(q1));
            return capp(capp(om, psi_of(p1), ph->loc), psi_of(p2), ph->loc);
        }
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

inline PExprPtr desugar_expr(const SExprPtr& e, const QTypePtr& expected, const DesugarEnv& env) {
    switch (e->kind) {
        case SExpr::Kind::Tensor: {
            if (expected->kind != QType::Kind::Tensor)
                fail(ErrorCode::TypeMismatch, "'**' at non-tensor type" + at(e->loc));
            PExprPtr l = pinj(1, expected, desugar_expr(e->a, expected->a, env), e->loc);
            PExprPtr r = pinj(2, expected, desugar_expr(e->b, expected->b, env), e->loc);
            return pstar(l, r, e->loc);
        }
        case SExpr::Kind::Star:
            return pstar(desugar_expr(e->a, expected, env), desugar_expr(e->b, expected, env), e->loc);
        case SExpr::Kind::Pow:
            return ppow(desugar_expr(e->a, expected, env), mod_reduce(e->r, env.proto.d), e->loc);
        case SExpr::Kind::Phase:
            return pphase(desugar_phase(e->phase, env), desugar_expr(e->a, expected, env), e->loc);
        case SExpr::Kind::Inj: {
            if (expected->kind != QType::Kind::Tensor)
                fail(ErrorCode::TypeMismatch, "injection at non-tensor type" + at(e->loc));
            const QTypePtr& comp = e->r == 1 ? expected->a : expected->b;
            return pinj(e->r, expected, desugar_expr(e->a, comp, env), e->loc);
        }
        case SExpr::Kind::DotIdx: {
            if (!e->idx->literal)
                fail(ErrorCode::SyntaxError, "unresolved index variable" + at(e->loc));
            return inject_at_leaf(expected, e->idx->value, e->a, env, e->loc);
        }
        case SExpr::Kind::Name:
            return desugar_name(e, expected, env);
    }
    fail(ErrorCode::FuelExhausted, "unreachable");
}

namespace detail {

struct ClauseRef {
    SPatPtr pattern;
    SExprPtr body;
    SrcLoc loc;
};

/// Recursive grouping of clauses into nested case expressions over the
/// domain type.
inline PExprPtr build_case_tree(const QTypePtr& q, const QTypePtr& codomain,
                                std::vector<ClauseRef> clauses, const std::string& scrut,
                                DesugarEnv& env) {
    if (clauses.empty())
        fail(ErrorCode::SyntaxError, "missing clauses for a component of the domain");

    // single catch-all variable pattern
    if (clauses.size() == 1 && clauses[0].pattern->kind == SPat::Kind::Var) {
        const std::string& v = clauses[0].pattern->var;
        env.vars[v] = q;
        PExprPtr body = desugar_expr(clauses[0].body, codomain, env);
        env.vars.erase(v);
        // bind the scrutinee variable name to the pattern variable
        return plet(v, pvar(scrut, clauses[0].loc), body, clauses[0].loc);
    }
    for (const ClauseRef& c : clauses)
        if (c.pattern->kind == SPat::Kind::Var)
            fail(ErrorCode::SyntaxError, "variable pattern overlaps other clauses" + at(c.pattern->loc));

    if (q->kind == QType::Kind::Pauli) {
        const SExprPtr* body_x = nullptr;
        const SExprPtr* body_z = nullptr;
        SrcLoc loc = clauses[0].loc;
        for (const ClauseRef& c : clauses) {
            if (c.pattern->kind != SPat::Kind::Leaf)
                fail(ErrorCode::SyntaxError, "expected an X or Z pattern" + at(c.pattern->loc));
            if (c.pattern->idx && (!c.pattern->idx->literal || c.pattern->idx->value != 1))
                fail(ErrorCode::SyntaxError, "index out of range in pattern" + at(c.pattern->loc));
            const SExprPtr*& slot = c.pattern->letter == 'X' ? body_x : body_z;
            if (slot) fail(ErrorCode::SyntaxError, "duplicate clause" + at(c.pattern->loc));
            slot = &c.body;
        }
        if (!body_x || !body_z)
            fail(ErrorCode::SyntaxError, "clauses must cover both X and Z" + at(loc));
        PExprPtr ex = desugar_expr(*body_x, codomain, env);
        PExprPtr ez = desugar_expr(*body_z, codomain, env);
        return pcase_xz(pvar(scrut), ex, ez, loc);
    }

    // tensor type: split clauses between the two components
    std::vector<ClauseRef> left, right;
    for (ClauseRef& c : clauses) {
        SPatPtr p = c.pattern;
        if (p->kind == SPat::Kind::Leaf) {
            // X.i / Z.i over a tensor: rewrite to an injection chain
            if (!p->idx || !p->idx->literal)
                fail(ErrorCode::SyntaxError, "leaf pattern over tensor type needs an index" + at(p->loc));
            int leaf = p->idx->value;
            std::vector<int> path = leaf_path(q, leaf, p->loc);
            auto leafpat = std::make_shared<SPat>(*p);
            leafpat->idx.reset();
            SPatPtr chained = leafpat;
            for (int i = static_cast<int>(path.size()) - 1; i >= 0; --i) {
                auto wrap = std::make_shared<SPat>();
                wrap->kind = path[i] == 1 ? SPat::Kind::In1 : SPat::Kind::In2;
                wrap->sub = chained;
                wrap->loc = p->loc;
                chained = wrap;
            }
            p = chained;
        }
        if (p->kind == SPat::Kind::In1)
            left.push_back({p->sub, c.body, c.loc});
        else if (p->kind == SPat::Kind::In2)
            right.push_back({p->sub, c.body, c.loc});
        else
            fail(ErrorCode::SyntaxError, "expected in1/in2 pattern at tensor type" + at(p->loc));
    }
    std::string x1 = fresh_name("c"), x2 = fresh_name("c");
    SrcLoc loc = clauses[0].loc;
    PExprPtr e1 = build_case_tree(q->a, codomain, std::move(left), x1, env);
    PExprPtr e2 = build_case_tree(q->b, codomain, std::move(right), x2, env);
    return pcase_sum(pvar(scrut), x1, e1, x2, e2, loc);
}

}  // namespace detail

/// Expand index-template clauses, group patterns, and desugar bodies.
inline Def desugar_def(const SDef& sdef, const Dim& proto) {
    Def def;
    def.name = sdef.name;
    def.domain = sdef.domain;
    def.codomain = sdef.codomain;
    def.loc = sdef.loc;
    for (const auto& [pname, ptype] : sdef.params) def.params.push_back({pname, ptype});

    DesugarEnv env;
    env.proto = proto;
    for (const auto& [pname, ptype] : sdef.params) env.params[pname] = ptype;

    std::vector<detail::ClauseRef> clauses;
    for (const SClause& cl : sdef.clauses) {
        std::optional<std::string> tvar = detail::pattern_index_var(cl.pattern);
        if (!tvar) {
            clauses.push_back({cl.pattern, cl.body, cl.loc});
            continue;
        }
        int arity = detail::template_arity(cl.pattern, sdef.domain);
        if (arity < 1)
            fail(ErrorCode::SyntaxError, "cannot determine index range" + at(cl.loc));
        for (int i = 1; i <= arity; ++i)
            clauses.push_back({detail::instantiate_pattern(cl.pattern, *tvar, i),
                               detail::instantiate_body(cl.body, *tvar, i), cl.loc});
    }

    def.var = fresh_name("in");
    def.body = detail::build_case_tree(sdef.domain, sdef.codomain, std::move(clauses), def.var, env);
    return def;
}

/// Parse, desugar, and resolve instantiations.  Does not typecheck.
inline Program parse_program(const std::string& source) {
    Parser parser(source);
    Program prog;
    prog.d = parser.parse_header();
    prog.proto_dim = Dim(prog.d, 1);
    Dim proto = prog.proto_dim;

    for (const SDef& sdef : parser.parse_defs()) {
        if (prog.has(sdef.name))
            fail(ErrorCode::SyntaxError, "duplicate definition '" + sdef.name + "'" + at(sdef.loc));
        if (!sdef.is_instantiation) {
            prog.defs.push_back(desugar_def(sdef, proto));
            continue;
        }
        const Def& base = prog.find(sdef.base);
        if (base.params.size() != sdef.args.size())
            fail(ErrorCode::TypeMismatch,
                 "instantiation of '" + sdef.base + "' expects " + std::to_string(base.params.size()) +
                     " argument(s)" + at(sdef.loc));
        Def inst;
        inst.name = sdef.name;
        inst.domain = base.domain;
        inst.codomain = base.codomain;
        inst.var = base.var;
        inst.body = base.body;
        inst.loc = sdef.loc;
        DesugarEnv env;
        env.proto = proto;
        for (size_t i = 0; i < sdef.args.size(); ++i) {
            PExprPtr arg = desugar_expr(sdef.args[i], base.params[i].type, env);
            PValue v = eval_p(arg, proto);
            inst.body = psubst(inst.body, base.params[i].name, v.v);
        }
        prog.defs.push_back(std::move(inst));
    }
    return prog;
}

/// Typecheck a definition against its declared signature; parameterized
/// definitions are checked with parameters bound to zero values.
inline void typecheck_def(const Def& def, const Dim& proto) {
    PExprPtr body = def.body;
    for (const Param& p : def.params)
        body = psubst(body, p.name, zero_value(bar(p.type), proto));
    QTypePtr q = typecheck_p(PCtx::single(def.var, def.domain), body, proto);
    if (!equal(q, def.codomain))
        fail(ErrorCode::TypeMismatch, "definition '" + def.name + "' has body type " + to_string(q) +
                                          ", declared " + to_string(def.codomain) + at(def.loc));
}

}  // namespace qclif::lang
