#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qclif/dim.hpp"
#include "qclif/errors.hpp"

namespace qclif::lang {

struct SrcLoc {
    int line = 0;
    int col = 0;
};

inline std::string at(const SrcLoc& loc) {
    return " at " + std::to_string(loc.line) + ":" + std::to_string(loc.col);
}

// ---- types ------------------------------------------------------------

struct CType;
using CTypePtr = std::shared_ptr<const CType>;

/// C-layer types: Unit | a (+) b | a -o b.
struct CType {
    enum class Kind { Unit, Sum, Arrow };
    Kind kind;
    CTypePtr a, b;

    static CTypePtr unit() {
        static CTypePtr u = std::make_shared<CType>(CType{Kind::Unit, nullptr, nullptr});
        return u;
    }
    static CTypePtr sum(CTypePtr a, CTypePtr b) {
        return std::make_shared<CType>(CType{Kind::Sum, std::move(a), std::move(b)});
    }
    static CTypePtr arrow(CTypePtr a, CTypePtr b) {
        return std::make_shared<CType>(CType{Kind::Arrow, std::move(a), std::move(b)});
    }
};

inline bool equal(const CTypePtr& x, const CTypePtr& y) {
    if (x == y) return true;
    if (!x || !y || x->kind != y->kind) return false;
    if (x->kind == CType::Kind::Unit) return true;
    return equal(x->a, y->a) && equal(x->b, y->b);
}

/// Rank of the corresponding free Z_d-module.
inline int rank(const CTypePtr& t) {
    switch (t->kind) {
        case CType::Kind::Unit: return 1;
        case CType::Kind::Sum: return rank(t->a) + rank(t->b);
        case CType::Kind::Arrow: return rank(t->a) * rank(t->b);
    }
    return 0;
}

/// Symplectic types: Unit (+) Unit | sigma (+) sigma.
inline bool is_symplectic_type(const CTypePtr& t) {
    if (t->kind != CType::Kind::Sum) return false;
    if (t->a->kind == CType::Kind::Unit && t->b->kind == CType::Kind::Unit) return true;
    return is_symplectic_type(t->a) && is_symplectic_type(t->b);
}

inline std::string to_string(const CTypePtr& t) {
    switch (t->kind) {
        case CType::Kind::Unit: return "Unit";
        case CType::Kind::Sum: return "(" + to_string(t->a) + " (+) " + to_string(t->b) + ")";
        case CType::Kind::Arrow: return "(" + to_string(t->a) + " -o " + to_string(t->b) + ")";
    }
    return "?";
}

struct QType;
using QTypePtr = std::shared_ptr<const QType>;

/// Pauli types: Pauli | Q1 ** Q2.
struct QType {
    enum class Kind { Pauli, Tensor };
    Kind kind;
    QTypePtr a, b;

    static QTypePtr pauli() {
        static QTypePtr p = std::make_shared<QType>(QType{Kind::Pauli, nullptr, nullptr});
        return p;
    }
    static QTypePtr tensor(QTypePtr a, QTypePtr b) {
        return std::make_shared<QType>(QType{Kind::Tensor, std::move(a), std::move(b)});
    }
};

inline bool equal(const QTypePtr& x, const QTypePtr& y) {
    if (x == y) return true;
    if (!x || !y || x->kind != y->kind) return false;
    if (x->kind == QType::Kind::Pauli) return true;
    return equal(x->a, y->a) && equal(x->b, y->b);
}

/// Number of qudits (Pauli leaves).
inline int qudits(const QTypePtr& q) {
    return q->kind == QType::Kind::Pauli ? 1 : qudits(q->a) + qudits(q->b);
}

/// The translation bar(Q): bar(Pauli) = Unit (+) Unit, bar(Q1 ** Q2) = bar(Q1) (+) bar(Q2).
inline CTypePtr bar(const QTypePtr& q) {
    if (q->kind == QType::Kind::Pauli) return CType::sum(CType::unit(), CType::unit());
    return CType::sum(bar(q->a), bar(q->b));
}

/// Partial inverse of bar; nullptr when the type is not a bar-image.
inline QTypePtr un_bar(const CTypePtr& t) {
    if (t->kind != CType::Kind::Sum) return nullptr;
    if (t->a->kind == CType::Kind::Unit && t->b->kind == CType::Kind::Unit) return QType::pauli();
    QTypePtr a = un_bar(t->a), b = un_bar(t->b);
    if (!a || !b) return nullptr;
    return QType::tensor(a, b);
}

inline std::string to_string(const QTypePtr& q) {
    if (q->kind == QType::Kind::Pauli) return "Pauli";
    return "(" + to_string(q->a) + " ** " + to_string(q->b) + ")";
}

// ---- C expressions -----------------------------------------------------

struct CExpr;
using CExprPtr = std::shared_ptr<const CExpr>;

/// Linear C-expressions.  Zero and Lam carry their type (resp. the bound
/// variable's type) so that evaluation never needs inference.
struct CExpr {
    enum class Kind { Var, Let, Const, Zero, Scale, Add, Pair, Case, Lam, App };
    Kind kind;
    std::string name;        // Var; Let/Lam binder
    std::string name2;       // Case: second binder (name holds the first)
    int r = 0;               // Const
    CExprPtr a, b, c;        // children: Let(a=bound,b=body), Scale(a.b), Add, Pair,
                             // Case(a=scrutinee,b,c=branches), Lam(a=body), App(a,b)
    CTypePtr type;           // Zero: the zero's type; Lam: the parameter type
    SrcLoc loc;
};

inline CExprPtr cvar(std::string n, SrcLoc loc = {}) {
    return std::make_shared<CExpr>(CExpr{CExpr::Kind::Var, std::move(n), "", 0, nullptr, nullptr, nullptr, nullptr, loc});
}
inline CExprPtr clet(std::string n, CExprPtr bound, CExprPtr body, SrcLoc loc = {}) {
    return std::make_shared<CExpr>(CExpr{CExpr::Kind::Let, std::move(n), "", 0, std::move(bound), std::move(body), nullptr, nullptr, loc});
}
inline CExprPtr cconst(int r, SrcLoc loc = {}) {
    return std::make_shared<CExpr>(CExpr{CExpr::Kind::Const, "", "", r, nullptr, nullptr, nullptr, nullptr, loc});
}
inline CExprPtr czero(CTypePtr type, SrcLoc loc = {}) {
    return std::make_shared<CExpr>(CExpr{CExpr::Kind::Zero, "", "", 0, nullptr, nullptr, nullptr, std::move(type), loc});
}
inline CExprPtr cscale(CExprPtr s, CExprPtr v, SrcLoc loc = {}) {
    return std::make_shared<CExpr>(CExpr{CExpr::Kind::Scale, "", "", 0, std::move(s), std::move(v), nullptr, nullptr, loc});
}
inline CExprPtr cadd(CExprPtr x, CExprPtr y, SrcLoc loc = {}) {
    return std::make_shared<CExpr>(CExpr{CExpr::Kind::Add, "", "", 0, std::move(x), std::move(y), nullptr, nullptr, loc});
}
inline CExprPtr cpair(CExprPtr x, CExprPtr y, SrcLoc loc = {}) {
    return std::make_shared<CExpr>(CExpr{CExpr::Kind::Pair, "", "", 0, std::move(x), std::move(y), nullptr, nullptr, loc});
}
inline CExprPtr ccase(CExprPtr scrut, std::string x1, CExprPtr b1, std::string x2, CExprPtr b2,
                      SrcLoc loc = {}) {
    return std::make_shared<CExpr>(CExpr{CExpr::Kind::Case, std::move(x1), std::move(x2), 0,
                                         std::move(scrut), std::move(b1), std::move(b2), nullptr, loc});
}
inline CExprPtr clam(std::string n, CTypePtr param_type, CExprPtr body, SrcLoc loc = {}) {
    return std::make_shared<CExpr>(CExpr{CExpr::Kind::Lam, std::move(n), "", 0, std::move(body),
                                         nullptr, nullptr, std::move(param_type), loc});
}
inline CExprPtr capp(CExprPtr f, CExprPtr x, SrcLoc loc = {}) {
    return std::make_shared<CExpr>(CExpr{CExpr::Kind::App, "", "", 0, std::move(f), std::move(x), nullptr, nullptr, loc});
}

// ---- P expressions -----------------------------------------------------

struct PExpr;
using PExprPtr = std::shared_ptr<const PExpr>;

/// Pc-expressions.  Inj carries the full tensor type it injects into.
struct PExpr {
    enum class Kind { Var, Let, Embed, Phase, Star, Pow, CaseXZ, Inj, CaseSum };
    Kind kind;
    std::string name;   // Var; Let binder; CaseSum first binder
    std::string name2;  // CaseSum second binder
    int r = 0;          // Pow exponent; Inj index (1 or 2)
    CExprPtr ce;        // Embed body; Phase expression
    PExprPtr p1, p2, p3;
    QTypePtr inj_type;  // Inj: the Q1 ** Q2 being injected into
    SrcLoc loc;
};

inline PExprPtr pvar(std::string n, SrcLoc loc = {}) {
    return std::make_shared<PExpr>(PExpr{PExpr::Kind::Var, std::move(n), "", 0, nullptr, nullptr, nullptr, nullptr, nullptr, loc});
}
inline PExprPtr plet(std::string n, PExprPtr bound, PExprPtr body, SrcLoc loc = {}) {
    return std::make_shared<PExpr>(PExpr{PExpr::Kind::Let, std::move(n), "", 0, nullptr, std::move(bound), std::move(body), nullptr, nullptr, loc});
}
inline PExprPtr pembed(CExprPtr a, SrcLoc loc = {}) {
    return std::make_shared<PExpr>(PExpr{PExpr::Kind::Embed, "", "", 0, std::move(a), nullptr, nullptr, nullptr, nullptr, loc});
}
inline PExprPtr pphase(CExprPtr a, PExprPtr e, SrcLoc loc = {}) {
    return std::make_shared<PExpr>(PExpr{PExpr::Kind::Phase, "", "", 0, std::move(a), std::move(e), nullptr, nullptr, nullptr, loc});
}
inline PExprPtr pstar(PExprPtr x, PExprPtr y, SrcLoc loc = {}) {
    return std::make_shared<PExpr>(PExpr{PExpr::Kind::Star, "", "", 0, nullptr, std::move(x), std::move(y), nullptr, nullptr, loc});
}
inline PExprPtr ppow(PExprPtr e, int r, SrcLoc loc = {}) {
    return std::make_shared<PExpr>(PExpr{PExpr::Kind::Pow, "", "", r, nullptr, std::move(e), nullptr, nullptr, nullptr, loc});
}
inline PExprPtr pcase_xz(PExprPtr scrut, PExprPtr ex, PExprPtr ez, SrcLoc loc = {}) {
    return std::make_shared<PExpr>(PExpr{PExpr::Kind::CaseXZ, "", "", 0, nullptr, std::move(scrut), std::move(ex), std::move(ez), nullptr, loc});
}
inline PExprPtr pinj(int i, QTypePtr tensor, PExprPtr e, SrcLoc loc = {}) {
    return std::make_shared<PExpr>(PExpr{PExpr::Kind::Inj, "", "", i, nullptr, std::move(e), nullptr, nullptr, std::move(tensor), loc});
}
inline PExprPtr pcase_sum(PExprPtr scrut, std::string x1, PExprPtr e1, std::string x2, PExprPtr e2,
                          SrcLoc loc = {}) {
    return std::make_shared<PExpr>(PExpr{PExpr::Kind::CaseSum, std::move(x1), std::move(x2), 0,
                                         nullptr, std::move(scrut), std::move(e1), std::move(e2), nullptr, loc});
}

// ---- programs ----------------------------------------------------------

struct Param {
    std::string name;
    QTypePtr type;
};

/// A top-level clifford definition: body has one free variable `var` of the
/// domain type (plus any parameter names, which occur only in phase
/// expressions and are closed off at instantiation).
struct Def {
    std::string name;
    std::vector<Param> params;
    QTypePtr domain;
    QTypePtr codomain;
    std::string var;
    PExprPtr body;
    SrcLoc loc;
};

struct Program {
    Dim proto_dim{2, 1};  // d from the header; n is per-definition
    int d = 2;
    std::vector<Def> defs;

    const Def& find(const std::string& name) const {
        for (const Def& d : defs)
            if (d.name == name) return d;
        fail(ErrorCode::UnboundVariable, "no definition named '" + name + "'");
    }
    bool has(const std::string& name) const {
        for (const Def& d : defs)
            if (d.name == name) return true;
        return false;
    }
};

inline std::string fresh_name(const char* stem = "x") {
    static std::atomic<long long> counter{0};
    return std::string("$") + stem + std::to_string(counter.fetch_add(1, std::memory_order_relaxed));
}

}  // namespace qclif::lang
