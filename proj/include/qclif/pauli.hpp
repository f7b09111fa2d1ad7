#pragma once

#include <cctype>
#include <ostream>
#include <sstream>
#include <string>

#include "qclif/dim.hpp"
#include "qclif/errors.hpp"
#include "qclif/vec.hpp"

namespace qclif {

/// tau^w D_v with w in Z_{d'}, v over Z_d.  The unique normal form of an
/// element of the large Pauli group P'_{d,n}.
struct CanonicalPauli {
    int w = 0;
    Vec v;

    CanonicalPauli() = default;
    CanonicalPauli(int w_, Vec v_) : w(mod_reduce(w_, v_.dim().dprime())), v(std::move(v_)) {}

    const Dim& dim() const { return v.dim(); }
    friend bool operator==(const CanonicalPauli&, const CanonicalPauli&) = default;
};

/// tau^w Delta_v with v over Z_{d'}.  Intentionally non-unique.
struct GeneralPauli {
    int w = 0;
    ExtVec v;

    GeneralPauli() = default;
    GeneralPauli(int w_, ExtVec v_) : w(mod_reduce(w_, v_.dim().dprime())), v(std::move(v_)) {}

    const Dim& dim() const { return v.dim(); }
};

/// zeta^t Delta_{incl v} with t in Z_d, v over Z_d: an element of Q_{d,n}.
struct CondensedPauli {
    int t = 0;
    Vec v;

    CondensedPauli() = default;
    CondensedPauli(int t_, Vec v_) : t(mod_reduce(t_, v_.dim().d)), v(std::move(v_)) {}

    static CondensedPauli identity(Dim dim, Layout layout = Layout::separated) {
        return CondensedPauli(0, Vec::zero(dim, layout));
    }

    const Dim& dim() const { return v.dim(); }
    bool is_identity() const { return t == 0 && v.is_zero(); }
    friend bool operator==(const CondensedPauli&, const CondensedPauli&) = default;
};

/// Dot product x . z of the two halves of an extended vector, in Z_{d'}.
/// This is the exponent in Delta_v = tau^{x.z} D_{cast v}.
inline int delta_dot(const ExtVec& v) {
    const Dim& dim = v.dim();
    long long acc = 0;
    for (int i = 0; i < dim.n; ++i) acc += static_cast<long long>(v.x(i)) * v.z(i);
    return mod_reduce(acc, dim.dprime());
}

/// Rewrite tau^w Delta_v into the unique D-form tau^{w'} D_{cast v}.
inline CanonicalPauli canonicalize(const GeneralPauli& g) {
    int w = mod_add(g.w, delta_dot(g.v), g.dim().dprime());
    return CanonicalPauli(w, cast(g.v));
}

/// Delta-form expressions are non-unique; equality means equal normal forms.
inline bool same_element(const GeneralPauli& a, const GeneralPauli& b) {
    return canonicalize(a) == canonicalize(b);
}

/// View a condensed Pauli as a general (Delta-form) Pauli: zeta^t = tau^{2t}.
inline GeneralPauli general_form(const CondensedPauli& p) {
    return GeneralPauli(mod_reduce(2LL * p.t, p.dim().dprime()), include(p.v));
}

inline CanonicalPauli canonical_form(const CondensedPauli& p) {
    return canonicalize(general_form(p));
}

/// Inverse of canonical_form.  Fails when the element lies outside Q_{d,n}
/// (possible only for even d, when the Delta-form tau exponent is odd).
inline CondensedPauli condensed_form(const CanonicalPauli& g) {
    const Dim& dim = g.dim();
    int w = mod_sub(g.w, delta_dot(include(g.v)), dim.dprime());
    if (dim.even()) {
        if (w % 2 != 0)
            fail(ErrorCode::InvariantViolation, "Pauli lies outside Q_{d,n}");
        return CondensedPauli(w / 2, g.v);
    }
    // d odd: 2 is invertible mod d.
    int half = (dim.d + 1) / 2;
    return CondensedPauli(mod_mul(w, half, dim.d), g.v);
}

/// Group law of P'_{d,n}: (w1,v1)(w2,v2) = (w1 + w2 + 2(z1.x2 mod d), v1+v2).
/// The cross term is computed in Z_d, then doubled into a tau exponent.
inline CanonicalPauli mul(const CanonicalPauli& a, const CanonicalPauli& b) {
    a.v.check_compat(b.v);
    const Dim& dim = a.dim();
    long long cross = 0;
    for (int i = 0; i < dim.n; ++i) cross += static_cast<long long>(a.v.z(i)) * b.v.x(i);
    int c = mod_reduce(cross, dim.d);
    int w = mod_add(mod_add(a.w, b.w, dim.dprime()), mod_reduce(2LL * c, dim.dprime()), dim.dprime());
    return CanonicalPauli(w, a.v + b.v);
}

inline CanonicalPauli inverse(const CanonicalPauli& a) {
    const Dim& dim = a.dim();
    Vec vinv = -a.v;
    long long cross = 0;
    for (int i = 0; i < dim.n; ++i) cross += static_cast<long long>(vinv.z(i)) * a.v.x(i);
    int c = mod_reduce(cross, dim.d);
    int w = mod_sub(mod_neg(a.w, dim.dprime()), mod_reduce(2LL * c, dim.dprime()), dim.dprime());
    return CanonicalPauli(w, std::move(vinv));
}

inline CanonicalPauli identity_pauli(Dim dim, Layout layout = Layout::separated) {
    return CanonicalPauli(0, Vec::zero(dim, layout));
}

/// Condensed product on Q_{d,n}:
///   zeta^{t1} Delta_u * zeta^{t2} Delta_v
///     = zeta^{t1+t2+(d/2)s(u,v)+(d/2)<rho>} Delta_{incl(u+v)}
/// where <rho> compares incl(u)+incl(v) against incl(u+v).
inline CondensedPauli cprod(const CondensedPauli& a, const CondensedPauli& b) {
    a.v.check_compat(b.v);
    const Dim& dim = a.dim();
    Vec sum = a.v + b.v;
    int t = mod_add(a.t, b.t, dim.d);
    if (dim.even()) {
        int s = s_sign(a.v, b.v);
        int rho = eps_bracket(include(a.v) + include(b.v), include(sum));
        t = mod_add(t, mod_mul(dim.d / 2, s + rho, dim.d), dim.d);
    }
    return CondensedPauli(t, std::move(sum));
}

/// r-th condensed power via the closed form
///   (zeta^t Delta_v)^r = zeta^{rt + (d/2) sgn(incl(r) incl(v))} Delta_{incl(rv)}.
inline CondensedPauli power(const CondensedPauli& a, int r) {
    const Dim& dim = a.dim();
    r = mod_reduce(r, dim.d);
    int t = mod_mul(a.t, r, dim.d);
    if (dim.even()) {
        ExtVec scaled = include(a.v).scaled(include_scalar(r, dim));
        t = mod_add(t, mod_mul(dim.d / 2, sgn_vec(scaled), dim.d), dim.d);
    }
    return CondensedPauli(t, a.v.scaled(r));
}

/// Left-fold power: r successive condensed products.  Semantic oracle for power().
inline CondensedPauli power_fold(const CondensedPauli& a, int r) {
    const Dim& dim = a.dim();
    r = mod_reduce(r, dim.d);
    CondensedPauli acc = CondensedPauli::identity(dim, a.v.layout());
    for (int i = 0; i < r; ++i) acc = i == 0 ? a : cprod(acc, a);
    return acc;
}

/// Element of Sigma_{d,n} = {+-Delta_{incl v}}: a sign bit and a Z_d vector.
struct SignedDelta {
    int sign = 0;  // in Z_{d'/d}
    Vec v;

    SignedDelta() = default;
    SignedDelta(int sign_, Vec v_) : sign(v_.dim().even() ? mod_reduce(sign_, 2) : 0), v(std::move(v_)) {}
    friend bool operator==(const SignedDelta&, const SignedDelta&) = default;
};

/// The sign projection f(tau^t Delta_v) = (-1)^{sgn t} Delta_v, applied to the
/// canonical D-form after rewriting it into Delta-form.
inline SignedDelta sign_project(const CanonicalPauli& g) {
    const Dim& dim = g.dim();
    int w = mod_sub(g.w, delta_dot(include(g.v)), dim.dprime());
    return SignedDelta(sgn(w, dim), g.v);
}

/// The star product restricted to Sigma_{d,n}.
inline SignedDelta sigma_star(const SignedDelta& a, const SignedDelta& b) {
    a.v.check_compat(b.v);
    const Dim& dim = a.v.dim();
    Vec sum = a.v + b.v;
    int sign = 0;
    if (dim.even()) {
        int rho = eps_bracket(include(a.v) + include(b.v), include(sum));
        sign = mod_reduce(a.sign + b.sign + s_sign(a.v, b.v) + rho, 2);
    }
    return SignedDelta(sign, std::move(sum));
}

// ---- text rendering --------------------------------------------------------

/// Single-qudit letter for an (x,z) pair with entries in {0,1}, or 0 if none.
inline char pauli_letter(int x, int z) {
    if (x == 0 && z == 0) return 'I';
    if (x == 1 && z == 0) return 'X';
    if (x == 1 && z == 1) return 'Y';
    if (x == 0 && z == 1) return 'Z';
    return 0;
}

/// Render `<t> ` prefix (omitted when t = 0) followed by either per-qudit
/// letters joined with ** or the generic X^[..] Z^[..] form.
inline std::string to_string(const CondensedPauli& p) {
    const Dim& dim = p.dim();
    std::ostringstream os;
    if (p.t != 0) os << '<' << p.t << "> ";
    bool letters = true;
    for (int i = 0; i < dim.n && letters; ++i)
        if (!pauli_letter(p.v.x(i), p.v.z(i))) letters = false;
    if (letters && dim.n > 0) {
        for (int i = 0; i < dim.n; ++i) {
            if (i) os << " ** ";
            os << pauli_letter(p.v.x(i), p.v.z(i));
        }
    } else {
        os << "X^[";
        for (int i = 0; i < dim.n; ++i) os << (i ? "," : "") << p.v.x(i);
        os << "] Z^[";
        for (int i = 0; i < dim.n; ++i) os << (i ? "," : "") << p.v.z(i);
        os << "]";
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const CondensedPauli& p) {
    return os << to_string(p);
}

/// Parse a Pauli literal: optional `<t>` prefix, then either letters joined
/// by `**` or `X^[..] Z^[..]`.  Whitespace is insignificant.
inline CondensedPauli parse_pauli(const std::string& text, const Dim& dim,
                                  Layout layout = Layout::separated) {
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    auto syntax_error = [&](const std::string& what) {
        fail(ErrorCode::SyntaxError, "Pauli literal: " + what + " at offset " + std::to_string(pos));
    };

    int t = 0;
    skip_ws();
    if (pos < text.size() && text[pos] == '<') {
        ++pos;
        size_t end = text.find('>', pos);
        if (end == std::string::npos) syntax_error("unterminated phase");
        try {
            t = mod_reduce(std::stol(text.substr(pos, end - pos)), dim.d);
        } catch (const std::exception&) {
            syntax_error("bad phase integer");
        }
        pos = end + 1;
    }
    skip_ws();

    std::vector<int> xs, zs;
    auto parse_int_list = [&](std::vector<int>& out) {
        skip_ws();
        if (pos >= text.size() || text[pos] != '[') syntax_error("expected '['");
        ++pos;
        while (true) {
            skip_ws();
            size_t start = pos;
            while (pos < text.size() && (isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '-')) ++pos;
            if (start == pos) syntax_error("expected integer");
            out.push_back(mod_reduce(std::stol(text.substr(start, pos - start)), dim.d));
            skip_ws();
            if (pos < text.size() && text[pos] == ',') { ++pos; continue; }
            if (pos < text.size() && text[pos] == ']') { ++pos; break; }
            syntax_error("expected ',' or ']'");
        }
    };

    if (pos < text.size() && text[pos] == 'X' && pos + 1 < text.size() && text[pos + 1] == '^') {
        pos += 2;
        parse_int_list(xs);
        skip_ws();
        if (pos >= text.size() || text[pos] != 'Z') syntax_error("expected Z^[..]");
        ++pos;
        if (pos >= text.size() || text[pos] != '^') syntax_error("expected '^'");
        ++pos;
        parse_int_list(zs);
    } else {
        while (true) {
            skip_ws();
            if (pos >= text.size()) syntax_error("expected Pauli letter");
            char c = text[pos++];
            switch (c) {
                case 'I': xs.push_back(0); zs.push_back(0); break;
                case 'X': xs.push_back(1); zs.push_back(0); break;
                case 'Y': xs.push_back(1); zs.push_back(1); break;
                case 'Z': xs.push_back(0); zs.push_back(1); break;
                default: --pos; syntax_error("expected Pauli letter");
            }
            skip_ws();
            if (pos + 1 < text.size() && text[pos] == '*' && text[pos + 1] == '*') {
                pos += 2;
                continue;
            }
            break;
        }
    }
    skip_ws();
    if (pos != text.size()) syntax_error("trailing input");
    if (static_cast<int>(xs.size()) != dim.n)
        fail(ErrorCode::DimensionMismatch,
             "Pauli literal has " + std::to_string(xs.size()) + " qudits, expected " + std::to_string(dim.n));
    return CondensedPauli(t, Vec::from_parts(dim, xs, zs, layout));
}

}  // namespace qclif
