#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "qclif/dim.hpp"
#include "qclif/errors.hpp"
#include "qclif/modmat.hpp"
#include "qclif/pauli.hpp"
#include "qclif/vec.hpp"

namespace qclif {

inline bool check_wellformed(const Dim& dim, const std::vector<int>& mu, const ModMatrix& psi) {
    if (static_cast<int>(mu.size()) != 2 * dim.n) return false;
    if (psi.rows() != 2 * dim.n || psi.cols() != 2 * dim.n || psi.mod() != dim.d) return false;
    return is_symplectic(psi, dim.d);
}

/// The condensed encoding (mu, psi) of a projective Clifford: mu holds the
/// phase exponents on the 2n standard basis vectors (extended linearly on
/// demand, never tabulated), psi is a symplectomorphism of Z_d^{2n} stored
/// with column i = psi(b_i) in separated layout.
class CondensedEncoding {
public:
    CondensedEncoding(Dim dim, std::vector<int> mu, ModMatrix psi)
        : dim_(dim), mu_(std::move(mu)), psi_(std::move(psi)) {
        for (int& m : mu_) m = mod_reduce(m, dim_.d);
        if (!check_wellformed(dim_, mu_, psi_))
            fail(ErrorCode::NotSymplectic, "psi is not a symplectomorphism of Z_d^{2n}");
    }

    static CondensedEncoding identity(Dim dim) {
        return CondensedEncoding(dim, std::vector<int>(2 * dim.n, 0),
                                 ModMatrix::identity(2 * dim.n, dim.d));
    }

    const Dim& dim() const { return dim_; }
    const std::vector<int>& mu() const { return mu_; }
    const ModMatrix& psi() const { return psi_; }

    int mu_basis(int i) const { return mu_[i]; }

    /// mu extended linearly to arbitrary v in V.
    int mu_of(const Vec& v) const {
        Vec sep = v.relayout(Layout::separated);
        long long acc = 0;
        for (int i = 0; i < 2 * dim_.n; ++i) acc += static_cast<long long>(mu_[i]) * sep[i];
        return mod_reduce(acc, dim_.d);
    }

    Vec psi_of(const Vec& v) const { return psi_.apply(v); }

    friend bool operator==(const CondensedEncoding&, const CondensedEncoding&) = default;

private:
    Dim dim_;
    std::vector<int> mu_;
    ModMatrix psi_;
};

/// The evaluation correction kappa' : V' -> Z_{d'/d}.  Computed fresh per
/// call; non-linear in v.
///
/// Derived from the interlaced factorization of Delta_v: with
/// w_i = x_i incl(psi(b_i^x)) + z_i incl(psi(b_i^z)), the tau-exponent
/// correction is
///   z.x + sum_i x_i z_i omega'(a_i, b_i) + sum_{i<j} omega'(w_i, w_j)
///       + d <eps>_{sum_i w_i, incl(psi(cast v))}
/// which must land in {0, d} mod d'; anything else is a hard invariant
/// failure.  (The printed closed forms replace the cross pairs i < j by
/// omega'(w_i, psi(cast v)) summed over i, which telescopes to the <eps>
/// term alone and loses the cross contribution as soon as n > 1.)
inline int kappa_ext(const CondensedEncoding& enc, const ExtVec& v) {
    const Dim& dim = enc.dim();
    require_same_dim(dim, v.dim(), "kappa");
    ExtVec vs = v.relayout(Layout::separated);
    const int dp = dim.dprime();

    ExtVec psi_vbar = include(enc.psi().apply(cast(vs)));

    int total = 0;
    ExtVec partial = ExtVec::zero(dim, Layout::separated);
    for (int i = 0; i < dim.n; ++i) {
        ExtVec col_x(dim, Layout::separated, enc.psi().col(i));
        ExtVec col_z(dim, Layout::separated, enc.psi().col(dim.n + i));
        int xi = vs.x(i), zi = vs.z(i);
        // z.x and the within-qudit product phase
        total = mod_add(total, mod_mul(xi, zi, dp), dp);
        total = mod_add(total, mod_mul(mod_mul(xi, zi, dp), omega_ext(col_x, col_z), dp), dp);
        // cross terms against everything accumulated so far
        ExtVec w_i = col_x.scaled(xi) + col_z.scaled(zi);
        total = mod_add(total, omega_ext(partial, w_i), dp);
        partial = partial + w_i;
    }
    total = mod_add(total, mod_mul(dim.d, eps_bracket(partial, psi_vbar), dp), dp);
    if (total % dim.d != 0)
        fail(ErrorCode::InvariantViolation, "kappa sum not divisible by d");
    return (total / dim.d) % 2;
}

/// kappa(v) = kappa'(include v) for v in V.
inline int kappa(const CondensedEncoding& enc, const Vec& v) {
    return kappa_ext(enc, include(v));
}

/// Evaluation on Q_{d,n}: zeta^t Delta_v  |->  zeta^{t + mu(v) + (d/2)kappa(v)} Delta_{psi v}.
inline CondensedPauli evaluate(const CondensedEncoding& enc, const CondensedPauli& p) {
    const Dim& dim = enc.dim();
    require_same_dim(dim, p.dim(), "evaluate");
    int t = mod_add(p.t, enc.mu_of(p.v), dim.d);
    if (dim.even()) t = mod_add(t, mod_mul(dim.d / 2, kappa(enc, p.v), dim.d), dim.d);
    return CondensedPauli(t, enc.psi_of(p.v));
}

/// Evaluation of an arbitrary Pauli: rewrite into Delta-form, carry any odd
/// tau factor through the center unchanged.
inline CanonicalPauli evaluate(const CondensedEncoding& enc, const CanonicalPauli& g) {
    const Dim& dim = enc.dim();
    require_same_dim(dim, g.dim(), "evaluate");
    int w = mod_sub(g.w, delta_dot(include(g.v)), dim.dprime());
    int carry = dim.even() ? w % 2 : 0;
    int t = dim.even() ? (w - carry) / 2 : mod_mul(w, (dim.d + 1) / 2, dim.d);
    CondensedPauli image = evaluate(enc, CondensedPauli(t, g.v));
    return canonicalize(GeneralPauli(mod_add(2 * image.t, carry, dim.dprime()), include(image.v)));
}

/// Composition: psi3 = psi2 psi1 and, on standard basis vectors only,
///   mu3(b) = mu1(b) + mu2(psi1 b) + (d/2) kappa2(psi1 b).
inline CondensedEncoding compose(const CondensedEncoding& e2, const CondensedEncoding& e1) {
    const Dim& dim = e1.dim();
    require_same_dim(dim, e2.dim(), "compose");
    ModMatrix psi3 = e2.psi() * e1.psi();
    std::vector<int> mu3(2 * dim.n);
    for (int i = 0; i < 2 * dim.n; ++i) {
        Vec psi1_b(dim, Layout::separated, e1.psi().col(i));
        int m = mod_add(e1.mu_basis(i), e2.mu_of(psi1_b), dim.d);
        if (dim.even())
            m = mod_add(m, mod_mul(dim.d / 2, kappa(e2, psi1_b), dim.d), dim.d);
        mu3[i] = m;
    }
    return CondensedEncoding(dim, std::move(mu3), std::move(psi3));
}

/// Closed-form symplectic inverse: component i of psi^{-1}(v) is
/// x_i = omega(psi(b_i^z), v), z_i = omega(v, psi(b_i^x)).
inline ModMatrix symplectic_inverse(const ModMatrix& psi, const Dim& dim) {
    ModMatrix inv(2 * dim.n, 2 * dim.n, dim.d);
    for (int j = 0; j < 2 * dim.n; ++j) {
        Vec ej = Vec::zero(dim, Layout::separated);
        ej.set(j, 1);
        for (int i = 0; i < dim.n; ++i) {
            Vec col_z(dim, Layout::separated, psi.col(dim.n + i));
            Vec col_x(dim, Layout::separated, psi.col(i));
            inv.at(i, j) = omega(col_z, ej);
            inv.at(dim.n + i, j) = omega(ej, col_x);
        }
    }
    return inv;
}

/// Inverse encoding: mu_inv(b) = -mu(psi^{-1} b) + (d/2) kappa(psi^{-1} b).
inline CondensedEncoding invert(const CondensedEncoding& enc) {
    const Dim& dim = enc.dim();
    ModMatrix psi_inv = symplectic_inverse(enc.psi(), dim);
    std::vector<int> mu_inv(2 * dim.n);
    for (int i = 0; i < 2 * dim.n; ++i) {
        Vec b_inv(dim, Layout::separated, psi_inv.col(i));
        int m = mod_neg(enc.mu_of(b_inv), dim.d);
        if (dim.even())
            m = mod_add(m, mod_mul(dim.d / 2, kappa(enc, b_inv), dim.d), dim.d);
        mu_inv[i] = m;
    }
    return CondensedEncoding(dim, std::move(mu_inv), std::move(psi_inv));
}

/// The kernel V* -> PCl'_{d,n} of the structure theorem: psi = id.
inline CondensedEncoding embed_character(const Dim& dim, const std::vector<int>& mu) {
    return CondensedEncoding(dim, mu, ModMatrix::identity(2 * dim.n, dim.d));
}

/// Conjugation by a Pauli: P Q P^dag = zeta^{omega(v_P, v_Q)} Q.
inline CondensedEncoding pauli_to_clifford(const CondensedPauli& p) {
    const Dim& dim = p.dim();
    Vec vp = p.v.relayout(Layout::separated);
    std::vector<int> mu(2 * dim.n);
    for (int i = 0; i < 2 * dim.n; ++i) {
        Vec ei = Vec::zero(dim, Layout::separated);
        ei.set(i, 1);
        mu[i] = omega(vp, ei);
    }
    return embed_character(dim, mu);
}

inline const ModMatrix& project_symplectic(const CondensedEncoding& enc) { return enc.psi(); }

/// The D-encoding exponent: gamma(D_v) = tau^{d_phase(v)} D_{psi v}.
/// Returned doubled (as a tau exponent in Z_{d'}), so r = 1/2 reads as 1.
inline int d_phase(const CondensedEncoding& enc, const Vec& v) {
    require_same_dim(enc.dim(), v.dim(), "d_phase");
    CanonicalPauli image = evaluate(enc, CanonicalPauli(0, v));
    return image.w;
}

/// All matrices in Sp(Z_d^{2n}), by exhaustive scan.  Guarded.
inline std::vector<ModMatrix> enumerate_symplectic(const Dim& dim) {
    const int k = 2 * dim.n;
    double count = 1;
    for (int i = 0; i < k * k; ++i) {
        count *= dim.d;
        if (count > 1e7) fail(ErrorCode::TooLarge, "d^{4n^2} exceeds the enumeration guard");
    }
    std::vector<ModMatrix> out;
    std::vector<int> entries(static_cast<size_t>(k) * k, 0);
    while (true) {
        ModMatrix m(k, k, dim.d, entries);
        if (is_symplectic(m, dim.d)) out.push_back(std::move(m));
        int i = 0;
        for (; i < k * k; ++i) {
            if (++entries[i] < dim.d) break;
            entries[i] = 0;
        }
        if (i == k * k) break;
    }
    return out;
}

/// Stream every condensed encoding at (d,n) exactly once:
/// |PCl'_{d,n}| = d^{2n} |Sp(Z_d^{2n})|.
inline void enumerate_group(const Dim& dim, const std::function<void(const CondensedEncoding&)>& yield) {
    std::vector<ModMatrix> sp = enumerate_symplectic(dim);
    std::vector<int> mu(2 * dim.n, 0);
    for (const ModMatrix& psi : sp) {
        std::fill(mu.begin(), mu.end(), 0);
        while (true) {
            yield(CondensedEncoding(dim, mu, psi));
            int i = 0;
            for (; i < 2 * dim.n; ++i) {
                if (++mu[i] < dim.d) break;
                mu[i] = 0;
            }
            if (i == 2 * dim.n) break;
        }
    }
}

inline std::vector<CondensedEncoding> enumerate_group(const Dim& dim) {
    std::vector<CondensedEncoding> out;
    enumerate_group(dim, [&](const CondensedEncoding& e) { out.push_back(e); });
    return out;
}

/// Text rendering `(mu=[...]; psi=[[...],...])`.
inline std::string to_string(const CondensedEncoding& enc) {
    std::ostringstream os;
    os << "(mu=[";
    for (int i = 0; i < 2 * enc.dim().n; ++i) os << (i ? "," : "") << enc.mu_basis(i);
    os << "]; psi=" << enc.psi() << ")";
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const CondensedEncoding& enc) {
    return os << to_string(enc);
}

}  // namespace qclif
