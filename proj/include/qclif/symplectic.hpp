#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qclif/dim.hpp"
#include "qclif/encoding.hpp"
#include "qclif/errors.hpp"
#include "qclif/modmat.hpp"
#include "qclif/pauli.hpp"
#include "qclif/vec.hpp"

namespace qclif {

namespace gf2 {

/// Solve A x = b over F_2 by Gaussian elimination on an augmented bit matrix.
/// Deterministic pivot order (first nonzero row per column); free variables
/// are set to zero.  Returns nullopt when inconsistent.
inline std::optional<std::vector<int>> solve(std::vector<std::vector<int>> rows,
                                             std::vector<int> rhs) {
    const int m = static_cast<int>(rows.size());
    const int nvars = m == 0 ? 0 : static_cast<int>(rows[0].size());
    std::vector<int> pivot_col_of_row(m, -1);
    int rank = 0;
    for (int col = 0; col < nvars && rank < m; ++col) {
        int pivot = -1;
        for (int r = rank; r < m; ++r)
            if (rows[r][col]) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[pivot], rows[rank]);
        std::swap(rhs[pivot], rhs[rank]);
        for (int r = 0; r < m; ++r) {
            if (r != rank && rows[r][col]) {
                for (int c = col; c < nvars; ++c) rows[r][c] ^= rows[rank][c];
                rhs[r] ^= rhs[rank];
            }
        }
        pivot_col_of_row[rank] = col;
        ++rank;
    }
    for (int r = rank; r < m; ++r)
        if (rhs[r]) return std::nullopt;
    std::vector<int> x(nvars, 0);
    for (int r = 0; r < rank; ++r) x[pivot_col_of_row[r]] = rhs[r];
    return x;
}

}  // namespace gf2

/// Lift psi in Sp(Z_d^{2n}) to Phi in Sp(Z_{d'}^{2n}) with Phi = psi (mod d).
/// For even d: Phi = Phi0 + dE where Phi0 includes psi entrywise and E solves
/// E^T O' Phi0 + Phi0^T O' E = A over F_2, with Phi0^T O' Phi0 = O' + dA.
inline ModMatrix lift_symplectic(const ModMatrix& psi, const Dim& dim) {
    if (!is_symplectic(psi, dim.d))
        fail(ErrorCode::NotSymplectic, "lift_symplectic: input not in Sp(Z_d^{2n})");
    const int k = 2 * dim.n;
    if (!dim.even()) return psi;  // d' = d

    const int dp = dim.dprime();
    ModMatrix phi0 = psi.included(dp);
    ModMatrix omega_p = ModMatrix::omega_matrix(dim.n, dp);
    ModMatrix g = phi0.transposed() * omega_p * phi0;

    // A = (Phi0^T O' Phi0 - O') / d, an F_2 matrix.
    std::vector<std::vector<int>> a(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            int diff = mod_sub(g.at(i, j), omega_p.at(i, j), dp);
            if (diff % dim.d != 0)
                fail(ErrorCode::InvariantViolation, "lift defect not divisible by d");
            a[i][j] = (diff / dim.d) % 2;
        }

    // Unknowns E_{rc}, variable index r*k + c.  Equation (i,j):
    //   sum_{r,c} E_{rc} [ O'_{rc'}... ] : coefficient of E_{rc} is
    //   (r-th row contribution) from (E^T O' Phi0)_{ij} = sum_{r,c} E_{ri} O'_{rc} Phi0_{cj}
    //   and (Phi0^T O' E)_{ij} = sum_{r,c} Phi0_{ri} O'_{rc} E_{cj}.
    const int nvars = k * k;
    std::vector<std::vector<int>> rows;
    std::vector<int> rhs;
    rows.reserve(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::vector<int> row(nvars, 0);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) {
                    int w = omega_p.at(r, c);
                    if (w % 2 == 0) continue;
                    row[r * k + i] ^= (w * phi0.at(c, j)) % 2 != 0 ? 1 : 0;
                    row[c * k + j] ^= (phi0.at(r, i) * w) % 2 != 0 ? 1 : 0;
                }
            rows.push_back(std::move(row));
            rhs.push_back(a[i][j]);
        }

    auto sol = gf2::solve(std::move(rows), std::move(rhs));
    if (!sol)
        fail(ErrorCode::InvariantViolation,
             "symplectic lift system unsolvable; contradicts the lifting theorem");

    ModMatrix phi = phi0;
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
            phi.at(r, c) = mod_add(phi.at(r, c), dim.d * (*sol)[r * k + c], dp);

    if (!is_symplectic(phi, dp) || !(phi.reduced(dim.d) == psi))
        fail(ErrorCode::InvariantViolation, "lift postcondition failed");
    return phi;
}

/// A symplectic Delta-encoding (lambda, phi): phi in Sp(V', omega') and
/// lambda a homomorphism V' -> Z_d stored by its values on the standard
/// basis of V'.
struct DeltaEncoding {
    Dim dim;
    std::vector<int> lambda;  // 2n values in Z_d
    ModMatrix phi;            // 2n x 2n over Z_{d'}

    DeltaEncoding(Dim dim_, std::vector<int> lambda_, ModMatrix phi_)
        : dim(dim_), lambda(std::move(lambda_)), phi(std::move(phi_)) {
        if (static_cast<int>(lambda.size()) != 2 * dim.n)
            fail(ErrorCode::InvariantViolation, "lambda must have 2n basis values");
        for (int& l : lambda) {
            if (l < 0 || l >= dim.d)
                fail(ErrorCode::InvariantViolation, "lambda values must lie in Z_d");
        }
        if (phi.rows() != 2 * dim.n || phi.cols() != 2 * dim.n || phi.mod() != dim.dprime() ||
            !is_symplectic(phi, dim.dprime()))
            fail(ErrorCode::InvariantViolation, "phi is not in Sp(V', omega')");
    }

    /// lambda extended R'-linearly to arbitrary v in V'.
    int lambda_of(const ExtVec& v) const {
        ExtVec sep = v.relayout(Layout::separated);
        long long acc = 0;
        for (int i = 0; i < 2 * dim.n; ++i) acc += static_cast<long long>(lambda[i]) * sep[i];
        return mod_reduce(acc, dim.d);
    }

    /// The relation tau^w Delta_v |-> zeta^{lambda v} tau^w Delta_{phi v},
    /// in canonical form.
    CanonicalPauli evaluate(const GeneralPauli& g) const {
        require_same_dim(dim, g.dim(), "delta evaluate");
        int w = mod_add(g.w, mod_reduce(2LL * lambda_of(g.v), dim.dprime()), dim.dprime());
        return canonicalize(GeneralPauli(w, phi.apply(g.v)));
    }
};

/// Condensed -> Delta: lift psi (or use a caller-provided lift) and set
/// lambda(b) = mu(b) + (d/2) <eps>_{incl(psi b), phi(incl b)}.
inline DeltaEncoding delta_from_condensed(const CondensedEncoding& enc,
                                          std::optional<ModMatrix> phi_choice = std::nullopt) {
    const Dim& dim = enc.dim();
    ModMatrix phi = phi_choice ? std::move(*phi_choice) : lift_symplectic(enc.psi(), dim);
    if (phi.mod() != dim.dprime() || !is_symplectic(phi, dim.dprime()) ||
        !(phi.reduced(dim.d) == enc.psi()))
        fail(ErrorCode::NotSymplectic, "provided phi is not a symplectic lift of psi");
    std::vector<int> lambda(2 * dim.n);
    for (int i = 0; i < 2 * dim.n; ++i) {
        ExtVec psi_b = include(Vec(dim, Layout::separated, enc.psi().col(i)));
        ExtVec phi_b(dim, Layout::separated, phi.col(i));
        int l = enc.mu_basis(i);
        if (dim.even())
            l = mod_add(l, mod_mul(dim.d / 2, eps_bracket(psi_b, phi_b), dim.d), dim.d);
        lambda[i] = l;
    }
    return DeltaEncoding(dim, std::move(lambda), std::move(phi));
}

/// Delta -> condensed: psi = cast(phi), mu(b) = lambda(b) - (d/2)<eps>.
inline CondensedEncoding condensed_from_delta(const DeltaEncoding& de) {
    const Dim& dim = de.dim;
    ModMatrix psi = de.phi.reduced(dim.d);
    std::vector<int> mu(2 * dim.n);
    for (int i = 0; i < 2 * dim.n; ++i) {
        ExtVec psi_b = include(Vec(dim, Layout::separated, psi.col(i)));
        ExtVec phi_b(dim, Layout::separated, de.phi.col(i));
        int m = de.lambda[i];
        if (dim.even())
            m = mod_sub(m, mod_mul(dim.d / 2, eps_bracket(psi_b, phi_b), dim.d), dim.d);
        mu[i] = m;
    }
    return CondensedEncoding(dim, std::move(mu), std::move(psi));
}

namespace detail {

/// Iterate over all of V' = Z_{d'}^{2n} in separated layout.
template <class F>
void for_each_extvec(const Dim& dim, F&& f) {
    std::vector<int> e(2 * dim.n, 0);
    const int dp = dim.dprime();
    while (true) {
        f(ExtVec(dim, Layout::separated, e));
        int i = 0;
        for (; i < 2 * dim.n; ++i) {
            if (++e[i] < dp) break;
            e[i] = 0;
        }
        if (i == 2 * dim.n) break;
    }
}

template <class F>
void for_each_vec(const Dim& dim, F&& f) {
    std::vector<int> e(2 * dim.n, 0);
    while (true) {
        f(Vec(dim, Layout::separated, e));
        int i = 0;
        for (; i < 2 * dim.n; ++i) {
            if (++e[i] < dim.d) break;
            e[i] = 0;
        }
        if (i == 2 * dim.n) break;
    }
}

template <class F>
void for_each_eps(const Dim& dim, F&& f) {
    if (!dim.even()) {
        f(std::vector<int>(2 * dim.n, 0));
        return;
    }
    std::vector<int> e(2 * dim.n, 0);
    while (true) {
        f(e);
        int i = 0;
        for (; i < 2 * dim.n; ++i) {
            if (++e[i] < 2) break;
            e[i] = 0;
        }
        if (i == 2 * dim.n) break;
    }
}

inline double extvec_count(const Dim& dim) {
    double c = 1;
    for (int i = 0; i < 2 * dim.n; ++i) c *= dim.dprime();
    return c;
}

}  // namespace detail

/// Right-definiteness of the relation Delta_v |-> zeta^{lambda v} Delta_{phi v}
/// for linear phi: true iff <eps>_v = <phi eps>_{phi v} for all v in V' and
/// eps in Z_{d'/d}^{2n}.  Independent of lambda.
inline bool check_right_definite(const ModMatrix& phi, const Dim& dim) {
    if (phi.rows() != 2 * dim.n || phi.cols() != 2 * dim.n || phi.mod() != dim.dprime())
        fail(ErrorCode::DimensionMismatch, "check_right_definite: bad phi");
    if (!dim.even()) return true;
    double work = detail::extvec_count(dim);
    for (int i = 0; i < 2 * dim.n; ++i) work *= 2;
    if (work > 1e7) fail(ErrorCode::TooLarge, "right-definiteness check too large");

    bool ok = true;
    detail::for_each_extvec(dim, [&](const ExtVec& v) {
        if (!ok) return;
        detail::for_each_eps(dim, [&](const std::vector<int>& eps) {
            if (!ok) return;
            ExtVec veps = v;
            for (int j = 0; j < 2 * dim.n; ++j)
                veps.set(j, veps[j] + dim.d * eps[j]);
            int lhs = eps_bracket(v, veps);
            int rhs = eps_bracket(phi.apply(v), phi.apply(veps));
            if (lhs != rhs) ok = false;
        });
    });
    return ok;
}

/// A pre-Delta-encoding as explicit tables over V'.  lambda values are
/// (1/2)R' elements stored doubled (tau exponents in Z_{d'}); phi is an
/// arbitrary function table.  Index = separated-layout mixed radix over d'.
struct PreDeltaEncoding {
    Dim dim;
    std::vector<int> lambda;   // size d'^{2n}, doubled phase exponents
    std::vector<ExtVec> phi;   // size d'^{2n}

    static size_t index_of(const ExtVec& v) {
        ExtVec sep = v.relayout(Layout::separated);
        size_t idx = 0;
        for (int i = 2 * v.dim().n - 1; i >= 0; --i) idx = idx * v.dim().dprime() + sep[i];
        return idx;
    }
};

namespace detail {
inline size_t table_size(const Dim& dim) {
    double c = extvec_count(dim);
    if (c > 1e7) fail(ErrorCode::TooLarge, "pre-Delta table too large");
    return static_cast<size_t>(c);
}
}  // namespace detail

/// The unique extension of lambda0 : V -> (1/2)R' (doubled) making the
/// relation Delta_v |-> zeta^{lambda v} Delta_{phi v} right-definite:
///   lambda(v + d eps) = lambda0(v) + (d/2)(<eps>_v + <delta>_{phi v}).
/// phi is given as a full table on V'; lambda0 is indexed by V embedded in V'.
inline std::vector<int> extend_lambda(const Dim& dim, const std::vector<int>& lambda0,
                                      const std::vector<ExtVec>& phi) {
    size_t tsize = detail::table_size(dim);
    if (phi.size() != tsize)
        fail(ErrorCode::DimensionMismatch, "extend_lambda: phi table size mismatch");
    std::vector<int> lambda(tsize, 0);
    detail::for_each_vec(dim, [&](const Vec& v) {
        ExtVec v_incl = include(v);
        size_t vidx = PreDeltaEncoding::index_of(v_incl);
        detail::for_each_eps(dim, [&](const std::vector<int>& eps) {
            ExtVec veps = v_incl.relayout(Layout::separated);
            for (int j = 0; j < 2 * dim.n; ++j) veps.set(j, veps[j] + dim.d * eps[j]);
            size_t idx = PreDeltaEncoding::index_of(veps);
            int corr = 0;
            if (dim.even()) {
                int e1 = eps_bracket(v_incl, veps);
                int e2 = eps_bracket(phi[vidx], phi[idx]);
                corr = mod_mul(dim.d, e1 + e2, dim.dprime());
            }
            lambda[idx] = mod_add(lambda0[vidx], corr, dim.dprime());
        });
    });
    return lambda;
}

/// Linearization of a pre-Delta-encoding whose reduced map cast(phi0) is
/// Z-linear mod d: replaces phi0 by the R'-linear map agreeing on the
/// standard basis and adjusts lambda by (d/2)<delta>_{phi v, phi0 v}.
inline std::pair<std::vector<int>, ModMatrix> linearize(const Dim& dim,
                                                        const std::vector<int>& lambda0,
                                                        const std::vector<ExtVec>& phi0) {
    size_t tsize = detail::table_size(dim);
    if (phi0.size() != tsize || lambda0.size() != tsize)
        fail(ErrorCode::DimensionMismatch, "linearize: table size mismatch");
    const int dp = dim.dprime();

    // Build the linear map from phi0 on standard basis vectors.
    ModMatrix phi(2 * dim.n, 2 * dim.n, dp);
    for (int j = 0; j < 2 * dim.n; ++j) {
        ExtVec ej = ExtVec::zero(dim, Layout::separated);
        ej.set(j, 1);
        ExtVec img = phi0[PreDeltaEncoding::index_of(ej)].relayout(Layout::separated);
        for (int i = 0; i < 2 * dim.n; ++i) phi.at(i, j) = img[i];
    }

    // Precondition: cast(phi0) must agree with cast(phi) everywhere.
    std::vector<int> lambda(tsize, 0);
    bool linear = true;
    detail::for_each_extvec(dim, [&](const ExtVec& v) {
        if (!linear) return;
        size_t idx = PreDeltaEncoding::index_of(v);
        ExtVec lin = phi.apply(v);
        if (!(cast(lin) == cast(phi0[idx].relayout(Layout::separated)))) {
            linear = false;
            return;
        }
        int corr = dim.even()
                       ? mod_mul(dim.d, eps_bracket(lin, phi0[idx].relayout(Layout::separated)), dp)
                       : 0;
        lambda[idx] = mod_add(lambda0[idx], corr, dp);
    });
    if (!linear)
        fail(ErrorCode::NotLinearModD, "linearize: cast(phi0) is not linear mod d");
    return {std::move(lambda), std::move(phi)};
}

}  // namespace qclif
