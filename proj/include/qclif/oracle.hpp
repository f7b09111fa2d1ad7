#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "qclif/dim.hpp"
#include "qclif/encoding.hpp"
#include "qclif/errors.hpp"
#include "qclif/pauli.hpp"

namespace qclif::oracle {

using cplx = std::complex<double>;

constexpr double kUnitaryTol = 1e-9;
constexpr double kMatchTol = 1e-6;

/// zeta = exp(2 pi i / d).
inline cplx zeta_root(const Dim& dim, long long power = 1) {
    double theta = 2.0 * std::numbers::pi * static_cast<double>(power) / dim.d;
    return cplx(std::cos(theta), std::sin(theta));
}

/// tau: the square root of zeta of order d'.  exp(pi i / d) for even d,
/// zeta^{(d+1)/2} for odd d.
inline cplx tau_root(const Dim& dim, long long power = 1) {
    double theta;
    if (dim.even())
        theta = std::numbers::pi * static_cast<double>(power) / dim.d;
    else
        theta = 2.0 * std::numbers::pi * static_cast<double>(power * ((dim.d + 1) / 2)) / dim.d;
    return cplx(std::cos(theta), std::sin(theta));
}

/// Dense complex matrix of size d^n, checked unitary at construction.
class DenseUnitary {
public:
    DenseUnitary(Dim dim, std::vector<cplx> entries, double tol = kUnitaryTol)
        : dim_(dim), size_(size_for(dim)), a_(std::move(entries)) {
        if (a_.size() != static_cast<size_t>(size_) * size_)
            fail(ErrorCode::DimensionMismatch, "dense matrix entry count mismatch");
        check_unitary(tol);
    }

    static int size_for(const Dim& dim) {
        long long s = 1;
        for (int i = 0; i < dim.n; ++i) {
            s *= dim.d;
            if (s > 1024) fail(ErrorCode::TooLarge, "d^n exceeds 2^10");
        }
        return static_cast<int>(s);
    }

    const Dim& dim() const { return dim_; }
    int size() const { return size_; }
    cplx at(int r, int c) const { return a_[static_cast<size_t>(r) * size_ + c]; }

    DenseUnitary operator*(const DenseUnitary& o) const {
        require_same_dim(dim_, o.dim_, "dense product");
        std::vector<cplx> r(static_cast<size_t>(size_) * size_, cplx(0, 0));
        for (int i = 0; i < size_; ++i)
            for (int k = 0; k < size_; ++k) {
                cplx aik = at(i, k);
                if (std::abs(aik) < 1e-15) continue;
                for (int j = 0; j < size_; ++j)
                    r[static_cast<size_t>(i) * size_ + j] += aik * o.at(k, j);
            }
        return DenseUnitary(dim_, std::move(r));
    }

    DenseUnitary adjoint() const {
        std::vector<cplx> r(static_cast<size_t>(size_) * size_);
        for (int i = 0; i < size_; ++i)
            for (int j = 0; j < size_; ++j) r[static_cast<size_t>(j) * size_ + i] = std::conj(at(i, j));
        return DenseUnitary(dim_, std::move(r));
    }

    double max_diff(const DenseUnitary& o) const {
        double m = 0;
        for (size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
        return m;
    }

private:
    void check_unitary(double tol) const {
        for (int i = 0; i < size_; ++i)
            for (int j = 0; j < size_; ++j) {
                cplx acc(0, 0);
                for (int k = 0; k < size_; ++k) acc += std::conj(at(k, i)) * at(k, j);
                cplx expect = (i == j) ? cplx(1, 0) : cplx(0, 0);
                if (std::abs(acc - expect) > tol)
                    fail(ErrorCode::InvariantViolation, "matrix is not unitary within tolerance");
            }
    }

    Dim dim_;
    int size_;
    std::vector<cplx> a_;
};

namespace detail {

/// Single-qudit X^q Z^p as a dense matrix: maps |r> to zeta^{p r} |r+q>.
inline std::vector<cplx> xz_matrix(const Dim& dim, int q, int p) {
    std::vector<cplx> m(static_cast<size_t>(dim.d) * dim.d, cplx(0, 0));
    for (int r = 0; r < dim.d; ++r) {
        int row = mod_reduce(r + q, dim.d);
        m[static_cast<size_t>(row) * dim.d + r] = zeta_root(dim, static_cast<long long>(p) * r);
    }
    return m;
}

inline std::vector<cplx> kron(const std::vector<cplx>& a, int na, const std::vector<cplx>& b, int nb) {
    int n = na * nb;
    std::vector<cplx> r(static_cast<size_t>(n) * n);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l)
                    r[static_cast<size_t>(i * nb + k) * n + (j * nb + l)] =
                        a[static_cast<size_t>(i) * na + j] * b[static_cast<size_t>(k) * nb + l];
    return r;
}

}  // namespace detail

/// tau^w D_v as a dense matrix.
inline DenseUnitary pauli_matrix(const CanonicalPauli& g, double tol = kUnitaryTol) {
    const Dim& dim = g.dim();
    int size = DenseUnitary::size_for(dim);
    std::vector<cplx> m{cplx(1, 0)};
    int cur = 1;
    for (int i = 0; i < dim.n; ++i) {
        m = detail::kron(m, cur, detail::xz_matrix(dim, g.v.x(i), g.v.z(i)), dim.d);
        cur *= dim.d;
    }
    cplx phase = tau_root(dim, g.w);
    for (auto& e : m) e *= phase;
    (void)size;
    return DenseUnitary(dim, std::move(m), tol);
}

inline DenseUnitary pauli_matrix(const CondensedPauli& p, double tol = kUnitaryTol) {
    return pauli_matrix(canonical_form(p), tol);
}

/// Named gates: fourier(d) for any d; s, cnot, hadamard for qubits only.
inline DenseUnitary gate_matrix(const std::string& name, const Dim& dim, double tol = kUnitaryTol) {
    if (name == "fourier") {
        if (dim.n != 1) fail(ErrorCode::UnsupportedGate, "fourier is single-qudit");
        std::vector<cplx> m(static_cast<size_t>(dim.d) * dim.d);
        double norm = 1.0 / std::sqrt(static_cast<double>(dim.d));
        for (int j = 0; j < dim.d; ++j)
            for (int k = 0; k < dim.d; ++k)
                m[static_cast<size_t>(j) * dim.d + k] = norm * zeta_root(dim, static_cast<long long>(j) * k);
        return DenseUnitary(dim, std::move(m), tol);
    }
    if (name == "hadamard") {
        if (dim.d != 2 || dim.n != 1) fail(ErrorCode::UnsupportedGate, "hadamard requires d=2, n=1");
        double s = 1.0 / std::sqrt(2.0);
        return DenseUnitary(dim, {s, s, s, -s}, tol);
    }
    if (name == "s") {
        if (dim.d != 2 || dim.n != 1) fail(ErrorCode::UnsupportedGate, "s requires d=2, n=1");
        return DenseUnitary(dim, {1, 0, 0, cplx(0, 1)}, tol);
    }
    if (name == "cnot") {
        if (dim.d != 2 || dim.n != 2) fail(ErrorCode::UnsupportedGate, "cnot requires d=2, n=2");
        std::vector<cplx> m(16, cplx(0, 0));
        m[0 * 4 + 0] = 1;
        m[1 * 4 + 1] = 1;
        m[2 * 4 + 3] = 1;
        m[3 * 4 + 2] = 1;
        return DenseUnitary(dim, std::move(m), tol);
    }
    fail(ErrorCode::UnsupportedGate, "unknown gate: " + name);
}

/// Decode U P U^dag as tau^w D_v, matching the permutation pattern exactly
/// and snapping the common phase to the nearest tau power.
inline CanonicalPauli extract_pauli_canonical(const DenseUnitary& u, const CanonicalPauli& p,
                                              double match_tol = kMatchTol) {
    const Dim& dim = u.dim();
    require_same_dim(dim, p.dim(), "extract_pauli");
    DenseUnitary m = u * pauli_matrix(p) * u.adjoint();
    int size = m.size();

    // Column of |0..0> determines the X part.
    int row0 = -1;
    for (int r = 0; r < size; ++r) {
        if (std::abs(m.at(r, 0)) > 0.5) {
            if (row0 >= 0) fail(ErrorCode::NotAPauli, "conjugate has multiple large entries per column");
            row0 = r;
        }
    }
    if (row0 < 0) fail(ErrorCode::NotAPauli, "conjugate has no unit entry in column 0");
    cplx c0 = m.at(row0, 0);
    if (std::abs(std::abs(c0) - 1.0) > match_tol)
        fail(ErrorCode::NotAPauli, "conjugate entry has non-unit modulus");

    std::vector<int> q(dim.n), pz(dim.n);
    int idx = row0;
    for (int i = dim.n - 1; i >= 0; --i) {
        q[i] = idx % dim.d;
        idx /= dim.d;
    }
    // Z part from columns of the basis states e_i.
    double two_pi = 2.0 * std::numbers::pi;
    int stride = size;
    for (int i = 0; i < dim.n; ++i) {
        stride /= dim.d;
        int colidx = stride;  // |0..010..0> with 1 in slot i
        int rowidx = 0;
        for (int j = 0, st2 = size; j < dim.n; ++j) {
            st2 /= dim.d;
            int digit = (j == i ? 1 : 0) + q[j];
            rowidx += mod_reduce(digit, dim.d) * st2;
        }
        cplx val = m.at(rowidx, colidx);
        if (std::abs(std::abs(val) - 1.0) > match_tol)
            fail(ErrorCode::NotAPauli, "conjugate entry has non-unit modulus");
        double ang = std::arg(val / c0);
        long long k = std::llround(ang * dim.d / two_pi);
        pz[i] = mod_reduce(k, dim.d);
    }
    // c0 = tau^w; for odd d, tau = zeta^{(d+1)/2}, so w = 2j where c0 = zeta^j.
    long long wk = std::llround(std::arg(c0) * dim.dprime() / two_pi);
    int w = dim.even() ? mod_reduce(wk, dim.dprime()) : mod_reduce(2 * wk, dim.d);

    CanonicalPauli result(w, Vec::from_parts(dim, q, pz, p.v.layout()));
    if (m.max_diff(pauli_matrix(result)) > match_tol)
        fail(ErrorCode::NotAPauli, "conjugate does not match any Pauli within tolerance");
    return result;
}

/// Conjugation of an element of Q_{d,n}, which stays inside Q_{d,n} whenever
/// U is Clifford.
inline CondensedPauli extract_pauli(const DenseUnitary& u, const CondensedPauli& p,
                                    double match_tol = kMatchTol) {
    CanonicalPauli g = extract_pauli_canonical(u, canonical_form(p), match_tol);
    try {
        return condensed_form(g);
    } catch (const Error&) {
        fail(ErrorCode::NotAPauli, "conjugate left Q_{d,n}; U is not Clifford");
    }
}

/// Read (mu, psi) off the conjugation action on basis Delta operators.
inline CondensedEncoding encoding_from_unitary(const DenseUnitary& u, double match_tol = kMatchTol) {
    const Dim& dim = u.dim();
    std::vector<int> mu(2 * dim.n);
    ModMatrix psi(2 * dim.n, 2 * dim.n, dim.d);
    for (int j = 0; j < 2 * dim.n; ++j) {
        Vec b = Vec::zero(dim, Layout::separated);
        b.set(j, 1);
        CondensedPauli image = [&] {
            try {
                return extract_pauli(u, CondensedPauli(0, b), match_tol);
            } catch (const Error&) {
                fail(ErrorCode::NotClifford, "basis conjugate is not a Pauli");
            }
        }();
        mu[j] = image.t;
        for (int i = 0; i < 2 * dim.n; ++i) psi.at(i, j) = image.v[i];
    }
    if (!check_wellformed(dim, mu, psi))
        fail(ErrorCode::NotClifford, "conjugation action is not symplectic");
    return CondensedEncoding(dim, std::move(mu), std::move(psi));
}

/// True iff evaluate(enc, Delta_v) matches U Delta_v U^dag for every v in V.
inline bool verify_encoding(const CondensedEncoding& enc, const DenseUnitary& u,
                            double match_tol = kMatchTol) {
    const Dim& dim = enc.dim();
    require_same_dim(dim, u.dim(), "verify_encoding");
    double count = 1;
    for (int i = 0; i < 2 * dim.n; ++i) {
        count *= dim.d;
        if (count > 1e6) fail(ErrorCode::TooLarge, "verify_encoding domain too large");
    }
    std::vector<int> e(2 * dim.n, 0);
    while (true) {
        CondensedPauli p(0, Vec(dim, Layout::separated, e));
        CondensedPauli expect = extract_pauli(u, p, match_tol);
        if (!(evaluate(enc, p) == expect)) return false;
        int i = 0;
        for (; i < 2 * dim.n; ++i) {
            if (++e[i] < dim.d) break;
            e[i] = 0;
        }
        if (i == 2 * dim.n) break;
    }
    return true;
}

}  // namespace qclif::oracle
