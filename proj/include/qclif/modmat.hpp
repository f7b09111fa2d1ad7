#pragma once

#include <ostream>
#include <vector>

#include "qclif/dim.hpp"
#include "qclif/errors.hpp"
#include "qclif/vec.hpp"

namespace qclif {

/// Dense square-or-rectangular matrix over Z_m, row-major, entries canonical.
class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(int rows, int cols, int mod)
        : rows_(rows), cols_(cols), mod_(mod), a_(static_cast<size_t>(rows) * cols, 0) {}
    ModMatrix(int rows, int cols, int mod, std::vector<int> entries)
        : rows_(rows), cols_(cols), mod_(mod), a_(std::move(entries)) {
        if (static_cast<int>(a_.size()) != rows * cols)
            fail(ErrorCode::DimensionMismatch, "matrix entry count mismatch");
        for (int& v : a_) v = mod_reduce(v, mod_);
    }

    static ModMatrix identity(int n, int mod) {
        ModMatrix m(n, n, mod);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    /// Matrix of the standard symplectic form on Z_m^{2n} in separated layout:
    /// omega(u,v) = u^T Omega v with Omega = [[0,-I],[I,0]].
    static ModMatrix omega_matrix(int n, int mod) {
        ModMatrix m(2 * n, 2 * n, mod);
        for (int i = 0; i < n; ++i) {
            m.at(i, n + i) = mod_reduce(-1, mod);
            m.at(n + i, i) = 1;
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int mod() const { return mod_; }

    int& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    int at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, int v) { at(r, c) = mod_reduce(v, mod_); }

    ModMatrix operator*(const ModMatrix& o) const {
        if (cols_ != o.rows_ || mod_ != o.mod_)
            fail(ErrorCode::DimensionMismatch, "matrix product shape/modulus mismatch");
        ModMatrix r(rows_, o.cols_, mod_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                int aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) = mod_add(r.at(i, j), mod_mul(aik, o.at(k, j), mod_), mod_);
            }
        return r;
    }

    ModMatrix transposed() const {
        ModMatrix r(cols_, rows_, mod_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    /// Entrywise reduction to a smaller modulus (new_mod must divide mod).
    ModMatrix reduced(int new_mod) const {
        ModMatrix r(rows_, cols_, new_mod);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = mod_reduce(a_[i], new_mod);
        return r;
    }

    /// Entrywise inclusion of canonical representatives into a larger modulus.
    ModMatrix included(int new_mod) const {
        ModMatrix r(rows_, cols_, new_mod);
        r.a_ = a_;
        return r;
    }

    std::vector<int> apply(const std::vector<int>& v) const {
        if (static_cast<int>(v.size()) != cols_)
            fail(ErrorCode::DimensionMismatch, "matrix apply: length mismatch");
        std::vector<int> r(rows_, 0);
        for (int i = 0; i < rows_; ++i) {
            long long acc = 0;
            for (int j = 0; j < cols_; ++j) acc += static_cast<long long>(at(i, j)) * v[j];
            r[i] = mod_reduce(acc, mod_);
        }
        return r;
    }

    /// Apply to a phase-space vector; the matrix acts in separated layout.
    Vec apply(const Vec& v) const {
        Vec sep = v.relayout(Layout::separated);
        if (mod_ != v.dim().d) fail(ErrorCode::DimensionMismatch, "matrix over wrong ring");
        Vec out(v.dim(), Layout::separated, apply(sep.entries()));
        return out.relayout(v.layout());
    }
    ExtVec apply(const ExtVec& v) const {
        ExtVec sep = v.relayout(Layout::separated);
        if (mod_ != v.dim().dprime()) fail(ErrorCode::DimensionMismatch, "matrix over wrong ring");
        ExtVec out(v.dim(), Layout::separated, apply(sep.entries()));
        return out.relayout(v.layout());
    }

    std::vector<int> col(int j) const {
        std::vector<int> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

private:
    int rows_ = 0, cols_ = 0, mod_ = 2;
    std::vector<int> a_;
};

/// True iff M^T Omega M = Omega over Z_mod, for square 2n x 2n M.
inline bool is_symplectic(const ModMatrix& m, int mod) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.mod() != mod) return false;
    int n = m.rows() / 2;
    ModMatrix om = ModMatrix::omega_matrix(n, mod);
    return m.transposed() * om * m == om;
}

inline std::ostream& operator<<(std::ostream& os, const ModMatrix& m) {
    os << "[";
    for (int i = 0; i < m.rows(); ++i) {
        os << (i ? ";" : "") << "[";
        for (int j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m.at(i, j);
        os << "]";
    }
    return os << "]";
}

}  // namespace qclif
