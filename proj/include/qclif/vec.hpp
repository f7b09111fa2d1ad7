#pragma once

#include <initializer_list>
#include <ostream>
#include <vector>

#include "qclif/dim.hpp"
#include "qclif/errors.hpp"

namespace qclif {

/// Entry order of a phase-space vector of length 2n.
///   separated:  x_1 .. x_n  z_1 .. z_n
///   interlaced: x_1 z_1 .. x_n z_n
enum class Layout { separated, interlaced };

namespace detail {

/// Shared implementation of vectors over Z_d (Mod::d) and Z_{d'} (Mod::dprime).
template <class Derived, bool Extended>
class VecBase {
public:
    VecBase() = default;
    VecBase(Dim dim, Layout layout, std::vector<int> entries)
        : dim_(dim), layout_(layout), e_(std::move(entries)) {
        if (static_cast<int>(e_.size()) != 2 * dim_.n)
            fail(ErrorCode::DimensionMismatch, "vector length must be 2n");
        for (int& v : e_) v = mod_reduce(v, modulus());
    }

    static Derived zero(Dim dim, Layout layout = Layout::separated) {
        return Derived(dim, layout, std::vector<int>(2 * dim.n, 0));
    }

    /// Build from x parts and z parts (any layout for the result).
    static Derived from_parts(Dim dim, const std::vector<int>& x, const std::vector<int>& z,
                              Layout layout = Layout::separated) {
        if (static_cast<int>(x.size()) != dim.n || static_cast<int>(z.size()) != dim.n)
            fail(ErrorCode::DimensionMismatch, "x/z parts must have length n");
        Derived v = zero(dim, layout);
        for (int i = 0; i < dim.n; ++i) {
            v.set_x(i, x[i]);
            v.set_z(i, z[i]);
        }
        return v;
    }

    const Dim& dim() const { return dim_; }
    Layout layout() const { return layout_; }
    int modulus() const { return Extended ? dim_.dprime() : dim_.d; }
    int size() const { return static_cast<int>(e_.size()); }

    int operator[](int i) const { return e_[i]; }
    const std::vector<int>& entries() const { return e_; }

    int x(int i) const { return e_[x_index(i)]; }
    int z(int i) const { return e_[z_index(i)]; }
    void set_x(int i, int v) { e_[x_index(i)] = mod_reduce(v, modulus()); }
    void set_z(int i, int v) { e_[z_index(i)] = mod_reduce(v, modulus()); }
    void set(int i, int v) { e_[i] = mod_reduce(v, modulus()); }

    Derived operator+(const Derived& o) const {
        check_compat(o);
        Derived r = self();
        for (int i = 0; i < size(); ++i) r.e_[i] = mod_add(e_[i], o.e_[i], modulus());
        return r;
    }
    Derived operator-(const Derived& o) const {
        check_compat(o);
        Derived r = self();
        for (int i = 0; i < size(); ++i) r.e_[i] = mod_sub(e_[i], o.e_[i], modulus());
        return r;
    }
    Derived operator-() const {
        Derived r = self();
        for (int i = 0; i < size(); ++i) r.e_[i] = mod_neg(e_[i], modulus());
        return r;
    }
    Derived scaled(int c) const {
        Derived r = self();
        for (int i = 0; i < size(); ++i) r.e_[i] = mod_mul(e_[i], c, modulus());
        return r;
    }
    bool is_zero() const {
        for (int v : e_)
            if (v != 0) return false;
        return true;
    }

    Derived relayout(Layout target) const {
        if (target == layout_) return self();
        Derived r = self();
        r.layout_ = target;
        for (int i = 0; i < dim_.n; ++i) {
            r.set_x(i, x(i));
            r.set_z(i, z(i));
        }
        return r;
    }

    friend bool operator==(const VecBase& a, const VecBase& b) {
        return a.dim_ == b.dim_ && a.layout_ == b.layout_ && a.e_ == b.e_;
    }

    void check_compat(const VecBase& o) const {
        if (!(dim_ == o.dim_) || layout_ != o.layout_)
            fail(ErrorCode::DimensionMismatch, "vectors have different (d,n) or layout");
    }

protected:
    int x_index(int i) const { return layout_ == Layout::separated ? i : 2 * i; }
    int z_index(int i) const { return layout_ == Layout::separated ? dim_.n + i : 2 * i + 1; }
    const Derived& self() const { return static_cast<const Derived&>(*this); }

    Dim dim_{};
    Layout layout_ = Layout::separated;
    std::vector<int> e_;
};

}  // namespace detail

/// Phase-space vector over Z_d; denotes the subscript of D_v = X^x Z^z.
class Vec : public detail::VecBase<Vec, false> {
    using detail::VecBase<Vec, false>::VecBase;
};

/// Extended phase-space vector over Z_{d'}; subscript of a Delta operator.
class ExtVec : public detail::VecBase<ExtVec, true> {
    using detail::VecBase<ExtVec, true>::VecBase;
};

/// Vector over Z_{d'/d}; identically zero when d is odd.
class EpsVec {
public:
    EpsVec(Dim dim, Layout layout, std::vector<int> entries)
        : dim_(dim), layout_(layout), e_(std::move(entries)) {
        if (static_cast<int>(e_.size()) != 2 * dim_.n)
            fail(ErrorCode::DimensionMismatch, "vector length must be 2n");
        for (int& v : e_) v = dim_.even() ? mod_reduce(v, 2) : 0;
    }
    const Dim& dim() const { return dim_; }
    Layout layout() const { return layout_; }
    int x(int i) const { return e_[layout_ == Layout::separated ? i : 2 * i]; }
    int z(int i) const { return e_[layout_ == Layout::separated ? dim_.n + i : 2 * i + 1]; }
    const std::vector<int>& entries() const { return e_; }
    friend bool operator==(const EpsVec&, const EpsVec&) = default;

private:
    Dim dim_{};
    Layout layout_ = Layout::separated;
    std::vector<int> e_;
};

/// Entrywise reduction mod d (a homomorphism).
inline Vec cast(const ExtVec& v) {
    std::vector<int> e(v.entries());
    for (int& t : e) t = mod_reduce(t, v.dim().d);
    return Vec(v.dim(), v.layout(), std::move(e));
}

/// Entrywise inclusion of canonical representatives into Z_{d'}.
/// A section of cast, not a homomorphism when d is even.
inline ExtVec include(const Vec& v) {
    return ExtVec(v.dim(), v.layout(), v.entries());
}

/// The <eps> gadget of Delta bookkeeping: for v2 = v1 + d*eps,
///   <eps>_{v1,v2} = xbar_1 . eps_z + zbar_1 . eps_x  in Z_{d'/d},
/// so that Delta_{v2} = (-1)^{<eps>} Delta_{v1}.
inline int eps_bracket(const ExtVec& v1, const ExtVec& v2) {
    v1.check_compat(v2);
    const Dim& dim = v1.dim();
    if (!dim.even()) {
        if (!(v1 == v2))
            fail(ErrorCode::NotCongruent, "eps_bracket: vectors differ (d odd has no slack)");
        return 0;
    }
    int acc = 0;
    for (int i = 0; i < dim.n; ++i) {
        int ex = mod_sub(v2.x(i), v1.x(i), dim.dprime());
        int ez = mod_sub(v2.z(i), v1.z(i), dim.dprime());
        if (ex % dim.d != 0 || ez % dim.d != 0)
            fail(ErrorCode::NotCongruent, "eps_bracket: difference not divisible by d");
        ex /= dim.d;
        ez /= dim.d;
        int xbar = mod_reduce(v1.x(i), dim.d);
        int zbar = mod_reduce(v1.z(i), dim.d);
        acc += xbar * ez + zbar * ex;
    }
    return mod_reduce(acc, 2);
}

inline EpsVec eps_of(const ExtVec& v1, const ExtVec& v2) {
    v1.check_compat(v2);
    const Dim& dim = v1.dim();
    std::vector<int> e(v1.size(), 0);
    for (int i = 0; i < v1.size(); ++i) {
        int diff = mod_sub(v2[i], v1[i], dim.dprime());
        if (diff % dim.d != 0)
            fail(ErrorCode::NotCongruent, "eps_of: difference not divisible by d");
        e[i] = dim.even() ? (diff / dim.d) % 2 : 0;
    }
    return EpsVec(dim, v1.layout(), std::move(e));
}

/// Symplectic form omega(v1,v2) = z1.x2 - z2.x1 over Z_d.
inline int omega(const Vec& u, const Vec& v) {
    u.check_compat(v);
    const Dim& dim = u.dim();
    long long acc = 0;
    for (int i = 0; i < dim.n; ++i)
        acc += static_cast<long long>(u.z(i)) * v.x(i) - static_cast<long long>(v.z(i)) * u.x(i);
    return mod_reduce(acc, dim.d);
}

/// Extended symplectic form over Z_{d'}.
inline int omega_ext(const ExtVec& u, const ExtVec& v) {
    u.check_compat(v);
    const Dim& dim = u.dim();
    long long acc = 0;
    for (int i = 0; i < dim.n; ++i)
        acc += static_cast<long long>(u.z(i)) * v.x(i) - static_cast<long long>(v.z(i)) * u.x(i);
    return mod_reduce(acc, dim.dprime());
}

/// sgn of an extended vector: the sign relating Delta_v to Delta_{include(cast(v))}.
inline int sgn_vec(const ExtVec& v) {
    return eps_bracket(include(cast(v)), v);
}

/// s(u,v) = (1/d)(omega'(incl u, incl v) - incl(omega(u,v))) in Z_{d'/d}.
/// The sign appearing in Delta_u * Delta_v = (-1)^{s(u,v)} Delta_{incl u + incl v}.
inline int s_sign(const Vec& u, const Vec& v) {
    u.check_compat(v);
    const Dim& dim = u.dim();
    if (!dim.even()) return 0;
    int a = omega_ext(include(u), include(v));
    int b = include_scalar(omega(u, v), dim);
    int diff = mod_sub(a, b, dim.dprime());
    if (diff % dim.d != 0)
        fail(ErrorCode::InvariantViolation, "s_sign: omega'/omega mismatch not divisible by d");
    return (diff / dim.d) % 2;
}

inline Vec relayout(const Vec& v, Layout target) { return v.relayout(target); }
inline ExtVec relayout(const ExtVec& v, Layout target) { return v.relayout(target); }

inline std::ostream& operator<<(std::ostream& os, const Vec& v) {
    os << '[';
    for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os << ']';
}

inline std::ostream& operator<<(std::ostream& os, const ExtVec& v) {
    os << '[';
    for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os << ']';
}

}  // namespace qclif
