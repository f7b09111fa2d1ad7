#pragma once

#include <compare>
#include <cstdint>

#include "qclif/errors.hpp"

namespace qclif {

/// Qudit dimension d >= 2 and register width n.
///
/// Phase exponents live in three rings, all represented by canonical
/// representatives in [0, modulus):
///   Z_d        -- zeta exponents
///   Z_{d'}     -- tau exponents, d' = 2d for even d and d' = d for odd d
///   Z_{d'/d}   -- the sign group, Z_2 for even d and trivial for odd d
/// Half-elements of (1/2)Z_{d'} are always stored doubled, as tau exponents.
struct Dim {
    int d = 2;
    int n = 1;

    constexpr Dim() = default;
    constexpr Dim(int d_, int n_) : d(d_), n(n_) {
        if (d < 2) fail(ErrorCode::InvariantViolation, "qudit dimension must be >= 2");
        if (n < 0) fail(ErrorCode::InvariantViolation, "register width must be >= 0");
    }

    constexpr bool even() const { return d % 2 == 0; }
    constexpr int dprime() const { return even() ? 2 * d : d; }

    friend constexpr bool operator==(const Dim&, const Dim&) = default;
};

inline void require_same_dim(const Dim& a, const Dim& b, const char* what) {
    if (!(a == b))
        fail(ErrorCode::DimensionMismatch, std::string(what) + ": mismatched (d,n)");
}

/// Canonical representative of x mod m, in [0, m).
constexpr int mod_reduce(long long x, int m) {
    long long r = x % m;
    if (r < 0) r += m;
    return static_cast<int>(r);
}

constexpr int mod_add(int a, int b, int m) { return mod_reduce(static_cast<long long>(a) + b, m); }
constexpr int mod_sub(int a, int b, int m) { return mod_reduce(static_cast<long long>(a) - b, m); }
constexpr int mod_mul(int a, int b, int m) { return mod_reduce(static_cast<long long>(a) * b, m); }
constexpr int mod_neg(int a, int m) { return mod_reduce(-static_cast<long long>(a), m); }

/// Reduction Z_{d'} -> Z_d (a ring homomorphism).
constexpr int cast_scalar(int t, const Dim& dim) { return mod_reduce(t, dim.d); }

/// Inclusion Z_d -> Z_{d'}: embeds the canonical representative.
/// A section of cast_scalar, not a homomorphism when d is even.
constexpr int include_scalar(int t, const Dim& dim) { return mod_reduce(t, dim.d); }

/// sgn : Z_{d'} -> Z_{d'/d}; 0 on [0,d), 1 on [d,d').  Always 0 for odd d.
constexpr int sgn(int t, const Dim& dim) {
    return mod_reduce(t, dim.dprime()) >= dim.d ? 1 : 0;
}

}  // namespace qclif
