#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qclif/qclif.hpp"

namespace qclif::testing {

inline std::string read_program(const std::string& name) {
    std::string path = std::string(QCLIF_PROGRAMS_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing program file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline lang::Program load_program(const std::string& name) {
    return lang::parse_program(read_program(name));
}

/// Symplectic transvection T_{u,c}(v) = v + c*omega(v,u)*u, always in Sp.
inline ModMatrix transvection(const Vec& u, int c) {
    const Dim& dim = u.dim();
    ModMatrix m = ModMatrix::identity(2 * dim.n, dim.d);
    for (int j = 0; j < 2 * dim.n; ++j) {
        Vec ej = Vec::zero(dim, Layout::separated);
        ej.set(j, 1);
        int coeff = mod_mul(c, omega(ej, u), dim.d);
        for (int i = 0; i < 2 * dim.n; ++i)
            m.at(i, j) = mod_add(m.at(i, j), mod_mul(coeff, u[i], dim.d), dim.d);
    }
    return m;
}

/// Random element of Sp(Z_d^{2n}) as a product of random transvections.
inline ModMatrix random_symplectic(const Dim& dim, std::mt19937& rng, int length = 24) {
    std::uniform_int_distribution<int> entry(0, dim.d - 1);
    ModMatrix m = ModMatrix::identity(2 * dim.n, dim.d);
    for (int k = 0; k < length; ++k) {
        Vec u = Vec::zero(dim, Layout::separated);
        bool nonzero = false;
        for (int i = 0; i < 2 * dim.n; ++i) {
            int e = entry(rng);
            u.set(i, e);
            nonzero |= e != 0;
        }
        if (!nonzero) continue;
        m = transvection(u, 1 + entry(rng) % (dim.d - 1 > 0 ? dim.d - 1 : 1)) * m;
    }
    return m;
}

inline CondensedEncoding random_encoding(const Dim& dim, std::mt19937& rng) {
    std::uniform_int_distribution<int> entry(0, dim.d - 1);
    std::vector<int> mu(2 * dim.n);
    for (int& m : mu) m = entry(rng);
    return CondensedEncoding(dim, std::move(mu), random_symplectic(dim, rng));
}

inline CondensedPauli random_pauli(const Dim& dim, std::mt19937& rng) {
    std::uniform_int_distribution<int> entry(0, dim.d - 1);
    Vec v = Vec::zero(dim, Layout::separated);
    for (int i = 0; i < 2 * dim.n; ++i) v.set(i, entry(rng));
    return CondensedPauli(entry(rng), std::move(v));
}

template <class F>
void for_all_vecs(const Dim& dim, F&& f) {
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
void for_all_extvecs(const Dim& dim, F&& f) {
    std::vector<int> e(2 * dim.n, 0);
    while (true) {
        f(ExtVec(dim, Layout::separated, e));
        int i = 0;
        for (; i < 2 * dim.n; ++i) {
            if (++e[i] < dim.dprime()) break;
            e[i] = 0;
        }
        if (i == 2 * dim.n) break;
    }
}

template <class F>
void for_all_condensed(const Dim& dim, F&& f) {
    for_all_vecs(dim, [&](const Vec& v) {
        for (int t = 0; t < dim.d; ++t) f(CondensedPauli(t, v));
    });
}

template <class F>
void for_all_canonical(const Dim& dim, F&& f) {
    for_all_vecs(dim, [&](const Vec& v) {
        for (int w = 0; w < dim.dprime(); ++w) f(CanonicalPauli(w, v));
    });
}

inline Vec make_vec(const Dim& dim, std::vector<int> xs, std::vector<int> zs) {
    return Vec::from_parts(dim, xs, zs);
}

}  // namespace qclif::testing
