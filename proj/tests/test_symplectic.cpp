#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"

using namespace qclif;
using qclif::testing::for_all_extvecs;
using qclif::testing::for_all_vecs;

namespace {

ModMatrix cnot_psi() { return ModMatrix(4, 4, 2, {1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1}); }

/// The two symplectic CNOT lifts displayed in the worked example.
ModMatrix cnot_phi_a() { return ModMatrix(4, 4, 4, {1, 0, 0, 0, 3, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1}); }
ModMatrix cnot_phi_b() { return ModMatrix(4, 4, 4, {1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 3, 0, 0, 0, 1}); }

}  // namespace

TEST_CASE("is_symplectic") {
    CHECK(is_symplectic(ModMatrix::identity(4, 4), 4));
    // the naive CNOT lift is not symplectic over Z_4
    CHECK(!is_symplectic(cnot_psi().included(4), 4));
    CHECK(is_symplectic(cnot_phi_a(), 4));
    CHECK(is_symplectic(cnot_phi_b(), 4));
    CHECK(is_symplectic(cnot_psi(), 2));
}

TEST_CASE("lift_symplectic") {
    // d odd: the lift is the entrywise copy
    Dim d3(3, 1);
    ModMatrix f3(2, 2, 3, {0, 2, 1, 0});
    CHECK(lift_symplectic(f3, d3) == f3);

    Dim d2(2, 1);
    CHECK(lift_symplectic(ModMatrix::identity(2, 2), d2) == ModMatrix::identity(2, 4));

    Dim d22(2, 2);
    ModMatrix phi = lift_symplectic(cnot_psi(), d22);
    CHECK(is_symplectic(phi, 4));
    CHECK(phi.reduced(2) == cnot_psi());

    ModMatrix not_sp(2, 2, 2, {1, 1, 0, 0});
    CHECK_THROWS_AS(lift_symplectic(not_sp, d2), Error);

    std::mt19937 rng(41);
    for (int d : {2, 4}) {
        for (int n : {1, 2}) {
            Dim dim(d, n);
            ModMatrix omega_p = ModMatrix::omega_matrix(n, dim.dprime());
            for (int trial = 0; trial < 100; ++trial) {
                ModMatrix psi = testing::random_symplectic(dim, rng);
                REQUIRE(is_symplectic(psi, d));
                ModMatrix lift = lift_symplectic(psi, dim);
                CHECK(lift.transposed() * omega_p * lift == omega_p);
                CHECK(lift.reduced(d) == psi);
            }
        }
    }
}

TEST_CASE("delta_from_condensed worked examples") {
    Dim d2(2, 1);
    // identity
    DeltaEncoding id = delta_from_condensed(CondensedEncoding::identity(d2));
    CHECK(id.lambda == std::vector<int>{0, 0});
    CHECK(id.phi == ModMatrix::identity(2, 4));

    // S with the pinned lift [[1,0],[1,1]] over Z_4 has lambda = 0
    CondensedEncoding s(d2, {0, 0}, ModMatrix(2, 2, 2, {1, 0, 1, 1}));
    DeltaEncoding ds = delta_from_condensed(s, ModMatrix(2, 2, 4, {1, 0, 1, 1}));
    CHECK(ds.lambda == std::vector<int>{0, 0});

    // Fourier with phi = [[0,-1],[1,0]] has lambda = 0, for several d
    for (int d : {2, 3, 4, 5}) {
        Dim dim(d, 1);
        CondensedEncoding f(dim, {0, 0}, ModMatrix(2, 2, d, {0, mod_reduce(-1, d), 1, 0}));
        ModMatrix phi(2, 2, dim.dprime(), {0, mod_reduce(-1, dim.dprime()), 1, 0});
        DeltaEncoding df = delta_from_condensed(f, phi);
        CHECK(df.lambda == std::vector<int>{0, 0});
    }

    // a wrong lift is rejected
    CHECK_THROWS_AS(delta_from_condensed(s, ModMatrix::identity(2, 4)), Error);
}

TEST_CASE("delta encoding evaluates like the condensed encoding") {
    std::mt19937 rng(43);
    for (int d : {2, 3, 4}) {
        Dim dim(d, 1);
        for (int trial = 0; trial < 10; ++trial) {
            CondensedEncoding enc = testing::random_encoding(dim, rng);
            DeltaEncoding de = delta_from_condensed(enc);
            for_all_extvecs(dim, [&](const ExtVec& v) {
                for (int w = 0; w < dim.dprime(); ++w) {
                    CanonicalPauli via_delta = de.evaluate(GeneralPauli(w, v));
                    CanonicalPauli via_enc = evaluate(enc, canonicalize(GeneralPauli(w, v)));
                    CHECK(via_delta == via_enc);
                }
            });
        }
    }
}

TEST_CASE("condensed_from_delta round trips") {
    // CNOT: both displayed lifts give the condensed encoding (0, psi)
    Dim d22(2, 2);
    for (const ModMatrix& phi : {cnot_phi_a(), cnot_phi_b()}) {
        DeltaEncoding de(d22, {0, 0, 0, 0}, phi);
        CondensedEncoding enc = condensed_from_delta(de);
        CHECK(enc.mu() == std::vector<int>{0, 0, 0, 0});
        CHECK(enc.psi() == cnot_psi());
    }
    CHECK(condensed_from_delta(delta_from_condensed(CondensedEncoding::identity(d22))) ==
          CondensedEncoding::identity(d22));

    std::mt19937 rng(47);
    for (int d : {2, 4}) {
        for (int n : {1, 2}) {
            Dim dim(d, n);
            for (int trial = 0; trial < 25; ++trial) {
                CondensedEncoding enc = testing::random_encoding(dim, rng);
                CHECK(condensed_from_delta(delta_from_condensed(enc)) == enc);
            }
        }
    }
}

TEST_CASE("delta -> condensed -> delta preserves the relation") {
    // Delta-encodings are non-unique, so the reverse composite need not be
    // field-equal; it must define the same relation on all of P'.
    std::mt19937 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        Dim dim(2, 1);
        CondensedEncoding enc = testing::random_encoding(dim, rng);
        DeltaEncoding de = delta_from_condensed(enc);
        DeltaEncoding de2 = delta_from_condensed(condensed_from_delta(de));
        for_all_extvecs(dim, [&](const ExtVec& v) {
            for (int w = 0; w < dim.dprime(); ++w) {
                GeneralPauli g(w, v);
                CHECK(de.evaluate(g) == de2.evaluate(g));
            }
        });
    }
}

TEST_CASE("check_right_definite") {
    Dim d2(2, 1);
    CHECK(check_right_definite(ModMatrix::identity(2, 4), d2));
    // every phi in Sp(V', omega') is right-definite; exhaustive at (2,1)
    Dim d4_as_ring(4, 1);
    int sp_count = 0, rd_count = 0, linear_non_rd = 0;
    ModMatrix witness(2, 2, 4);
    testing::for_all_vecs(d4_as_ring, [&](const Vec& c1) {
        testing::for_all_vecs(d4_as_ring, [&](const Vec& c2) {
            ModMatrix m(2, 2, 4, {c1[0], c2[0], c1[1], c2[1]});
            if (is_symplectic(m, 4)) {
                ++sp_count;
                CHECK(check_right_definite(m, d2));
            }
            if (check_right_definite(m, d2)) ++rd_count;
            else if (linear_non_rd++ == 0) witness = m;
        });
    });
    CHECK(sp_count == 48);  // |Sp(2, Z_4)|
    CHECK(linear_non_rd > 0);
    CHECK(!check_right_definite(witness, d2));
    // d odd: trivially right-definite
    CHECK(check_right_definite(ModMatrix(2, 2, 3, {1, 1, 0, 1}), Dim(3, 1)));
    // feasibility guard
    Dim big(4, 4);
    CHECK_THROWS_AS(check_right_definite(ModMatrix::identity(8, big.dprime()), big), Error);
}

TEST_CASE("extend_lambda") {
    // d odd: V' = V, lambda = lambda0
    {
        Dim d3(3, 1);
        size_t size = 9;  // d'^{2n} with d' = 3, 2n = 2
        std::vector<int> lambda0(size);
        std::vector<ExtVec> phi;
        for_all_extvecs(d3, [&](const ExtVec& v) { phi.push_back(v); });
        for (size_t i = 0; i < size; ++i) lambda0[i] = static_cast<int>(i % 3) * 2 % 3;
        std::vector<int> lambda = extend_lambda(d3, lambda0, phi);
        CHECK(lambda == lambda0);
    }
    // phi = identity, lambda0 = 0: the extension is identically zero
    {
        Dim d2(2, 1);
        std::vector<ExtVec> phi;
        for_all_extvecs(d2, [&](const ExtVec& v) { phi.push_back(v); });
        std::vector<int> lambda0(16, 0);
        std::vector<int> lambda = extend_lambda(d2, lambda0, phi);
        for (int l : lambda) CHECK(l == 0);
    }
    // CNOT's naive lift phi0: the unique lambda0 making (lambda0, phi0) the
    // encoding of the actual CNOT conjugation vanishes on basis vectors but
    // is already non-linear on V (lambda0(e1+e4) = 1), and so is its
    // extension to V'.
    {
        Dim d22(2, 2);
        ModMatrix phi0 = cnot_psi().included(4);
        CondensedEncoding cn(d22, {0, 0, 0, 0}, cnot_psi());
        std::vector<ExtVec> phi;
        for_all_extvecs(d22, [&](const ExtVec& v) { phi.push_back(phi0.apply(v)); });
        std::vector<int> lambda0(phi.size(), 0);
        testing::for_all_vecs(d22, [&](const Vec& v) {
            // gamma(Delta_v) = zeta^t Delta_{incl(psi v)} = zeta^{lambda0} Delta_{phi0 v}
            CondensedPauli image = evaluate(cn, CondensedPauli(0, v));
            ExtVec lifted = phi0.apply(include(v));
            int l = mod_sub(image.t, mod_mul(d22.d / 2, eps_bracket(include(image.v), lifted), d22.d),
                            d22.d);
            lambda0[PreDeltaEncoding::index_of(include(v))] = mod_reduce(2 * l, d22.dprime());
        });
        // zero on basis vectors, 1 on e1 + e4
        for (int j = 0; j < 4; ++j) {
            ExtVec ej = ExtVec::zero(d22);
            ej.set(j, 1);
            CHECK(lambda0[PreDeltaEncoding::index_of(ej)] == 0);
        }
        ExtVec e14(d22, Layout::separated, {1, 0, 0, 1});
        CHECK(lambda0[PreDeltaEncoding::index_of(e14)] == 2);  // doubled representation of 1

        std::vector<int> lambda = extend_lambda(d22, lambda0, phi);
        bool nonlinear = false;
        for_all_extvecs(d22, [&](const ExtVec& u) {
            if (nonlinear) return;
            for_all_extvecs(d22, [&](const ExtVec& v) {
                if (nonlinear) return;
                size_t iu = PreDeltaEncoding::index_of(u);
                size_t iv = PreDeltaEncoding::index_of(v);
                size_t iuv = PreDeltaEncoding::index_of(u + v);
                if (mod_reduce(lambda[iu] + lambda[iv], 4) != lambda[iuv]) nonlinear = true;
            });
        });
        CHECK(nonlinear);
        // the extended relation reproduces the CNOT conjugation on all of V'
        for_all_extvecs(d22, [&](const ExtVec& v) {
            size_t i = PreDeltaEncoding::index_of(v);
            CanonicalPauli via_relation = canonicalize(GeneralPauli(lambda[i], phi[i]));
            CanonicalPauli via_encoding = evaluate(cn, canonicalize(GeneralPauli(0, v)));
            CHECK(via_relation == via_encoding);
        });
    }
}

TEST_CASE("extend_lambda makes the relation right-definite") {
    // For the pre-Delta relation Delta_v -> zeta^{lambda v} Delta_{phi v}:
    // equal Delta_v (as group elements) must map to equal outputs.
    Dim d2(2, 1);
    std::mt19937 rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        ModMatrix phi_lin = testing::random_symplectic(d2, rng).included(4);
        std::vector<ExtVec> phi;
        for_all_extvecs(d2, [&](const ExtVec& v) { phi.push_back(phi_lin.apply(v)); });
        // random lambda0 on V (doubled representation)
        std::vector<int> lambda0(16, 0);
        for_all_vecs(d2, [&](const Vec& v) {
            lambda0[PreDeltaEncoding::index_of(include(v))] = 2 * (rng() % 2);
        });
        std::vector<int> lambda = extend_lambda(d2, lambda0, phi);
        for_all_extvecs(d2, [&](const ExtVec& v1) {
            for_all_extvecs(d2, [&](const ExtVec& v2) {
                GeneralPauli g1(0, v1), g2(0, v2);
                if (!(canonicalize(g1) == canonicalize(g2))) return;
                size_t i1 = PreDeltaEncoding::index_of(v1), i2 = PreDeltaEncoding::index_of(v2);
                CanonicalPauli o1 = canonicalize(GeneralPauli(lambda[i1], phi[i1]));
                CanonicalPauli o2 = canonicalize(GeneralPauli(lambda[i2], phi[i2]));
                CHECK(o1 == o2);
            });
        });
        // restriction back to V equals lambda0
        for_all_vecs(d2, [&](const Vec& v) {
            size_t i = PreDeltaEncoding::index_of(include(v));
            CHECK(lambda[i] == lambda0[i]);
        });
    }
}

TEST_CASE("linearize") {
    Dim d2(2, 1);
    // already linear: unchanged relation, same matrix
    std::mt19937 rng(59);
    ModMatrix lin = testing::random_symplectic(d2, rng).included(4);
    std::vector<ExtVec> phi0;
    for_all_extvecs(d2, [&](const ExtVec& v) { phi0.push_back(lin.apply(v)); });
    std::vector<int> lambda0(16, 0);
    auto [lambda, phi] = linearize(d2, lambda0, phi0);
    CHECK(phi == lin);
    CHECK(lambda == lambda0);

    // perturb a linear phi by d*g(v) for a random non-linear g: linearize
    // recovers the basis-determined map and preserves the relation
    for (int trial = 0; trial < 10; ++trial) {
        ModMatrix base = testing::random_symplectic(d2, rng).included(4);
        std::vector<ExtVec> tab;
        std::vector<int> l0(16, 0);
        for_all_extvecs(d2, [&](const ExtVec& v) {
            ExtVec w = base.apply(v);
            // random even perturbation keeps cast(phi0) linear
            ExtVec pert(d2, Layout::separated, {2 * static_cast<int>(rng() % 2), 2 * static_cast<int>(rng() % 2)});
            tab.push_back(w + pert);
        });
        // choose lambda0 making the perturbed relation right-definite
        std::vector<int> l_full = extend_lambda(d2, l0, tab);
        auto [l_lin, phi_lin] = linearize(d2, l_full, tab);
        // same relation: evaluate both pre-encodings on every v
        for_all_extvecs(d2, [&](const ExtVec& v) {
            size_t i = PreDeltaEncoding::index_of(v);
            CanonicalPauli before = canonicalize(GeneralPauli(l_full[i], tab[i]));
            CanonicalPauli after = canonicalize(GeneralPauli(l_lin[i], phi_lin.apply(v)));
            CHECK(before == after);
        });
    }

    // d odd: table of a linear map is returned unchanged
    Dim d3(3, 1);
    ModMatrix lin3 = testing::random_symplectic(d3, rng);
    std::vector<ExtVec> tab3;
    for_all_extvecs(d3, [&](const ExtVec& v) { tab3.push_back(lin3.apply(v)); });
    std::vector<int> zero9(9, 0);
    auto [l3, phi3] = linearize(d3, zero9, tab3);
    CHECK(phi3 == lin3);
    CHECK(l3 == zero9);

    // a map whose reduction is not linear is rejected
    std::vector<ExtVec> bad;
    for_all_extvecs(d2, [&](const ExtVec& v) {
        // swap two entries of the table to break linearity mod d
        bad.push_back(v.is_zero() ? ExtVec(d2, Layout::separated, {1, 0}) : v);
    });
    CHECK_THROWS_AS(linearize(d2, lambda0, bad), Error);
}
