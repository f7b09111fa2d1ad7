#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace qclif;
using oracle::DenseUnitary;
using qclif::testing::for_all_canonical;
using qclif::testing::make_vec;

namespace {

CondensedPauli qp(const Dim& dim, int t, std::vector<int> xs, std::vector<int> zs) {
    return CondensedPauli(t, Vec::from_parts(dim, xs, zs));
}

}  // namespace

TEST_CASE("pauli matrices") {
    Dim d2(2, 1);
    DenseUnitary x = oracle::pauli_matrix(qp(d2, 0, {1}, {0}));
    CHECK(std::abs(x.at(0, 1) - oracle::cplx(1, 0)) < 1e-12);
    CHECK(std::abs(x.at(1, 0) - oracle::cplx(1, 0)) < 1e-12);
    CHECK(std::abs(x.at(0, 0)) < 1e-12);

    Dim d3(3, 1);
    DenseUnitary z3 = oracle::pauli_matrix(qp(d3, 0, {0}, {1}));
    for (int r = 0; r < 3; ++r)
        CHECK(std::abs(z3.at(r, r) - oracle::zeta_root(d3, r)) < 1e-12);

    // Y = [[0,-i],[i,0]]
    DenseUnitary y = oracle::pauli_matrix(qp(d2, 0, {1}, {1}));
    CHECK(std::abs(y.at(0, 1) - oracle::cplx(0, -1)) < 1e-12);
    CHECK(std::abs(y.at(1, 0) - oracle::cplx(0, 1)) < 1e-12);
}

TEST_CASE("pauli_matrix is a representation") {
    for (int d : {2, 3}) {
        Dim dim(d, 1);
        std::vector<CanonicalPauli> all;
        for_all_canonical(dim, [&](const CanonicalPauli& g) { all.push_back(g); });
        for (const auto& a : all)
            for (const auto& b : all) {
                DenseUnitary lhs = oracle::pauli_matrix(mul(a, b));
                DenseUnitary rhs = oracle::pauli_matrix(a) * oracle::pauli_matrix(b);
                CHECK(lhs.max_diff(rhs) < 1e-9);
            }
    }
}

TEST_CASE("gate matrices") {
    Dim d2(2, 1);
    DenseUnitary h = oracle::gate_matrix("hadamard", d2);
    double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(h.at(0, 0) - oracle::cplx(s, 0)) < 1e-12);
    CHECK(std::abs(h.at(1, 1) + oracle::cplx(s, 0)) < 1e-12);

    DenseUnitary sg = oracle::gate_matrix("s", d2);
    CHECK(std::abs(sg.at(1, 1) - oracle::cplx(0, 1)) < 1e-12);

    DenseUnitary f3 = oracle::gate_matrix("fourier", Dim(3, 1));
    CHECK(std::abs(f3.at(1, 1) - oracle::zeta_root(Dim(3, 1), 1) / std::sqrt(3.0)) < 1e-12);

    CHECK_THROWS_AS(oracle::gate_matrix("s", Dim(3, 1)), Error);
    CHECK_THROWS_AS(oracle::gate_matrix("toffoli", d2), Error);
    // dense matrices are guarded at d^n = 2^10
    CHECK_THROWS_AS(oracle::pauli_matrix(CondensedPauli::identity(Dim(2, 11))), Error);
}

TEST_CASE("extract_pauli") {
    Dim d2(2, 1);
    DenseUnitary h = oracle::gate_matrix("hadamard", d2);
    CHECK(oracle::extract_pauli(h, qp(d2, 0, {1}, {0})) == qp(d2, 0, {0}, {1}));  // H X H = Z
    DenseUnitary i2 = oracle::pauli_matrix(CondensedPauli::identity(d2));
    testing::for_all_condensed(d2, [&](const CondensedPauli& p) {
        CHECK(oracle::extract_pauli(i2, p) == p);
    });
    DenseUnitary sg = oracle::gate_matrix("s", d2);
    CHECK(oracle::extract_pauli(sg, qp(d2, 0, {1}, {1})) == qp(d2, 1, {1}, {0}));  // S Y S^-1 = -X

    // a non-Clifford unitary is rejected
    double c = std::cos(0.3), s = std::sin(0.3);
    DenseUnitary rot(d2, {oracle::cplx(c, 0), oracle::cplx(-s, 0), oracle::cplx(s, 0), oracle::cplx(c, 0)});
    CHECK_THROWS_AS(oracle::extract_pauli(rot, qp(d2, 0, {0}, {1})), Error);
}

TEST_CASE("encoding_from_unitary reproduces the worked examples") {
    Dim d2(2, 1);
    CondensedEncoding h = oracle::encoding_from_unitary(oracle::gate_matrix("hadamard", d2));
    CHECK(h.mu() == std::vector<int>{0, 0});
    CHECK(h.psi() == ModMatrix(2, 2, 2, {0, 1, 1, 0}));

    CondensedEncoding s = oracle::encoding_from_unitary(oracle::gate_matrix("s", d2));
    CHECK(s.mu() == std::vector<int>{0, 0});
    CHECK(s.psi() == ModMatrix(2, 2, 2, {1, 0, 1, 1}));

    Dim d22(2, 2);
    CondensedEncoding cn = oracle::encoding_from_unitary(oracle::gate_matrix("cnot", d22));
    CHECK(cn.mu() == std::vector<int>{0, 0, 0, 0});
    CHECK(cn.psi() == ModMatrix(4, 4, 2, {1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1}));

    for (int d : {2, 3, 4, 5}) {
        Dim dim(d, 1);
        CondensedEncoding f = oracle::encoding_from_unitary(oracle::gate_matrix("fourier", dim));
        CHECK(f.mu() == std::vector<int>{0, 0});
        CHECK(f.psi() == ModMatrix(2, 2, d, {0, mod_reduce(-1, d), 1, 0}));
    }
}

TEST_CASE("verify_encoding") {
    Dim d2(2, 1);
    DenseUnitary smat = oracle::gate_matrix("s", d2);
    CondensedEncoding s(d2, {0, 0}, ModMatrix(2, 2, 2, {1, 0, 1, 1}));
    CHECK(oracle::verify_encoding(s, smat));
    CHECK(!oracle::verify_encoding(CondensedEncoding::identity(d2),
                                   oracle::gate_matrix("hadamard", d2)));
    Dim d22(2, 2);
    CondensedEncoding cn = oracle::encoding_from_unitary(oracle::gate_matrix("cnot", d22));
    CHECK(oracle::verify_encoding(cn, oracle::gate_matrix("cnot", d22)));
}

TEST_CASE("compose and invert agree with matrix product and inverse") {
    Dim d2(2, 1);
    DenseUnitary h = oracle::gate_matrix("hadamard", d2);
    DenseUnitary s = oracle::gate_matrix("s", d2);
    CondensedEncoding eh = oracle::encoding_from_unitary(h);
    CondensedEncoding es = oracle::encoding_from_unitary(s);
    CHECK(compose(es, eh) == oracle::encoding_from_unitary(s * h));
    CHECK(compose(eh, es) == oracle::encoding_from_unitary(h * s));
    CHECK(invert(es) == oracle::encoding_from_unitary(s.adjoint()));
    CHECK(invert(eh) == oracle::encoding_from_unitary(h.adjoint()));
    // S.S is conjugation by Z
    CondensedEncoding ss = compose(es, es);
    CHECK(ss.mu() == std::vector<int>{1, 0});
    CHECK(ss.psi() == ModMatrix::identity(2, 2));
    CHECK(ss == oracle::encoding_from_unitary(oracle::pauli_matrix(qp(d2, 0, {0}, {1}))));
    // H.H is the identity
    CHECK(compose(eh, eh) == CondensedEncoding::identity(d2));
}

TEST_CASE("frozen power example against the oracle") {
    Dim d4(4, 1);
    CondensedPauli p = qp(d4, 0, {2}, {3});
    CondensedPauli expect = power(p, 3);
    // (Delta_v)^3 as a matrix power
    DenseUnitary m = oracle::pauli_matrix(p);
    DenseUnitary m3 = m * m * m;
    CHECK(m3.max_diff(oracle::pauli_matrix(expect)) < 1e-9);
    CHECK(expect == qp(d4, 2, {2}, {1}));
}

TEST_CASE("pauli_to_clifford against oracle conjugation") {
    Dim d2(2, 1);
    for (auto& [xs, zs] : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
             {{1}, {0}}, {{0}, {1}}, {{1}, {1}}}) {
        CondensedPauli p = qp(d2, 0, xs, zs);
        CHECK(oracle::verify_encoding(pauli_to_clifford(p), oracle::pauli_matrix(p)));
    }
    // p = Y flips both X and Z
    CondensedEncoding ey = pauli_to_clifford(qp(d2, 0, {1}, {1}));
    CHECK(evaluate(ey, qp(d2, 0, {1}, {0})) == qp(d2, 1, {1}, {0}));
    CHECK(evaluate(ey, qp(d2, 0, {0}, {1})) == qp(d2, 1, {0}, {1}));
}
