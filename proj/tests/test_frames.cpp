#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"

using namespace qclif;
using qclif::lang::qudits;
using qclif::testing::load_program;

namespace {

const Dim d2{2, 1};

Frame hadamard_frame() {
    Frame f;
    f.d = 2;
    f.n_in = f.n_out = 1;
    f.columns.push_back({CondensedPauli(0, Vec::from_parts(d2, {0}, {1})),
                         CondensedPauli(0, Vec::from_parts(d2, {1}, {0}))});
    return f;
}

}  // namespace

TEST_CASE("check_frame") {
    CHECK(check_frame(hadamard_frame()));
    // both columns of one qudit equal: not a frame
    Frame bad = hadamard_frame();
    bad.columns[0].z = bad.columns[0].x;
    CHECK(!check_frame(bad));
    // CNOT frame
    Dim d22(2, 2);
    CondensedEncoding cnot = oracle::encoding_from_unitary(oracle::gate_matrix("cnot", d22));
    CHECK(check_frame(frame_from_encoding(cnot)));
    // every well-formed encoding yields a valid frame: exhaustive at (2,1)
    for (const CondensedEncoding& enc : enumerate_group(d2))
        CHECK(check_frame(frame_from_encoding(enc)));
}

TEST_CASE("frame/encoding round trip") {
    Frame hf = hadamard_frame();
    CondensedEncoding eh = encoding_from_frame(hf);
    CHECK(eh.psi() == ModMatrix(2, 2, 2, {0, 1, 1, 0}));
    CHECK(frame_from_encoding(eh) == hf);
    CHECK(encoding_from_frame(frame_from_encoding(CondensedEncoding::identity(d2))) ==
          CondensedEncoding::identity(d2));

    std::mt19937 rng(61);
    for (int d : {2, 3}) {
        for (int n : {1, 2}) {
            Dim dim(d, n);
            for (int trial = 0; trial < 25; ++trial) {
                CondensedEncoding enc = testing::random_encoding(dim, rng);
                CHECK(encoding_from_frame(frame_from_encoding(enc)) == enc);
            }
        }
    }
}

TEST_CASE("frame codec") {
    Frame hf = hadamard_frame();
    std::string bytes = write_frame(hf);
    CHECK(bytes ==
          "{\"d\":2,\"n_in\":1,\"n_out\":1,\"columns\":[{\"x\":{\"t\":0,\"v\":[0,1]},"
          "\"z\":{\"t\":0,\"v\":[1,0]}}]}\n");
    CHECK(read_frame(bytes) == hf);
    // the documented example parses to the hadamard frame
    CHECK(read_frame(R"({"d":2,"n_in":1,"n_out":1,"columns":[{"x":{"t":0,"v":[0,1]},"z":{"t":0,"v":[1,0]}}]})") ==
          hf);
    // field order is irrelevant on read
    CHECK(read_frame(R"({"columns":[{"z":{"v":[1,0],"t":0},"x":{"t":0,"v":[0,1]}}],"n_out":1,"n_in":1,"d":2})") ==
          hf);
    // truncated input
    CHECK_THROWS_MATCHES(read_frame(bytes.substr(0, 40)), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == ErrorCode::FormatError; }));
    // structurally valid JSON that is not a frame
    CHECK_THROWS_AS(read_frame("{\"d\":2}"), Error);
    // well-formed JSON violating the commutation constraints
    std::string badf =
        R"({"d":2,"n_in":1,"n_out":1,"columns":[{"x":{"t":0,"v":[1,0]},"z":{"t":0,"v":[1,0]}}]})";
    CHECK_THROWS_MATCHES(read_frame(badf), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == ErrorCode::IllFormedFrame; }));

    // byte-exact round trip over random encodings
    std::mt19937 rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        Frame f = frame_from_encoding(testing::random_encoding(Dim(3, 2), rng));
        std::string b = write_frame(f);
        CHECK(write_frame(read_frame(b)) == b);
    }
}

TEST_CASE("compile_to_frame") {
    using qclif::lang::compile_to_frame;
    lang::Program h = load_program("h.qcl");
    Frame hf = compile_to_frame(h.find("hadamard"), h.proto_dim);
    CHECK(hf == hadamard_frame());

    lang::Program idp = lang::parse_program("dim d = 2;\nclifford idf : Pauli -o Pauli where\n  q => q\n");
    Frame idf = compile_to_frame(idp.find("idf"), d2);
    CHECK(idf.columns[0].x == CondensedPauli(0, Vec::from_parts(d2, {1}, {0})));
    CHECK(idf.columns[0].z == CondensedPauli(0, Vec::from_parts(d2, {0}, {1})));

    // repX: column for X_1 is (X1 X4, -Z1)
    lang::Program rep = load_program("repx.qcl");
    Frame rf = compile_to_frame(rep.find("repX"), rep.proto_dim);
    REQUIRE(rf.columns.size() == 5);
    Dim d25(2, 5);
    CHECK(rf.columns[0].x ==
          CondensedPauli(0, Vec::from_parts(d25, {1, 0, 0, 1, 0}, {0, 0, 0, 0, 0})));
    CHECK(rf.columns[0].z ==
          CondensedPauli(1, Vec::from_parts(d25, {0, 0, 0, 0, 0}, {1, 0, 0, 0, 0})));
    // ancilla Z_1 image is Z1 Z2 Z4
    CHECK(rf.columns[3].z ==
          CondensedPauli(0, Vec::from_parts(d25, {0, 0, 0, 0, 0}, {1, 1, 0, 1, 0})));

    // compile matches frame_from_encoding(encoding_of(.)) on all examples
    for (const std::string& file :
         {"h.qcl", "s.qcl", "cnot.qcl", "cz.qcl", "swap.qcl", "repx.qcl", "qutrit_fourier.qcl",
         "ququart_fourier.qcl"}) {
        lang::Program prog = load_program(file);
        for (const lang::Def& def : prog.defs) {
            if (!def.params.empty()) continue;
            INFO(file << " / " << def.name);
            Frame via_eval = compile_to_frame(def, prog.proto_dim);
            Frame via_enc = frame_from_encoding(lang::encoding_of(def, prog.proto_dim));
            CHECK(via_eval == via_enc);
        }
    }

    // a rank-expanding definition still compiles to a valid rectangular frame
    lang::Program inj = lang::parse_program(
        "dim d = 2;\nclifford inj1 : Pauli -o Pauli ** Pauli where\n  q => in1 q\n");
    Frame injf = compile_to_frame(inj.find("inj1"), d2);
    CHECK(injf.n_in == 1);
    CHECK(injf.n_out == 2);
    CHECK(check_frame(injf));
    CHECK_THROWS_AS(encoding_from_frame(injf), Error);
}
