// qclif: batch front end for checking and running Clifford programs,
// compiling and transforming Pauli frames, lifting symplectic matrices,
// and verifying encodings against the dense-matrix oracle.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qclif/qclif.hpp"

namespace {

using namespace qclif;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::FormatError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::FormatError, "cannot open '" + path + "' for writing");
    out << bytes;
}

lang::Program load_program(const std::string& path) {
    return lang::parse_program(read_file(path));
}

std::string render_pauli(const CondensedPauli& p) {
    return to_string(CondensedPauli(p.t, p.v.relayout(Layout::separated)));
}

/// Plain text matrix format: header `d n`, then 2n rows of 2n entries.
std::pair<ModMatrix, Dim> read_matrix(const std::string& path) {
    std::istringstream in(read_file(path));
    int d = 0, n = 0;
    if (!(in >> d >> n) || d < 2 || n < 1)
        fail(ErrorCode::FormatError, "matrix file must start with 'd n'");
    Dim dim(d, n);
    ModMatrix m(2 * n, 2 * n, d);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < 2 * n; ++j) {
            long long v;
            if (!(in >> v)) fail(ErrorCode::FormatError, "matrix file truncated");
            m.at(i, j) = mod_reduce(v, d);
        }
    return {std::move(m), dim};
}

std::string write_matrix(const ModMatrix& m, int d, int n) {
    std::ostringstream out;
    out << d << " " << n << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m.at(i, j);
        out << "\n";
    }
    return out.str();
}

struct Options {
    std::string format = "text";
    double tolerance = 1e-9;
};

int cmd_check(const std::string& file) {
    lang::Program prog = load_program(file);
    Dim proto = prog.proto_dim;
    for (const lang::Def& def : prog.defs) {
        lang::typecheck_def(def, proto);
        std::cout << "OK " << def.name << " : " << lang::to_string(def.domain) << " -o "
                  << lang::to_string(def.codomain) << "\n";
    }
    return 0;
}

int cmd_run(const std::string& file, const std::string& defname, const std::string& input,
            const Options& opt) {
    lang::Program prog = load_program(file);
    Dim proto = prog.proto_dim;
    const lang::Def& def = prog.find(defname);
    lang::typecheck_def(def, proto);
    Dim in_dim(prog.d, lang::qudits(def.domain));
    CondensedPauli p = parse_pauli(input, in_dim, Layout::interlaced);
    lang::PValue out = lang::apply_def(def, lang::pvalue_from_pauli(p, def.domain), proto);
    CondensedPauli q = lang::pauli_from_pvalue(out, proto);
    if (opt.format == "json") {
        nlohmann::ordered_json j;
        j["t"] = q.t;
        j["v"] = q.v.relayout(Layout::separated).entries();
        j["text"] = render_pauli(q);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << render_pauli(q) << "\n";
    }
    return 0;
}

int cmd_frame(const std::string& file, const std::string& defname, const std::string& out) {
    lang::Program prog = load_program(file);
    Dim proto = prog.proto_dim;
    const lang::Def& def = prog.find(defname);
    lang::typecheck_def(def, proto);
    Frame f = lang::compile_to_frame(def, proto);
    write_file(out, write_frame(f));
    std::cout << "wrote " << out << " (" << f.n_in << " -> " << f.n_out << " qudits, d=" << f.d
              << ")\n";
    return 0;
}

int cmd_compose(const std::string& file_a, const std::string& file_b, const std::string& out) {
    Frame fa = read_frame(read_file(file_a));
    Frame fb = read_frame(read_file(file_b));
    CondensedEncoding ea = encoding_from_frame(fa);
    CondensedEncoding eb = encoding_from_frame(fb);
    // apply B first, then A
    CondensedEncoding composed = compose(ea, eb);
    write_file(out, write_frame(frame_from_encoding(composed)));
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_invert(const std::string& file, const std::string& out) {
    Frame f = read_frame(read_file(file));
    CondensedEncoding inv = invert(encoding_from_frame(f));
    write_file(out, write_frame(frame_from_encoding(inv)));
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_lift(const std::string& file, const std::string& out) {
    auto [psi, dim] = read_matrix(file);
    ModMatrix phi = lift_symplectic(psi, dim);
    std::string bytes = write_matrix(phi, dim.dprime(), dim.n);
    if (out.empty())
        std::cout << bytes;
    else {
        write_file(out, bytes);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& target, int d, const Options& opt) {
    if (target.size() > 5 && target.substr(target.size() - 5) == ".json") {
        Frame f = read_frame(read_file(target));
        std::cout << "PASS frame well-formed: " << target << "\n";
        return 0;
    }
    Dim dim(d, target == "cnot" ? 2 : 1);
    oracle::DenseUnitary u = oracle::gate_matrix(target, dim, opt.tolerance);
    CondensedEncoding enc = oracle::encoding_from_unitary(u);
    bool ok = oracle::verify_encoding(enc, u);
    std::cout << (ok ? "PASS " : "FAIL ") << target << " (d=" << d << "): encoding "
              << to_string(enc) << "\n";
    return ok ? 0 : 1;
}

int cmd_enumerate(int d, int n, const Options& opt) {
    auto all = enumerate_group(Dim(d, n));
    if (opt.format == "json") {
        nlohmann::ordered_json j;
        j["d"] = d;
        j["n"] = n;
        j["count"] = all.size();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << all.size() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qclif: qudit projective Clifford toolchain"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));

    std::string file, defname, input, out, file_b, target, matrix_file;
    int d = 2, n = 1;

    CLI::App* c_check = app.add_subcommand("check", "typecheck a program file");
    c_check->add_option("file", file)->required();

    CLI::App* c_run = app.add_subcommand("run", "evaluate a definition on a Pauli");
    c_run->add_option("file", file)->required();
    c_run->add_option("def", defname)->required();
    c_run->add_option("--input", input, "Pauli literal, e.g. \"<1>Y\" or \"X**Z\"")->required();

    CLI::App* c_frame = app.add_subcommand("frame", "compile a definition to a Pauli frame");
    c_frame->add_option("file", file)->required();
    c_frame->add_option("def", defname)->required();
    c_frame->add_option("--out", out)->required();

    CLI::App* c_compose = app.add_subcommand("compose", "compose two frames (second applied first)");
    c_compose->add_option("frameA", file)->required();
    c_compose->add_option("frameB", file_b)->required();
    c_compose->add_option("--out", out)->required();

    CLI::App* c_invert = app.add_subcommand("invert", "invert a frame");
    c_invert->add_option("frame", file)->required();
    c_invert->add_option("--out", out)->required();

    CLI::App* c_lift = app.add_subcommand("lift", "lift a symplectic matrix mod d to mod d'");
    c_lift->add_option("matrix", matrix_file)->required();
    c_lift->add_option("--out", out);

    CLI::App* c_verify = app.add_subcommand("verify", "verify a named gate against the oracle");
    c_verify->add_option("target", target, "gate name (hadamard/s/cnot/fourier) or .frame.json file")
        ->required();
    c_verify->add_option("--d", d);
    c_verify->add_option("--tolerance", opt.tolerance);

    CLI::App* c_enum = app.add_subcommand("enumerate", "count the projective Clifford group");
    c_enum->add_option("--d", d)->required();
    c_enum->add_option("--n", n)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_check->parsed()) return cmd_check(file);
        if (c_run->parsed()) return cmd_run(file, defname, input, opt);
        if (c_frame->parsed()) return cmd_frame(file, defname, out);
        if (c_compose->parsed()) return cmd_compose(file, file_b, out);
        if (c_invert->parsed()) return cmd_invert(file, out);
        if (c_lift->parsed()) return cmd_lift(matrix_file, out);
        if (c_verify->parsed()) return cmd_verify(target, d, opt);
        if (c_enum->parsed()) return cmd_enumerate(d, n, opt);
    } catch (const qclif::Error& e) {
        std::cout << "ERROR " << e.code_name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << "ERROR Internal: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
