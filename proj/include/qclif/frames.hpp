#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qclif/dim.hpp"
#include "qclif/encoding.hpp"
#include "qclif/errors.hpp"
#include "qclif/pauli.hpp"

namespace qclif {

/// Pauli frame (tableau): for each input qudit i, the images of X_i and Z_i
/// as condensed Paulis over the output register.
struct FrameColumn {
    CondensedPauli x;  // image of X_i
    CondensedPauli z;  // image of Z_i
    friend bool operator==(const FrameColumn&, const FrameColumn&) = default;
};

struct Frame {
    int d = 2;
    int n_in = 0;
    int n_out = 0;
    std::vector<FrameColumn> columns;  // size n_in, entries over n_out qudits

    Dim out_dim() const { return Dim(d, n_out); }
    friend bool operator==(const Frame&, const Frame&) = default;
};

/// Commutation constraints: omega(Pz_i, Px_i) = 1 per column, and every
/// cross form between distinct columns vanishes.
inline bool check_frame(const Frame& f) {
    if (static_cast<int>(f.columns.size()) != f.n_in) return false;
    Dim dim(f.d, f.n_out);
    for (const FrameColumn& c : f.columns)
        if (!(c.x.dim() == dim) || !(c.z.dim() == dim)) return false;
    for (int i = 0; i < f.n_in; ++i) {
        if (omega(f.columns[i].z.v, f.columns[i].x.v) != 1) return false;
        for (int j = 0; j < f.n_in; ++j) {
            if (i == j) continue;
            if (omega(f.columns[i].x.v, f.columns[j].x.v) != 0) return false;
            if (omega(f.columns[i].z.v, f.columns[j].z.v) != 0) return false;
            if (omega(f.columns[i].x.v, f.columns[j].z.v) != 0) return false;
        }
    }
    return true;
}

/// Frames are the basis-image table of an encoding (square case).
inline Frame frame_from_encoding(const CondensedEncoding& enc) {
    const Dim& dim = enc.dim();
    Frame f;
    f.d = dim.d;
    f.n_in = f.n_out = dim.n;
    f.columns.reserve(dim.n);
    for (int i = 0; i < dim.n; ++i) {
        Vec bx = Vec::zero(dim, Layout::separated);
        bx.set_x(i, 1);
        Vec bz = Vec::zero(dim, Layout::separated);
        bz.set_z(i, 1);
        f.columns.push_back({evaluate(enc, CondensedPauli(0, bx)), evaluate(enc, CondensedPauli(0, bz))});
    }
    return f;
}

inline CondensedEncoding encoding_from_frame(const Frame& f) {
    if (f.n_in != f.n_out)
        fail(ErrorCode::RankMismatch, "only square frames define encodings");
    if (!check_frame(f))
        fail(ErrorCode::IllFormedFrame, "frame violates commutation constraints");
    Dim dim(f.d, f.n_in);
    std::vector<int> mu(2 * dim.n);
    ModMatrix psi(2 * dim.n, 2 * dim.n, dim.d);
    for (int i = 0; i < dim.n; ++i) {
        Vec vx = f.columns[i].x.v.relayout(Layout::separated);
        Vec vz = f.columns[i].z.v.relayout(Layout::separated);
        mu[i] = f.columns[i].x.t;
        mu[dim.n + i] = f.columns[i].z.t;
        for (int r = 0; r < 2 * dim.n; ++r) {
            psi.at(r, i) = vx[r];
            psi.at(r, dim.n + i) = vz[r];
        }
    }
    return CondensedEncoding(dim, std::move(mu), std::move(psi));
}

// ---- codec -----------------------------------------------------------------
//
// Line-oriented JSON, field order fixed for byte-stable output:
//   {"d":2,"n_in":1,"n_out":1,"columns":[{"x":{"t":0,"v":[0,1]},"z":{"t":0,"v":[1,0]}}]}
// with v in separated [x;z] layout.

inline std::string write_frame(const Frame& f) {
    nlohmann::ordered_json j;
    j["d"] = f.d;
    j["n_in"] = f.n_in;
    j["n_out"] = f.n_out;
    j["columns"] = nlohmann::ordered_json::array();
    for (const FrameColumn& c : f.columns) {
        nlohmann::ordered_json col;
        for (const char* key : {"x", "z"}) {
            const CondensedPauli& p = key[0] == 'x' ? c.x : c.z;
            nlohmann::ordered_json entry;
            entry["t"] = p.t;
            entry["v"] = p.v.relayout(Layout::separated).entries();
            col[key] = std::move(entry);
        }
        j["columns"].push_back(std::move(col));
    }
    return j.dump() + "\n";
}

inline Frame read_frame(const std::string& bytes) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::FormatError, std::string("frame parse: ") + e.what());
    }
    Frame f;
    try {
        f.d = j.at("d").get<int>();
        f.n_in = j.at("n_in").get<int>();
        f.n_out = j.at("n_out").get<int>();
        if (f.d < 2 || f.n_in < 0 || f.n_out < 0)
            fail(ErrorCode::FormatError, "frame header out of range");
        Dim dim(f.d, f.n_out);
        for (const auto& col : j.at("columns")) {
            FrameColumn c;
            for (const char* key : {"x", "z"}) {
                const auto& entry = col.at(key);
                int t = entry.at("t").get<int>();
                std::vector<int> v = entry.at("v").get<std::vector<int>>();
                if (static_cast<int>(v.size()) != 2 * dim.n)
                    fail(ErrorCode::FormatError, "frame vector length mismatch");
                CondensedPauli p(t, Vec(dim, Layout::separated, std::move(v)));
                (key[0] == 'x' ? c.x : c.z) = std::move(p);
            }
            f.columns.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::FormatError, std::string("frame fields: ") + e.what());
    }
    if (static_cast<int>(f.columns.size()) != f.n_in)
        fail(ErrorCode::FormatError, "frame column count mismatch");
    if (!check_frame(f))
        fail(ErrorCode::IllFormedFrame, "frame violates commutation constraints");
    return f;
}

}  // namespace qclif
