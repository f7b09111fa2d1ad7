#pragma once

#include <string>
#include <vector>

#include "qclif/encoding.hpp"
#include "qclif/errors.hpp"
#include "qclif/frames.hpp"
#include "qclif/lang/ast.hpp"
#include "qclif/lang/eval.hpp"
#include "qclif/lang/typecheck.hpp"
#include "qclif/modmat.hpp"
#include "qclif/pauli.hpp"

namespace qclif::lang {

/// Interlaced index k <-> separated index for a 2n-vector.
inline int interlaced_to_separated(int k, int n) { return k % 2 == 0 ? k / 2 : n + k / 2; }
inline int separated_to_interlaced(int k, int n) { return k < n ? 2 * k : 2 * (k - n) + 1; }

inline PValue pvalue_from_pauli(const CondensedPauli& p, const QTypePtr& q) {
    return PValue{p.t, unflatten(bar(q), p.v)};
}

inline CondensedPauli pauli_from_pvalue(const PValue& pv, const Dim& proto) {
    return CondensedPauli(pv.r, flatten(pv.v, proto));
}

/// Run a definition on a Pauli value over its domain; the input phase is
/// central and passes through unchanged.
inline PValue apply_def(const Def& def, const PValue& input, const Dim& proto, Fuel& fuel) {
    if (!def.params.empty())
        fail(ErrorCode::TypeMismatch, "definition '" + def.name + "' has uninstantiated parameters");
    PValue out = eval_p(psubst(def.body, def.var, input.v), proto, fuel);
    return PValue{mod_add(out.r, input.r, proto.d), out.v};
}

inline PValue apply_def(const Def& def, const PValue& input, const Dim& proto) {
    Fuel fuel{default_fuel()};
    return apply_def(def, input, proto, fuel);
}

/// Read the symplectic matrix of psi-of(body) off its action on basis values,
/// converted to separated layout.  Columns follow the interlaced leaf order of
/// the domain; rows that of the codomain.
inline ModMatrix psi_matrix_of(const Def& def, const Dim& proto) {
    CExprPtr psi = psi_of(def.body);
    CTypePtr dom = bar(def.domain);
    int n_in = qudits(def.domain), n_out = qudits(def.codomain);
    ModMatrix m(2 * n_out, 2 * n_in, proto.d);
    for (int j = 0; j < 2 * n_in; ++j) {
        CValuePtr b = basis_value(dom, j, proto);
        Vec img = flatten(eval_c(subst(psi, def.var, value_to_expr(b)), proto), proto)
                      .relayout(Layout::separated);
        int sep_col = interlaced_to_separated(j, n_in);
        for (int k = 0; k < 2 * n_out; ++k) m.at(k, sep_col) = img[k];
    }
    return m;
}

/// Extract the condensed encoding of a rank-preserving definition by basis
/// evaluation: mu(b) and psi(b) are the phase and vector of the image of the
/// basis Delta operator.
inline CondensedEncoding encoding_of(const Def& def, const Dim& proto) {
    int n_in = qudits(def.domain), n_out = qudits(def.codomain);
    if (n_in != n_out)
        fail(ErrorCode::RankMismatch, "definition '" + def.name + "' does not preserve rank");
    Dim dim(proto.d, n_in);
    CTypePtr dom = bar(def.domain);
    std::vector<int> mu(2 * dim.n);
    ModMatrix psi(2 * dim.n, 2 * dim.n, dim.d);
    for (int j = 0; j < 2 * dim.n; ++j) {
        CValuePtr b = basis_value(dom, j, proto);
        PValue image = apply_def(def, PValue{0, b}, proto);
        Vec v = flatten(image.v, proto).relayout(Layout::separated);
        int col = interlaced_to_separated(j, dim.n);
        mu[col] = image.r;
        for (int i = 0; i < 2 * dim.n; ++i) psi.at(i, col) = v[i];
    }
    return CondensedEncoding(dim, std::move(mu), std::move(psi));
}

/// Compile a definition to its Pauli frame: column i holds the images of
/// X_i and Z_i.
inline Frame compile_to_frame(const Def& def, const Dim& proto) {
    if (!def.params.empty())
        fail(ErrorCode::TypeMismatch, "definition '" + def.name + "' has uninstantiated parameters");
    int n_in = qudits(def.domain), n_out = qudits(def.codomain);
    CTypePtr dom = bar(def.domain);
    Frame f;
    f.d = proto.d;
    f.n_in = n_in;
    f.n_out = n_out;
    for (int i = 0; i < n_in; ++i) {
        PValue img_x = apply_def(def, PValue{0, basis_value(dom, 2 * i, proto)}, proto);
        PValue img_z = apply_def(def, PValue{0, basis_value(dom, 2 * i + 1, proto)}, proto);
        FrameColumn col;
        col.x = CondensedPauli(img_x.r, flatten(img_x.v, proto).relayout(Layout::separated));
        col.z = CondensedPauli(img_z.r, flatten(img_z.v, proto).relayout(Layout::separated));
        f.columns.push_back(std::move(col));
    }
    if (!check_frame(f))
        fail(ErrorCode::IllFormedFrame, "compiled frame violates commutation constraints");
    return f;
}

/// Build a runnable definition from a frame: nested sum cases down the
/// domain type, with each leaf mapping X_i / Z_i to its image literal.
inline Def def_from_frame(const Frame& f, const QTypePtr& domain, const QTypePtr& codomain,
                          const std::string& name) {
    if (qudits(domain) != f.n_in || qudits(codomain) != f.n_out)
        fail(ErrorCode::RankMismatch, "frame shape does not match the requested types");
    CTypePtr cod = bar(codomain);

    auto literal = [&](const CondensedPauli& p) -> PExprPtr {
        CValuePtr v = unflatten(cod, p.v);
        PExprPtr body = pembed(value_to_expr(v));
        if (p.t != 0) body = pphase(cconst(p.t), body);
        return body;
    };

    // leaf index counter walks the domain tensor tree left to right
    int next = 0;
    auto build = [&](auto&& self, const QTypePtr& q, const std::string& scrut) -> PExprPtr {
        if (q->kind == QType::Kind::Pauli) {
            const FrameColumn& col = f.columns[next++];
            return pcase_xz(pvar(scrut), literal(col.x), literal(col.z));
        }
        std::string x1 = fresh_name("q"), x2 = fresh_name("q");
        PExprPtr left = self(self, q->a, x1);
        PExprPtr right = self(self, q->b, x2);
        return pcase_sum(pvar(scrut), x1, left, x2, right);
    };
    std::string var = fresh_name("in");
    Def def;
    def.name = name;
    def.domain = domain;
    def.codomain = codomain;
    def.var = var;
    def.body = build(build, domain, var);
    return def;
}

/// Inverse of a rank-preserving definition: both the inverse encoding and a
/// runnable inverse definition synthesized from its frame.
struct InvertedClifford {
    CondensedEncoding encoding;
    Def def;
};

inline InvertedClifford invert_clifford(const Def& def, const Dim& proto) {
    CondensedEncoding enc = encoding_of(def, proto);
    CondensedEncoding inv = invert(enc);
    Frame f = frame_from_encoding(inv);
    Def inv_def = def_from_frame(f, def.codomain, def.domain, def.name + "_inv");
    return {std::move(inv), std::move(inv_def)};
}

}  // namespace qclif::lang
