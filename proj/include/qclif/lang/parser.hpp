#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qclif/errors.hpp"
#include "qclif/lang/ast.hpp"
#include "qclif/lang/eval.hpp"
#include "qclif/lang/psiof.hpp"
#include "qclif/lang/typecheck.hpp"

namespace qclif::lang {

// ---- lexer -----------------------------------------------------------------

enum class Tok {
    Ident, Int,
    Colon, Semi, Eq, Arrow /* => */, Lolli /* -o */,
    LParen, RParen, Comma, Lt, Gt,
    DStar /* ** */, StarDotStar /* *.* */, Star, Caret, Dot, Plus, Minus,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    long long value = 0;
    SrcLoc loc;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto loc = [&] { return SrcLoc{line, col}; };
    auto advance = [&](size_t k) {
        for (size_t j = 0; j < k; ++j) {
            if (src[i + j] == '\n') { ++line; col = 1; } else ++col;
        }
        i += k;
    };
    auto push = [&](Tok kind, size_t len, SrcLoc l) {
        out.push_back({kind, src.substr(i, len), 0, l});
        advance(len);
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
        SrcLoc l = loc();
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() &&
                   (isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
                ++j;
            push(Tok::Ident, j - i, l);
            continue;
        }
        if (isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && isdigit(static_cast<unsigned char>(src[j]))) ++j;
            Token t{Tok::Int, src.substr(i, j - i), 0, l};
            t.value = std::stoll(t.text);
            out.push_back(t);
            advance(j - i);
            continue;
        }
        switch (c) {
            case ':': push(Tok::Colon, 1, l); continue;
            case ';': push(Tok::Semi, 1, l); continue;
            case '=':
                if (i + 1 < src.size() && src[i + 1] == '>') push(Tok::Arrow, 2, l);
                else push(Tok::Eq, 1, l);
                continue;
            case '-':
                if (i + 1 < src.size() && src[i + 1] == 'o' &&
                    (i + 2 >= src.size() || !isalnum(static_cast<unsigned char>(src[i + 2])))) {
                    push(Tok::Lolli, 2, l);
                } else {
                    push(Tok::Minus, 1, l);
                }
                continue;
            case '(': push(Tok::LParen, 1, l); continue;
            case ')': push(Tok::RParen, 1, l); continue;
            case ',': push(Tok::Comma, 1, l); continue;
            case '<': push(Tok::Lt, 1, l); continue;
            case '>': push(Tok::Gt, 1, l); continue;
            case '*':
                if (i + 2 < src.size() && src[i + 1] == '.' && src[i + 2] == '*') push(Tok::StarDotStar, 3, l);
                else if (i + 1 < src.size() && src[i + 1] == '*') push(Tok::DStar, 2, l);
                else push(Tok::Star, 1, l);
                continue;
            case '^': push(Tok::Caret, 1, l); continue;
            case '.': push(Tok::Dot, 1, l); continue;
            case '+': push(Tok::Plus, 1, l); continue;
            default:
                fail(ErrorCode::SyntaxError,
                     std::string("unexpected character '") + c + "'" + at(l));
        }
    }
    out.push_back({Tok::End, "", 0, loc()});
    return out;
}

// ---- surface syntax ----------------------------------------------------

struct IdxExpr {
    bool literal = true;
    int value = 0;       // literal value
    std::string var;     // template variable
    int offset = 0;      // var + offset
    SrcLoc loc;

    int resolve(const std::string& name, int bound) const {
        if (literal) return value;
        if (var != name)
            fail(ErrorCode::SyntaxError, "unbound index variable '" + var + "'" + at(loc));
        return bound + offset;
    }
    bool uses_var() const { return !literal; }
};

struct SPat;
using SPatPtr = std::shared_ptr<SPat>;
struct SPat {
    enum class Kind { Leaf, In1, In2, Var };
    Kind kind;
    char letter = 0;                 // Leaf: 'X' or 'Z'
    std::optional<IdxExpr> idx;      // Leaf: optional .i
    SPatPtr sub;                     // In1/In2
    std::string var;                 // Var
    SrcLoc loc;
};

struct SExpr;
using SExprPtr = std::shared_ptr<SExpr>;
struct SPhase;
using SPhasePtr = std::shared_ptr<SPhase>;

struct SExpr {
    enum class Kind { Tensor, Star, Pow, Phase, Inj, DotIdx, Name };
    Kind kind;
    SExprPtr a, b;
    SPhasePtr phase;   // Phase
    int r = 0;         // Pow exponent; Inj index
    std::string name;  // Name: variable / letter / parameter
    std::optional<IdxExpr> idx;  // DotIdx
    SrcLoc loc;
};

struct SPhase {
    enum class Kind { Int, Neg, Add, Sub, Mul, Omega };
    Kind kind;
    long long value = 0;
    SPhasePtr a, b;
    SExprPtr e1, e2;  // Omega arguments
    SrcLoc loc;
};

struct SClause {
    SPatPtr pattern;
    SExprPtr body;
    SrcLoc loc;
};

struct SDef {
    std::string name;
    std::vector<std::pair<std::string, QTypePtr>> params;
    QTypePtr domain, codomain;
    std::vector<SClause> clauses;
    bool is_instantiation = false;
    std::string base;
    std::vector<SExprPtr> args;
    SrcLoc loc;
};

// ---- parser ---------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string src) : toks_(lex(std::move(src))) {}

    int parse_header() {
        expect_ident("dim");
        if (peek().kind != Tok::Ident || peek().text != "d")
            fail(ErrorCode::SyntaxError, "expected 'd'" + at(peek().loc));
        next();
        expect(Tok::Eq, "'='");
        Token t = expect(Tok::Int, "dimension");
        expect(Tok::Semi, "';'");
        if (t.value < 2) fail(ErrorCode::SyntaxError, "dimension must be >= 2" + at(t.loc));
        return static_cast<int>(t.value);
    }

    std::vector<SDef> parse_defs() {
        std::vector<SDef> defs;
        while (peek().kind != Tok::End) defs.push_back(parse_def());
        return defs;
    }

private:
    const Token& peek(int k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        next();
        return true;
    }
    Token expect(Tok kind, const char* what) {
        if (peek().kind != kind)
            fail(ErrorCode::SyntaxError,
                 std::string("expected ") + what + ", found '" + peek().text + "'" + at(peek().loc));
        return next();
    }
    void expect_ident(const std::string& word) {
        if (peek().kind != Tok::Ident || peek().text != word)
            fail(ErrorCode::SyntaxError,
                 "expected '" + word + "', found '" + peek().text + "'" + at(peek().loc));
        next();
    }
    bool peek_ident(const std::string& word, int k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == word;
    }

    QTypePtr parse_qtype() {
        QTypePtr left = parse_qatom();
        if (peek().kind == Tok::DStar) {
            next();
            return QType::tensor(left, parse_qtype());  // right associative
        }
        return left;
    }

    QTypePtr parse_qatom() {
        QTypePtr t;
        if (peek_ident("Pauli")) {
            next();
            t = QType::pauli();
        } else if (accept(Tok::LParen)) {
            t = parse_qtype();
            expect(Tok::RParen, "')'");
        } else {
            fail(ErrorCode::SyntaxError, "expected a Pauli type" + at(peek().loc));
        }
        while (peek().kind == Tok::Caret) {
            next();
            Token k = expect(Tok::Int, "tensor power");
            if (k.value < 1) fail(ErrorCode::SyntaxError, "tensor power must be >= 1" + at(k.loc));
            QTypePtr folded = t;
            for (int i = 1; i < k.value; ++i) folded = QType::tensor(t, folded);
            t = folded;
        }
        return t;
    }

    SDef parse_def() {
        SrcLoc loc = peek().loc;
        expect_ident("clifford");
        Token name = expect(Tok::Ident, "definition name");
        SDef def;
        def.name = name.text;
        def.loc = loc;
        if (accept(Tok::LParen)) {
            while (true) {
                Token p = expect(Tok::Ident, "parameter name");
                expect(Tok::Colon, "':'");
                def.params.emplace_back(p.text, parse_qtype());
                if (accept(Tok::Comma)) continue;
                expect(Tok::RParen, "')'");
                break;
            }
        }
        if (accept(Tok::Eq)) {
            def.is_instantiation = true;
            Token base = expect(Tok::Ident, "base definition name");
            def.base = base.text;
            while (starts_atom()) def.args.push_back(parse_postfix());
            return def;
        }
        expect(Tok::Colon, "':'");
        def.domain = parse_qtype();
        expect(Tok::Lolli, "'-o'");
        def.codomain = parse_qtype();
        expect_ident("where");
        while (clause_ahead()) {
            SClause cl;
            cl.loc = peek().loc;
            cl.pattern = parse_pattern();
            expect(Tok::Arrow, "'=>'");
            cl.body = parse_pexpr();
            def.clauses.push_back(std::move(cl));
        }
        if (def.clauses.empty())
            fail(ErrorCode::SyntaxError, "definition has no clauses" + at(loc));
        return def;
    }

    bool starts_atom() const {
        return peek().kind == Tok::Ident && !peek_ident("clifford");
    }

    /// True when the upcoming tokens read as `pattern =>`.
    bool clause_ahead() const {
        size_t p = pos_;
        if (!scan_pattern(p)) return false;
        return toks_[p].kind == Tok::Arrow;
    }

    bool scan_pattern(size_t& p) const {
        const Token& t = toks_[p];
        if (t.kind == Tok::LParen) {
            ++p;
            if (!scan_pattern(p)) return false;
            if (toks_[p].kind != Tok::RParen) return false;
            ++p;
            return true;
        }
        if (t.kind != Tok::Ident) return false;
        if (t.text == "in1" || t.text == "in2") {
            ++p;
            return scan_pattern(p);
        }
        if (t.text == "clifford" || t.text == "where") return false;
        ++p;
        if (toks_[p].kind == Tok::Dot) {
            ++p;
            if (toks_[p].kind == Tok::Int || toks_[p].kind == Tok::Ident) { ++p; return true; }
            if (toks_[p].kind == Tok::LParen) {
                ++p;
                while (toks_[p].kind != Tok::RParen && toks_[p].kind != Tok::End) ++p;
                if (toks_[p].kind == Tok::RParen) { ++p; return true; }
                return false;
            }
            return false;
        }
        return true;
    }

    IdxExpr parse_idx() {
        IdxExpr ix;
        ix.loc = peek().loc;
        if (accept(Tok::LParen)) {
            ix = parse_idx();
            if (accept(Tok::Plus)) {
                Token off = expect(Tok::Int, "index offset");
                if (ix.literal) ix.value += static_cast<int>(off.value);
                else ix.offset += static_cast<int>(off.value);
            }
            expect(Tok::RParen, "')'");
            return ix;
        }
        if (peek().kind == Tok::Int) {
            ix.literal = true;
            ix.value = static_cast<int>(next().value);
            return ix;
        }
        Token v = expect(Tok::Ident, "index");
        ix.literal = false;
        ix.var = v.text;
        return ix;
    }

    SPatPtr parse_pattern() {
        SrcLoc loc = peek().loc;
        if (accept(Tok::LParen)) {
            SPatPtr p = parse_pattern();
            expect(Tok::RParen, "')'");
            return p;
        }
        Token t = expect(Tok::Ident, "pattern");
        auto mk = [&](SPat p) { return std::make_shared<SPat>(std::move(p)); };
        if (t.text == "in1" || t.text == "in2") {
            SPat p;
            p.kind = t.text == "in1" ? SPat::Kind::In1 : SPat::Kind::In2;
            p.sub = parse_pattern();
            p.loc = loc;
            return mk(std::move(p));
        }
        if (t.text == "X" || t.text == "Z") {
            SPat p;
            p.kind = SPat::Kind::Leaf;
            p.letter = t.text[0];
            p.loc = loc;
            if (accept(Tok::Dot)) p.idx = parse_idx();
            return mk(std::move(p));
        }
        if (t.text == "Y" || t.text == "I")
            fail(ErrorCode::SyntaxError, "only X and Z may appear in patterns" + at(loc));
        SPat p;
        p.kind = SPat::Kind::Var;
        p.var = t.text;
        p.loc = loc;
        return mk(std::move(p));
    }

    SExprPtr parse_pexpr() { return parse_tensor(); }

    SExprPtr parse_tensor() {
        SExprPtr left = parse_star();
        if (peek().kind == Tok::DStar) {
            SrcLoc loc = next().loc;
            SExprPtr right = parse_tensor();  // right associative
            auto e = std::make_shared<SExpr>();
            e->kind = SExpr::Kind::Tensor;
            e->a = left;
            e->b = right;
            e->loc = loc;
            return e;
        }
        return left;
    }

    SExprPtr parse_star() {
        SExprPtr left = parse_unary();
        while (peek().kind == Tok::StarDotStar) {
            SrcLoc loc = next().loc;
            SExprPtr right = parse_unary();
            auto e = std::make_shared<SExpr>();
            e->kind = SExpr::Kind::Star;
            e->a = left;
            e->b = right;
            e->loc = loc;
            left = e;
        }
        return left;
    }

    SExprPtr parse_unary() {
        SrcLoc loc = peek().loc;
        if (accept(Tok::Lt)) {
            SPhasePtr ph = parse_phase();
            expect(Tok::Gt, "'>'");
            auto e = std::make_shared<SExpr>();
            e->kind = SExpr::Kind::Phase;
            e->phase = ph;
            e->a = parse_unary();
            e->loc = loc;
            return e;
        }
        if (peek_ident("in1") || peek_ident("in2")) {
            int which = peek().text == "in1" ? 1 : 2;
            next();
            auto e = std::make_shared<SExpr>();
            e->kind = SExpr::Kind::Inj;
            e->r = which;
            e->a = parse_unary();
            e->loc = loc;
            return e;
        }
        return parse_postfix();
    }

    SExprPtr parse_postfix() {
        SExprPtr e = parse_atom();
        while (true) {
            if (peek().kind == Tok::Dot) {
                SrcLoc loc = next().loc;
                auto d = std::make_shared<SExpr>();
                d->kind = SExpr::Kind::DotIdx;
                d->a = e;
                d->idx = parse_idx();
                d->loc = loc;
                e = d;
                continue;
            }
            if (peek().kind == Tok::Caret) {
                SrcLoc loc = next().loc;
                Token k = expect(Tok::Int, "power");
                auto d = std::make_shared<SExpr>();
                d->kind = SExpr::Kind::Pow;
                d->a = e;
                d->r = static_cast<int>(k.value);
                d->loc = loc;
                e = d;
                continue;
            }
            break;
        }
        return e;
    }

    SExprPtr parse_atom() {
        SrcLoc loc = peek().loc;
        if (accept(Tok::LParen)) {
            SExprPtr e = parse_pexpr();
            expect(Tok::RParen, "')'");
            return e;
        }
        Token t = expect(Tok::Ident, "expression");
        auto e = std::make_shared<SExpr>();
        e->kind = SExpr::Kind::Name;
        e->name = t.text;
        e->loc = loc;
        return e;
    }

    SPhasePtr parse_phase() {
        SPhasePtr left = parse_phase_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool plus = next().kind == Tok::Plus;
            SPhasePtr right = parse_phase_term();
            auto e = std::make_shared<SPhase>();
            e->kind = plus ? SPhase::Kind::Add : SPhase::Kind::Sub;
            e->a = left;
            e->b = right;
            left = e;
        }
        return left;
    }

    SPhasePtr parse_phase_term() {
        SPhasePtr left = parse_phase_factor();
        while (peek().kind == Tok::Star) {
            next();
            SPhasePtr right = parse_phase_factor();
            auto e = std::make_shared<SPhase>();
            e->kind = SPhase::Kind::Mul;
            e->a = left;
            e->b = right;
            left = e;
        }
        return left;
    }

    SPhasePtr parse_phase_factor() {
        SrcLoc loc = peek().loc;
        auto e = std::make_shared<SPhase>();
        e->loc = loc;
        if (accept(Tok::Minus)) {
            e->kind = SPhase::Kind::Neg;
            e->a = parse_phase_factor();
            return e;
        }
        if (peek().kind == Tok::Int) {
            e->kind = SPhase::Kind::Int;
            e->value = next().value;
            return e;
        }
        if (accept(Tok::LParen)) {
            SPhasePtr inner = parse_phase();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (peek_ident("omega")) {
            next();
            e->kind = SPhase::Kind::Omega;
            if (accept(Tok::LParen)) {
                e->e1 = parse_pexpr();
                expect(Tok::Comma, "','");
                e->e2 = parse_pexpr();
                expect(Tok::RParen, "')'");
            } else {
                e->e1 = parse_postfix();
                e->e2 = parse_postfix();
            }
            return e;
        }
        fail(ErrorCode::SyntaxError, "expected a phase expression" + at(loc));
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

}  // namespace qclif::lang
