// ============================================================================
//  polymu/parser.hpp - concrete syntax for formulas
//
//  Grammar (binding strength: unit prefixes > '&' > '|'; fixpoint bodies
//  extend maximally to the right):
//
//      phi    := or
//      or     := and { "|" and }
//      and    := unit { "&" unit }
//      unit   := lit | lit "->" phi | VAR | "(" phi ")"
//              | "<" act ">" "_" nat unit | "[" act "]" "_" nat unit
//              | ("mu"|"nu") VAR "." phi | "{" repl "}" unit
//      lit    := PROP "(" nat ")" | "~" PROP "(" nat ")"
//      repl   := item { "," item } ;  item := nat "<-" nat | nat "<->" nat
//
//  "u<-v" writes the pebble from position u into position v (kappa(v) = u);
//  "i<->j" exchanges the two positions.  The implication sugar requires a
//  literal antecedent and desugars to the complementary literal disjoined
//  with the consequent.
//
//  Binder names must be pairwise distinct.  By default a duplicate is a
//  parse error; with rename_duplicate_binders set, later binders are
//  alpha-renamed to a fresh primed-style name (X, X2, X3, ...).
// ============================================================================
#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "formula.hpp"

namespace polymu {

struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(std::size_t pos, const std::string& msg)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct ParseOptions {
    bool rename_duplicate_binders = false;
};

namespace detail {

enum class Tok : std::uint8_t {
    Ident, Nat, LParen, RParen, LAngle, RAngle, LBracket, RBracket,
    LBrace, RBrace, Underscore, Dot, Comma, Pipe, Amp, Tilde,
    Arrow, CopyArrow, SwapArrow, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    const std::string& src_;
    std::size_t i_ = 0;
    Token cur_;

    void advance() {
        while (i_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(src_[i_]))) { ++i_; continue; }
            if (src_[i_] == '#') {
                while (i_ < src_.size() && src_[i_] != '\n') ++i_;
                continue;
            }
            break;
        }
        cur_.pos = i_;
        if (i_ >= src_.size()) { cur_.kind = Tok::End; cur_.text.clear(); return; }
        char c = src_[i_];
        auto two = [this](char a, char b) {
            return i_ + 1 < src_.size() && src_[i_] == a && src_[i_ + 1] == b;
        };
        auto three = [this](char a, char b, char c2) {
            return i_ + 2 < src_.size() && src_[i_] == a && src_[i_ + 1] == b && src_[i_ + 2] == c2;
        };
        if (three('<', '-', '>')) { cur_ = {Tok::SwapArrow, "<->", cur_.pos}; i_ += 3; return; }
        if (two('<', '-')) { cur_ = {Tok::CopyArrow, "<-", cur_.pos}; i_ += 2; return; }
        if (two('-', '>')) { cur_ = {Tok::Arrow, "->", cur_.pos}; i_ += 2; return; }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                ++j;
            cur_ = {Tok::Ident, src_.substr(i_, j - i_), cur_.pos};
            i_ = j;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            cur_ = {Tok::Nat, src_.substr(i_, j - i_), cur_.pos};
            i_ = j;
            return;
        }
        Tok k;
        switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '<': k = Tok::LAngle; break;
            case '>': k = Tok::RAngle; break;
            case '[': k = Tok::LBracket; break;
            case ']': k = Tok::RBracket; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case '_': k = Tok::Underscore; break;
            case '.': k = Tok::Dot; break;
            case ',': k = Tok::Comma; break;
            case '|': k = Tok::Pipe; break;
            case '&': k = Tok::Amp; break;
            case '~': k = Tok::Tilde; break;
            default:
                throw parse_error(i_, std::string("unexpected character '") + c + "'");
        }
        cur_ = {k, std::string(1, c), cur_.pos};
        ++i_;
    }
};

class Parser {
public:
    Parser(const std::string& src, ParseOptions opt) : lex_(src), opt_(opt) {}

    Formula run() {
        Formula f = parse_phi();
        if (lex_.peek().kind != Tok::End)
            throw parse_error(lex_.peek().pos, "trailing input after formula");
        return f;
    }

private:
    Lexer lex_;
    ParseOptions opt_;
    // Innermost-first stack of (source name, chosen name) for active binders,
    // plus every name handed out so far (for freshness).
    std::vector<std::pair<std::string, std::string>> scope_;
    std::unordered_set<std::string> used_names_;

    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(lex_.peek().pos, msg);
    }

    Token expect(Tok k, const std::string& what) {
        if (lex_.peek().kind != k) fail("expected " + what);
        return lex_.take();
    }

    int expect_nat(const std::string& what) {
        Token t = expect(Tok::Nat, what);
        try {
            return std::stoi(t.text);
        } catch (const std::out_of_range&) {
            throw parse_error(t.pos, "number out of range");
        }
    }

    bool is_keyword(const Token& t, const char* kw) const {
        return t.kind == Tok::Ident && t.text == kw;
    }

    Formula parse_phi() {
        Formula f = parse_or();
        if (lex_.peek().kind == Tok::Arrow)
            fail("the antecedent of '->' must be a single literal");
        return f;
    }

    Formula parse_or() {
        Formula acc = parse_and();
        while (lex_.peek().kind == Tok::Pipe) {
            lex_.take();
            acc = disj(acc, parse_and());
        }
        return acc;
    }

    Formula parse_and() {
        Formula acc = parse_unit();
        while (lex_.peek().kind == Tok::Amp) {
            lex_.take();
            acc = conj(acc, parse_unit());
        }
        return acc;
    }

    Formula parse_unit() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::Tilde: {
                lex_.take();
                Token p = expect(Tok::Ident, "proposition name after '~'");
                if (std::isupper(static_cast<unsigned char>(p.text[0])))
                    throw parse_error(p.pos, "proposition names start lowercase");
                expect(Tok::LParen, "'('");
                int i = expect_nat("position index");
                expect(Tok::RParen, "')'");
                return arrow_sugar(neg(p.text, check_index(i, p.pos)));
            }
            case Tok::Ident:
                if (is_keyword(t, "mu") || is_keyword(t, "nu")) return parse_fixpoint();
                return parse_name();
            case Tok::LParen: {
                lex_.take();
                Formula f = parse_phi();
                expect(Tok::RParen, "')'");
                return f;
            }
            case Tok::LAngle:
            case Tok::LBracket:
                return parse_modality();
            case Tok::LBrace:
                return parse_replacement();
            default:
                fail("expected a formula");
        }
    }

    int check_index(int i, std::size_t pos) {
        if (i < 1) throw parse_error(pos, "position indices start at 1");
        return i;
    }

    // A literal just parsed may be the antecedent of the implication sugar:
    // "lit -> phi" becomes the complementary literal disjoined with phi,
    // whose scope extends maximally right like a fixpoint body.
    Formula arrow_sugar(Formula lit) {
        if (lex_.peek().kind != Tok::Arrow) return lit;
        lex_.take();
        return implies(lit, parse_phi());
    }

    // A bare identifier: proposition literal if lowercase (must be applied to
    // an index), variable reference if uppercase.
    Formula parse_name() {
        Token t = lex_.take();
        if (std::isupper(static_cast<unsigned char>(t.text[0]))) {
            for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
                if (it->first == t.text) return var(it->second);
            return var(t.text);  // free variable
        }
        expect(Tok::LParen, "'(' after proposition name");
        int i = expect_nat("position index");
        expect(Tok::RParen, "')'");
        return arrow_sugar(pos(t.text, check_index(i, t.pos)));
    }

    Formula parse_fixpoint() {
        Token kw = lex_.take();
        Token name = expect(Tok::Ident, "variable name after '" + kw.text + "'");
        if (!std::isupper(static_cast<unsigned char>(name.text[0])))
            throw parse_error(name.pos, "variable names start uppercase");
        expect(Tok::Dot, "'.' after bound variable");
        std::string chosen = name.text;
        if (used_names_.count(chosen)) {
            if (!opt_.rename_duplicate_binders)
                throw parse_error(name.pos, "binder name '" + name.text +
                                                "' is already in use; every fixpoint "
                                                "variable must be bound exactly once");
            int suffix = 2;
            while (used_names_.count(name.text + std::to_string(suffix))) ++suffix;
            chosen = name.text + std::to_string(suffix);
        }
        used_names_.insert(chosen);
        scope_.emplace_back(name.text, chosen);
        Formula body = parse_phi();
        scope_.pop_back();
        return fix(kw.text == "mu" ? FixKind::Mu : FixKind::Nu, chosen, std::move(body));
    }

    Formula parse_modality() {
        Token open = lex_.take();
        bool diamond = open.kind == Tok::LAngle;
        Token act = expect(Tok::Ident, "action name");
        expect(diamond ? Tok::RAngle : Tok::RBracket, diamond ? "'>'" : "']'");
        expect(Tok::Underscore, "'_' before position index");
        int i = check_index(expect_nat("position index"), open.pos);
        Formula operand = parse_unit();
        return diamond ? dia(act.text, i, std::move(operand))
                       : box(act.text, i, std::move(operand));
    }

    Formula parse_replacement() {
        lex_.take();  // '{'
        std::map<int, int> entries;
        auto add = [&](int arg, int val, std::size_t pos) {
            if (entries.count(arg) && entries[arg] != val)
                throw parse_error(pos, "position " + std::to_string(arg) +
                                           " is rewritten twice in one replacement");
            entries[arg] = val;
        };
        while (true) {
            std::size_t lhs_pos = lex_.peek().pos;
            int lhs = check_index(expect_nat("position index in replacement"), lhs_pos);
            if (lex_.peek().kind == Tok::SwapArrow) {
                lex_.take();
                std::size_t rhs_pos = lex_.peek().pos;
                int rhs = check_index(expect_nat("position index after '<->'"), rhs_pos);
                if (lhs == rhs) throw parse_error(rhs_pos, "swap positions must differ");
                add(lhs, rhs, lhs_pos);
                add(rhs, lhs, rhs_pos);
            } else if (lex_.peek().kind == Tok::CopyArrow) {
                lex_.take();
                std::size_t rhs_pos = lex_.peek().pos;
                int rhs = check_index(expect_nat("position index after '<-'"), rhs_pos);
                // "u<-v": position v now shows the pebble from position u.
                add(rhs, lhs, rhs_pos);
            } else {
                fail("expected '<-' or '<->'");
            }
            if (lex_.peek().kind != Tok::Comma) break;
            lex_.take();
        }
        expect(Tok::RBrace, "'}'");
        return repl(Replacement::from_map(entries), parse_unit());
    }
};

}  // namespace detail

inline Formula parse_formula(const std::string& text, ParseOptions opt = {}) {
    return detail::Parser(text, opt).run();
}

}  // namespace polymu
