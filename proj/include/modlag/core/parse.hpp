// SPDX-License-Identifier: MIT
// Parser for expression text. Accepts the plain grammar (phi1, d2phi1, V0,
// alpha, c, dt, dx, rationals, + - * / ^ and parentheses, with implicit
// multiplication) and the LaTeX atoms the library's own printer emits
// (\phi_{1}, \dot{\phi}_{1}, \phi_{1}^{(3)}, V', V^{(4)}, \alpha,
// {\Delta t}, \frac{..}{..}, \cdot, \left, \right).

#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "modlag/core/expr.hpp"

namespace modlag {
namespace detail {

struct Token {
    enum Kind {
        Num, Param, Jet, Pot,
        Plus, Minus, Star, Slash, Caret,
        LParen, RParen, LBrace, RBrace, Frac, End
    } kind;
    std::size_t pos = 0;
    mpz_class num;
    int a = 0; // Jet: component, Pot: order, Param: table index
    int b = 0; // Jet: derivative order
};

class Lexer {
public:
    Lexer(std::string_view s, const ParamTable& tab) : s_(s), tab_(tab) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ws();
            if (i_ >= s_.size()) break;
            std::size_t p = i_;
            char ch = s_[i_];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                out.push_back(number(p));
            } else if (ch == '\\') {
                ++i_;
                command(p, out);
            } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                out.push_back(word(p));
            } else {
                ++i_;
                switch (ch) {
                case '+': out.push_back({Token::Plus, p}); break;
                case '-': out.push_back({Token::Minus, p}); break;
                case '*': out.push_back({Token::Star, p}); break;
                case '/': out.push_back({Token::Slash, p}); break;
                case '^': out.push_back({Token::Caret, p}); break;
                case '(': out.push_back({Token::LParen, p}); break;
                case ')': out.push_back({Token::RParen, p}); break;
                case '{': out.push_back({Token::LBrace, p}); break;
                case '}': out.push_back({Token::RBrace, p}); break;
                default: fail(p, std::string("unexpected character '") + ch + "'");
                }
            }
        }
        out.push_back({Token::End, s_.size()});
        return out;
    }

private:
    [[noreturn]] void fail(std::size_t pos, const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos));
    }

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    Token number(std::size_t p) {
        std::size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        Token t{Token::Num, p};
        t.num = mpz_class(std::string(s_.substr(i_, j - i_)), 10);
        i_ = j;
        return t;
    }

    std::string read_word() {
        std::size_t j = i_;
        while (j < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
            ++j;
        std::string w(s_.substr(i_, j - i_));
        i_ = j;
        return w;
    }

    std::string read_alpha_word() {
        std::size_t j = i_;
        while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
        std::string w(s_.substr(i_, j - i_));
        i_ = j;
        return w;
    }

    bool eat(char ch) {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == ch) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect(char ch, std::size_t p) {
        if (!eat(ch)) fail(p, std::string("expected '") + ch + "'");
    }

    int read_int(std::size_t p) {
        skip_ws();
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
            fail(p, "expected a number");
        int v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            v = v * 10 + (s_[i_] - '0');
            if (v > 100000) fail(p, "index too large");
            ++i_;
        }
        return v;
    }

    // Subscript: _{digits} or _digit.
    int subscript(std::size_t p) {
        expect('_', p);
        if (eat('{')) {
            int v = read_int(p);
            expect('}', p);
            return v;
        }
        return read_int(p);
    }

    bool peek_subscript() {
        std::size_t save = i_;
        skip_ws();
        bool yes = i_ < s_.size() && s_[i_] == '_';
        i_ = save;
        return yes;
    }

    // Optional ^{(m)} derivative marker; leaves the stream unchanged when the
    // superscript is a plain power.
    bool deriv_marker(int& order) {
        std::size_t save = i_;
        skip_ws();
        if (i_ >= s_.size() || s_[i_] != '^') { i_ = save; return false; }
        ++i_;
        skip_ws();
        if (i_ >= s_.size() || s_[i_] != '{') { i_ = save; return false; }
        ++i_;
        skip_ws();
        if (i_ >= s_.size() || s_[i_] != '(') { i_ = save; return false; }
        ++i_;
        int v = read_int(save);
        skip_ws();
        if (i_ >= s_.size() || s_[i_] != ')') { i_ = save; return false; }
        ++i_;
        skip_ws();
        if (i_ >= s_.size() || s_[i_] != '}') { i_ = save; return false; }
        ++i_;
        order = v;
        return true;
    }

    Token word(std::size_t p) {
        std::string w = read_word();
        // d<m>phi<j>
        if (w.size() > 1 && w[0] == 'd' && std::isdigit(static_cast<unsigned char>(w[1]))) {
            std::size_t k = 1;
            while (k < w.size() && std::isdigit(static_cast<unsigned char>(w[k]))) ++k;
            if (w.compare(k, 3, "phi") == 0 && k + 3 < w.size()) {
                std::size_t m = k + 3;
                bool digits = true;
                for (std::size_t q = m; q < w.size(); ++q)
                    if (!std::isdigit(static_cast<unsigned char>(w[q]))) digits = false;
                if (digits) {
                    Token t{Token::Jet, p};
                    t.b = std::stoi(w.substr(1, k - 1));
                    t.a = std::stoi(w.substr(m));
                    return t;
                }
            }
        }
        // phi<j>
        if (w.size() > 3 && w.compare(0, 3, "phi") == 0) {
            bool digits = true;
            for (std::size_t q = 3; q < w.size(); ++q)
                if (!std::isdigit(static_cast<unsigned char>(w[q]))) digits = false;
            if (digits) {
                Token t{Token::Jet, p};
                t.a = std::stoi(w.substr(3));
                t.b = 0;
                return t;
            }
        }
        // V<k>, V, V', V^{(k)}
        if (w == "V") {
            Token t{Token::Pot, p};
            int primes = 0;
            while (i_ < s_.size() && s_[i_] == '\'') {
                ++primes;
                ++i_;
            }
            if (primes > 0) {
                t.a = primes;
                return t;
            }
            int order = 0;
            if (deriv_marker(order)) {
                t.a = order;
                return t;
            }
            t.a = 0;
            return t;
        }
        if (w.size() > 1 && w[0] == 'V') {
            bool digits = true;
            for (std::size_t q = 1; q < w.size(); ++q)
                if (!std::isdigit(static_cast<unsigned char>(w[q]))) digits = false;
            if (digits) {
                Token t{Token::Pot, p};
                t.a = std::stoi(w.substr(1));
                return t;
            }
        }
        int idx = tab_.find(w);
        if (idx < 0) fail(p, "unknown symbol '" + w + "'");
        Token t{Token::Param, p};
        t.a = idx;
        return t;
    }

    void command(std::size_t p, std::vector<Token>& out) {
        std::string w = read_alpha_word();
        if (w.empty()) {
            // Spacing commands like \, \; \! and a lone backslash.
            if (i_ < s_.size() && (s_[i_] == ',' || s_[i_] == ';' || s_[i_] == '!' || s_[i_] == ':')) {
                ++i_;
                return;
            }
            fail(p, "stray backslash");
        }
        if (w == "quad" || w == "qquad" || w == "left" || w == "right") return;
        if (w == "cdot") {
            out.push_back({Token::Star, p});
            return;
        }
        if (w == "frac" || w == "tfrac" || w == "dfrac") {
            out.push_back({Token::Frac, p});
            return;
        }
        if (w == "alpha") {
            Token t{Token::Param, p};
            t.a = ParamTable::alpha;
            out.push_back(t);
            return;
        }
        if (w == "Delta") {
            skip_ws();
            std::string which = read_alpha_word();
            if (which == "t") {
                Token t{Token::Param, p};
                t.a = ParamTable::dt;
                out.push_back(t);
                return;
            }
            if (which == "x") {
                Token t{Token::Param, p};
                t.a = ParamTable::dx;
                out.push_back(t);
                return;
            }
            fail(p, "expected t or x after \\Delta");
        }
        if (w == "phi") {
            Token t{Token::Jet, p};
            t.a = subscript(p);
            t.b = 0;
            int order = 0;
            if (deriv_marker(order)) t.b = order;
            out.push_back(t);
            return;
        }
        if (w == "dot" || w == "ddot") {
            int order = (w == "dot") ? 1 : 2;
            expect('{', p);
            skip_ws();
            expect('\\', p);
            std::string inner = read_alpha_word();
            if (inner != "phi") fail(p, "expected \\phi inside \\" + w);
            int comp = -1;
            if (peek_subscript()) comp = subscript(p);
            expect('}', p);
            if (comp < 0) {
                if (!peek_subscript()) fail(p, "missing component subscript");
                comp = subscript(p);
            }
            Token t{Token::Jet, p};
            t.a = comp;
            t.b = order;
            out.push_back(t);
            return;
        }
        fail(p, "unknown command \\" + w);
    }

    std::string_view s_;
    std::size_t i_ = 0;
    const ParamTable& tab_;
};

class Parser {
public:
    Parser(CtxPtr ctx, std::vector<Token> toks) : ctx_(std::move(ctx)), t_(std::move(toks)) {}

    Expr run() {
        Expr e = expr();
        if (cur().kind != Token::End) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(cur().pos));
    }

    const Token& cur() const { return t_[i_]; }
    void advance() { ++i_; }

    bool starts_primary(const Token& t) const {
        switch (t.kind) {
        case Token::Num:
        case Token::Param:
        case Token::Jet:
        case Token::Pot:
        case Token::LParen:
        case Token::LBrace:
        case Token::Frac:
            return true;
        default:
            return false;
        }
    }

    Expr expr() {
        Expr e = term();
        while (cur().kind == Token::Plus || cur().kind == Token::Minus) {
            bool minus = cur().kind == Token::Minus;
            advance();
            Expr r = term();
            e = minus ? e - r : e + r;
        }
        return e;
    }

    Expr term() {
        Expr e = unary();
        while (true) {
            if (cur().kind == Token::Star) {
                advance();
                e = e * unary();
            } else if (cur().kind == Token::Slash) {
                advance();
                e = e / unary();
            } else if (starts_primary(cur())) {
                e = e * unary();
            } else {
                return e;
            }
        }
    }

    Expr unary() {
        bool neg = false;
        while (cur().kind == Token::Plus || cur().kind == Token::Minus) {
            if (cur().kind == Token::Minus) neg = !neg;
            advance();
        }
        Expr e = power();
        return neg ? -e : e;
    }

    Expr power() {
        Expr base = primary();
        if (cur().kind == Token::Caret) {
            advance();
            int e = exponent();
            base = Expr::pow(base, e);
        }
        return base;
    }

    int exponent() {
        bool braced = false;
        if (cur().kind == Token::LBrace) {
            braced = true;
            advance();
        } else if (cur().kind == Token::LParen) {
            braced = false;
            advance();
            int v = signed_int();
            if (cur().kind != Token::RParen) fail("expected ')'");
            advance();
            return v;
        }
        int v = signed_int();
        if (braced) {
            if (cur().kind != Token::RBrace) fail("expected '}'");
            advance();
        }
        return v;
    }

    int signed_int() {
        bool neg = false;
        while (cur().kind == Token::Minus || cur().kind == Token::Plus) {
            if (cur().kind == Token::Minus) neg = !neg;
            advance();
        }
        if (cur().kind != Token::Num) fail("expected an integer exponent");
        if (!cur().num.fits_sint_p()) fail("exponent too large");
        int v = static_cast<int>(cur().num.get_si());
        advance();
        return neg ? -v : v;
    }

    Expr primary() {
        const Token& t = cur();
        switch (t.kind) {
        case Token::Num: {
            Expr e = Expr::scalar(ctx_, RatFun::rational(&ctx_->params(), mpq_class(t.num)));
            advance();
            return e;
        }
        case Token::Param: {
            Expr e = Expr::scalar(ctx_, ctx_->param(t.a));
            advance();
            return e;
        }
        case Token::Jet: {
            Expr e = Expr::jet(ctx_, t.a, t.b);
            advance();
            return e;
        }
        case Token::Pot: {
            Expr e = Expr::pot(ctx_, t.a);
            advance();
            return e;
        }
        case Token::LParen: {
            advance();
            Expr e = expr();
            if (cur().kind != Token::RParen) fail("expected ')'");
            advance();
            return e;
        }
        case Token::LBrace: {
            advance();
            Expr e = expr();
            if (cur().kind != Token::RBrace) fail("expected '}'");
            advance();
            return e;
        }
        case Token::Frac: {
            advance();
            if (cur().kind != Token::LBrace) fail("expected '{' after \\frac");
            advance();
            Expr num = expr();
            if (cur().kind != Token::RBrace) fail("expected '}'");
            advance();
            if (cur().kind != Token::LBrace) fail("expected second '{' of \\frac");
            advance();
            Expr den = expr();
            if (cur().kind != Token::RBrace) fail("expected '}'");
            advance();
            return num / den;
        }
        default:
            fail("expected an operand");
        }
    }

    CtxPtr ctx_;
    std::vector<Token> t_;
    std::size_t i_ = 0;
};

} // namespace detail

inline Expr parse_expr(const CtxPtr& ctx, std::string_view text) {
    detail::Lexer lex(text, ctx->params());
    detail::Parser p(ctx, lex.run());
    return p.run();
}

} // namespace modlag
