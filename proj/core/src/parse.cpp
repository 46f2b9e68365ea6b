#include "lienard/parse.hpp"

#include <algorithm>
#include <cctype>

namespace lienard {

namespace {

enum class Tok { Number, Symbol, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t position;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& current() const { return current_; }

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            current_ = {Tok::End, "", start};
            return;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            bool seen_dot = false;
            while (end < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[end])) ||
                    (!seen_dot && src_[end] == '.'))) {
                if (src_[end] == '.') {
                    if (end + 1 >= src_.size() ||
                        !std::isdigit(static_cast<unsigned char>(src_[end + 1])))
                        break;  // trailing dot is not part of the number
                    seen_dot = true;
                }
                ++end;
            }
            current_ = {Tok::Number, src_.substr(pos_, end - pos_), start};
            pos_ = end;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                ++end;
            current_ = {Tok::Symbol, src_.substr(pos_, end - pos_), start};
            pos_ = end;
            return;
        }
        Tok t;
        switch (c) {
            case '+': t = Tok::Plus; break;
            case '-': t = Tok::Minus; break;
            case '*': t = Tok::Star; break;
            case '/': t = Tok::Slash; break;
            case '^': t = Tok::Caret; break;
            case '(': t = Tok::LParen; break;
            case ')': t = Tok::RParen; break;
            default:
                throw SyntaxError("unexpected character '" + std::string(1, c) + "' at position " +
                                      std::to_string(start),
                                  start, "operator, number, symbol or parenthesis");
        }
        current_ = {t, std::string(1, c), start};
        ++pos_;
    }

  private:
    const std::string& src_;
    std::size_t pos_ = 0;
    Token current_;
};

class Parser {
  public:
    Parser(const std::string& src, const ParseOptions& options)
        : lexer_(src), options_(options) {}

    Expr run() {
        Expr e = parse_expr();
        if (lexer_.current().kind != Tok::End)
            throw SyntaxError("trailing input at position " +
                                  std::to_string(lexer_.current().position),
                              lexer_.current().position, "end of input");
        return e;
    }

  private:
    Lexer lexer_;
    const ParseOptions& options_;

    bool accept(Tok t) {
        if (lexer_.current().kind != t) return false;
        lexer_.advance();
        return true;
    }

    void expect(Tok t, const std::string& what) {
        if (lexer_.current().kind != t)
            throw SyntaxError("expected " + what + " at position " +
                                  std::to_string(lexer_.current().position),
                              lexer_.current().position, what);
        lexer_.advance();
    }

    Expr parse_expr() {
        const bool negated = accept(Tok::Minus);
        Expr acc = parse_term();
        if (negated) acc = neg(std::move(acc));
        while (true) {
            if (accept(Tok::Plus)) {
                acc = add(std::move(acc), parse_term());
            } else if (accept(Tok::Minus)) {
                acc = sub(std::move(acc), parse_term());
            } else {
                return acc;
            }
        }
    }

    Expr parse_term() {
        Expr acc = parse_factor();
        while (true) {
            if (accept(Tok::Star)) {
                acc = mul(std::move(acc), parse_factor());
            } else if (accept(Tok::Slash)) {
                acc = div_expr(std::move(acc), parse_factor());
            } else {
                return acc;
            }
        }
    }

    Expr parse_factor() {
        Expr base = parse_base();
        if (!accept(Tok::Caret)) return base;
        return power(std::move(base), parse_exponent());
    }

    Expr parse_exponent() {
        const Token tok = lexer_.current();
        if (tok.kind == Tok::Minus) {
            lexer_.advance();
            const Token num = lexer_.current();
            if (num.kind != Tok::Number)
                throw SyntaxError("expected number after '-' in exponent at position " +
                                      std::to_string(num.position),
                                  num.position, "number");
            lexer_.advance();
            return constant(-rat_from_decimal(num.text));
        }
        if (tok.kind == Tok::Number) {
            lexer_.advance();
            return constant(rat_from_decimal(tok.text));
        }
        if (tok.kind == Tok::LParen) {
            lexer_.advance();
            Expr e = parse_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        throw SyntaxError("expected exponent at position " + std::to_string(tok.position),
                          tok.position, "number or parenthesized expression");
    }

    Expr parse_base() {
        const Token tok = lexer_.current();
        switch (tok.kind) {
            case Tok::Number:
                lexer_.advance();
                return constant(rat_from_decimal(tok.text));
            case Tok::LParen: {
                lexer_.advance();
                Expr e = parse_expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Symbol: {
                lexer_.advance();
                if (tok.text == "exp" || tok.text == "log") {
                    expect(Tok::LParen, "'(' after " + tok.text);
                    Expr arg = parse_expr();
                    expect(Tok::RParen, "')'");
                    return tok.text == "exp" ? exp_expr(std::move(arg))
                                             : log_expr(std::move(arg));
                }
                if (tok.text == options_.variable) return variable(tok.text);
                if (std::find(options_.named_constants.begin(), options_.named_constants.end(),
                              tok.text) != options_.named_constants.end())
                    return named_constant(tok.text);
                if (options_.allow_extra_variables) return variable(tok.text);
                throw UnknownSymbol("unknown symbol '" + tok.text + "' at position " +
                                        std::to_string(tok.position),
                                    tok.text, tok.position);
            }
            default:
                throw SyntaxError("expected value at position " + std::to_string(tok.position),
                                  tok.position, "number, symbol or parenthesized expression");
        }
    }
};

}  // namespace

Expr parse(const std::string& text, const ParseOptions& options) {
    return Parser(text, options).run();
}

}  // namespace lienard
