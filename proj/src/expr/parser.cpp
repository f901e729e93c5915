#include <cctype>
#include <charconv>
#include <numbers>
#include <vector>

#include "fracdom/error.hpp"
#include "fracdom/expr.hpp"

namespace fracdom::expr {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok type;
    std::size_t offset;
    std::string_view text;
    double number = 0.0;
};

bool is_ident_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }
bool is_ident_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }
bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }

const std::vector<std::string> kOperandStart{"number", "identifier", "'('", "'-'"};

std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (is_digit(ch) || (ch == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
            while (i < src.size() && is_digit(src[i])) {
                ++i;
            }
            if (i < src.size() && src[i] == '.') {
                ++i;
                while (i < src.size() && is_digit(src[i])) {
                    ++i;
                }
            }
            // An exponent marker only counts when digits follow; "2e" is 2 times e.
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < src.size() && (src[j] == '+' || src[j] == '-')) {
                    ++j;
                }
                if (j < src.size() && is_digit(src[j])) {
                    i = j;
                    while (i < src.size() && is_digit(src[i])) {
                        ++i;
                    }
                }
            }
            Token t{Tok::Number, start, src.substr(start, i - start)};
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
            if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
                throw SyntaxError(start, "malformed number '" + std::string(t.text) + "'",
                                  {"number"});
            }
            out.push_back(t);
            continue;
        }
        if (is_ident_start(ch)) {
            while (i < src.size() && is_ident_char(src[i])) {
                ++i;
            }
            out.push_back({Tok::Ident, start, src.substr(start, i - start)});
            continue;
        }
        Tok type;
        switch (ch) {
        case '+': type = Tok::Plus; break;
        case '-': type = Tok::Minus; break;
        case '*': type = Tok::Star; break;
        case '/': type = Tok::Slash; break;
        case '^': type = Tok::Caret; break;
        case '(': type = Tok::LParen; break;
        case ')': type = Tok::RParen; break;
        default:
            throw SyntaxError(start, "character '" + std::string(1, ch) + "'",
                              {"number", "identifier", "operator", "'('", "')'"});
        }
        out.push_back({type, start, src.substr(start, 1)});
        ++i;
    }
    out.push_back({Tok::End, src.size(), {}});
    return out;
}

std::string describe(const Token& t)
{
    if (t.type == Tok::End) {
        return "end of input";
    }
    return "'" + std::string(t.text) + "'";
}

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

    Expr parse_all()
    {
        Expr e = sum();
        if (peek().type != Tok::End) {
            fail_after_operand();
        }
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    [[noreturn]] void fail_after_operand() const
    {
        std::vector<std::string> expected{"'+'", "'-'", "'*'", "'/'", "'^'"};
        expected.push_back(depth_ > 0 ? "')'" : "end of input");
        throw SyntaxError(peek().offset, describe(peek()), expected);
    }

    Expr sum()
    {
        Expr lhs = product();
        for (;;) {
            if (peek().type == Tok::Plus) {
                next();
                lhs = std::move(lhs) + product();
            } else if (peek().type == Tok::Minus) {
                next();
                lhs = std::move(lhs) - product();
            } else {
                return lhs;
            }
        }
    }

    Expr product()
    {
        Expr lhs = unary();
        for (;;) {
            if (peek().type == Tok::Star) {
                next();
                lhs = std::move(lhs) * unary();
            } else if (peek().type == Tok::Slash) {
                next();
                lhs = std::move(lhs) / unary();
            } else {
                return lhs;
            }
        }
    }

    Expr unary()
    {
        if (peek().type == Tok::Minus) {
            next();
            return Expr::neg(unary());
        }
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        if (peek().type == Tok::Caret) {
            next();
            return pow(std::move(base), unary());
        }
        return base;
    }

    Expr parenthesized()
    {
        next();  // '('
        ++depth_;
        Expr inner = sum();
        if (peek().type != Tok::RParen) {
            fail_after_operand();
        }
        next();
        --depth_;
        return inner;
    }

    Expr primary()
    {
        const Token& t = peek();
        switch (t.type) {
        case Tok::Number: {
            next();
            Expr num = Expr::constant(t.number);
            // Implicit multiplication: "6(z - sin(z))", "2z^2".
            if (peek().type == Tok::Ident || peek().type == Tok::LParen) {
                return std::move(num) * power();
            }
            return num;
        }
        case Tok::LParen:
            return parenthesized();
        case Tok::Ident:
            return identifier();
        default:
            throw SyntaxError(t.offset, describe(t), kOperandStart);
        }
    }

    Expr identifier()
    {
        const Token t = next();
        if (peek().type == Tok::LParen) {
            if (t.text == "z" || t.text == "c" || t.text == "i" || t.text == "pi" || t.text == "e") {
                fail_after_operand();
            }
            auto fn = function_from_name(t.text);
            if (!fn) {
                throw UnknownFunction(t.offset, std::string(t.text));
            }
            return Expr::call(*fn, parenthesized());
        }
        if (t.text == "z") {
            return Expr::z();
        }
        if (t.text == "c") {
            return Expr::c();
        }
        if (t.text == "i") {
            return Expr::constant(Complex(0.0, 1.0));
        }
        if (t.text == "pi") {
            return Expr::constant(std::numbers::pi);
        }
        if (t.text == "e") {
            return Expr::constant(std::numbers::e);
        }
        if (function_from_name(t.text)) {
            throw SyntaxError(peek().offset, describe(peek()), {"'('"});
        }
        throw SyntaxError(t.offset, "identifier '" + std::string(t.text) + "'",
                          {"z", "c", "i", "pi", "e", "function call"});
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

}  // namespace

Expr parse(std::string_view source)
{
    return Parser(source).parse_all();
}

}  // namespace fracdom::expr
