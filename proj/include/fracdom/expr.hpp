#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "fracdom/complex.hpp"

namespace fracdom::expr {

enum class Kind { Const, VarZ, VarC, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Function { Sin, Cos, Tan, Cotan, Exp, Log, Sqrt };

std::string_view function_name(Function f) noexcept;
std::optional<Function> function_from_name(std::string_view name) noexcept;

// Immutable expression tree in the variables z and c. Copies share nodes, so
// an Expr is cheap to pass around and safe to read from any thread.
class Expr {
public:
    static Expr constant(Complex value);
    static Expr z();
    static Expr c();
    static Expr neg(Expr operand);
    static Expr binary(Kind kind, Expr lhs, Expr rhs);
    static Expr call(Function f, Expr argument);

    Kind kind() const noexcept;
    // Const only.
    Complex value() const;
    // Call only.
    Function function() const;
    // Neg and Call have a single operand, reachable as lhs().
    const Expr& lhs() const;
    const Expr& rhs() const;

    bool is_binary() const noexcept;
    bool depends_on_variables() const noexcept;
    int depth() const noexcept;

    friend bool operator==(const Expr& a, const Expr& b) noexcept;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);
Expr pow(Expr base, Expr exponent);

// Grammar, loosest to tightest:
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          (right associative)
//   primary := number [implicit '*' before an identifier or '(']
//            | 'z' | 'c' | 'i' | 'pi' | 'e' | name '(' sum ')' | '(' sum ')'
// Throws SyntaxError or UnknownFunction.
Expr parse(std::string_view source);

// Canonical text: spaces around binary + and -, none elsewhere, minimal parentheses.
std::string format(const Expr& e);

Complex apply_function(Function f, Complex x) noexcept;

// Reference tree-walking evaluator. Non-finite values propagate.
Complex eval(const Expr& e, Complex z, Complex c);

// Replace every z in `e` with `replacement`.
Expr substitute_z(const Expr& e, const Expr& replacement);

// Constant as grammar nodes: non-negative reals stay literals, signs and
// imaginary parts become Neg / Add / Mul-by-i so the result formats and
// re-parses to the same tree.
Expr literal(Complex value);

// coefficient * e with coefficient 1 dropped and -1 turned into negation.
// Components smaller than 1e-15 of |coefficient| are treated as zero.
Expr scaled(Complex coefficient, Expr e);

}  // namespace fracdom::expr
