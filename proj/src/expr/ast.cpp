#include <array>
#include <stdexcept>

#include "fracdom/expr.hpp"

namespace fracdom::expr {

struct Expr::Node {
    Kind kind;
    Complex value{};
    Function function{};
    Expr lhs{nullptr};
    Expr rhs{nullptr};
    bool has_vars = false;
    int depth = 1;
};

namespace {

constexpr std::array<std::pair<Function, std::string_view>, 7> kFunctions{{
    {Function::Sin, "sin"},
    {Function::Cos, "cos"},
    {Function::Tan, "tan"},
    {Function::Cotan, "cotan"},
    {Function::Exp, "exp"},
    {Function::Log, "log"},
    {Function::Sqrt, "sqrt"},
}};

}  // namespace

std::string_view function_name(Function f) noexcept
{
    for (const auto& [fn, name] : kFunctions) {
        if (fn == f) {
            return name;
        }
    }
    return "?";
}

std::optional<Function> function_from_name(std::string_view name) noexcept
{
    for (const auto& [fn, n] : kFunctions) {
        if (n == name) {
            return fn;
        }
    }
    return std::nullopt;
}

Expr Expr::constant(Complex value)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::z()
{
    static const Expr shared = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::VarZ;
        n->has_vars = true;
        return Expr(std::move(n));
    }();
    return shared;
}

Expr Expr::c()
{
    static const Expr shared = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::VarC;
        n->has_vars = true;
        return Expr(std::move(n));
    }();
    return shared;
}

Expr Expr::neg(Expr operand)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Neg;
    n->has_vars = operand.depends_on_variables();
    n->depth = operand.depth() + 1;
    n->lhs = std::move(operand);
    return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs)
{
    switch (kind) {
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div:
    case Kind::Pow:
        break;
    default:
        throw std::invalid_argument("Expr::binary: not a binary kind");
    }
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->has_vars = lhs.depends_on_variables() || rhs.depends_on_variables();
    n->depth = std::max(lhs.depth(), rhs.depth()) + 1;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return Expr(std::move(n));
}

Expr Expr::call(Function f, Expr argument)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->function = f;
    n->has_vars = argument.depends_on_variables();
    n->depth = argument.depth() + 1;
    n->lhs = std::move(argument);
    return Expr(std::move(n));
}

Kind Expr::kind() const noexcept { return node_->kind; }

Complex Expr::value() const
{
    if (node_->kind != Kind::Const) {
        throw std::logic_error("Expr::value on a non-constant node");
    }
    return node_->value;
}

Function Expr::function() const
{
    if (node_->kind != Kind::Call) {
        throw std::logic_error("Expr::function on a non-call node");
    }
    return node_->function;
}

const Expr& Expr::lhs() const
{
    if (!node_->lhs.node_) {
        throw std::logic_error("Expr::lhs on a leaf node");
    }
    return node_->lhs;
}

const Expr& Expr::rhs() const
{
    if (!node_->rhs.node_) {
        throw std::logic_error("Expr::rhs on a node without a right operand");
    }
    return node_->rhs;
}

bool Expr::is_binary() const noexcept
{
    switch (node_->kind) {
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div:
    case Kind::Pow:
        return true;
    default:
        return false;
    }
}

bool Expr::depends_on_variables() const noexcept { return node_->has_vars; }

int Expr::depth() const noexcept { return node_->depth; }

bool operator==(const Expr& a, const Expr& b) noexcept
{
    if (a.node_ == b.node_) {
        return true;
    }
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind) {
        return false;
    }
    switch (x.kind) {
    case Kind::Const:
        return x.value == y.value;
    case Kind::VarZ:
    case Kind::VarC:
        return true;
    case Kind::Neg:
        return x.lhs == y.lhs;
    case Kind::Call:
        return x.function == y.function && x.lhs == y.lhs;
    default:
        return x.lhs == y.lhs && x.rhs == y.rhs;
    }
}

Expr operator+(Expr a, Expr b) { return Expr::binary(Kind::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::binary(Kind::Sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::binary(Kind::Mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::binary(Kind::Div, std::move(a), std::move(b)); }
Expr operator-(Expr a) { return Expr::neg(std::move(a)); }
Expr pow(Expr base, Expr exponent)
{
    return Expr::binary(Kind::Pow, std::move(base), std::move(exponent));
}

Expr substitute_z(const Expr& e, const Expr& replacement)
{
    switch (e.kind()) {
    case Kind::VarZ:
        return replacement;
    case Kind::Const:
    case Kind::VarC:
        return e;
    case Kind::Neg:
        return Expr::neg(substitute_z(e.lhs(), replacement));
    case Kind::Call:
        return Expr::call(e.function(), substitute_z(e.lhs(), replacement));
    default:
        return Expr::binary(e.kind(), substitute_z(e.lhs(), replacement),
                            substitute_z(e.rhs(), replacement));
    }
}

namespace {

Expr real_literal(double x)
{
    if (x < 0.0) {
        return Expr::neg(Expr::constant(-x));
    }
    return Expr::constant(x);
}

Expr imaginary_literal(double y)
{
    const Expr unit = Expr::constant(Complex(0.0, 1.0));
    const double m = std::abs(y);
    Expr magnitude = m == 1.0 ? unit : Expr::constant(m) * unit;
    return y < 0.0 ? Expr::neg(std::move(magnitude)) : magnitude;
}

}  // namespace

Expr literal(Complex value)
{
    const double re = value.real();
    const double im = value.imag();
    if (im == 0.0) {
        return real_literal(re);
    }
    if (re == 0.0) {
        return imaginary_literal(im);
    }
    const Expr unit = Expr::constant(Complex(0.0, 1.0));
    const double m = std::abs(im);
    Expr imag = m == 1.0 ? unit : Expr::constant(m) * unit;
    Expr real = real_literal(re);
    return im < 0.0 ? real - imag : real + imag;
}

Expr scaled(Complex coefficient, Expr e)
{
    const double m = std::abs(coefficient);
    double re = coefficient.real();
    double im = coefficient.imag();
    if (std::abs(re) <= 1e-15 * m) {
        re = 0.0;
    }
    if (std::abs(im) <= 1e-15 * m) {
        im = 0.0;
    }
    if (re == 1.0 && im == 0.0) {
        return e;
    }
    if (re == -1.0 && im == 0.0) {
        return Expr::neg(std::move(e));
    }
    return literal(Complex(re, im)) * std::move(e);
}

}  // namespace fracdom::expr
