#include "fracdom/expr.hpp"

namespace fracdom::expr {

Complex apply_function(Function f, Complex x) noexcept
{
    switch (f) {
    case Function::Sin: return std::sin(x);
    case Function::Cos: return std::cos(x);
    case Function::Tan: return std::tan(x);
    case Function::Cotan: return cotan(x);
    case Function::Exp: return std::exp(x);
    case Function::Log: return principal_log(x);
    case Function::Sqrt: return std::sqrt(x);
    }
    return Complex(std::nan(""), std::nan(""));
}

Complex eval(const Expr& e, Complex z, Complex c)
{
    switch (e.kind()) {
    case Kind::Const: return e.value();
    case Kind::VarZ: return z;
    case Kind::VarC: return c;
    case Kind::Neg: return -eval(e.lhs(), z, c);
    case Kind::Call: return apply_function(e.function(), eval(e.lhs(), z, c));
    case Kind::Add: return eval(e.lhs(), z, c) + eval(e.rhs(), z, c);
    case Kind::Sub: return eval(e.lhs(), z, c) - eval(e.rhs(), z, c);
    case Kind::Mul: return eval(e.lhs(), z, c) * eval(e.rhs(), z, c);
    case Kind::Div: return eval(e.lhs(), z, c) / eval(e.rhs(), z, c);
    case Kind::Pow: return power(eval(e.lhs(), z, c), eval(e.rhs(), z, c));
    }
    return Complex(std::nan(""), std::nan(""));
}

}  // namespace fracdom::expr
