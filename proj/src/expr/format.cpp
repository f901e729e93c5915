#include <charconv>

#include "fracdom/expr.hpp"

namespace fracdom::expr {

namespace {

// Binding strength of the printed form; higher binds tighter.
enum Prec : int { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

std::string number_text(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

bool is_plain_literal(Complex v)
{
    return (v.imag() == 0.0 && v.real() >= 0.0) || v == Complex(0.0, 1.0);
}

int precedence(const Expr& e)
{
    switch (e.kind()) {
    case Kind::Add:
    case Kind::Sub:
        return kSum;
    case Kind::Mul:
    case Kind::Div:
        return kProduct;
    case Kind::Neg:
        return kUnary;
    case Kind::Pow:
        return kPower;
    default:
        return kAtom;
    }
}

void emit(const Expr& e, std::string& out);

void emit_wrapped(const Expr& e, bool wrap, std::string& out)
{
    if (wrap) {
        out += '(';
    }
    emit(e, out);
    if (wrap) {
        out += ')';
    }
}

void emit_const(Complex v, std::string& out)
{
    if (v == Complex(0.0, 1.0)) {
        out += 'i';
        return;
    }
    if (is_plain_literal(v)) {
        out += number_text(v.real());
        return;
    }
    // Not producible by the parser; printed so it reads back to the same value.
    out += '(';
    if (v.imag() == 0.0) {
        out += number_text(v.real());
    } else {
        out += number_text(v.real());
        out += v.imag() < 0.0 ? " - " : " + ";
        out += number_text(std::abs(v.imag()));
        out += "*i";
    }
    out += ')';
}

void emit(const Expr& e, std::string& out)
{
    switch (e.kind()) {
    case Kind::Const:
        emit_const(e.value(), out);
        return;
    case Kind::VarZ:
        out += 'z';
        return;
    case Kind::VarC:
        out += 'c';
        return;
    case Kind::Neg:
        out += '-';
        emit_wrapped(e.lhs(), precedence(e.lhs()) < kUnary, out);
        return;
    case Kind::Call:
        out += function_name(e.function());
        out += '(';
        emit(e.lhs(), out);
        out += ')';
        return;
    case Kind::Pow:
        emit_wrapped(e.lhs(), precedence(e.lhs()) <= kPower, out);
        out += '^';
        emit_wrapped(e.rhs(), precedence(e.rhs()) < kUnary, out);
        return;
    default:
        break;
    }
    const int p = precedence(e);
    emit_wrapped(e.lhs(), precedence(e.lhs()) < p, out);
    switch (e.kind()) {
    case Kind::Add: out += " + "; break;
    case Kind::Sub: out += " - "; break;
    case Kind::Mul: out += '*'; break;
    default: out += '/'; break;
    }
    emit_wrapped(e.rhs(), precedence(e.rhs()) <= p, out);
}

}  // namespace

std::string format(const Expr& e)
{
    std::string out;
    emit(e, out);
    return out;
}

}  // namespace fracdom::expr
