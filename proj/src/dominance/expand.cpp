#include "fracdom/dominance.hpp"

namespace fracdom::dominance {

using expr::Expr;
using expr::Function;
using expr::Kind;

namespace {

constexpr int kMaxPadding = 256;

FormalSeries base_series(Function f, int order)
{
    switch (f) {
    case Function::Sin:
        return FormalSeries::sin(order);
    case Function::Cos:
        return FormalSeries::cos(order);
    case Function::Exp:
        return FormalSeries::exp(order);
    case Function::Tan:
        return FormalSeries::tan(order);
    case Function::Cotan:
        return FormalSeries::cotan(order);
    case Function::Log:
    case Function::Sqrt:
        break;
    }
    throw NotExpandable(std::string(expr::function_name(f)));
}

FormalSeries limited(FormalSeries s, int work)
{
    return s.is_exact() ? s : s.truncated(work);
}

FormalSeries expand(const Expr& e, int work);

FormalSeries expand_call(const Expr& e, int work)
{
    const Function f = e.function();
    const std::string name(expr::function_name(f));
    if (f == Function::Log || f == Function::Sqrt) {
        throw NotExpandable(name);
    }
    const FormalSeries arg = expand(e.lhs(), work);
    if (!arg.empty() && arg.lowest_degree() < 0) {
        throw NotExpandable(name + " of an argument with a pole");
    }
    if (arg.coefficient(0) != 0) {
        throw NotExpandable(name + " of an argument with a constant term");
    }
    if (arg.empty()) {
        // f(0 + O(z^(o+1))): only the constant term of f survives.
        if (f == Function::Cotan) {
            throw NotExpandable("cotan of a vanishing argument");
        }
        const Rational at_zero = f == Function::Cos || f == Function::Exp ? 1 : 0;
        return FormalSeries(at_zero == 0 ? std::map<int, Rational>{} : std::map<int, Rational>{{0, at_zero}},
                            arg.truncation_order());
    }
    const int lg = arg.lowest_degree();
    const int base_order = (work + lg) / lg - 1;  // smallest o with lg(o + 1) - 1 >= work
    const auto& terms = arg.coefficients();
    if (arg.is_exact() && terms.size() == 1 && terms.begin()->second == 1) {
        return limited(base_series(f, base_order).compose_power(lg), work);
    }
    return base_series(f, base_order).compose(arg, work);
}

FormalSeries expand(const Expr& e, int work)
{
    switch (e.kind()) {
    case Kind::Const: {
        const Complex v = e.value();
        if (v.imag() != 0.0) {
            throw NotExpandable("complex constant");
        }
        return FormalSeries::constant(Rational(v.real()));
    }
    case Kind::VarZ:
        return FormalSeries::monomial(1);
    case Kind::VarC:
        throw NotExpandable("c inside the expanded part");
    case Kind::Neg:
        return -expand(e.lhs(), work);
    case Kind::Add:
        return limited(expand(e.lhs(), work) + expand(e.rhs(), work), work);
    case Kind::Sub:
        return limited(expand(e.lhs(), work) - expand(e.rhs(), work), work);
    case Kind::Mul:
        return limited(expand(e.lhs(), work) * expand(e.rhs(), work), work);
    case Kind::Div: {
        const FormalSeries num = expand(e.lhs(), work);
        const FormalSeries den = expand(e.rhs(), work);
        if (den.empty()) {
            throw NotExpandable("division by a series with no known nonzero term");
        }
        const long long shift = num.empty() ? 0 : std::max(0, -num.lowest_degree());
        return limited(num * den.reciprocal(work + static_cast<int>(shift)), work);
    }
    case Kind::Pow: {
        if (e.rhs().depends_on_variables()) {
            throw NotExpandable("variable exponent");
        }
        int n = 0;
        if (!as_small_integer(expr::eval(e.rhs(), 0.0, 0.0), n)) {
            throw NotExpandable("non-integer power");
        }
        const FormalSeries base = expand(e.lhs(), work);
        if (base.empty()) {
            if (n > 0 && base.is_exact()) {
                return {};
            }
            throw NotExpandable("power of a series with no known nonzero term");
        }
        return base.power(n, work);
    }
    case Kind::Call:
        return expand_call(e, work);
    }
    throw NotExpandable("unknown node");
}

}  // namespace

FormalSeries series_of(const Expr& e, int order)
{
    for (int pad = 0;; pad = pad == 0 ? 4 : 2 * pad) {
        FormalSeries s = expand(e, order + pad);
        if (s.is_exact()) {
            return s;
        }
        if (*s.truncation_order() >= order) {
            return s.truncated(order);
        }
        if (pad >= kMaxPadding) {
            throw NotExpandable("expansion loses more than " + std::to_string(kMaxPadding) +
                                " orders of precision");
        }
    }
}

std::string_view regime_name(Regime r) noexcept
{
    switch (r) {
    case Regime::ToZero:
        return "ToZero";
    case Regime::ToInfinity:
        return "ToInfinity";
    case Regime::ToPoint:
        return "ToPoint";
    }
    return "?";
}

DominantTerm dominant_term(const FormalSeries& series, Regime regime)
{
    if (series.empty()) {
        throw EmptySeries("dominant term of an empty series");
    }
    switch (regime) {
    case Regime::ToZero: {
        const auto& [d, a] = *series.coefficients().begin();
        return {d, a};
    }
    case Regime::ToInfinity: {
        if (!series.is_exact()) {
            throw InfinityOnTruncated("the highest degree of a truncated series is unknown");
        }
        const auto& [d, a] = *series.coefficients().rbegin();
        return {d, a};
    }
    case Regime::ToPoint:
        break;
    }
    throw DomainError("dominant_term supports the ToZero and ToInfinity regimes");
}

}  // namespace fracdom::dominance
