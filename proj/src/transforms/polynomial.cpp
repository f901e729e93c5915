#include <charconv>
#include <stdexcept>

#include "fracdom/error.hpp"
#include "fracdom/transforms.hpp"

namespace fracdom::transforms {

using expr::Expr;
using expr::Kind;

namespace {

constexpr int kMaxPolynomialDegree = 4096;

Complex snapped(Complex a) noexcept
{
    const double tiny = 1e-15 * std::abs(a);
    return {std::abs(a.real()) <= tiny ? 0.0 : a.real(), std::abs(a.imag()) <= tiny ? 0.0 : a.imag()};
}

bool leads_with_minus(Complex a) noexcept
{
    const Complex s = snapped(a);
    return s.real() < 0.0 || (s.real() == 0.0 && s.imag() < 0.0);
}

using Terms = std::map<int, Complex>;

void accumulate(Terms& t, int degree, Complex a)
{
    auto [it, inserted] = t.try_emplace(degree, a);
    if (!inserted) {
        it->second += a;
    }
    if (it->second == Complex(0.0)) {
        t.erase(it);
    }
}

Terms multiply(const Terms& a, const Terms& b)
{
    Terms out;
    for (const auto& [da, ca] : a) {
        for (const auto& [db, cb] : b) {
            if (std::abs(da + db) > kMaxPolynomialDegree) {
                throw NotExpandable("polynomial degree above " + std::to_string(kMaxPolynomialDegree));
            }
            accumulate(out, da + db, ca * cb);
        }
    }
    return out;
}

Terms polynomial_terms(const Expr& e)
{
    switch (e.kind()) {
    case Kind::Const:
        return e.value() == Complex(0.0) ? Terms{} : Terms{{0, e.value()}};
    case Kind::VarZ:
        return {{1, 1.0}};
    case Kind::VarC:
        throw NotExpandable("c inside the polynomial");
    case Kind::Neg: {
        Terms t = polynomial_terms(e.lhs());
        for (auto& [d, a] : t) {
            a = -a;
        }
        return t;
    }
    case Kind::Add:
    case Kind::Sub: {
        Terms t = polynomial_terms(e.lhs());
        const double sign = e.kind() == Kind::Add ? 1.0 : -1.0;
        for (const auto& [d, a] : polynomial_terms(e.rhs())) {
            accumulate(t, d, sign * a);
        }
        return t;
    }
    case Kind::Mul:
        return multiply(polynomial_terms(e.lhs()), polynomial_terms(e.rhs()));
    case Kind::Div: {
        if (e.rhs().depends_on_variables()) {
            throw NotExpandable("division by a non-constant");
        }
        const Complex d = expr::eval(e.rhs(), 0.0, 0.0);
        if (d == Complex(0.0) || !is_finite(d)) {
            throw NotExpandable("division by zero");
        }
        Terms t = polynomial_terms(e.lhs());
        for (auto& [deg, a] : t) {
            a /= d;
        }
        return t;
    }
    case Kind::Pow: {
        int n = 0;
        if (e.rhs().depends_on_variables() || !as_small_integer(expr::eval(e.rhs(), 0.0, 0.0), n)) {
            throw NotExpandable("non-integer power");
        }
        const Terms base = polynomial_terms(e.lhs());
        if (n < 0) {
            if (base.size() != 1) {
                throw NotExpandable("negative power of a non-monomial");
            }
            const auto [d, a] = *base.begin();
            return {{d * n, integer_power(a, n)}};
        }
        Terms out{{0, 1.0}};
        for (int k = 0; k < n; ++k) {
            out = multiply(out, base);
        }
        return out;
    }
    case Kind::Call:
        throw NotExpandable(std::string(expr::function_name(e.function())));
    }
    throw NotExpandable("unknown node");
}

}  // namespace

SparseLaurentPolynomial::SparseLaurentPolynomial(const std::map<int, Complex>& terms, Complex center)
    : center_(center)
{
    for (const auto& [d, a] : terms) {
        add_term(d, a);
    }
}

void SparseLaurentPolynomial::add_term(int degree, Complex coefficient)
{
    accumulate(terms_, degree, coefficient);
}

Complex SparseLaurentPolynomial::coefficient(int degree) const noexcept
{
    const auto it = terms_.find(degree);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

int SparseLaurentPolynomial::lowest_degree() const
{
    if (terms_.empty()) {
        throw DomainError("empty polynomial has no lowest degree");
    }
    return terms_.begin()->first;
}

int SparseLaurentPolynomial::highest_degree() const
{
    if (terms_.empty()) {
        throw DomainError("empty polynomial has no highest degree");
    }
    return terms_.rbegin()->first;
}

bool SparseLaurentPolynomial::is_left_truncated() const noexcept
{
    for (const auto& [d, a] : terms_) {
        if (d != 0 && d < 2) {
            return false;
        }
    }
    return true;
}

bool SparseLaurentPolynomial::has_negative_degree() const noexcept
{
    return !terms_.empty() && terms_.begin()->first < 0;
}

Complex SparseLaurentPolynomial::evaluate(Complex z) const noexcept
{
    const Complex w = z - center_;
    Complex sum(0.0);
    for (const auto& [d, a] : terms_) {
        sum += a * integer_power(w, d);
    }
    return sum;
}

Expr SparseLaurentPolynomial::to_expr() const
{
    if (terms_.empty()) {
        return expr::literal(0.0);
    }
    const Expr base = center_ == Complex(0.0) ? Expr::z() : Expr::z() - expr::literal(center_);
    auto term = [&](int d, Complex a) {
        if (d == 0) {
            return expr::literal(snapped(a));
        }
        return expr::scaled(a, d == 1 ? base : pow(base, expr::literal(static_cast<double>(d))));
    };
    std::optional<Expr> out;
    for (const auto& [d, a] : terms_) {
        if (!out) {
            out = term(d, a);
        } else if (leads_with_minus(a)) {
            out = *out - term(d, -a);
        } else {
            out = *out + term(d, a);
        }
    }
    return *out;
}

Expr SparseLaurentPolynomial::to_map() const
{
    return to_expr() + Expr::c();
}

SparseLaurentPolynomial parse_term_list(std::string_view text)
{
    SparseLaurentPolynomial poly;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view item = text.substr(pos, comma - pos);
        const std::size_t colon = item.rfind(':');
        if (colon == std::string_view::npos) {
            throw DomainError("term \"" + std::string(item) + "\" is not coef:degree");
        }
        const Expr coef = expr::parse(item.substr(0, colon));
        if (coef.depends_on_variables()) {
            throw DomainError("coefficient \"" + std::string(item.substr(0, colon)) + "\" is not constant");
        }
        std::string_view deg_text = item.substr(colon + 1);
        while (!deg_text.empty() && deg_text.front() == ' ') {
            deg_text.remove_prefix(1);
        }
        while (!deg_text.empty() && deg_text.back() == ' ') {
            deg_text.remove_suffix(1);
        }
        int degree = 0;
        const auto [end, ec] = std::from_chars(deg_text.data(), deg_text.data() + deg_text.size(), degree);
        if (ec != std::errc() || end != deg_text.data() + deg_text.size() || deg_text.empty()) {
            throw DomainError("degree \"" + std::string(deg_text) + "\" is not an integer");
        }
        poly.add_term(degree, expr::eval(coef, 0.0, 0.0));
        pos = comma + 1;
    }
    return poly;
}

SparseLaurentPolynomial polynomial_from_expr(const Expr& e)
{
    if (e.kind() == Kind::Add && e.rhs().kind() == Kind::VarC) {
        return SparseLaurentPolynomial(polynomial_terms(e.lhs()));
    }
    return SparseLaurentPolynomial(polynomial_terms(e));
}

}  // namespace fracdom::transforms
