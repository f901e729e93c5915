#include <climits>
#include <sstream>

#include "fracdom/dominance.hpp"

namespace fracdom::dominance {

namespace {

// Stand-in for "no truncation" in order arithmetic; far from int overflow.
constexpr long long kUnbounded = LLONG_MAX / 4;

long long bound_of(const std::optional<int>& order)
{
    return order ? *order : kUnbounded;
}

std::optional<int> order_from(long long bound)
{
    if (bound >= kUnbounded / 2) {
        return std::nullopt;
    }
    return static_cast<int>(bound);
}

// Lowest degree for error propagation; an empty truncated series starts past its order.
long long effective_lowest(const FormalSeries& f)
{
    if (!f.empty()) {
        return f.lowest_degree();
    }
    return f.truncation_order() ? *f.truncation_order() + 1LL : kUnbounded;
}

Rational factorial(int k)
{
    Rational r = 1;
    for (int j = 2; j <= k; ++j) {
        r *= j;
    }
    return r;
}

void put(std::map<int, Rational>& m, int degree, const Rational& value)
{
    if (value != 0) {
        m[degree] = value;
    }
}

}  // namespace

FormalSeries::FormalSeries(std::map<int, Rational> coefficients, std::optional<int> order)
    : order_(order)
{
    for (auto& [d, a] : coefficients) {
        if (a != 0 && (!order_ || d <= *order_)) {
            coefficients_.emplace(d, std::move(a));
        }
    }
}

FormalSeries FormalSeries::constant(const Rational& value)
{
    return FormalSeries({{0, value}});
}

FormalSeries FormalSeries::monomial(int degree, const Rational& coefficient)
{
    return FormalSeries({{degree, coefficient}});
}

FormalSeries FormalSeries::sin(int order)
{
    std::map<int, Rational> m;
    for (int k = 1; k <= order; k += 2) {
        put(m, k, Rational((k / 2) % 2 == 0 ? 1 : -1) / factorial(k));
    }
    return FormalSeries(std::move(m), order);
}

FormalSeries FormalSeries::cos(int order)
{
    std::map<int, Rational> m;
    for (int k = 0; k <= order; k += 2) {
        put(m, k, Rational((k / 2) % 2 == 0 ? 1 : -1) / factorial(k));
    }
    return FormalSeries(std::move(m), order);
}

FormalSeries FormalSeries::exp(int order)
{
    std::map<int, Rational> m;
    for (int k = 0; k <= order; ++k) {
        put(m, k, Rational(1) / factorial(k));
    }
    return FormalSeries(std::move(m), order);
}

FormalSeries FormalSeries::tan(int order)
{
    return (sin(order) * cos(order).reciprocal(order)).truncated(order);
}

FormalSeries FormalSeries::cotan(int order)
{
    return (cos(order + 2) * sin(order + 2).reciprocal(order)).truncated(order);
}

Rational FormalSeries::coefficient(int degree) const
{
    const auto it = coefficients_.find(degree);
    return it == coefficients_.end() ? Rational(0) : it->second;
}

int FormalSeries::lowest_degree() const
{
    if (coefficients_.empty()) {
        throw EmptySeries("series has no nonzero coefficient");
    }
    return coefficients_.begin()->first;
}

int FormalSeries::highest_degree() const
{
    if (coefficients_.empty()) {
        throw EmptySeries("series has no nonzero coefficient");
    }
    return coefficients_.rbegin()->first;
}

FormalSeries FormalSeries::truncated(int order) const
{
    return FormalSeries(coefficients_, order_ ? std::min(*order_, order) : order);
}

FormalSeries FormalSeries::without_degree(int degree) const
{
    FormalSeries out = *this;
    out.coefficients_.erase(degree);
    return out;
}

FormalSeries FormalSeries::operator-() const
{
    FormalSeries out = *this;
    for (auto& [d, a] : out.coefficients_) {
        a = -a;
    }
    return out;
}

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b)
{
    std::map<int, Rational> m = a.coefficients_;
    for (const auto& [d, v] : b.coefficients_) {
        m[d] += v;
    }
    return FormalSeries(std::move(m), order_from(std::min(bound_of(a.order_), bound_of(b.order_))));
}

FormalSeries operator-(const FormalSeries& a, const FormalSeries& b)
{
    return a + (-b);
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b)
{
    if ((a.empty() && a.is_exact()) || (b.empty() && b.is_exact())) {
        return {};
    }
    const long long bound = std::min(a.order_ ? *a.order_ + effective_lowest(b) : kUnbounded,
                                     b.order_ ? *b.order_ + effective_lowest(a) : kUnbounded);
    std::map<int, Rational> m;
    for (const auto& [da, va] : a.coefficients_) {
        for (const auto& [db, vb] : b.coefficients_) {
            if (da + db <= bound) {
                m[da + db] += va * vb;
            }
        }
    }
    return FormalSeries(std::move(m), order_from(bound));
}

FormalSeries operator*(const Rational& s, const FormalSeries& a)
{
    if (s == 0) {
        return {};
    }
    FormalSeries out = a;
    for (auto& [d, v] : out.coefficients_) {
        v *= s;
    }
    return out;
}

FormalSeries FormalSeries::reciprocal(int order) const
{
    if (coefficients_.empty()) {
        throw EmptySeries("reciprocal of a series with no known nonzero coefficient");
    }
    const int d = lowest_degree();
    const Rational lead = coefficients_.begin()->second;
    if (is_exact() && coefficients_.size() == 1) {
        return monomial(-d, Rational(1) / lead);
    }
    // f = lead z^d u(z) with u = 1 + u_1 z + ...; 1/u is known as far as u is.
    const long long known = std::min(order_ ? static_cast<long long>(*order_) - d : kUnbounded,
                                     static_cast<long long>(order) + d);
    std::map<int, Rational> v_coeffs;
    std::vector<Rational> u(1, 1);
    std::vector<Rational> v(1, 1);
    for (long long k = 1; k <= known; ++k) {
        u.push_back(coefficient(d + static_cast<int>(k)) / lead);
        Rational acc = 0;
        for (long long j = 1; j <= k; ++j) {
            if (u[j] != 0) {
                acc -= u[j] * v[k - j];
            }
        }
        v.push_back(acc);
    }
    std::map<int, Rational> m;
    for (std::size_t k = 0; k < v.size(); ++k) {
        put(m, static_cast<int>(k) - d, v[k] / lead);
    }
    return FormalSeries(std::move(m), static_cast<int>(known - d));
}

FormalSeries FormalSeries::power(int n, int order) const
{
    if (n == 0) {
        return constant(1);
    }
    if (n < 0) {
        const long long d = effective_lowest(*this);
        const long long pad = std::min<long long>((-n - 1LL) * d, INT_MAX / 4);
        return reciprocal(static_cast<int>(std::max<long long>(order + pad, order)))
            .power(-n, order);
    }
    const long long d = effective_lowest(*this);
    const int work = d < 0 ? order + static_cast<int>(static_cast<long long>(n) * -d) : order;
    FormalSeries result = constant(1);
    FormalSeries base = *this;
    for (unsigned e = static_cast<unsigned>(n);;) {
        if (e & 1u) {
            result = result * base;
            if (!result.is_exact()) {
                result = result.truncated(work);
            }
        }
        e >>= 1;
        if (e == 0) {
            break;
        }
        base = base * base;
        if (!base.is_exact()) {
            base = base.truncated(work);
        }
    }
    return result.is_exact() ? result : result.truncated(order);
}

FormalSeries FormalSeries::compose_power(int n) const
{
    if (n < 1) {
        throw DomainError("compose_power needs n >= 1");
    }
    std::map<int, Rational> m;
    for (const auto& [d, a] : coefficients_) {
        m.emplace(d * n, a);
    }
    std::optional<int> order;
    if (order_) {
        order = (*order_ + 1) * n - 1;
    }
    return FormalSeries(std::move(m), order);
}

FormalSeries FormalSeries::compose(const FormalSeries& g, int order) const
{
    const long long lg = effective_lowest(g);
    if (lg < 1) {
        throw DomainError("composition needs an inner series without constant or pole terms");
    }
    long long bound = order;
    if (order_) {
        bound = std::min(bound, lg * (*order_ + 1LL) - 1);
    }
    FormalSeries sum({}, order_from(bound));
    std::optional<FormalSeries> inverse;
    FormalSeries up = constant(1);
    int up_degree = 0;
    for (const auto& [k, a] : coefficients_) {
        FormalSeries term;
        if (k < 0) {
            if (!inverse) {
                inverse = g.reciprocal(static_cast<int>(bound));
            }
            term = inverse->power(-k, static_cast<int>(bound));
        } else {
            if (k * lg > bound) {
                break;
            }
            while (up_degree < k) {
                up = up * g;
                if (!up.is_exact()) {
                    up = up.truncated(static_cast<int>(bound));
                }
                ++up_degree;
            }
            term = up;
        }
        sum = sum + a * term;
    }
    return sum.truncated(static_cast<int>(bound));
}

Complex FormalSeries::evaluate(Complex z) const
{
    Complex sum(0.0);
    for (const auto& [d, a] : coefficients_) {
        sum += a.convert_to<double>() * integer_power(z, d);
    }
    return sum;
}

std::string FormalSeries::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (const auto& [d, a] : coefficients_) {
        const bool negative = a < 0;
        const Rational m = negative ? Rational(-a) : a;
        if (first) {
            out << (negative ? "-" : "");
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        if (d == 0) {
            out << m;
            continue;
        }
        if (m != 1) {
            out << m << "*";
        }
        out << "z";
        if (d != 1) {
            out << "^" << d;
        }
    }
    if (order_) {
        out << (first ? "" : " + ") << "O(z^" << *order_ + 1 << ")";
    } else if (first) {
        out << "0";
    }
    return out.str();
}

}  // namespace fracdom::dominance
