#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracdom/complex.hpp"
#include "fracdom/error.hpp"
#include "fracdom/expr.hpp"

namespace fracdom::dominance {

using Rational = boost::multiprecision::cpp_rational;

class EmptySeries : public DomainError {
public:
    using DomainError::DomainError;
};

class InfinityOnTruncated : public DomainError {
public:
    using DomainError::DomainError;
};

// Laurent series with exact rational coefficients. With a truncation order o,
// every degree <= o is exact and higher degrees are unknown; without one the
// series is an exact finite sum.
class FormalSeries {
public:
    FormalSeries() = default;
    explicit FormalSeries(std::map<int, Rational> coefficients, std::optional<int> order = {});

    static FormalSeries constant(const Rational& value);
    static FormalSeries monomial(int degree, const Rational& coefficient = 1);

    // Expansions about 0, exact through degree `order`.
    static FormalSeries sin(int order);
    static FormalSeries cos(int order);
    static FormalSeries exp(int order);
    static FormalSeries tan(int order);
    static FormalSeries cotan(int order);

    Rational coefficient(int degree) const;
    const std::map<int, Rational>& coefficients() const noexcept { return coefficients_; }
    std::optional<int> truncation_order() const noexcept { return order_; }
    bool is_exact() const noexcept { return !order_.has_value(); }
    bool empty() const noexcept { return coefficients_.empty(); }
    int lowest_degree() const;
    int highest_degree() const;

    FormalSeries truncated(int order) const;
    FormalSeries without_degree(int degree) const;

    FormalSeries operator-() const;
    friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
    friend FormalSeries operator-(const FormalSeries& a, const FormalSeries& b);
    friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);
    friend FormalSeries operator*(const Rational& s, const FormalSeries& a);

    // 1/f through degree `order` at most (less if f itself is truncated).
    // The lowest coefficient must be nonzero; lowest degree d becomes -d.
    FormalSeries reciprocal(int order) const;
    FormalSeries power(int n, int order) const;
    // f(z^n), n >= 1.
    FormalSeries compose_power(int n) const;
    // f(g(z)) for g with lowest degree >= 1, through degree `order` at most.
    FormalSeries compose(const FormalSeries& g, int order) const;

    Complex evaluate(Complex z) const;
    // e.g. "z - 1/6*z^3 + 1/120*z^5 + O(z^6)".
    std::string to_string() const;

    friend bool operator==(const FormalSeries&, const FormalSeries&) = default;

private:
    std::map<int, Rational> coefficients_;
    std::optional<int> order_;
};

inline constexpr int kDefaultOrder = 12;

// Structural expansion about z = 0. Throws NotExpandable for log, sqrt,
// non-integer powers, complex constants, c, and function arguments with a
// constant term.
FormalSeries series_of(const expr::Expr& e, int order = kDefaultOrder);

enum class Regime { ToZero, ToInfinity, ToPoint };

std::string_view regime_name(Regime r) noexcept;

struct DominantTerm {
    int degree;
    Rational coefficient;
};

DominantTerm dominant_term(const FormalSeries& series, Regime regime);

struct CircleBound {
    double radius;
    double k1;
    double k2;
};

struct ThetaBoundReport {
    Regime regime = Regime::ToZero;
    Complex point{0.0, 0.0};
    int m = 0;
    double k1 = 0;
    double k2 = 0;
    int samples = 0;
    double disk_radius = 0;
    std::vector<CircleBound> circles;  // radius, radius/2, radius/4
    bool holds = false;
    // k2/k1 strictly closer to 1 on each smaller circle.
    bool tightening = false;
    std::string note;
};

// Samples |f(z)| / |z - point|^m on three circles about `point`. A trailing
// "+ c" in f is ignored; any other c is evaluated at 0.
ThetaBoundReport check_theta_bound(const expr::Expr& f, int m, double radius, int samples,
                                   Complex point = 0.0);

enum class Classification { EmbeddedMultibrot, LinearTermBlocks, LaurentPole, ConstantOnly };

std::string_view classification_name(Classification c) noexcept;

struct SuggestedView {
    Complex center;
    double half_width;
};

struct DominanceReport {
    expr::Expr input = expr::Expr::z();
    expr::Expr analyzed = expr::Expr::z();  // input without its trailing "+ c"
    FormalSeries series;  // before the constant term is dropped
    Regime regime = Regime::ToZero;
    Classification classification = Classification::ConstantOnly;
    std::optional<int> predicted_order;
    std::optional<Rational> dominant_coefficient;
    std::optional<SuggestedView> view;
    std::string note;
};

// ToZero reads the lowest nonconstant degree (behaviour near the origin).
// ToInfinity reads the highest degree and needs a finite series.
DominanceReport predict_embedded(const expr::Expr& e, int order = kDefaultOrder,
                                 Regime regime = Regime::ToZero);

struct TgAnalysis {
    expr::Expr exact;   // (a/z - z/b)^n + c
    expr::Expr approx;  // (2a - z(a + 1/b))^n + c, the linearization about z = 1
    int predicted_order;
};

TgAnalysis analyze_tg(Complex a, Complex b, int n);

struct IterationDegree {
    bool holds;
    int lowest_degree;  // of the n_iter-fold composition
    int expected;       // m^n_iter
};

inline constexpr int kMaxIteratedDegree = 10000;

IterationDegree iterate_theta_consistency(const FormalSeries& f, int m, int n_iter);

// Double to expression constant, recognising fractions with small denominators
// so that 1.3333333333333333 prints as 4/3.
expr::Expr rational_literal(Complex value);

}  // namespace fracdom::dominance
