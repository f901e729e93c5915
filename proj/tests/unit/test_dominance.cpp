#include "doctest.h"
#include "fracdom/dominance.hpp"
#include "fracdom/vm.hpp"
#include "test_support.hpp"

using namespace fracdom;
using namespace fracdom::dominance;
using expr::format;
using expr::parse;

namespace {

Rational q(long long p, long long d = 1)
{
    return Rational(p) / Rational(d);
}

Rational factorial(int n)
{
    Rational r = 1;
    for (int k = 2; k <= n; ++k) {
        r *= k;
    }
    return r;
}

// Bernoulli numbers by the Akiyama-Tanigawa transform (B1 = +1/2; only even
// indices are used below).
std::vector<Rational> bernoulli(int count)
{
    std::vector<Rational> out;
    std::vector<Rational> a(count + 1);
    for (int m = 0; m <= count; ++m) {
        a[m] = q(1, m + 1);
        for (int j = m; j >= 1; --j) {
            a[j - 1] = j * (a[j - 1] - a[j]);
        }
        out.push_back(a[0]);
    }
    return out;
}

Rational pow2(int n)
{
    Rational r = 1;
    for (int k = 0; k < n; ++k) {
        r *= 2;
    }
    return r;
}

// First `count` nonzero coefficients in ascending degree.
std::vector<std::pair<int, Rational>> leading(const FormalSeries& s, std::size_t count)
{
    std::vector<std::pair<int, Rational>> out;
    for (const auto& [d, a] : s.coefficients()) {
        if (out.size() == count) {
            break;
        }
        out.emplace_back(d, a);
    }
    return out;
}

}  // namespace

TEST_CASE("paper expansions of sin, tan and cotan")
{
    CHECK(series_of(parse("sin(z)"), 5) == FormalSeries({{1, 1}, {3, q(-1, 6)}, {5, q(1, 120)}}, 5));
    CHECK(series_of(parse("tan(z)"), 5) == FormalSeries({{1, 1}, {3, q(1, 3)}, {5, q(2, 15)}}, 5));
    CHECK(series_of(parse("cotan(z)"), 5) ==
          FormalSeries({{-1, 1}, {1, q(-1, 3)}, {3, q(-1, 45)}, {5, q(-2, 945)}}, 5));
    CHECK(series_of(parse("sin(z)"), 5).to_string() == "z - 1/6*z^3 + 1/120*z^5 + O(z^6)");
}

TEST_CASE("first eight coefficients match closed forms")
{
    const auto B = bernoulli(40);
    std::vector<std::pair<int, Rational>> sin_want, cos_want, exp_want, tan_want, cot_want;
    for (int k = 0; k < 8; ++k) {
        sin_want.emplace_back(2 * k + 1, (k % 2 ? -1 : 1) / factorial(2 * k + 1));
        cos_want.emplace_back(2 * k, (k % 2 ? -1 : 1) / factorial(2 * k));
        exp_want.emplace_back(k, 1 / factorial(k));
        const int n = k + 1;
        tan_want.emplace_back(2 * n - 1, (n % 2 ? 1 : -1) * pow2(2 * n) * (pow2(2 * n) - 1) * B[2 * n] /
                                             factorial(2 * n));
        cot_want.emplace_back(2 * k - 1, (k % 2 ? -1 : 1) * pow2(2 * k) * B[2 * k] / factorial(2 * k));
    }
    CHECK(tan_want[3].second == q(17, 315));
    CHECK(leading(series_of(parse("sin(z)"), 20), 8) == sin_want);
    CHECK(leading(series_of(parse("cos(z)"), 20), 8) == cos_want);
    CHECK(leading(series_of(parse("exp(z)"), 20), 8) == exp_want);
    CHECK(leading(series_of(parse("tan(z)"), 20), 8) == tan_want);
    CHECK(leading(series_of(parse("cotan(z)"), 20), 8) == cot_want);
}

TEST_CASE("truncation orders propagate through arithmetic")
{
    const FormalSeries s = FormalSeries::sin(7);
    const FormalSeries c = FormalSeries::cos(7);
    CHECK((s * c).truncation_order() == 7);  // min(7 + 0, 7 + 1)
    CHECK((s + FormalSeries::monomial(2)).truncation_order() == 7);
    CHECK(c.reciprocal(20).truncation_order() == 7);
    CHECK(s.reciprocal(20).truncation_order() == 5);
    CHECK(s.reciprocal(20).lowest_degree() == -1);
    CHECK(s.compose_power(3).truncation_order() == 23);
    CHECK(s.compose_power(3).coefficient(9) == q(-1, 6));
    CHECK(FormalSeries::cotan(9).truncation_order() == 9);
    const FormalSeries exact = FormalSeries({{1, 1}, {2, 1}});
    CHECK((exact * exact).is_exact());
    CHECK(exact.power(3, 5) == FormalSeries({{3, 1}, {4, 3}, {5, 3}, {6, 1}}));
    CHECK(exact.reciprocal(3) == FormalSeries({{-1, 1}, {0, -1}, {1, 1}, {2, -1}, {3, 1}}, 3));
    CHECK_THROWS_AS(FormalSeries().reciprocal(3), EmptySeries);

    // sin(sin(z)) = z - z^3/3 + z^5/10 - ...
    const FormalSeries ss = series_of(parse("sin(sin(z))"), 5);
    CHECK(ss == FormalSeries({{1, 1}, {3, q(-1, 3)}, {5, q(1, 10)}}, 5));
    // 1/(1 - z) = sum z^k
    CHECK(series_of(parse("1/(1-z)"), 4) == FormalSeries({{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}}, 4));
    CHECK(series_of(parse("z^2 + z^3")).is_exact());
}

TEST_CASE("series_of rejects constructs outside its scope")
{
    CHECK_THROWS_AS(series_of(parse("z^0.5")), NotExpandable);
    CHECK_THROWS_AS(series_of(parse("log(z)")), NotExpandable);
    CHECK_THROWS_AS(series_of(parse("sqrt(z)")), NotExpandable);
    CHECK_THROWS_AS(series_of(parse("z + c")), NotExpandable);
    CHECK_THROWS_AS(series_of(parse("sin(z + 1)")), NotExpandable);
    CHECK_THROWS_AS(series_of(parse("i*z")), NotExpandable);
    CHECK_THROWS_AS(series_of(parse("z^z")), NotExpandable);
    try {
        series_of(parse("log(z)"));
    } catch (const NotExpandable& e) {
        CHECK(e.construct() == "log");
    }
}

TEST_CASE("order-12 series agree with the evaluator")
{
    std::mt19937_64 rng(12);
    for (const char* text : {"sin(z)", "cos(z)", "exp(z)", "tan(z)", "cotan(z)"}) {
        // tan's z^13 term alone reaches 1e-7 relative at |z| = 0.5, so its
        // check runs at order 20.
        const int order = std::string(text) == "tan(z)" ? 20 : 12;
        const FormalSeries s = series_of(parse(text), order);
        const vm::Program p = vm::compile(parse(text));
        for (int t = 0; t < 1000; ++t) {
            const Complex z = fracdom::testing::random_in_annulus(rng, 0.01, 0.5);
            const Complex want = vm::execute(p, z, 0.0);
            INFO(text, " z=", z.real(), "+", z.imag(), "i");
            REQUIRE(std::abs(s.evaluate(z) - want) <= 1e-8 * std::abs(want));
        }
    }
}

TEST_CASE("dominant terms")
{
    const FormalSeries p = series_of(parse("z^2 + z^3"));
    CHECK(dominant_term(p, Regime::ToZero).degree == 2);
    CHECK(dominant_term(p, Regime::ToInfinity).degree == 3);
    CHECK(dominant_term(series_of(parse("z^4 + z^7 - z^10")), Regime::ToZero).degree == 4);
    CHECK_THROWS_AS(dominant_term(FormalSeries(), Regime::ToZero), EmptySeries);
    CHECK_THROWS_AS(dominant_term(series_of(parse("sin(z)")), Regime::ToInfinity), InfinityOnTruncated);
}

TEST_CASE("prediction catalog")
{
    const std::vector<std::pair<const char*, int>> catalog{
        {"cos(z) - 1 + c", 2}, {"sin(z^2) + c", 2},    {"sin(z^4) + c", 4},
        {"6*(z - sin(z)) + c", 3}, {"tan(z)^2 + c", 2}, {"z^2 + z^3 + c", 2},
        {"z^4 + z^7 - z^10 + c", 4}, {"6(sin(z) - z) + c", 3}, {"cos(z) + c", 2},
    };
    for (const auto& [text, order] : catalog) {
        const DominanceReport r = predict_embedded(parse(text));
        INFO(text);
        CHECK(r.classification == Classification::EmbeddedMultibrot);
        REQUIRE(r.predicted_order.has_value());
        CHECK(*r.predicted_order == order);
        CHECK(r.view.has_value());
    }
    CHECK(predict_embedded(parse("cotan(z)^2 + c")).classification == Classification::LaurentPole);
    CHECK_FALSE(predict_embedded(parse("cotan(z)^2 + c")).predicted_order.has_value());
    CHECK(predict_embedded(parse("z + c")).classification == Classification::LinearTermBlocks);
    CHECK(predict_embedded(parse("3 + c")).classification == Classification::ConstantOnly);
    CHECK(predict_embedded(parse("sin(z^20) + c")).predicted_order == 20);
    CHECK_THROWS_AS(predict_embedded(parse("z^0.5 + c")), NotExpandable);
    CHECK(predict_embedded(parse("cos(z) + c")).note.find("discarded") != std::string::npos);
}

TEST_CASE("z^k sin(z^n) predicts order n + k")
{
    for (int k = 1; k <= 4; ++k) {
        for (int n = 1; n <= 4; ++n) {
            const std::string text = "z^" + std::to_string(k) + "*sin(z^" + std::to_string(n) + ")+c";
            INFO(text);
            CHECK(predict_embedded(parse(text)).predicted_order == n + k);
        }
    }
}

TEST_CASE("theta bound examples")
{
    const ThetaBoundReport r = check_theta_bound(parse("z^2 + z^3"), 2, 0.1, 400);
    CHECK(r.holds);
    CHECK(r.k1 >= 0.9);
    CHECK(r.k2 <= 1.1);
    CHECK(r.tightening);
    CHECK(r.circles.size() == 3);

    const ThetaBoundReport pure = check_theta_bound(parse("z^2"), 2, 0.7, 100);
    CHECK(pure.holds);
    CHECK(pure.k1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pure.k2 == doctest::Approx(1.0).epsilon(1e-14));

    const ThetaBoundReport wrong = check_theta_bound(parse("z^2 + z^3"), 3, 0.01, 200);
    CHECK_FALSE(wrong.holds);
    CHECK(wrong.circles[2].k2 > 2 * wrong.circles[0].k2);

    const ThetaBoundReport shifted = check_theta_bound(parse("(z - 1)^3 + c"), 3, 0.1, 100, 1.0);
    CHECK(shifted.regime == Regime::ToPoint);
    CHECK(shifted.holds);
    CHECK_THROWS_AS(check_theta_bound(parse("z"), 1, 0.1, 10), DomainError);
}

TEST_CASE("theta sandwich tightens for random left-truncated polynomials")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const int m = 2 + t % 4;
        expr::Expr f = expr::literal(0.5 + std::abs(unif(rng))) * pow(expr::Expr::z(), expr::Expr::constant(m));
        for (int d = m + 1; d <= m + 3; ++d) {
            f = f + expr::literal(unif(rng)) * pow(expr::Expr::z(), expr::Expr::constant(d));
        }
        const ThetaBoundReport r = check_theta_bound(f, m, 0.1, 200);
        INFO(format(f));
        CHECK(r.holds);
        CHECK(r.tightening);
    }
}

TEST_CASE("iterated degree law")
{
    const auto a = iterate_theta_consistency(series_of(parse("z^2 + z^3")), 2, 2);
    CHECK(a.holds);
    CHECK(a.lowest_degree == 4);
    CHECK(iterate_theta_consistency(series_of(parse("z^2")), 2, 3).lowest_degree == 8);
    CHECK(iterate_theta_consistency(series_of(parse("z^4 + z^7")), 4, 2).lowest_degree == 16);
    CHECK(iterate_theta_consistency(series_of(parse("z^3 - 2*z^5")), 3, 4).holds);
    CHECK_THROWS_AS(iterate_theta_consistency(series_of(parse("z^10")), 10, 5), DomainError);
    CHECK_THROWS_AS(iterate_theta_consistency(series_of(parse("sin(z)")), 1, 2), DomainError);
}

TEST_CASE("T_g family")
{
    const TgAnalysis t = analyze_tg(1.0, 3.0, 2);
    CHECK(format(t.exact) == "(1/z - z/3)^2 + c");
    CHECK(format(t.approx) == "(2 - 4/3*z)^2 + c");
    CHECK(t.predicted_order == 2);
    CHECK(analyze_tg(2.0, 5.0, 3).predicted_order == 3);
    CHECK(format(analyze_tg(2.0, 5.0, 3).approx) == "(4 - 11/5*z)^3 + c");
    CHECK_THROWS_AS(analyze_tg(0.0, 3.0, 2), DomainError);
    CHECK_THROWS_AS(analyze_tg(1.0, 3.0, 1), DomainError);

    // Linearization error is second order in z - 1.
    const expr::Expr g = parse("1/z - z/3");
    const expr::Expr lin = parse("2 - 4/3*z");
    for (double eps : {1e-2, 1e-3}) {
        const Complex z(1.0 + eps, eps);
        CHECK(std::abs(expr::eval(g, z, 0.0) - expr::eval(lin, z, 0.0)) <= 4 * std::norm(z - 1.0));
    }
}

TEST_CASE("rational literals")
{
    CHECK(format(rational_literal(4.0 / 3.0)) == "4/3");
    CHECK(format(rational_literal(-0.5)) == "-1/2");
    CHECK(format(rational_literal(Complex(1, -1.0 / 3))) == "1 - 1/3*i");
    CHECK(format(rational_literal(Complex(0, -2.5))) == "-5/2*i");
    CHECK(format(rational_literal(Complex(0, -1))) == "-i");
    CHECK(format(rational_literal(std::numbers::pi)) == "3.141592653589793");
    for (Complex v : {Complex(-0.5, 0.25), Complex(0, -2.5), Complex(-7, -1), Complex(1.0 / 3, 0)}) {
        CHECK(std::abs(expr::eval(parse(format(rational_literal(v))), 0.0, 0.0) - v) < 1e-15);
    }
}

TEST_CASE("prediction in the ToInfinity regime reads the highest degree")
{
    using fracdom::dominance::Regime;
    const auto poly = expr::parse("z^4 + z^7 - z^10 + c");
    CHECK(predict_embedded(poly).predicted_order == 4);
    const auto far = predict_embedded(poly, 12, Regime::ToInfinity);
    CHECK(far.regime == Regime::ToInfinity);
    CHECK(far.predicted_order == 10);
    CHECK(*far.dominant_coefficient == -1);
    CHECK(predict_embedded(expr::parse("z^2 + z^3 + c"), 12, Regime::ToInfinity).predicted_order == 3);
    CHECK(predict_embedded(expr::parse("1/z^2 + c"), 12, Regime::ToInfinity).classification ==
          Classification::ConstantOnly);
    CHECK_THROWS_AS(predict_embedded(expr::parse("sin(z) + c"), 12, Regime::ToInfinity), DomainError);
}
