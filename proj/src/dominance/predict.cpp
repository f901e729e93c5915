#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracdom/dominance.hpp"

namespace fracdom::dominance {

using expr::Expr;
using expr::Kind;

namespace {

constexpr int kMaxPredictOrder = 1024;

// Drops a top-level "+ c" (either side).
Expr strip_c(const Expr& e)
{
    if (e.kind() == Kind::Add) {
        if (e.rhs().kind() == Kind::VarC) {
            return e.lhs();
        }
        if (e.lhs().kind() == Kind::VarC) {
            return e.rhs();
        }
    }
    return e;
}

std::string monomial_text(int degree)
{
    return degree == 1 ? "z" : "z^" + std::to_string(degree);
}

}  // namespace

std::string_view classification_name(Classification c) noexcept
{
    switch (c) {
    case Classification::EmbeddedMultibrot:
        return "EmbeddedMultibrot";
    case Classification::LinearTermBlocks:
        return "LinearTermBlocks";
    case Classification::LaurentPole:
        return "LaurentPole";
    case Classification::ConstantOnly:
        return "ConstantOnly";
    }
    return "?";
}

DominanceReport predict_embedded(const Expr& e, int order, Regime regime)
{
    if (order < 1) {
        throw DomainError("expansion order must be at least 1");
    }
    if (regime == Regime::ToPoint) {
        throw DomainError("predict_embedded supports the ToZero and ToInfinity regimes");
    }
    DominanceReport r;
    r.input = e;
    r.analyzed = strip_c(e);
    r.regime = regime;

    FormalSeries shape;
    for (int o = order;; o *= 2) {
        r.series = series_of(r.analyzed, o);
        shape = r.series.without_degree(0);
        if (!shape.empty() || r.series.is_exact() || 2 * o > kMaxPredictOrder) {
            break;
        }
    }

    std::ostringstream note;
    if (r.series.coefficient(0) != 0) {
        note << "constant term " << r.series.coefficient(0) << " discarded (it shifts c); ";
    }
    if (shape.empty()) {
        r.classification = Classification::ConstantOnly;
        note << "no nonconstant terms";
        r.note = note.str();
        return r;
    }
    if (regime == Regime::ToInfinity && !r.series.is_exact()) {
        throw DomainError("the ToInfinity regime needs a finite series; " + r.series.to_string() +
                          " is truncated");
    }
    const auto [l, a] = dominant_term(shape, regime);
    r.dominant_coefficient = a;
    if (regime == Regime::ToInfinity && l < 1) {
        r.classification = Classification::ConstantOnly;
        note << "the map stays bounded as z grows (highest degree " << l << ")";
    } else if (l < 0) {
        r.classification = Classification::LaurentPole;
        note << "series contains " << monomial_text(l)
             << "; poles fall outside the Multibrot prediction, see analyze_tg for the "
                "(a/z - z/b)^n + c model";
    } else if (l == 1) {
        r.classification = Classification::LinearTermBlocks;
        note << "linear term " << a << "*z present; no embedded Multibrot prediction";
    } else {
        r.classification = Classification::EmbeddedMultibrot;
        r.predicted_order = l;
        const double coef = std::abs(a.convert_to<double>());
        const double sigma = std::pow(coef, 1.0 / (1.0 - l));
        r.view = SuggestedView{{0.0, 0.0}, 2.0 * sigma};
        note << (regime == Regime::ToZero ? "near 0" : "for large z") << " the map behaves like " << a << "*" << monomial_text(l)
             << " + c; expect an embedded " << monomial_text(l) << " + c Multibrot";
    }
    r.note = note.str();
    return r;
}

ThetaBoundReport check_theta_bound(const Expr& f, int m, double radius, int samples, Complex point)
{
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw DomainError("radius must be positive");
    }
    if (samples < 100) {
        throw DomainError("check_theta_bound needs at least 100 samples per circle");
    }
    const Expr g = strip_c(f);
    ThetaBoundReport rep;
    rep.regime = point == Complex(0.0) ? Regime::ToZero : Regime::ToPoint;
    rep.point = point;
    rep.m = m;
    rep.samples = samples;
    rep.disk_radius = radius;
    rep.k1 = std::numeric_limits<double>::infinity();
    rep.k2 = 0.0;
    for (double r : {radius, radius / 2, radius / 4}) {
        CircleBound cb{r, std::numeric_limits<double>::infinity(), 0.0};
        const double scale = std::pow(r, m);
        for (int j = 0; j < samples; ++j) {
            const double angle = 2.0 * std::numbers::pi * (j + 0.5) / samples;
            const Complex z = point + std::polar(r, angle);
            const double ratio = std::abs(expr::eval(g, z, 0.0)) / scale;
            if (!std::isfinite(ratio)) {
                cb.k1 = std::numeric_limits<double>::quiet_NaN();
                cb.k2 = std::numeric_limits<double>::quiet_NaN();
                break;
            }
            cb.k1 = std::min(cb.k1, ratio);
            cb.k2 = std::max(cb.k2, ratio);
        }
        rep.circles.push_back(cb);
        rep.k1 = std::min(rep.k1, cb.k1);
        rep.k2 = std::max(rep.k2, cb.k2);
    }
    const CircleBound& outer = rep.circles.front();
    const CircleBound& inner = rep.circles.back();
    const bool finite = std::isfinite(rep.k1) && std::isfinite(rep.k2);
    const bool positive = rep.k1 > 0.0 && rep.k2 > 0.0;
    const bool growing = inner.k2 > 2.0 * outer.k2;
    const bool vanishing = inner.k1 < 0.5 * outer.k1;
    rep.holds = finite && positive && !growing && !vanishing;
    auto spread = [](const CircleBound& c) { return c.k2 / c.k1; };
    rep.tightening = finite && positive && spread(rep.circles[1]) < spread(rep.circles[0]) &&
                     spread(rep.circles[2]) < spread(rep.circles[1]);
    if (!finite) {
        rep.note = "non-finite ratio on a sample circle";
    } else if (!positive) {
        rep.note = "ratio vanishes on a sample circle";
    } else if (growing) {
        rep.note = "bound not tightening: k2 grows as the radius shrinks";
    } else if (vanishing) {
        rep.note = "bound not tightening: k1 shrinks with the radius";
    } else {
        rep.note = rep.tightening ? "bound holds and tightens" : "bound holds";
    }
    return rep;
}

IterationDegree iterate_theta_consistency(const FormalSeries& f, int m, int n_iter)
{
    if (!f.is_exact()) {
        throw DomainError("iterated degree check needs a finite polynomial");
    }
    if (n_iter < 1 || m < 1) {
        throw DomainError("iterated degree check needs m >= 1 and n_iter >= 1");
    }
    long long expected = 1;
    for (int k = 0; k < n_iter; ++k) {
        expected *= m;
        if (expected > kMaxIteratedDegree) {
            throw DomainError("m^n_iter exceeds " + std::to_string(kMaxIteratedDegree));
        }
    }
    if (f.empty() || f.lowest_degree() < 1) {
        throw DomainError("iterated degree check needs f(0) = 0 and no poles");
    }
    const int target = static_cast<int>(expected);
    FormalSeries g = f.is_exact() && f.highest_degree() <= target ? f : f.truncated(target);
    for (int k = 1; k < n_iter; ++k) {
        g = f.compose(g, target);
    }
    const int lowest = g.empty() ? target + 1 : g.lowest_degree();
    return {lowest == target, lowest, target};
}

namespace {

// p/q with q <= 1000 matching x to 1e-12 relative, if any.
std::optional<std::pair<long long, long long>> small_fraction(double x)
{
    if (!std::isfinite(x) || std::abs(x) > 1e12) {
        return std::nullopt;
    }
    for (long long q = 1; q <= 1000; ++q) {
        const double p = std::round(x * static_cast<double>(q));
        if (std::abs(p / static_cast<double>(q) - x) <= 1e-12 * std::max(1.0, std::abs(x))) {
            return std::pair{static_cast<long long>(p), q};
        }
    }
    return std::nullopt;
}

// Signed literal or fraction: -3 is Neg(3), -1/2 is Neg(1)/2, so the sign
// sits on the leading factor and never needs parentheses.
Expr signed_number(double x)
{
    auto num = [&](double v) {
        const Expr m = Expr::constant(std::abs(v));
        return x < 0.0 ? -m : m;
    };
    if (const auto f = small_fraction(x)) {
        const Expr p = num(static_cast<double>(f->first));
        return f->second == 1 ? p : p / Expr::constant(static_cast<double>(f->second));
    }
    return num(x);
}

Expr rational_scaled(Complex coef, const Expr& e)
{
    if (coef == Complex(1.0)) {
        return e;
    }
    if (coef == Complex(-1.0)) {
        return -e;
    }
    return rational_literal(coef) * e;
}

Complex snap(Complex v)
{
    const double tiny = 1e-15 * std::abs(v);
    return {std::abs(v.real()) <= tiny ? 0.0 : v.real(), std::abs(v.imag()) <= tiny ? 0.0 : v.imag()};
}

}  // namespace

Expr rational_literal(Complex value)
{
    const Complex v = snap(value);
    const double re = v.real();
    const double im = v.imag();
    const Expr unit = Expr::constant(Complex(0.0, 1.0));
    // |im| * i, with a bare i for magnitude 1.
    const auto imag_part = [&](double m) { return m == 1.0 ? unit : signed_number(m) * unit; };
    if (im == 0.0) {
        return signed_number(re);
    }
    if (re == 0.0) {
        return im == -1.0 ? -unit : (im == 1.0 ? unit : signed_number(im) * unit);
    }
    const Expr real = signed_number(re);
    return im < 0.0 ? real - imag_part(-im) : real + imag_part(im);
}

TgAnalysis analyze_tg(Complex a, Complex b, int n)
{
    if (a == Complex(0.0) || b == Complex(0.0) || !is_finite(a) || !is_finite(b)) {
        throw DomainError("T_g needs finite nonzero a and b");
    }
    if (n < 2) {
        throw DomainError("T_g needs n >= 2");
    }
    const Expr z = Expr::z();
    const Expr exponent = Expr::constant(static_cast<double>(n));
    const Expr g = rational_literal(a) / z - z / rational_literal(b);

    const Complex slope = snap(a + 1.0 / b);
    const Complex offset = 2.0 * a;
    Expr linear = rational_literal(offset);
    if (slope.real() < 0.0 || (slope.real() == 0.0 && slope.imag() < 0.0)) {
        linear = linear + rational_scaled(-slope, z);
    } else if (slope != Complex(0.0)) {
        linear = linear - rational_scaled(slope, z);
    }
    return {pow(g, exponent) + Expr::c(), pow(linear, exponent) + Expr::c(), n};
}

}  // namespace fracdom::dominance
