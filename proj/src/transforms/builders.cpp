#include <numbers>
#include <sstream>

#include "fracdom/error.hpp"
#include "fracdom/transforms.hpp"

namespace fracdom::transforms {

using expr::Expr;

namespace {

Expr shifted_z(Complex b)
{
    return b == Complex(0.0) ? Expr::z() : Expr::z() - expr::literal(b);
}

Expr power_of(Expr base, double n)
{
    return n == 1.0 ? base : pow(std::move(base), expr::literal(n));
}

void require_finite(double v, const char* name)
{
    if (!std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be finite");
    }
}

}  // namespace

double TransformSpec::normalized_theta() const noexcept
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::remainder(theta, two_pi);
    if (t <= -std::numbers::pi) {
        t += two_pi;
    }
    return t;
}

SparseLaurentPolynomial transform_polynomial(const SparseLaurentPolynomial& poly,
                                             const TransformSpec& spec)
{
    if (!(spec.u_scale > 0.0) || !std::isfinite(spec.u_scale)) {
        throw DomainError("transform scale u must be positive");
    }
    require_finite(spec.theta, "theta");
    if (poly.center() != Complex(0.0)) {
        throw DomainError("transform_polynomial expects a polynomial centered at 0");
    }
    if (poly.coefficient(1) != Complex(0.0)) {
        throw TruncationError("polynomial has a linear term; the transform vector needs degrees != 1");
    }
    std::map<int, Complex> out;
    for (const auto& [j, a] : poly.terms()) {
        const double k = static_cast<double>(j - 1);
        out[j] = a * std::pow(spec.u_scale, -k) * std::polar(1.0, k * spec.theta);
    }
    return SparseLaurentPolynomial(out, spec.b);
}

Motion motion_of(const TransformSpec& spec) noexcept
{
    return {std::polar(spec.u_scale, -spec.theta), spec.b};
}

BuiltMap build_transformed(const SparseLaurentPolynomial& poly, const TransformSpec& spec)
{
    const SparseLaurentPolynomial t = transform_polynomial(poly, spec);
    BuiltMap built{t.to_map(), {}};
    if (t.has_negative_degree()) {
        built.notes.emplace_back(kEscapeRadiusNote);
    }
    return built;
}

Expr build_translated(double n, Complex a)
{
    require_finite(n, "n");
    if (!(n > 0.0)) {
        throw DomainError("translation needs n > 0");
    }
    return power_of(shifted_z(a), n) + Expr::c();
}

RotatedMap build_rotated(double n, double theta)
{
    require_finite(n, "n");
    require_finite(theta, "theta");
    if (n == 1.0) {
        throw DomainError("rotation is undefined for n = 1");
    }
    RotatedMap r{expr::scaled(std::polar(1.0, theta), power_of(Expr::z(), n)) + Expr::c(),
                 theta / (n - 1.0), n > 0.0, {}};
    if (n < 0.0) {
        r.notes.emplace_back(kEscapeRadiusNote);
    }
    return r;
}

ScaledMap build_scaled(double n, double a)
{
    require_finite(n, "n");
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("scaling needs a > 0");
    }
    if (n == 1.0 || !(n > 0.0)) {
        throw DomainError("scaling needs n > 0 and n != 1");
    }
    return {expr::scaled(a, power_of(Expr::z(), n)) + Expr::c(), std::pow(a, 1.0 / (1.0 - n))};
}

SptMap build_spt(double n, Complex a, Complex b)
{
    require_finite(n, "n");
    if (!(n > 0.0) || n == 1.0) {
        throw DomainError("shape preserving transform needs n > 0 and n != 1");
    }
    if (a == Complex(0.0) || !is_finite(a) || !is_finite(b)) {
        throw DomainError("shape preserving transform needs a finite nonzero a");
    }
    SptMap s{expr::scaled(a, power_of(shifted_z(b), n)) + Expr::c(),
             b,
             std::arg(a) / (n - 1.0),
             true,
             std::pow(std::abs(a), 1.0 / (1.0 - n)),
             {}};
    std::ostringstream d;
    d.precision(17);
    d << "translation " << b.real() << (b.imag() < 0 ? "" : "+") << b.imag() << "i, rotation "
      << s.rotation << " rad clockwise, scale " << s.scale;
    s.description = d.str();
    return s;
}

Expr build_zoom(const Expr& f, double s, double phi, Complex a)
{
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw DomainError("zoom needs s > 0");
    }
    require_finite(phi, "phi");
    const Expr moved = a == Complex(0.0) ? f : expr::substitute_z(f, shifted_z(a));
    return expr::scaled(std::polar(s, phi), moved) + Expr::c();
}

}  // namespace fracdom::transforms
