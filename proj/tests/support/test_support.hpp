#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "fracdom/expr.hpp"

namespace fracdom::testing {

// Componentwise absolute-or-relative closeness.
inline bool close(Complex a, Complex b, double tol)
{
    auto near = [tol](double x, double y) {
        return std::abs(x - y) <= tol * std::max(1.0, std::max(std::abs(x), std::abs(y)));
    };
    return near(a.real(), b.real()) && near(a.imag(), b.imag());
}

inline Complex random_in_disk(std::mt19937_64& rng, double radius)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng));
    const double t = 2.0 * std::numbers::pi * u(rng);
    return std::polar(r, t);
}

inline Complex random_in_annulus(std::mt19937_64& rng, double rmin, double rmax)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = std::sqrt(rmin * rmin + (rmax * rmax - rmin * rmin) * u(rng));
    return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

// Random trees over the parser's output space: constants are non-negative
// real literals or i.
class RandomExpr {
public:
    explicit RandomExpr(std::uint64_t seed) : rng_(seed) {}

    expr::Expr operator()(int max_depth) { return node(max_depth); }
    std::mt19937_64& rng() { return rng_; }

private:
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    expr::Expr constant()
    {
        switch (pick(4)) {
        case 0: return expr::Expr::constant(static_cast<double>(pick(10)));
        case 1: return expr::Expr::constant(Complex(0.0, 1.0));
        case 2: return expr::Expr::constant(pick(1000) / 100.0);
        default: return expr::Expr::constant(std::uniform_real_distribution<double>(0.0, 5.0)(rng_));
        }
    }

    expr::Expr leaf()
    {
        switch (pick(3)) {
        case 0: return expr::Expr::z();
        case 1: return expr::Expr::c();
        default: return constant();
        }
    }

    expr::Expr exponent(int depth)
    {
        switch (pick(4)) {
        case 0: return expr::Expr::constant(static_cast<double>(pick(6)));
        case 1: return expr::Expr::neg(expr::Expr::constant(static_cast<double>(1 + pick(3))));
        case 2: return expr::Expr::constant(pick(100) / 20.0);
        default: return node(std::min(depth, 2));
        }
    }

    expr::Expr node(int depth)
    {
        if (depth <= 1 || pick(5) == 0) {
            return leaf();
        }
        const int d = depth - 1;
        switch (pick(8)) {
        case 0: return expr::Expr::neg(node(d));
        case 1: return node(d) + node(d);
        case 2: return node(d) - node(d);
        case 3: return node(d) * node(d);
        case 4: return node(d) / node(d);
        case 5: return expr::pow(node(d), exponent(d));
        default: return expr::Expr::call(static_cast<expr::Function>(pick(7)), node(d));
        }
    }

    std::mt19937_64 rng_;
};

}  // namespace fracdom::testing
