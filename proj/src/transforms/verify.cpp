#include <quadmath.h>

#include <algorithm>

#include "fracdom/error.hpp"
#include "fracdom/transforms.hpp"

namespace fracdom::transforms {

namespace {

using quad = __float128;

struct Q {
    quad re = 0;
    quad im = 0;
};

Q q(Complex z) { return {z.real(), z.imag()}; }
Q operator+(Q a, Q b) { return {a.re + b.re, a.im + b.im}; }
Q operator-(Q a, Q b) { return {a.re - b.re, a.im - b.im}; }
Q operator*(Q a, Q b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Q operator*(quad s, Q a) { return {s * a.re, s * a.im}; }

quad modulus(Q a) { return hypotq(a.re, a.im); }

Q reciprocal(Q a)
{
    const quad d = a.re * a.re + a.im * a.im;
    return {a.re / d, -a.im / d};
}

Q ipow(Q z, int n)
{
    Q result{1, 0};
    Q base = n < 0 ? reciprocal(z) : z;
    for (unsigned e = static_cast<unsigned>(n < 0 ? -n : n); e != 0; e >>= 1) {
        if (e & 1u) {
            result = result * base;
        }
        base = base * base;
    }
    return result;
}

Q unit(quad angle) { return {cosq(angle), sinq(angle)}; }

// Iterates w <- F(w) + ct from ct alongside z <- z^n + c from c and measures
// |w_l - expected(z_l)|.
template <class Map, class Expected>
double dual_iteration(int n, Complex c, Q ct, int iterations, Map map, Expected expected)
{
    if (iterations < 1) {
        throw DomainError("iteration count must be at least 1");
    }
    const Q cq = q(c);
    Q z = cq;
    Q w = ct;
    quad worst = 0;
    for (int l = 0; l <= iterations; ++l) {
        if (modulus(z) > kOrbitGuard) {
            break;
        }
        worst = std::max(worst, modulus(w - expected(z)));
        z = ipow(z, n) + cq;
        w = map(w) + ct;
    }
    return static_cast<double>(worst);
}

}  // namespace

double verify_translation(int n, Complex a, Complex c, int iterations)
{
    if (n < 2) {
        throw DomainError("translation check needs an integer n >= 2");
    }
    const Q aq = q(a);
    return dual_iteration(
        n, c, q(c) + aq, iterations, [&](Q w) { return ipow(w - aq, n); },
        [&](Q z) { return z + aq; });
}

double verify_rotation(int n, double theta, Complex c, int iterations)
{
    if (n == 1) {
        throw DomainError("rotation is undefined for n = 1");
    }
    const Q spin = unit(theta);
    const Q r = unit(-static_cast<quad>(theta) / (n - 1));
    return dual_iteration(
        n, c, r * q(c), iterations, [&](Q w) { return spin * ipow(w, n); },
        [&](Q z) { return r * z; });
}

double verify_scaling(int n, double a, Complex c, int iterations)
{
    if (!(a > 0.0) || n == 1) {
        throw DomainError("scaling check needs a > 0 and n != 1");
    }
    const quad aq = a;
    const quad sigma = powq(aq, static_cast<quad>(1) / (1 - n));
    return dual_iteration(
        n, c, sigma * q(c), iterations, [&](Q w) { return aq * ipow(w, n); },
        [&](Q z) { return sigma * z; });
}

}  // namespace fracdom::transforms
