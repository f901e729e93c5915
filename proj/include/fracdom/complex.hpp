#pragma once

#include <cmath>
#include <complex>

namespace fracdom {

using Complex = std::complex<double>;

inline constexpr int kMaxIntegerPower = 64;

inline bool is_finite(Complex z) noexcept
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Principal logarithm with the imaginary part in (-pi, pi].
Complex principal_log(Complex z) noexcept;

// z^n by repeated squaring; negative n is the reciprocal of z^-n.
Complex integer_power(Complex z, int n) noexcept;

// exp(w * log z) on the principal branch. z = 0 gives 0 when Re(w) > 0, NaN otherwise.
Complex principal_power(Complex z, Complex w) noexcept;

// The exponentiation used everywhere `^` is evaluated: an exponent that is a
// real integer with |n| <= kMaxIntegerPower goes through integer_power,
// anything else through principal_power.
Complex power(Complex z, Complex w) noexcept;

Complex cotan(Complex z) noexcept;

// Returns true and sets n when w is a real integer within the PowInt range.
bool as_small_integer(Complex w, int& n) noexcept;

}  // namespace fracdom
