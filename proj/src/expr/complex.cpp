#include "fracdom/complex.hpp"

#include <numbers>

namespace fracdom {

Complex principal_log(Complex z) noexcept
{
    Complex w = std::log(z);
    if (w.imag() == -std::numbers::pi) {
        w.imag(std::numbers::pi);
    }
    return w;
}

Complex integer_power(Complex z, int n) noexcept
{
    if (n < 0) {
        return Complex(1.0) / integer_power(z, -n);
    }
    Complex result(1.0);
    Complex base = z;
    unsigned k = static_cast<unsigned>(n);
    while (k != 0) {
        if (k & 1u) {
            result *= base;
        }
        k >>= 1u;
        if (k != 0) {
            base *= base;
        }
    }
    return result;
}

Complex principal_power(Complex z, Complex w) noexcept
{
    if (z == Complex(0.0)) {
        if (w.real() > 0.0) {
            return Complex(0.0);
        }
        return Complex(std::nan(""), std::nan(""));
    }
    return std::exp(w * principal_log(z));
}

bool as_small_integer(Complex w, int& n) noexcept
{
    if (w.imag() != 0.0) {
        return false;
    }
    const double r = w.real();
    if (!(std::abs(r) <= kMaxIntegerPower) || std::trunc(r) != r) {
        return false;
    }
    n = static_cast<int>(r);
    return true;
}

Complex power(Complex z, Complex w) noexcept
{
    int n = 0;
    if (as_small_integer(w, n)) {
        return integer_power(z, n);
    }
    return principal_power(z, w);
}

Complex cotan(Complex z) noexcept
{
    return Complex(1.0) / std::tan(z);
}

}  // namespace fracdom
