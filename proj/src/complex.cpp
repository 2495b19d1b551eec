#include "selfsim/complex.hpp"

#include <ostream>
#include <stdexcept>

namespace selfsim {

Complex& Complex::operator+=(const Complex& rhs) {
    re += rhs.re;
    im += rhs.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
    re -= rhs.re;
    im -= rhs.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
    Real r = re * rhs.re - im * rhs.im;
    im = re * rhs.im + im * rhs.re;
    re = std::move(r);
    return *this;
}

Complex& Complex::operator/=(const Complex& rhs) {
    if (rhs.im.is_zero()) {
        re /= rhs.re;
        im /= rhs.re;
        return *this;
    }
    // Smith's algorithm keeps the intermediate magnitudes bounded.
    if (abs(rhs.re) >= abs(rhs.im)) {
        const Real ratio = rhs.im / rhs.re;
        const Real denom = rhs.re + rhs.im * ratio;
        Real r = (re + im * ratio) / denom;
        im = (im - re * ratio) / denom;
        re = std::move(r);
    } else {
        const Real ratio = rhs.re / rhs.im;
        const Real denom = rhs.re * ratio + rhs.im;
        Real r = (re * ratio + im) / denom;
        im = (im * ratio - re) / denom;
        re = std::move(r);
    }
    return *this;
}

std::string Complex::to_string(int significant) const {
    std::string out = "(" + re.to_string(significant);
    out += im.sign() < 0 ? " - " : " + ";
    out += abs(im).to_string(significant) + "i)";
    return out;
}

std::ostream& operator<<(std::ostream& os, const Complex& v) {
    const auto prec = os.precision();
    return os << v.to_string(prec > 0 ? static_cast<int>(prec) : 6);
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex exp(const Complex& z) {
    const Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) {
    if (z.is_zero()) throw std::domain_error("log of complex zero");
    return {log(abs(z)), arg(z)};
}

Complex pow(const Complex& z, const Real& p) {
    if (z.is_zero()) {
        if (p > Real(0)) return {};
        throw std::domain_error("complex zero raised to a non-positive power");
    }
    if (z.im.is_zero() && z.re.sign() > 0) return {pow(z.re, p)};
    return exp(log(z) * Complex(p));
}

Complex pow(const Complex& z, long n) {
    if (n < 0) return Complex(1) / pow(z, -n);
    Complex result(1);
    Complex base = z;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

Complex sqrt(const Complex& z) { return pow(z, Real(0.5)); }

}  // namespace selfsim
