#pragma once

#include <concepts>
#include <iosfwd>
#include <string>
#include <utility>

#include "selfsim/real.hpp"

namespace selfsim {

/// Complex number over Real. std::complex is only specified for the
/// built-in floating types, hence the small dedicated type.
struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(double r) : re(r) {}  // NOLINT(google-explicit-constructor)
    template <std::integral I>
    Complex(I r) : re(r) {}  // NOLINT(google-explicit-constructor)

    bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
    bool is_finite() const noexcept { return re.is_finite() && im.is_finite(); }

    Complex& operator+=(const Complex& rhs);
    Complex& operator-=(const Complex& rhs);
    Complex& operator*=(const Complex& rhs);
    Complex& operator/=(const Complex& rhs);

    friend Complex operator+(Complex lhs, const Complex& rhs) { return lhs += rhs; }
    friend Complex operator-(Complex lhs, const Complex& rhs) { return lhs -= rhs; }
    friend Complex operator*(Complex lhs, const Complex& rhs) { return lhs *= rhs; }
    friend Complex operator/(Complex lhs, const Complex& rhs) { return lhs /= rhs; }
    friend Complex operator-(const Complex& v) { return {-v.re, -v.im}; }

    friend bool operator==(const Complex& a, const Complex& b) noexcept { return a.re == b.re && a.im == b.im; }

    std::string to_string(int significant = 10) const;
};

std::ostream& operator<<(std::ostream& os, const Complex& v);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);
/// Principal branch: exp(p log z); 0^p = 0 for p > 0.
Complex pow(const Complex& z, const Real& p);
Complex pow(const Complex& z, long n);
Complex sqrt(const Complex& z);

}  // namespace selfsim
