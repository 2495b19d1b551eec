#pragma once

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace selfsim {

/// Bits used for a requested number of decimal digits (includes guard bits).
int digits_to_bits(int decimal_digits);

/// Precision, in bits, that newly created Real values get on this thread.
int working_bits() noexcept;

/// Decimal digits corresponding to working_bits(), guard bits excluded.
int working_digits() noexcept;

/// Sets the thread's working precision for its lifetime and restores the
/// previous one on exit. Scopes nest.
class PrecisionScope {
public:
    explicit PrecisionScope(int decimal_digits);
    ~PrecisionScope();

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    int saved_bits_;
    int saved_digits_;
};

/// Arbitrary-precision real backed by an mpfr_t. Every value is created at
/// the calling thread's working precision; arithmetic rounds to nearest.
class Real {
public:
    Real();
    Real(double v);  // NOLINT(google-explicit-constructor)
    template <std::signed_integral I>
    Real(I v) : Real() { mpfr_set_si(value_, static_cast<long>(v), MPFR_RNDN); }  // NOLINT
    template <std::unsigned_integral I>
    Real(I v) : Real() { mpfr_set_ui(value_, static_cast<unsigned long>(v), MPFR_RNDN); }  // NOLINT
    explicit Real(std::string_view decimal);
    explicit Real(mpfr_srcptr src);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_ptr get() noexcept { return value_; }

    double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
    /// Scientific notation with the given number of significant digits.
    std::string to_string(int significant = 20) const;

    bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
    bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    int sign() const noexcept { return mpfr_sgn(value_); }

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);

    friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
    friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
    friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
    friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
    friend Real operator-(const Real& v);

    friend bool operator==(const Real& a, const Real& b) noexcept { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept;

private:
    mpfr_t value_;
};

std::ostream& operator<<(std::ostream& os, const Real& v);

Real abs(const Real& v);
Real sqrt(const Real& v);
Real exp(const Real& v);
Real log(const Real& v);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real sin(const Real& v);
Real cos(const Real& v);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& a, const Real& b);
Real lgamma(const Real& v);
Real floor(const Real& v);
Real round(const Real& v);
Real pi();
/// 10^(-digits), the usual way tolerances are phrased here.
Real ten_to_minus(int digits);

bool is_integer(const Real& v, const Real& tolerance);

}  // namespace selfsim
