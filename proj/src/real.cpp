#include "selfsim/real.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace selfsim {

namespace {

constexpr int kGuardBits = 16;
constexpr int kDefaultDigits = 60;

thread_local int tl_bits = 0;
thread_local int tl_digits = 0;

void ensure_init() noexcept {
    if (tl_bits == 0) {
        tl_digits = kDefaultDigits;
        tl_bits = static_cast<int>(std::ceil(kDefaultDigits * 3.321928094887362)) + kGuardBits;
    }
}

}  // namespace

int digits_to_bits(int decimal_digits) {
    if (decimal_digits < 1) throw std::invalid_argument("decimal digits must be positive");
    return static_cast<int>(std::ceil(decimal_digits * 3.321928094887362)) + kGuardBits;
}

int working_bits() noexcept {
    ensure_init();
    return tl_bits;
}

int working_digits() noexcept {
    ensure_init();
    return tl_digits;
}

PrecisionScope::PrecisionScope(int decimal_digits) : saved_bits_(working_bits()), saved_digits_(working_digits()) {
    tl_bits = digits_to_bits(decimal_digits);
    tl_digits = decimal_digits;
}

PrecisionScope::~PrecisionScope() {
    tl_bits = saved_bits_;
    tl_digits = saved_digits_;
}

Real::Real() {
    mpfr_init2(value_, working_bits());
    mpfr_set_zero(value_, 1);
}

Real::Real(double v) : Real() { mpfr_set_d(value_, v, MPFR_RNDN); }

Real::Real(std::string_view decimal) : Real() {
    const std::string s(decimal);
    if (mpfr_set_str(value_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("not a decimal number: '" + s + "'");
}

Real::Real(mpfr_srcptr src) : Real() { mpfr_set(value_, src, MPFR_RNDN); }

Real::Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other) mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int significant) const {
    if (significant < 1) significant = 1;
    const int size = mpfr_snprintf(nullptr, 0, "%.*Re", significant - 1, value_);
    std::string out(static_cast<std::size_t>(size) + 1, '\0');
    mpfr_snprintf(out.data(), out.size(), "%.*Re", significant - 1, value_);
    out.resize(static_cast<std::size_t>(size));
    return out;
}

Real& Real::operator+=(const Real& rhs) {
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs) {
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs) {
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs) {
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real operator-(const Real& v) {
    Real out;
    mpfr_neg(out.value_, v.value_, MPFR_RNDN);
    return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const Real& v) {
    const auto prec = os.precision();
    return os << v.to_string(prec > 0 ? static_cast<int>(prec) : 6);
}

namespace {

template <typename F>
Real unary(const Real& v, F f) {
    Real out;
    f(out.get(), v.get(), MPFR_RNDN);
    return out;
}

}  // namespace

Real abs(const Real& v) { return unary(v, mpfr_abs); }
Real sqrt(const Real& v) { return unary(v, mpfr_sqrt); }
Real exp(const Real& v) { return unary(v, mpfr_exp); }
Real log(const Real& v) { return unary(v, mpfr_log); }
Real sin(const Real& v) { return unary(v, mpfr_sin); }
Real cos(const Real& v) { return unary(v, mpfr_cos); }

Real floor(const Real& v) {
    Real out;
    mpfr_floor(out.get(), v.get());
    return out;
}

Real round(const Real& v) {
    Real out;
    mpfr_round(out.get(), v.get());
    return out;
}

Real pow(const Real& base, const Real& exponent) {
    Real out;
    mpfr_pow(out.get(), base.get(), exponent.get(), MPFR_RNDN);
    return out;
}

Real pow(const Real& base, long exponent) {
    Real out;
    mpfr_pow_si(out.get(), base.get(), exponent, MPFR_RNDN);
    return out;
}

Real atan2(const Real& y, const Real& x) {
    Real out;
    mpfr_atan2(out.get(), y.get(), x.get(), MPFR_RNDN);
    return out;
}

Real hypot(const Real& a, const Real& b) {
    Real out;
    mpfr_hypot(out.get(), a.get(), b.get(), MPFR_RNDN);
    return out;
}

Real lgamma(const Real& v) {
    Real out;
    int sign = 0;
    mpfr_lgamma(out.get(), &sign, v.get(), MPFR_RNDN);
    return out;
}

Real pi() {
    Real out;
    mpfr_const_pi(out.get(), MPFR_RNDN);
    return out;
}

Real ten_to_minus(int digits) {
    Real out(10);
    mpfr_pow_si(out.get(), out.get(), -static_cast<long>(digits), MPFR_RNDN);
    return out;
}

bool is_integer(const Real& v, const Real& tolerance) { return abs(v - round(v)) <= tolerance; }

}  // namespace selfsim
