#pragma once

#include <optional>
#include <vector>

#include "selfsim/complex.hpp"
#include "selfsim/numeric.hpp"
#include "selfsim/series.hpp"

namespace selfsim {

/// scale * [num(x) / den(x)]^gamma with den(0) = 1. Plain Pade has
/// gamma = 1 and scale = 1.
struct PadeApproximant {
    Real scale{1};
    std::vector<Real> numerator;    // degree M
    std::vector<Real> denominator;  // degree N, denominator[0] = 1
    Real gamma{1};
    /// Set when the denominator has a root on [0, inf).
    bool pole_on_positive_axis = false;

    int M() const noexcept { return static_cast<int>(numerator.size()) - 1; }
    int N() const noexcept { return static_cast<int>(denominator.size()) - 1; }
};

/// [M/N] Pade table entry of `series`; needs M + N <= k. Throws
/// Error(singular_matrix) for a degenerate entry.
PadeApproximant pade_construct(const SmallSeries& series, int M, int N, const PrecisionContext& ctx = {});

Real pade_evaluate(const PadeApproximant& p, const Real& x);

/// Throws Error(power_incompatible) unless every ladder power is an integer.
/// A rational function only produces integer powers at large x.
void pade_check_applicable(const PowerLadder& ladder);

/// Plain [M/N] Pade with M - N = beta_1; refuses non-integer ladders.
Real pade_amplitude(const SmallSeries& series, const PowerLadder& ladder, int M, int N, const PrecisionContext& ctx = {});

/// P_{N/(N+1)} built on the series of f^{1/gamma}, gamma = -beta_1, so that
/// P^gamma ~ B x^{beta_1} at large x. Needs 2N+1 <= k.
PadeApproximant pade_modified_construct(const SmallSeries& series, int N, const Real& beta1, const PrecisionContext& ctx = {});

struct PadeAmplitude {
    Real amplitude;
    bool pole_on_positive_axis = false;
};

/// Large-x amplitude (p_N / q_{N+1})^gamma of the modified approximant.
/// Throws Error(complex_solution) for a negative ratio with fractional gamma.
PadeAmplitude pade_modified_amplitude(const SmallSeries& series, int N, const Real& beta1, const PrecisionContext& ctx = {});

/// Highest N with a modified approximant built from an order-k series.
int pade_modified_degree(int k);

/// A x^alpha prod_i (1 + A_i x)^{n_i}.
struct FactorApproximant {
    Real prefactor{1};
    Real alpha{0};
    std::vector<Complex> coeffs;  // A_i
    std::vector<Complex> powers;  // n_i
    /// Some A_i or n_i came out complex; the factors then pair up.
    bool complex_factors = false;
};

/// Factor approximant through order k of `series`.
///
/// The log of the normalized series gives power sums
/// sum_i n_i A_i^m = P_m. Even k uses m = 1..k with k/2 factors. Odd k uses
/// (k+1)/2 factors and closes the system with sum_i n_i = beta_1 - alpha,
/// so `beta1` is required there. The A_i are the roots of the Prony
/// polynomial from the Hankel system; the n_i follow from a Vandermonde solve.
FactorApproximant factor_construct(const SmallSeries& series, std::optional<Real> beta1 = std::nullopt,
                                   const PrecisionContext& ctx = {});

struct FactorAmplitude {
    Real amplitude;
    /// alpha + sum n_i, the large-x exponent.
    Real power;
};

/// A prod A_i^{n_i}. Throws Error(complex_solution) when a factor is complex
/// or A_i <= 0 with non-integer n_i.
FactorAmplitude factor_amplitude(const FactorApproximant& f);

Complex factor_evaluate(const FactorApproximant& f, const Real& x);

enum class RootMode { small_only, mixed, full_large };

/// a_0 (((1 + A_1 x)^{n_1} + A_2 x^2)^{n_2} + ... + A_k x^k)^{n_k}.
struct RootApproximant {
    Real prefactor{1};
    std::vector<Real> coeffs;  // A_1..A_k
    std::vector<Real> powers;  // n_1..n_k
};

/// Root approximant of order k = series order.
///
/// small_only: n_j = (j+1)/j for j < k, all A_j from the series.
/// mixed / full_large: j n_j = j + 1 - (beta_{k-j} - beta_{k-j+1}); the first
/// k - p coefficients come from a_1..a_{k-p} and the last p from the ladder
/// amplitudes b_1..b_p (p = large_count, p = k for full_large), solved by
/// Newton iteration started from the small-side values.
/// In every mode n_k = beta_1 / k. Throws Error(complex_solution) when the
/// nesting hits a negative base under a fractional power.
RootApproximant root_construct(const SmallSeries& series, const PowerLadder& ladder, RootMode mode, int large_count = 0,
                               const PrecisionContext& ctx = {});

/// Leading large-x coefficient, carried outward through the nesting.
Real root_amplitude(const RootApproximant& r);

Real root_evaluate(const RootApproximant& r, const Real& x);

/// Taylor coefficients 0..order of each comparator, for re-expansion checks.
std::vector<Real> taylor(const PadeApproximant& p, int order);
std::vector<Complex> taylor(const FactorApproximant& f, int order);
std::vector<Real> taylor(const RootApproximant& r, int order);

/// Taylor coefficients of a^p for a series with a_0 > 0.
std::vector<Real> series_power(const std::vector<Real>& a, const Real& p, int order);
std::vector<Complex> series_power(const std::vector<Complex>& a, const Complex& p, int order);

}  // namespace selfsim
