#pragma once

#include <optional>
#include <span>
#include <vector>

#include "selfsim/complex.hpp"
#include "selfsim/real.hpp"

namespace selfsim {

/// Absolute tolerance under which two exponents count as the same power.
inline constexpr double kPowerTolerance = 1e-9;

bool same_power(const Real& a, const Real& b);

/// Truncated small-variable expansion a_0 + a_1 x + ... + a_k x^k.
class SmallSeries {
public:
    SmallSeries() = default;
    /// Throws Error(invalid_argument) on an empty list or non-finite entries.
    explicit SmallSeries(std::vector<Real> coeffs);

    const std::vector<Real>& coeffs() const noexcept { return coeffs_; }
    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const Real& operator[](std::size_t n) const { return coeffs_.at(n); }

    SmallSeries truncated(int order) const;
    Real operator()(const Real& x) const;

    /// The same expansion written in t = x^(1/s): a_n x^n = a_n t^(s n).
    SmallSeries in_root_variable(int s) const;

private:
    std::vector<Real> coeffs_;
};

/// Descending large-variable exponents beta_1 > beta_2 > ..., with optional
/// known amplitudes b_n and an optional constant spacing.
class PowerLadder {
public:
    PowerLadder() = default;
    /// Validates strict descent, amplitude count and (if given) spacing.
    PowerLadder(std::vector<Real> powers, std::optional<std::vector<Real>> amplitudes = std::nullopt,
                std::optional<Real> spacing = std::nullopt);

    /// beta_n = first - (n-1) * spacing for n = 1..count.
    static PowerLadder uniform(const Real& first, const Real& spacing, int count,
                               std::optional<std::vector<Real>> amplitudes = std::nullopt);

    const std::vector<Real>& powers() const noexcept { return powers_; }
    const std::optional<std::vector<Real>>& amplitudes() const noexcept { return amplitudes_; }
    const std::optional<Real>& spacing() const noexcept { return spacing_; }
    std::size_t size() const noexcept { return powers_.size(); }
    const Real& operator[](std::size_t n) const { return powers_.at(n); }

    /// Same ladder cut to its first `count` entries.
    PowerLadder truncated(std::size_t count) const;

private:
    std::vector<Real> powers_;
    std::optional<std::vector<Real>> amplitudes_;
    std::optional<Real> spacing_;
};

/// One summand A (1 + lambda x)^power.
struct GeneralizedTerm {
    Real power;
    Complex amplitude;
};

/// One summand coeff * x^power of a large-variable expansion.
struct LargeTerm {
    Real power;
    Complex coeff;
};

/// Generalized binomial coefficient beta (beta-1) ... (beta-n+1) / n!.
Real binom(const Real& beta, int n);

/// Taylor coefficients of sum_t A_t (1 + lambda x)^{p_t} for orders 0..order.
std::vector<Complex> small_expand(std::span<const GeneralizedTerm> terms, const Complex& lambda, int order);

/// Large-x expansion of sum_t A_t (1 + lambda x)^{p_t}: each term contributes
/// A_t lambda^{p_t - m} binom(p_t, m) x^{p_t - m} for m = 0..depth. Equal
/// powers are merged; output is sorted by descending power. Throws
/// Error(domain) if lambda is zero or real and negative.
std::vector<LargeTerm> large_expand(std::span<const GeneralizedTerm> terms, const Complex& lambda, int depth);

/// Merged coefficient at `power` in a large_expand result (zero if absent).
Complex coefficient_at(std::span<const LargeTerm> expansion, const Real& power);

/// True when beta_i - 1 is again a ladder power for every beta_i whose shift
/// stays inside the listed range. With a known spacing this is 1/spacing
/// being an integer.
bool invariance_check(const PowerLadder& ladder);

}  // namespace selfsim
