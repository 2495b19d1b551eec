#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "selfsim/complex.hpp"
#include "selfsim/numeric.hpp"
#include "selfsim/series.hpp"

namespace selfsim {

/// sum_i A_i (1 + lambda x)^{beta_i} + sum_j C_j (1 + lambda x)^{gamma_j}.
///
/// Real-valued solutions have lambda > 0. Members of a complex-conjugate
/// solution pair carry complex lambda and amplitudes; powers of complex
/// arguments use the principal branch.
struct AdditiveApproximant {
    Complex lambda;
    std::vector<GeneralizedTerm> main_terms;
    std::vector<GeneralizedTerm> counter_terms;

    std::vector<GeneralizedTerm> all_terms() const;
    bool is_real() const;
};

struct SmallCondition {
    int order;
    Real value;
};

struct LargeCondition {
    Real power;
    Real value;
};

/// Equations that fix an approximant: Taylor matching at small x, amplitude
/// matching at large x, and cancellation of spurious large-x powers.
struct ConditionSet {
    std::vector<Real> main_powers;     // beta_1..beta_k
    std::vector<Real> counter_powers;  // gamma_1..gamma_q, each cancelled below
    std::vector<SmallCondition> small_orders;
    std::vector<LargeCondition> large_amplitudes;
    std::vector<Real> cancellations;

    std::size_t unknown_count() const noexcept { return main_powers.size() + counter_powers.size() + 1; }
    std::size_t condition_count() const noexcept {
        return small_orders.size() + large_amplitudes.size() + cancellations.size();
    }
};

enum class SolutionKind { real, conjugate_pair, unpaired };

struct SolutionTag {
    SolutionKind kind = SolutionKind::real;
    std::optional<std::size_t> partner;
};

struct SolutionSet {
    std::vector<AdditiveApproximant> solutions;
    std::vector<SolutionTag> tags;
    /// Roots of the elimination polynomial, before admissibility filtering.
    std::size_t candidate_count = 0;
    std::size_t rejected_count = 0;

    std::size_t size() const noexcept { return solutions.size(); }
    std::size_t real_count() const noexcept;
};

enum class Strategy { real_only, average_all };

std::string_view to_string(Strategy s) noexcept;

struct AmplitudeReport {
    int k = 0;
    int q = 0;
    Strategy strategy = Strategy::real_only;
    Real amplitude;
    std::optional<Real> percent_error;
    std::size_t n_solutions = 0;
    std::size_t n_real = 0;
};

/// gamma_j = beta_j - 1 with beta_{k+1} < gamma_j < beta_1, descending; empty
/// when the ladder is closed under beta -> beta - 1. Needs k+1 ladder powers.
std::vector<Real> counterterm_powers(const PowerLadder& ladder, int k);

/// Builds the k+q+1 conditions for an order-k approximant with q counter-terms
/// (q = nullopt takes every admissible counter-term). Without large matches
/// the small orders are 0..k; with them the small orders fill the remaining
/// count from 0 upward.
ConditionSet assemble_conditions(const SmallSeries& series, const PowerLadder& ladder, int k, std::optional<int> q,
                                 std::span<const LargeCondition> large_matches = {});

/// Every admissible solution of the conditions.
///
/// Each condition is linear in the amplitudes once lambda is fixed. Writing
/// mu = 1/lambda, a small-order row reads sum_t A_t binom(p_t, n) = a_n mu^n,
/// a large-amplitude row sum_t A_t binom(p_t, m_t) = b mu^beta and a
/// cancellation row has a zero right-hand side. The system has one more row
/// than unknown amplitudes, so it is solvable exactly where the augmented
/// determinant vanishes: a polynomial in nu = mu^(1/D), D the common
/// denominator of the right-hand-side exponents. Its roots on the principal
/// branch give lambda; the amplitudes follow from a linear solve.
SolutionSet solve(const ConditionSet& conditions, const PrecisionContext& ctx);

/// Largest relative residual of `approx` against `conditions`.
Real condition_residual(const AdditiveApproximant& approx, const ConditionSet& conditions);

/// Large-variable amplitude A_1 lambda^{beta_1}.
Complex amplitude(const AdditiveApproximant& approx);

/// Collapses a solution set to one amplitude. real_only averages the real
/// solutions; average_all averages the real solutions together with the
/// averages of each conjugate pair (one entry per pair).
AmplitudeReport strategy_amplitude(const SolutionSet& set, Strategy strategy, std::optional<Real> reference = std::nullopt,
                                   int k = 0, int q = 0);

/// sum_t A_t (1 + lambda x)^{p_t}.
Complex evaluate_complex(const AdditiveApproximant& approx, const Real& x);

/// Real value at x >= 0. For a member of a conjugate pair this is the pair
/// average (the real part). Throws Error(domain) for x < 0.
Real evaluate(const AdditiveApproximant& approx, const Real& x);

}  // namespace selfsim
