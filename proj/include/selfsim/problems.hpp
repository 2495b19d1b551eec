#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selfsim/additive.hpp"
#include "selfsim/series.hpp"

namespace selfsim {

/// c_n = (-1)^n Gamma(2n + 1/2) / (sqrt(pi) n!), n = 0..k, via log-gamma.
SmallSeries partition_coeffs(int k);

/// (1/sqrt(pi)) int exp(-z^2 - g z^4) dz over the real line, to relative 1e-10.
double partition_exact(double g);

/// beta_n = -(2n - 1)/4, spacing 1/2, with the strong-coupling amplitudes.
PowerLadder partition_ladder(int count = 24);

/// Exact ground-state perturbation coefficients of H = p^2/2 + x^2/2 + g x^4,
/// as "num/den" strings (c_0 = 1/2, c_1 = 3/4, ...).
std::vector<std::string> oscillator_coeffs_exact(int k);

/// oscillator_coeffs_exact rounded to the working precision.
SmallSeries oscillator_coeffs(int k);

/// beta_n = 1 - 2n/3 + 2/3 (beta_1 = 1/3), spacing 2/3, with b_1..b_6.
PowerLadder oscillator_ladder(int count = 24);

/// Small data e(0) = -pi^2/360, e'(0) = 0.00845.
SmallSeries electron_series();

/// beta_n = -(n+1)/2, spacing 1/2, with b_1, b_2.
PowerLadder electron_ladder(int count = 24);

/// Large-variable matches b_1 at beta_1 and b_2 at beta_2.
std::vector<LargeCondition> electron_large_conditions();

/// One published value from the shipped reference tables.
struct ReferenceRow {
    std::string method;  // additive, pade, pade-modified, factor, root
    int k = 0;
    int q = 0;
    std::optional<Strategy> strategy;
    std::optional<double> B;
    double B_tolerance = 1e-4;
    std::optional<double> error_percent;
    double error_band = 0.5;
    std::optional<int> n_solutions;
    std::optional<int> n_real;
    std::vector<double> components;
    /// Accepted only when the solver's solution count matches n_solutions.
    bool conditional = false;
    std::optional<std::string> expected_status;
    std::string source;
};

struct ReferenceParameters {
    int k = 0;
    int q = 0;
    double lambda = 0;
    std::vector<double> amplitudes;
    double B = 0;
    std::string source;
};

struct ReferenceTable {
    double exact_amplitude = 0;
    std::vector<ReferenceRow> rows;
    std::vector<ReferenceParameters> parameters;

    const ReferenceRow* find(std::string_view method, int k, int q, std::optional<Strategy> strategy) const;
    const ReferenceParameters* find_parameters(int k, int q) const;
};

/// Version field of the shipped tables.
int reference_tables_version();

/// A named benchmark: series generator, ladder, exact amplitude and the
/// published values it is checked against.
struct BenchmarkProblem {
    std::string name;
    std::function<SmallSeries(int)> series;
    /// Largest order the generator supports (electron: fixed small data).
    int max_order = 0;
    std::function<PowerLadder(int)> ladder;
    /// Large-variable matches that replace high small orders (electron gas).
    std::function<std::vector<LargeCondition>()> large_matches;
    /// Exact strong-coupling amplitude b_1 at the working precision.
    std::function<Real()> exact_amplitude;
    std::optional<std::function<double(double)>> oracle;
    ReferenceTable reference;
};

/// Throws Error(invalid_argument) for an unknown name.
const BenchmarkProblem& benchmark(std::string_view name);

std::vector<std::string> benchmark_names();

}  // namespace selfsim
