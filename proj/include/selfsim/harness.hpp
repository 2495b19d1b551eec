#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selfsim/additive.hpp"

namespace selfsim {

enum class Method { additive, pade, pade_modified, factor, root };

std::string_view to_string(Method m) noexcept;
/// Throws Error(config) for an unknown name.
Method parse_method(std::string_view name);

enum class OutputFormat { csv, json };

/// A user-supplied problem: small-variable coefficients, ladder powers and
/// optional ladder amplitudes. When amplitudes are given they are matched
/// at large x and the small orders fill the remaining conditions.
struct CustomProblem {
    std::string name = "custom";
    std::vector<std::string> a_coeffs;
    std::vector<std::string> beta_powers;
    std::vector<std::string> large_amplitudes;
};

struct RunConfig {
    std::string problem;
    std::optional<CustomProblem> custom;
    /// Empty: every published cell of the problem.
    std::vector<int> orders;
    /// nullopt: all admissible counter-terms.
    std::optional<int> q;
    /// nullopt: the published strategy of each cell, real-only otherwise.
    std::optional<Strategy> strategy;
    int digits = 60;
    /// Empty: the command's default (additive; every method for compare).
    std::vector<Method> methods;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> out;
    /// Relative tolerance on amplitudes compared with published values.
    double tolerance = 1e-4;
    int significant = 6;
};

/// "A:B:STEP" or "A:B" (step 1). Throws Error(config).
std::vector<int> parse_order_range(std::string_view text);

/// Decimal or "p/q" rational text at the working precision. Throws Error(config).
Real parse_real(std::string_view text);

/// Parses a JSON config; field errors name the offending field.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

struct ResultRow {
    std::string problem;
    std::string method;
    int k = 0;
    std::optional<int> q;
    std::optional<std::string> strategy;
    std::optional<double> B;
    std::optional<double> paper_B;
    std::optional<double> percent_error;
    std::optional<double> paper_error;
    std::optional<int> n_solutions;
    std::optional<int> n_real;
    /// ok, mismatch, count-mismatch or an error kind such as complex-solutions.
    std::string status = "ok";
    /// Set when the row disagrees with a published value.
    bool failed = false;
    std::string message;
    std::optional<double> lambda;
    std::vector<double> amplitudes;
};

struct RunResult {
    std::vector<ResultRow> rows;

    int exit_code() const noexcept;
    std::vector<const ResultRow*> failures() const;
};

/// Additive approximants, checked against the published tables.
RunResult run_reproduce(const RunConfig& config);

/// Every configured method per order; method failures become status rows.
RunResult run_compare(const RunConfig& config);

/// Runs `config.methods` on the inline problem or the named benchmark.
RunResult run_custom(const RunConfig& config);

std::string format_csv(const RunResult& result, int significant = 6);
std::string format_json(const RunResult& result, int significant = 6);

}  // namespace selfsim
