#include "doctest.h"
#include "selfsim/additive.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/problems.hpp"
#include "test_util.hpp"

using namespace selfsim;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::invalid_argument;
}

}  // namespace

TEST_SUITE("additive") {

TEST_CASE("first order has the closed form lambda = a_1 / (beta_1 a_0)") {
    PrecisionScope s(60);
    const Real a0("1.7"), a1("-0.9"), beta = Real(-1) / Real(3);
    const auto ladder = PowerLadder::uniform(beta, Real(1), 3);
    const auto cs = assemble_conditions(SmallSeries({a0, a1}), ladder, 1, 0);
    const auto set = solve(cs, PrecisionContext{});
    REQUIRE(set.size() == 1);
    const Real lambda = a1 / (beta * a0);
    CHECK(testutil::close(set.solutions[0].lambda.re, lambda, 55));
    CHECK(testutil::close(set.solutions[0].main_terms[0].amplitude.re, a0, 55));
    CHECK(testutil::close(amplitude(set.solutions[0]).re, a0 * pow(lambda, beta), 55));
}

TEST_CASE("counter-term powers") {
    PrecisionScope s(60);
    const auto osc = oscillator_ladder();
    CHECK(counterterm_powers(osc, 1).empty());
    const auto g2 = counterterm_powers(osc, 2);
    REQUIRE(g2.size() == 1);
    CHECK(testutil::close(g2[0], Real(-2) / Real(3), 55));
    CHECK(counterterm_powers(osc, 3).size() == 2);
    CHECK(counterterm_powers(partition_ladder(), 9).empty());
}

TEST_CASE("condition assembly rejects unbalanced or degenerate input") {
    PrecisionScope s(60);
    const auto osc = oscillator_ladder();
    const auto series = oscillator_coeffs(10);
    CHECK(kind_of([&] { assemble_conditions(series, osc, 2, 3); }) == ErrorKind::condition_count);
    CHECK(kind_of([&] { assemble_conditions(series.truncated(2), osc, 3, 0); }) == ErrorKind::condition_count);
    CHECK(kind_of([&] { assemble_conditions(SmallSeries({Real(0), Real(1), Real(2)}), partition_ladder(), 2, 0); }) ==
          ErrorKind::domain);
    const std::vector<LargeCondition> off_ladder{{Real("-0.3"), Real(1)}};
    CHECK(kind_of([&] { assemble_conditions(series, partition_ladder(), 2, 0, off_ladder); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([&] { assemble_conditions(series, osc, 0, 0); }) == ErrorKind::invalid_argument);

    const auto cs = assemble_conditions(series, osc, 3, 1);
    CHECK(cs.unknown_count() == cs.condition_count());
    CHECK(cs.small_orders.size() == 4);
    CHECK(cs.cancellations.size() == 1);
}

TEST_CASE("every solution reproduces the series and its conditions") {
    PrecisionScope s(60);
    const auto ctx = PrecisionContext{};
    const auto series = partition_coeffs(8);
    for (int k = 2; k <= 6; ++k) {
        const auto cs = assemble_conditions(series, partition_ladder(), k, 0);
        const auto set = solve(cs, ctx);
        CHECK(set.size() == static_cast<std::size_t>(k));
        for (const auto& sol : set.solutions) {
            CHECK(condition_residual(sol, cs) < ten_to_minus(52));
            const auto terms = sol.all_terms();
            const auto c = small_expand(terms, sol.lambda, k);
            for (int n = 0; n <= k; ++n)
                CHECK(abs(c[static_cast<std::size_t>(n)] - Complex(series[static_cast<std::size_t>(n)])) <
                      ten_to_minus(52) * abs(series[static_cast<std::size_t>(n)]));
        }
    }
}

TEST_CASE("average-all weights each conjugate pair once") {
    PrecisionScope s(60);
    const auto cs = assemble_conditions(partition_coeffs(5), partition_ladder(), 5, 0);
    const auto set = solve(cs, PrecisionContext{});
    REQUIRE(set.size() == 5);
    REQUIRE(set.real_count() == 1);
    Real real_b, pair_sum;
    int pairs = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const Complex b = amplitude(set.solutions[i]);
        if (set.tags[i].kind == SolutionKind::real) {
            real_b = b.re;
        } else {
            REQUIRE(set.tags[i].kind == SolutionKind::conjugate_pair);
            pair_sum += b.re;  // each member carries half of its pair's sum
            ++pairs;
        }
    }
    CHECK(pairs == 4);
    const Real expected = (real_b + pair_sum / Real(2)) / Real(3);
    const auto avg = strategy_amplitude(set, Strategy::average_all);
    CHECK(testutil::close(avg.amplitude, expected, 50));
    const auto real = strategy_amplitude(set, Strategy::real_only, Real("1.022765"), 5, 0);
    CHECK(testutil::close(real.amplitude, real_b, 55));
    REQUIRE(real.percent_error);
    CHECK(std::abs(real.percent_error->to_double() - 5.5996) < 1e-3);
}

TEST_CASE("real-only strategy without real solutions") {
    PrecisionScope s(60);
    const auto cs = assemble_conditions(partition_coeffs(4), partition_ladder(), 4, 0);
    const auto set = solve(cs, PrecisionContext{});
    CHECK(set.real_count() == 0);
    CHECK(kind_of([&] { strategy_amplitude(set, Strategy::real_only); }) == ErrorKind::empty_strategy);
}

TEST_CASE("evaluation") {
    PrecisionScope s(60);
    const auto cs = assemble_conditions(partition_coeffs(3), partition_ladder(), 3, 0);
    const auto set = solve(cs, PrecisionContext{});
    for (const auto& sol : set.solutions) {
        CHECK(testutil::close(evaluate(sol, Real(0)), Real(1), 52));
        CHECK(kind_of([&] { evaluate(sol, Real(-1)); }) == ErrorKind::domain);
    }
    CHECK(to_string(Strategy::real_only) == "real");
    CHECK(to_string(Strategy::average_all) == "average");
}

TEST_CASE("mixed small and large conditions for the electron gas") {
    PrecisionScope s(60);
    const auto large = electron_large_conditions();
    const auto cs = assemble_conditions(electron_series(), electron_ladder(), 3, std::nullopt, large);
    CHECK(cs.small_orders.size() == 2);
    CHECK(cs.large_amplitudes.size() == 2);
    const auto set = solve(cs, PrecisionContext{});
    CHECK(set.size() == 3);
    REQUIRE(set.real_count() == 1);
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set.tags[i].kind != SolutionKind::real) continue;
        const auto& sol = set.solutions[i];
        const Real lambda = sol.lambda.re;
        const Real A1 = sol.main_terms[0].amplitude.re, A2 = sol.main_terms[1].amplitude.re, A3 = sol.main_terms[2].amplitude.re;
        CHECK(testutil::close(A1 / lambda, large[0].value, 50));
        CHECK(testutil::close(A2 * pow(lambda, Real(-3) / Real(2)), large[1].value, 50));
        CHECK(testutil::close(A1 + A2 + A3, -pi() * pi() / Real(360), 50));
    }
}

}  // TEST_SUITE
