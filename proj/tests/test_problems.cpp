#include <cmath>
#include <thread>

#include "doctest.h"
#include "selfsim/errors.hpp"
#include "selfsim/problems.hpp"
#include "test_util.hpp"

using namespace selfsim;

TEST_SUITE("problems") {

TEST_CASE("partition coefficients match exact factorials") {
    PrecisionScope s(60);
    const auto c = partition_coeffs(40);
    const auto e = testutil::partition_exact_series(40);
    REQUIRE(c.order() == 40);
    for (int n = 0; n <= 40; ++n) CHECK(testutil::close(c[static_cast<std::size_t>(n)] / e[static_cast<std::size_t>(n)], Real(1), 50));
    CHECK(testutil::close(c[1], Real(-3) / Real(4), 55));
    CHECK(testutil::close(c[2], Real(105) / Real(32), 55));
    CHECK_THROWS_AS(partition_coeffs(-1), Error);
}

TEST_CASE("partition integral against its expansions") {
    CHECK(partition_exact(0.0) == doctest::Approx(1.0).epsilon(1e-13));
    {
        // alternating Stieltjes series: the truncation error is below the next term
        PrecisionScope s(30);
        const double g = 0.01;
        const auto c = partition_coeffs(6);
        double sum = 0;
        for (int n = 0; n <= 5; ++n) sum += c[static_cast<std::size_t>(n)].to_double() * std::pow(g, n);
        CHECK(std::abs(partition_exact(g) - sum) <= std::abs(c[6].to_double()) * std::pow(g, 6));
    }
    {
        PrecisionScope s(30);
        const auto ladder = partition_ladder(4);
        const double g = 1e4;
        double sum = 0;
        for (std::size_t m = 0; m < 4; ++m)
            sum += (*ladder.amplitudes())[m].to_double() * std::pow(g, ladder[m].to_double());
        CHECK(testutil::rel(partition_exact(g), sum) < 1e-9);
    }
    CHECK(partition_exact(1.0) < 1.0);
    CHECK_THROWS_AS(partition_exact(-1.0), Error);
    CHECK_THROWS_AS(partition_exact(std::nan("")), Error);
}

TEST_CASE("partition ladder") {
    PrecisionScope s(60);
    const auto l = partition_ladder();
    CHECK(l.size() == 24);
    CHECK(testutil::close(l[0], Real(-1) / Real(4), 55));
    CHECK(testutil::close(*l.spacing(), Real(1) / Real(2), 55));
    const auto& b = *l.amplitudes();
    CHECK(b[0].to_double() == doctest::Approx(1.022765).epsilon(1e-6));
    CHECK(b[1] < Real(0));
    CHECK(testutil::close(b[0], benchmark("partition").exact_amplitude(), 50));
}

TEST_CASE("oscillator coefficients are exact rationals") {
    const std::vector<std::string> known{"1/2", "3/4", "-21/8", "333/16", "-30885/128", "916731/256", "-65518401/1024"};
    const auto c = oscillator_coeffs_exact(6);
    REQUIRE(c.size() == known.size());
    for (std::size_t i = 0; i < known.size(); ++i) CHECK(c[i] == known[i]);
    PrecisionScope s(60);
    const auto r = oscillator_coeffs(30);
    for (int n = 1; n <= 30; ++n) CHECK((r[static_cast<std::size_t>(n)] > Real(0)) == (n % 2 == 1));
    CHECK(testutil::close(r[4], Real(-30885) / Real(128), 55));
}

TEST_CASE("oscillator cache is safe under concurrent reads") {
    std::vector<std::vector<std::string>> seen(8);
    std::vector<std::thread> pool;
    for (int t = 0; t < 8; ++t) pool.emplace_back([&, t] { seen[static_cast<std::size_t>(t)] = oscillator_coeffs_exact(20 + t); });
    for (auto& th : pool) th.join();
    for (int t = 1; t < 8; ++t)
        for (std::size_t i = 0; i <= 20; ++i) CHECK(seen[static_cast<std::size_t>(t)][i] == seen[0][i]);
}

TEST_CASE("oscillator and electron ladders") {
    PrecisionScope s(60);
    const auto o = oscillator_ladder();
    CHECK(testutil::close(o[0], Real(1) / Real(3), 55));
    CHECK(testutil::close(o[1], Real(-1) / Real(3), 55));
    CHECK(o.amplitudes()->size() == 6);
    CHECK((*o.amplitudes())[0] == Real("0.667986"));

    const auto e = electron_ladder();
    CHECK(testutil::close(e[0], Real(-1), 55));
    CHECK(testutil::close(e[1], Real(-3) / Real(2), 55));
    CHECK((*e.amplitudes())[0].to_double() == doctest::Approx(-0.168939).epsilon(1e-5));
    const auto series = electron_series();
    CHECK(series[0].to_double() == doctest::Approx(-M_PI * M_PI / 360).epsilon(1e-12));
    CHECK(series[1] == Real("0.00845"));
    const auto large = electron_large_conditions();
    REQUIRE(large.size() == 2);
    CHECK(large[1].value == Real("0.359933"));
}

TEST_CASE("benchmark registry and reference tables") {
    const auto names = benchmark_names();
    CHECK(names == std::vector<std::string>{"electron", "oscillator", "partition"});
    CHECK_THROWS_AS(benchmark("nope"), Error);
    CHECK(reference_tables_version() >= 1);
    for (const auto& name : names) {
        const auto& p = benchmark(name);
        CHECK_FALSE(p.reference.rows.empty());
        for (const auto& r : p.reference.rows) CHECK_FALSE(r.source.empty());
    }
    const auto& part = benchmark("partition").reference;
    const auto* row = part.find("additive", 3, 0, Strategy::real_only);
    REQUIRE(row != nullptr);
    CHECK(*row->B == doctest::Approx(0.908858));
    CHECK(part.find("additive", 3, 0, Strategy::average_all)->B.value() == doctest::Approx(0.915248));
    CHECK(part.find("additive", 99, 0, std::nullopt) == nullptr);
    CHECK(part.find_parameters(3, 0)->amplitudes.size() == 3);
    CHECK(benchmark("oscillator").reference.find("additive", 4, 2, std::nullopt)->conditional);
    CHECK(benchmark("electron").reference.find("pade", 3, 0, std::nullopt)->expected_status == "power-incompatible");
    // published exact amplitudes agree with the computed ones
    PrecisionScope s(30);
    for (const auto& name : names) {
        const auto& p = benchmark(name);
        CHECK(testutil::rel(p.exact_amplitude().to_double(), p.reference.exact_amplitude) < 1e-5);
    }
}

}  // TEST_SUITE
