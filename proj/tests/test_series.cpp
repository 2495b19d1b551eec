#include "doctest.h"
#include "selfsim/errors.hpp"
#include "selfsim/series.hpp"
#include "test_util.hpp"

using namespace selfsim;

TEST_SUITE("series") {

TEST_CASE("binomial coefficients") {
    PrecisionScope s(60);
    CHECK(binom(Real(-1) / Real(4), 0) == Real(1));
    CHECK(testutil::close(binom(Real(1) / Real(3), 1), Real(1) / Real(3), 58));
    CHECK(testutil::close(binom(Real(-1) / Real(4), 2), Real(5) / Real(32), 58));
    // integer exponent: ordinary binomial, vanishing past the exponent
    CHECK(testutil::close(binom(Real(6), 3), Real(20), 58));
    CHECK(binom(Real(3), 5).is_zero());
    CHECK_THROWS_AS(binom(Real(1), -1), Error);
}

TEST_CASE("small_expand of a single term") {
    PrecisionScope s(60);
    const std::vector<GeneralizedTerm> terms{{Real(-1) / Real(4), Complex(1)}};
    const auto c = small_expand(terms, Complex(4), 1);
    CHECK(testutil::close(c[0].re, Real(1), 58));
    CHECK(testutil::close(c[1].re, Real(-1), 58));
}

TEST_CASE("small_expand against central finite differences") {
    PrecisionScope s(60);
    const std::vector<GeneralizedTerm> terms{{Real(1) / Real(3), Complex(Real("0.7"))}, {Real(-1) / Real(3), Complex(Real("-0.2"))},
                                             {Real(-1), Complex(Real("0.05"))}};
    const Real lambda("2.5");
    auto f = [&](const Real& x) {
        Real acc;
        for (const auto& t : terms) acc += t.amplitude.re * pow(Real(1) + lambda * x, t.power);
        return acc;
    };
    const auto c = small_expand(terms, Complex(lambda), 2);
    const Real h = ten_to_minus(15);
    const Real d1 = (f(h) - f(-h)) / (Real(2) * h);
    const Real d2 = (f(h) - Real(2) * f(Real(0)) + f(-h)) / (h * h) / Real(2);
    CHECK(testutil::close(c[0].re, f(Real(0)), 55));
    CHECK(testutil::close(c[1].re, d1, 25));
    CHECK(testutil::close(c[2].re, d2, 20));
}

TEST_CASE("large_expand merges powers and orders them") {
    PrecisionScope s(60);
    // (1 + 4x)^{1/2} = 2 x^{1/2} + (1/4) x^{-1/2} - (1/64) x^{-3/2} + ...
    const std::vector<GeneralizedTerm> terms{{Real(1) / Real(2), Complex(1)}};
    const auto e = large_expand(terms, Complex(4), 2);
    REQUIRE(e.size() == 3);
    CHECK(testutil::close(e[0].coeff.re, Real(2), 55));
    CHECK(testutil::close(e[1].coeff.re, Real(1) / Real(4), 55));
    CHECK(testutil::close(e[2].coeff.re, Real(-1) / Real(64), 55));
    CHECK(e[0].power > e[1].power);

    // x^{-1} from two terms with powers 0 and -1 (shift of the first)
    const std::vector<GeneralizedTerm> two{{Real(0), Complex(3)}, {Real(-1), Complex(2)}};
    const auto m = large_expand(two, Complex(2), 1);
    CHECK(testutil::close(coefficient_at(m, Real(-1)).re, Real(1), 55));
    CHECK(coefficient_at(m, Real(7)).is_zero());
}

TEST_CASE("large_expand truncation is bounded by the first omitted term") {
    PrecisionScope s(60);
    const Real p = Real(-1) / Real(4);
    const Real lambda("7.5");
    const std::vector<GeneralizedTerm> terms{{p, Complex(Real("1.3"))}};
    for (int depth = 0; depth < 4; ++depth) {
        const auto e = large_expand(terms, Complex(lambda), depth);
        for (double xd : {10.0 / 7.5, 100.0 / 7.5, 1e4}) {
            const Real x(xd);
            Real sum;
            for (const auto& t : e) sum += t.coeff.re * pow(x, t.power);
            const Real exact = Real("1.3") * pow(Real(1) + lambda * x, p);
            const Real next = abs(Real("1.3") * binom(p, depth + 1) * pow(lambda, p - Real(depth + 1)) * pow(x, p - Real(depth + 1)));
            CHECK(abs(exact - sum) <= Real(10) * next);
        }
    }
}

TEST_CASE("large_expand needs lambda off the negative real axis") {
    PrecisionScope s(60);
    const std::vector<GeneralizedTerm> terms{{Real(1) / Real(2), Complex(1)}};
    CHECK_THROWS_AS(large_expand(terms, Complex(-1), 1), Error);
    CHECK_THROWS_AS(large_expand(terms, Complex(0), 1), Error);
    CHECK_NOTHROW(large_expand(terms, Complex(Real(-1), Real(1)), 1));
}

TEST_CASE("series and ladder validation") {
    PrecisionScope s(60);
    CHECK_THROWS_AS(SmallSeries(std::vector<Real>{}), Error);
    const Real nan(std::nan(""));
    CHECK_THROWS_AS(SmallSeries({Real(1), nan}), Error);
    CHECK_THROWS_AS(PowerLadder({Real(-1), Real(0)}), Error);
    CHECK_THROWS_AS(PowerLadder({Real(0), Real(-1), Real(-3)}, std::nullopt, Real(1)), Error);
    CHECK_THROWS_AS(PowerLadder({Real(0)}, std::vector<Real>{Real(1), Real(2)}), Error);
    const auto l = PowerLadder::uniform(Real(-1) / Real(4), Real(1) / Real(2), 5);
    CHECK(l.size() == 5);
    CHECK(testutil::close(l[4], Real(-9) / Real(4), 58));
    CHECK(l.truncated(2).size() == 2);
}

TEST_CASE("ladder invariance") {
    PrecisionScope s(60);
    CHECK(invariance_check(PowerLadder::uniform(Real(-1) / Real(4), Real(1) / Real(2), 6)));
    CHECK_FALSE(invariance_check(PowerLadder::uniform(Real(1) / Real(3), Real(2) / Real(3), 6)));
    CHECK(invariance_check(PowerLadder::uniform(Real(1), Real(1), 4)));
    // no spacing given: explicit membership test
    CHECK(invariance_check(PowerLadder({Real(0), Real(-1), Real(-2)})));
    CHECK_FALSE(invariance_check(PowerLadder({Real(0), Real(-Real(3) / Real(4)), Real(-2)})));
}

TEST_CASE("series in a root variable") {
    PrecisionScope s(60);
    const SmallSeries a({Real(1), Real(2), Real(3)});
    const auto t = a.in_root_variable(2);
    REQUIRE(t.order() == 4);
    CHECK(t[2] == Real(2));
    CHECK(t[1].is_zero());
    CHECK(testutil::close(a(Real(2)), Real(17), 58));
    CHECK(a.truncated(1).order() == 1);
}

}  // TEST_SUITE
