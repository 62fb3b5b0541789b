#include "stepstat/stats/hypothesis.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

using Catch::Matchers::WithinAbs;
using stepstat::Error;
using stepstat::Sidedness;
using stepstat::TestVariant;

namespace {

std::vector<double> random_sample(std::mt19937& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

// (a, b) with n = 10 each, sample variance 1 for b and exactly 4x for a:
// a doubles b's deviations, and scaling by 2 is exact in floating point.
std::pair<std::vector<double>, std::vector<double>> sample_with_variance() {
    std::vector<double> b(10);
    double ss = 0.0;
    for (int i = 0; i < 10; ++i) ss += (i - 4.5) * (i - 4.5);
    const double s = std::sqrt(ss / 9.0);
    for (int i = 0; i < 10; ++i) b[i] = 10.0 + (i - 4.5) / s;
    std::vector<double> a(10);
    for (int i = 0; i < 10; ++i) a[i] = 20.0 + 2.0 * (b[i] - 10.0);
    return {a, b};
}

}  // namespace

TEST_CASE("t-test: equal means give t = 0, p = 1", "[stats][ttest]") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    const std::vector<double> b{2.0, 2.0, 2.0};
    const auto r = stepstat::t_test(a, b);
    REQUIRE(r.t_stat == 0.0);
    REQUIRE(r.p_value == 1.0);
    REQUIRE_FALSE(r.significant);
}

TEST_CASE("t-test: pooled fixture against the quadrature oracle", "[stats][ttest]") {
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b{2, 3, 4, 5, 6};
    const auto r = stepstat::t_test(a, b, TestVariant::pooled, Sidedness::two_sided, 0.05);
    REQUIRE(r.t_stat == -1.0);
    REQUIRE(r.dof == 8.0);
    // frozen from the quadrature oracle: 2 * (1 - T_8(1))
    REQUIRE_THAT(r.p_value, WithinAbs(0.346593507087, 1e-9));
    REQUIRE_THAT(r.p_value, WithinAbs(2.0 * (1.0 - oracle::student_cdf(1.0, 8.0)), 1e-9));
    REQUIRE_FALSE(r.significant);
}

TEST_CASE("t-test: swap antisymmetry of t, symmetry of p", "[stats][ttest]") {
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_sample(rng, 12, 10.0, 20.0);
        const auto b = random_sample(rng, 9, 12.0, 22.0);
        for (TestVariant variant : {TestVariant::pooled, TestVariant::welch}) {
            const auto ab = stepstat::t_test(a, b, variant);
            const auto ba = stepstat::t_test(b, a, variant);
            REQUIRE_THAT(ab.t_stat, WithinAbs(-ba.t_stat, 1e-12));
            REQUIRE_THAT(ab.p_value, WithinAbs(ba.p_value, 1e-12));
            REQUIRE_THAT(ab.dof, WithinAbs(ba.dof, 1e-9));
        }
    }
}

TEST_CASE("t-test: location and scale invariance", "[stats][ttest]") {
    std::mt19937 rng(777);
    const auto a = random_sample(rng, 15, 100.0, 120.0);
    const auto b = random_sample(rng, 15, 95.0, 125.0);
    const auto base = stepstat::t_test(a, b);

    for (double shift : {-250.0, 3.5, 1e4}) {
        std::vector<double> as = a, bs = b;
        for (double& x : as) x += shift;
        for (double& x : bs) x += shift;
        const auto r = stepstat::t_test(as, bs);
        REQUIRE_THAT(r.t_stat, WithinAbs(base.t_stat, 1e-9));
        REQUIRE_THAT(r.p_value, WithinAbs(base.p_value, 1e-12));
        REQUIRE(r.dof == base.dof);
    }
    for (double scale : {1e-3, 7.0, 1e6}) {
        std::vector<double> as = a, bs = b;
        for (double& x : as) x *= scale;
        for (double& x : bs) x *= scale;
        const auto r = stepstat::t_test(as, bs);
        REQUIRE_THAT(r.t_stat, WithinAbs(base.t_stat, 1e-9));
        REQUIRE_THAT(r.p_value, WithinAbs(base.p_value, 1e-12));
    }
}

TEST_CASE("t-test: welch dof lies between min(n)-1 and n1+n2-2", "[stats][ttest]") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_sample(rng, 8, 0.0, 1.0);
        const auto b = random_sample(rng, 20, 0.0, 50.0);
        const auto r = stepstat::t_test(a, b, TestVariant::welch);
        REQUIRE(r.dof >= 7.0 - 1e-9);
        REQUIRE(r.dof <= 26.0 + 1e-9);
    }
}

TEST_CASE("t-test: degenerate zero-variance rules", "[stats][ttest]") {
    const std::vector<double> flat2{2.0, 2.0, 2.0};

    SECTION("equal constant samples") {
        const auto r = stepstat::t_test(flat2, flat2);
        REQUIRE(r.t_stat == 0.0);
        REQUIRE(r.p_value == 1.0);
        REQUIRE_FALSE(r.perfect_separation);
    }
    SECTION("different constant samples separate perfectly") {
        const std::vector<double> flat3{3.0, 3.0, 3.0};
        const auto r = stepstat::t_test(flat3, flat2);
        REQUIRE(r.p_value == 0.0);
        REQUIRE(r.perfect_separation);
        REQUIRE(r.significant);
        REQUIRE(r.t_stat > 0.0);
    }
}

TEST_CASE("t-test: one-sided p-values partition the two-sided one", "[stats][ttest]") {
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b{2, 3, 4, 5, 6};
    const auto less = stepstat::t_test(a, b, TestVariant::pooled, Sidedness::less);
    const auto greater = stepstat::t_test(a, b, TestVariant::pooled, Sidedness::greater);
    REQUIRE_THAT(less.p_value + greater.p_value, WithinAbs(1.0, 1e-12));
    // t is negative, so the 'less' alternative is the supported one
    REQUIRE(less.p_value < greater.p_value);
}

TEST_CASE("t-test: paired variant detects a constant shift", "[stats][ttest]") {
    std::mt19937 rng(4242);
    auto a = random_sample(rng, 20, 100.0, 130.0);
    std::vector<double> b = a;
    for (double& x : b) x += 1.0;  // constant shift, tiny relative to spread
    const auto unpaired = stepstat::t_test(a, b, TestVariant::pooled);
    const auto paired = stepstat::t_test(a, b, TestVariant::paired);
    REQUIRE(paired.p_value < unpaired.p_value);
    REQUIRE(paired.dof == 19.0);
    REQUIRE(paired.p_value < 1e-12);  // step differences are essentially constant
    REQUIRE(paired.significant);
    REQUIRE_FALSE(unpaired.significant);

    REQUIRE_THROWS_AS(
        stepstat::t_test(a, std::vector<double>{1.0, 2.0}, TestVariant::paired), Error);
}

TEST_CASE("t-test rejects unusable inputs", "[stats][ttest]") {
    REQUIRE_THROWS_AS(stepstat::t_test(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
                      Error);
    REQUIRE_THROWS_AS(stepstat::t_test(std::vector<double>{1.0, 2.0}, std::vector<double>{}),
                      Error);
    REQUIRE_THROWS_AS(stepstat::t_test(std::vector<double>{1.0, 2.0},
                                       std::vector<double>{1.0, 2.0}, TestVariant::pooled,
                                       Sidedness::two_sided, 1.5),
                      Error);
}

TEST_CASE("F-test: permuted sample gives f = 1, p = 1", "[stats][ftest]") {
    const std::vector<double> a{3.0, 1.0, 4.0, 1.0, 5.0, 9.0};
    const std::vector<double> b{9.0, 5.0, 1.0, 4.0, 1.0, 3.0};
    const auto r = stepstat::f_test(a, b);
    REQUIRE(r.f_stat == 1.0);
    REQUIRE(r.p_value == 1.0);
    REQUIRE_FALSE(r.significant);
}

TEST_CASE("F-test: 4x variance fixture against the quadrature oracle", "[stats][ftest]") {
    // var(a) = 4, var(b) = 1, n = 10 each
    auto scaled = sample_with_variance();
    const auto r = stepstat::f_test(scaled.first, scaled.second);
    REQUIRE_THAT(r.f_stat, WithinAbs(4.0, 1e-12));
    REQUIRE(r.dof_num == 9.0);
    REQUIRE(r.dof_den == 9.0);
    // frozen from the quadrature oracle: 2 * (1 - F_{9,9}(4))
    REQUIRE_THAT(r.p_value, WithinAbs(0.051003260707, 1e-9));
    REQUIRE_FALSE(r.significant);  // sits just above alpha = 0.05
}

TEST_CASE("F-test: reciprocal orientation property", "[stats][ftest]") {
    std::mt19937 rng(314159);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_sample(rng, 10, 0.0, 10.0);
        const auto b = random_sample(rng, 14, 0.0, 30.0);
        const auto ab = stepstat::f_test(a, b);
        const auto ba = stepstat::f_test(b, a);
        REQUIRE_THAT(ab.f_stat * ba.f_stat, WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(ab.p_value, WithinAbs(ba.p_value, 1e-10));
    }
}

TEST_CASE("F-test: zero-variance handling", "[stats][ftest]") {
    const std::vector<double> flat{2.0, 2.0, 2.0, 2.0};
    const std::vector<double> noisy{1.0, 2.0, 3.0, 4.0};

    SECTION("both degenerate is an error") {
        REQUIRE_THROWS_AS(stepstat::f_test(flat, flat), Error);
        try {
            stepstat::f_test(flat, flat);
        } catch (const Error& e) {
            REQUIRE(e.kind() == stepstat::errc::degenerate_variance);
        }
    }
    SECTION("one degenerate side is flagged") {
        const auto r = stepstat::f_test(flat, noisy);
        REQUIRE(r.degenerate);
        REQUIRE(r.p_value == 0.0);
        REQUIRE(r.f_stat == 0.0);
        const auto r2 = stepstat::f_test(noisy, flat);
        REQUIRE(r2.degenerate);
        REQUIRE(std::isinf(r2.f_stat));
    }
}
