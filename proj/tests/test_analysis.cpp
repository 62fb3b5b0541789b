#include "stepstat/analysis/bandwidth_report.hpp"
#include "stepstat/analysis/compare.hpp"
#include "stepstat/analysis/scaling.hpp"
#include "stepstat/experiment/synthetic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

using Catch::Matchers::WithinAbs;
using stepstat::BandwidthRecord;
using stepstat::CompareOptions;
using stepstat::Error;
using stepstat::SyntheticSpec;
using stepstat::TimingSeries;
using stepstat::Verdict;

namespace {

TimingSeries synthetic_run(double effect, double cv, std::uint64_t seed, int steps = 37) {
    SyntheticSpec spec;
    spec.mean = 250.0;
    spec.cv = cv;
    spec.n_steps = steps;
    spec.warmup_steps = 2;
    spec.effect_fraction = effect;
    spec.seed = seed;
    return stepstat::generate_synthetic(spec);
}

}  // namespace

TEST_CASE("compare_runs: identical series are indistinguishable", "[analysis][compare]") {
    const auto series = synthetic_run(0.0, 0.10, 5);
    const auto verdict = stepstat::compare_runs(series, series);
    REQUIRE(verdict.speedup == 1.0);
    REQUIRE(verdict.mean_test.t_stat == 0.0);
    REQUIRE(verdict.mean_test.p_value == 1.0);
    REQUIRE(verdict.verdict == Verdict::indistinguishable);
    REQUIRE(verdict.window.first_step == 2);
    REQUIRE(verdict.window.length == 35);
}

TEST_CASE("compare_runs: constant series avoid the degenerate F refusal", "[analysis][compare]") {
    TimingSeries flat;
    flat.run_id = "flat";
    for (int i = 0; i < 37; ++i) flat.steps.push_back({static_cast<std::uint64_t>(i), 100.0});
    const auto verdict = stepstat::compare_runs(flat, flat);
    REQUIRE(verdict.verdict == Verdict::indistinguishable);
    REQUIRE(verdict.variance_test.degenerate);
    REQUIRE(verdict.variance_test.p_value == 1.0);
}

TEST_CASE("compare_runs: a 4% effect at low noise reads as faster", "[analysis][compare]") {
    const auto baseline = synthetic_run(0.0, 0.02, 11);
    const auto candidate = synthetic_run(0.04, 0.02, 12);
    const auto verdict = stepstat::compare_runs(baseline, candidate);
    REQUIRE(verdict.verdict == Verdict::faster);
    REQUIRE_THAT(verdict.speedup, WithinAbs(1.0 / 0.96, 0.02));
    REQUIRE(verdict.mean_test.significant);
    REQUIRE(verdict.baseline_summary.cv.has_value());
    REQUIRE(verdict.candidate_summary.cv.has_value());

    SECTION("swapping the arguments flips the verdict") {
        const auto swapped = stepstat::compare_runs(candidate, baseline);
        REQUIRE(swapped.verdict == Verdict::slower);
        REQUIRE_THAT(swapped.speedup, WithinAbs(0.96, 0.02));
    }
}

TEST_CASE("compare_runs: test size under the null is near alpha", "[analysis][compare]") {
    int indistinguishable = 0;
    const int trials = 200;
    for (int i = 0; i < trials; ++i) {
        const auto baseline = synthetic_run(0.0, 0.10, 1000 + 2 * i);
        const auto candidate = synthetic_run(0.0, 0.10, 1001 + 2 * i);
        const auto verdict = stepstat::compare_runs(baseline, candidate);
        if (verdict.verdict == Verdict::indistinguishable) ++indistinguishable;
    }
    const double rate = static_cast<double>(indistinguishable) / trials;
    REQUIRE(rate > 0.88);  // ~95% expected at alpha = 0.05
}

TEST_CASE("compare_runs: unit invariance", "[analysis][compare]") {
    const auto baseline = synthetic_run(0.0, 0.05, 3);
    const auto candidate = synthetic_run(0.02, 0.05, 4);
    const auto verdict = stepstat::compare_runs(baseline, candidate);

    for (double k : {1e-3, 60.0}) {
        TimingSeries b2 = baseline, c2 = candidate;
        for (auto& s : b2.steps) s.seconds *= k;
        for (auto& s : c2.steps) s.seconds *= k;
        const auto scaled = stepstat::compare_runs(b2, c2);
        REQUIRE_THAT(scaled.speedup, WithinAbs(verdict.speedup, 1e-12));
        REQUIRE_THAT(scaled.mean_test.p_value, WithinAbs(verdict.mean_test.p_value, 1e-12));
        REQUIRE_THAT(scaled.variance_test.p_value, WithinAbs(verdict.variance_test.p_value, 1e-10));
        REQUIRE(scaled.verdict == verdict.verdict);
    }
}

TEST_CASE("compare_runs: window and size failures", "[analysis][compare]") {
    SECTION("mismatched windows name the differing step") {
        auto baseline = synthetic_run(0.0, 0.05, 3);
        auto candidate = synthetic_run(0.0, 0.05, 4);
        // shift past the warmup cut so the sampled windows really differ
        for (auto& s : candidate.steps) s.index += 3;
        try {
            stepstat::compare_runs(baseline, candidate);
            FAIL("expected alignment error");
        } catch (const Error& e) {
            REQUIRE(e.kind() == stepstat::errc::alignment);
            REQUIRE(std::string(e.what()).find("step") != std::string::npos);
        }
    }
    SECTION("short series are insufficient") {
        const auto baseline = synthetic_run(0.0, 0.05, 3);
        const auto shorty = synthetic_run(0.0, 0.05, 4, 20);
        REQUIRE_THROWS_AS(stepstat::compare_runs(baseline, shorty), Error);
    }
    SECTION("paired variant sharpens a constant-ratio comparison") {
        const auto baseline = synthetic_run(0.0, 0.10, 21);
        auto candidate = baseline;
        candidate.run_id = "cand";
        for (auto& s : candidate.steps) s.seconds *= 0.99;
        CompareOptions paired;
        paired.variant = stepstat::TestVariant::paired;
        const auto unpaired_v = stepstat::compare_runs(baseline, candidate);
        const auto paired_v = stepstat::compare_runs(baseline, candidate, paired);
        REQUIRE(paired_v.mean_test.p_value <= unpaired_v.mean_test.p_value);
        REQUIRE(paired_v.verdict == Verdict::faster);
    }
}

TEST_CASE("scaling_analysis computes speedup, efficiency and the threshold flag",
          "[analysis][scaling]") {
    SECTION("the 10-node fixture meets the 0.70 threshold") {
        const std::vector<std::pair<double, double>> pts{{1.0, 100.0}, {10.0, 14.0}};
        const auto series = stepstat::scaling_analysis(pts);
        REQUIRE(series.points.size() == 2);
        REQUIRE(series.points[0].speedup == 1.0);
        REQUIRE(series.points[0].efficiency == 1.0);
        REQUIRE_THAT(series.points[1].speedup, WithinAbs(100.0 / 14.0, 1e-12));
        REQUIRE_THAT(series.points[1].efficiency, WithinAbs(0.7142857142857143, 1e-12));
        REQUIRE(series.max_n_meeting_threshold.has_value());
        REQUIRE(*series.max_n_meeting_threshold == 10.0);
    }
    SECTION("perfect doubling is ideal") {
        const std::vector<std::pair<double, double>> pts{{1.0, 100.0}, {2.0, 50.0}};
        const auto series = stepstat::scaling_analysis(pts);
        REQUIRE(series.points[1].speedup == 2.0);
        REQUIRE(series.points[1].efficiency == 1.0);
        REQUIRE(series.points[1].ideal_speedup == 2.0);
    }
    SECTION("baseline point always has S = E = 1") {
        const std::vector<std::pair<double, double>> pts{{2.0, 80.0}, {4.0, 50.0}, {8.0, 30.0}};
        const auto series = stepstat::scaling_analysis(pts, 4.0);
        REQUIRE(series.points[series.baseline_index].n == 4.0);
        REQUIRE(series.points[series.baseline_index].speedup == 1.0);
        REQUIRE(series.points[series.baseline_index].efficiency == 1.0);
    }
    SECTION("failure modes") {
        REQUIRE_THROWS_AS(
            stepstat::scaling_analysis(std::vector<std::pair<double, double>>{{1.0, 10.0}}), Error);
        REQUIRE_THROWS_AS(stepstat::scaling_analysis(
                              std::vector<std::pair<double, double>>{{1.0, 10.0}, {1.0, 9.0}}),
                          Error);
        REQUIRE_THROWS_AS(stepstat::scaling_analysis(
                              std::vector<std::pair<double, double>>{{1.0, 10.0}, {2.0, -4.0}}),
                          Error);
        REQUIRE_THROWS_AS(
            stepstat::scaling_analysis(
                std::vector<std::pair<double, double>>{{1.0, 10.0}, {2.0, 6.0}}, 3.0),
            Error);
    }
}

TEST_CASE("amdahl_fit recovers the generating fraction", "[analysis][amdahl]") {
    SECTION("exact model recovery at f = 0.95") {
        const double f = 0.95;
        std::vector<std::pair<double, double>> pts;
        for (double n : {1.0, 2.0, 5.0, 10.0}) {
            const double speedup = 1.0 / ((1.0 - f) + f / n);
            pts.emplace_back(n, 100.0 / speedup);
        }
        const auto series = stepstat::scaling_analysis(pts);
        const auto fit = stepstat::amdahl_fit(series);
        REQUIRE_THAT(fit.parallel_fraction, WithinAbs(0.95, 1e-6));
        REQUIRE(fit.residual_rmse <= 1e-9);
        REQUIRE_THAT(fit.max_speedup, WithinAbs(20.0, 1e-4));
    }
    SECTION("ideal scaling fits f = 1") {
        const std::vector<std::pair<double, double>> pts{
            {1.0, 100.0}, {2.0, 50.0}, {4.0, 25.0}, {8.0, 12.5}};
        const auto fit = stepstat::amdahl_fit(stepstat::scaling_analysis(pts));
        REQUIRE_THAT(fit.parallel_fraction, WithinAbs(1.0, 1e-9));
        REQUIRE(std::isinf(fit.max_speedup));
    }
    SECTION("flat scaling fits f = 0") {
        const std::vector<std::pair<double, double>> pts{
            {1.0, 100.0}, {2.0, 100.0}, {8.0, 100.0}};
        const auto fit = stepstat::amdahl_fit(stepstat::scaling_analysis(pts));
        REQUIRE_THAT(fit.parallel_fraction, WithinAbs(0.0, 1e-9));
        REQUIRE(fit.residual_rmse <= 1e-9);
        REQUIRE_THAT(fit.max_speedup, WithinAbs(1.0, 1e-9));
    }
}

TEST_CASE("bandwidth_report aggregates per setting", "[analysis][bandwidth]") {
    const std::vector<BandwidthRecord> records{
        {"12 ranks 2 threads", 15961.8202, 16464.42, "broadwell24"},
        {"12 ranks 2 threads", 16228.4178, 16450.08, "broadwell24"},
        {"12 ranks 2 threads", 15978.3218, 16201.49, "broadwell24"},
        {"6 ranks 4 threads", 8092.9993, 28883.01, "broadwell24"},
        {"6 ranks 4 threads", 8054.4494, 29045.81, "broadwell24"},
        {"6 ranks 4 threads", 8043.7417, 29035.68, "broadwell24"},
    };

    const auto report = stepstat::bandwidth_report(records);
    REQUIRE(report.settings.size() == 2);
    const auto& twelve = report.settings[0];
    REQUIRE(twelve.setting == "12 ranks 2 threads");
    REQUIRE(twelve.n_records == 3);
    // best bandwidth and best runtime come from different rows
    REQUIRE(twelve.best_bandwidth == 16228.4178);
    REQUIRE(twelve.best_runtime == 16201.49);
    REQUIRE_THAT(twelve.mean_bandwidth, WithinAbs((15961.8202 + 16228.4178 + 15978.3218) / 3, 1e-9));

    const auto& six = report.settings[1];
    // here best bandwidth and best runtime do coincide
    REQUIRE(six.best_bandwidth == 8092.9993);
    REQUIRE(six.best_runtime == 28883.01);
}

TEST_CASE("bandwidth_report ratio orientation", "[analysis][bandwidth]") {
    const std::vector<BandwidthRecord> records{
        {"20 ranks 2 threads", 33295.9147, 4789.012, "cascade40"},
        {"20 ranks 2 threads", 32551.9212, 4760.265, "cascade40"},
        {"12 ranks 2 threads", 16228.4178, 16450.08, "broadwell24"},
        {"12 ranks 2 threads", 15978.3218, 16201.49, "broadwell24"},
    };
    const std::vector<std::pair<std::string, std::string>> pairs{
        {"20 ranks 2 threads", "12 ranks 2 threads"}};
    const auto report = stepstat::bandwidth_report(records, pairs);
    REQUIRE(report.ratios.size() == 1);
    REQUIRE_THAT(report.ratios[0].bandwidth_ratio, WithinAbs(33295.9147 / 16228.4178, 1e-12));
    REQUIRE_THAT(report.ratios[0].runtime_speedup, WithinAbs(16201.49 / 4760.265, 1e-12));
    // both > 1 because A is the better setting
    REQUIRE(report.ratios[0].bandwidth_ratio > 1.0);
    REQUIRE(report.ratios[0].runtime_speedup > 1.0);

    SECTION("unknown setting in a pair") {
        const std::vector<std::pair<std::string, std::string>> bad{{"nope", "12 ranks 2 threads"}};
        REQUIRE_THROWS_AS(stepstat::bandwidth_report(records, bad), Error);
    }
    SECTION("single-record settings have best = mean") {
        const std::vector<BandwidthRecord> one{{"x", 10.0, 5.0, "n"}};
        const auto r = stepstat::bandwidth_report(one);
        REQUIRE(r.settings[0].best_bandwidth == 10.0);
        REQUIRE(r.settings[0].mean_bandwidth == 10.0);
        REQUIRE(r.settings[0].best_runtime == 5.0);
        REQUIRE(r.settings[0].mean_runtime == 5.0);
    }
}

TEST_CASE("bandwidth_report best selection matches brute force", "[analysis][bandwidth]") {
    std::mt19937 rng(864);
    std::uniform_real_distribution<double> ubw(1e3, 4e4);
    std::uniform_real_distribution<double> urt(100.0, 1e5);
    std::uniform_int_distribution<int> usetting(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<BandwidthRecord> records;
        const int count = 4 + trial % 13;
        for (int i = 0; i < count; ++i) {
            records.push_back({"setting " + std::to_string(usetting(rng)), ubw(rng), urt(rng),
                               "node"});
        }
        const auto report = stepstat::bandwidth_report(records);
        for (const auto& stats : report.settings) {
            double best_bw = 0.0;
            double best_rt = std::numeric_limits<double>::infinity();
            for (const auto& rec : records) {
                if (rec.setting != stats.setting) continue;
                best_bw = std::max(best_bw, rec.bandwidth_mbytes_per_s);
                best_rt = std::min(best_rt, rec.total_runtime_s);
            }
            REQUIRE(stats.best_bandwidth == best_bw);
            REQUIRE(stats.best_runtime == best_rt);
            // best runtime never exceeds any runtime of its setting
            for (const auto& rec : records) {
                if (rec.setting == stats.setting) REQUIRE(stats.best_runtime <= rec.total_runtime_s);
            }
        }
    }
}
