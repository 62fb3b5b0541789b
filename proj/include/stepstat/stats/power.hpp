#pragma once

#include "stepstat/error.hpp"
#include "stepstat/stats/hypothesis.hpp"
#include "stepstat/stats/random.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stepstat {

struct PowerSpec {
    double effect_fraction = 0.0;  // candidate mean = mean * (1 - effect_fraction)
    double cv = 0.10;
    int n_per_group = 35;
    double alpha = 0.05;
    int trials = 1000;
    std::uint64_t seed = 0;
    NoiseShape shape = NoiseShape::normal;
    TestVariant variant = TestVariant::pooled;
};

// Monte-Carlo power: fraction of trials in which the t-test rejects at alpha.
// Each trial draws two groups from the noise model, one at mean 1 and one at
// mean (1 - effect_fraction), both with stddev cv. Trials are seeded
// independently, so the estimate does not depend on evaluation order.
inline double power_estimate(const PowerSpec& spec) {
    if (!(spec.cv > 0.0)) {
        raise(errc::domain, "power_estimate requires cv > 0");
    }
    if (spec.n_per_group < 2) {
        raise(errc::insufficient_data, "power_estimate requires n_per_group >= 2");
    }
    if (spec.trials < 100) {
        raise(errc::config, "power_estimate requires at least 100 trials, got " +
                                std::to_string(spec.trials));
    }
    detail::check_alpha(spec.alpha);

    const double mean = 1.0;
    const double sigma = spec.cv * mean;
    const double candidate_mean = mean * (1.0 - spec.effect_fraction);
    const std::size_t n = static_cast<std::size_t>(spec.n_per_group);

    int rejections = 0;
    std::vector<double> a(n), b(n);
    for (int trial = 0; trial < spec.trials; ++trial) {
        std::mt19937_64 rng(detail::mix_seed(spec.seed, static_cast<std::uint64_t>(trial)));
        for (std::size_t i = 0; i < n; ++i) a[i] = detail::noise_draw(rng, spec.shape, mean, sigma);
        for (std::size_t i = 0; i < n; ++i) {
            b[i] = detail::noise_draw(rng, spec.shape, candidate_mean, sigma);
        }
        const TTestResult t = t_test(a, b, spec.variant, Sidedness::two_sided, spec.alpha);
        if (t.significant) ++rejections;
    }
    return static_cast<double>(rejections) / static_cast<double>(spec.trials);
}

}  // namespace stepstat
