#pragma once

#include "stepstat/error.hpp"
#include "stepstat/ingest/timing_series.hpp"
#include "stepstat/stats/random.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace stepstat {

// Desk-scale stand-in for a real iterative run: noisy i.i.d. step durations
// with inflated warmup steps, calibrated by mean and coefficient of variation.
struct SyntheticSpec {
    double mean = 250.0;
    double cv = 0.10;
    int n_steps = 37;
    int warmup_steps = 2;
    double warmup_inflation = 1.3;
    double effect_fraction = 0.0;  // applied as mean * (1 - effect_fraction)
    std::uint64_t seed = 0;
    NoiseShape shape = NoiseShape::normal;
};

// Deterministic for a fixed spec: same seed, same series, byte for byte.
// The noise stddev stays cv * mean regardless of the effect, so two series
// generated from the same seed differ (almost) only by the mean shift.
inline TimingSeries generate_synthetic(const SyntheticSpec& spec) {
    if (!(spec.mean > 0.0)) {
        raise(errc::domain, "synthetic mean must be > 0");
    }
    if (!(spec.cv > 0.0)) {
        raise(errc::domain, "synthetic cv must be > 0");
    }
    if (spec.warmup_steps < 0 || spec.n_steps < spec.warmup_steps + 2) {
        raise(errc::domain, "synthetic series needs n_steps >= warmup_steps + 2");
    }
    if (!(spec.warmup_inflation > 0.0)) {
        raise(errc::domain, "warmup inflation factor must be > 0");
    }

    const double effective_mean = spec.mean * (1.0 - spec.effect_fraction);
    if (!(effective_mean > 0.0)) {
        raise(errc::domain, "effect_fraction leaves a nonpositive mean");
    }
    const double sigma = spec.cv * spec.mean;

    TimingSeries series;
    series.run_id = "synthetic-seed" + std::to_string(spec.seed);
    series.source = "synthetic";

    std::mt19937_64 rng(spec.seed);
    for (int i = 0; i < spec.n_steps; ++i) {
        TimingStep step;
        step.index = static_cast<std::uint64_t>(i);
        step.seconds = detail::noise_draw(rng, spec.shape, effective_mean, sigma);
        if (i < spec.warmup_steps) step.seconds *= spec.warmup_inflation;
        series.steps.push_back(step);
    }
    return series;
}

}  // namespace stepstat
