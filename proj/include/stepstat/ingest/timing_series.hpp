#pragma once

#include "stepstat/error.hpp"
#include "stepstat/experiment/run_config.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stepstat {

struct TimingStep {
    std::uint64_t index = 0;
    double seconds = 0.0;
};

// Ordered per-step wall-clock durations for one application run.
// Invariants: step indices strictly increasing, durations finite and > 0.
struct TimingSeries {
    std::string run_id;
    std::string source;
    std::vector<TimingStep> steps;
    std::optional<RunConfig> config;
    bool trimmed = false;
    std::optional<std::size_t> sample_size_used;
    std::vector<std::string> annotations;

    std::vector<double> durations() const {
        std::vector<double> out;
        out.reserve(steps.size());
        for (const TimingStep& s : steps) out.push_back(s.seconds);
        return out;
    }
};

namespace detail {

inline void validate_steps(const std::vector<TimingStep>& steps, const std::string& source) {
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const TimingStep& s = steps[i];
        if (!(s.seconds > 0.0) || !std::isfinite(s.seconds)) {
            raise(errc::data_validation, source + ": step " + std::to_string(s.index) +
                                             " has nonpositive or non-finite duration");
        }
        if (i > 0) {
            if (steps[i - 1].index == s.index) {
                raise(errc::structural,
                      source + ": duplicate step index " + std::to_string(s.index));
            }
            if (steps[i - 1].index > s.index) {
                raise(errc::structural, source + ": step index " + std::to_string(s.index) +
                                            " decreases after " +
                                            std::to_string(steps[i - 1].index));
            }
        }
    }
}

}  // namespace detail

// Drops the initialization steps: everything with step_index < warmup_count.
inline TimingSeries trim_warmup(const TimingSeries& series, std::uint64_t warmup_count = 2) {
    if (series.steps.empty()) {
        raise(errc::insufficient_data, series.run_id + ": cannot trim an empty series");
    }
    TimingSeries out = series;
    out.steps.clear();
    for (const TimingStep& s : series.steps) {
        if (s.index >= warmup_count) out.steps.push_back(s);
    }
    if (out.steps.empty()) {
        raise(errc::empty_result, series.run_id + ": trimming " + std::to_string(warmup_count) +
                                      " warmup steps removed all " +
                                      std::to_string(series.steps.size()) + " steps");
    }
    out.trimmed = true;
    return out;
}

// Keeps the first n steps. Comparisons need the same step window on both
// sides, so this is a prefix, never a random subset.
inline TimingSeries sample_first_n(const TimingSeries& series, std::size_t n = 35) {
    if (n == 0) {
        raise(errc::domain, "sample size must be >= 1");
    }
    if (series.steps.size() < n) {
        raise(errc::insufficient_data,
              series.run_id + ": requested a sample of " + std::to_string(n) + " steps but only " +
                  std::to_string(series.steps.size()) + " are available");
    }
    TimingSeries out = series;
    out.steps.assign(series.steps.begin(), series.steps.begin() + static_cast<std::ptrdiff_t>(n));
    out.sample_size_used = n;
    if (n < 30) {
        out.annotations.push_back("sample size " + std::to_string(n) +
                                  " is below 30; normality assumption is weak");
    }
    return out;
}

}  // namespace stepstat
