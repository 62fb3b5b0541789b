#pragma once

#include "stepstat/error.hpp"
#include "stepstat/stats/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stepstat {

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // sample variance, n-1 divisor
    double stddev = 0.0;
    std::optional<double> cv;  // stddev / mean; absent when mean == 0
    double ci_level = 0.95;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

namespace detail {

inline void check_sample(std::span<const double> sample, const char* what) {
    if (sample.size() < 2) {
        raise(errc::insufficient_data, std::string(what) + " needs at least 2 observations, got " +
                                           std::to_string(sample.size()));
    }
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (!std::isfinite(sample[i])) {
            raise(errc::data_validation, std::string(what) + ": non-finite entry at position " +
                                             std::to_string(i));
        }
    }
}

inline double sample_mean(std::span<const double> sample) {
    double sum = 0.0;
    for (double v : sample) sum += v;
    return sum / static_cast<double>(sample.size());
}

// Two-pass sample variance (n-1 divisor).
inline double sample_variance(std::span<const double> sample, double mean) {
    double ss = 0.0;
    for (double v : sample) {
        const double d = v - mean;
        ss += d * d;
    }
    return ss / static_cast<double>(sample.size() - 1);
}

}  // namespace detail

// Descriptive summary with a two-sided t-based confidence interval,
// mean +/- t_{(1+level)/2, n-1} * s / sqrt(n).
inline SampleSummary summarize(std::span<const double> sample, double ci_level = 0.95) {
    detail::check_sample(sample, "summarize");
    if (!(ci_level > 0.0 && ci_level < 1.0)) {
        raise(errc::domain, "ci_level must lie in (0,1), got " + std::to_string(ci_level));
    }
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (sample[i] < 0.0) {
            raise(errc::data_validation,
                  "summarize: negative duration at position " + std::to_string(i));
        }
    }

    SampleSummary s;
    s.n = sample.size();
    s.mean = detail::sample_mean(sample);
    s.variance = detail::sample_variance(sample, s.mean);
    s.stddev = std::sqrt(s.variance);
    if (s.mean != 0.0) s.cv = s.stddev / s.mean;
    s.ci_level = ci_level;

    const double dof = static_cast<double>(s.n - 1);
    const double tq = student_t_quantile(0.5 * (1.0 + ci_level), dof);
    const double half_width = tq * s.stddev / std::sqrt(static_cast<double>(s.n));
    s.ci_lo = s.mean - half_width;
    s.ci_hi = s.mean + half_width;
    return s;
}

// Quantile by linear interpolation between order statistics, h = (n-1)p.
// `sorted` must be ascending.
inline double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        raise(errc::insufficient_data, "quantile of an empty sample");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        raise(errc::domain, "quantile probability must lie in [0,1]");
    }
    const double h = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(h));
    if (lo == hi) return sorted[lo];
    const double w = h - static_cast<double>(lo);
    return sorted[lo] * (1.0 - w) + sorted[hi] * w;
}

struct FiveNumberSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::vector<double> outliers;  // beyond 1.5*IQR, ascending
};

inline FiveNumberSummary five_number_summary(std::span<const double> sample) {
    if (sample.size() < 5) {
        raise(errc::insufficient_data, "five-number summary needs at least 5 points, got " +
                                           std::to_string(sample.size()));
    }
    for (double v : sample) {
        if (!std::isfinite(v)) {
            raise(errc::data_validation, "five-number summary: non-finite entry");
        }
    }
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());

    FiveNumberSummary f;
    f.min = sorted.front();
    f.max = sorted.back();
    f.q1 = quantile_sorted(sorted, 0.25);
    f.median = quantile_sorted(sorted, 0.50);
    f.q3 = quantile_sorted(sorted, 0.75);

    const double iqr = f.q3 - f.q1;
    const double lo_fence = f.q1 - 1.5 * iqr;
    const double hi_fence = f.q3 + 1.5 * iqr;
    for (double v : sorted) {
        if (v < lo_fence || v > hi_fence) f.outliers.push_back(v);
    }
    return f;
}

}  // namespace stepstat
