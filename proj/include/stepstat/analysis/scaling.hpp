#pragma once

#include "stepstat/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stepstat {

struct ScalingPoint {
    double n = 0.0;        // resource count (nodes, ranks, threads)
    double seconds = 0.0;  // observed time at this count
    double speedup = 1.0;  // T_base / T_n
    double efficiency = 1.0;
    double ideal_speedup = 1.0;  // n / n_base
};

struct ScalingSeries {
    std::vector<ScalingPoint> points;  // sorted by n ascending
    std::size_t baseline_index = 0;
    double efficiency_threshold = 0.70;
    // Largest resource count still meeting the threshold, if any.
    std::optional<double> max_n_meeting_threshold;
};

// Strong-scaling speedup and efficiency against a baseline point, with the
// ideal linear overlay and a configurable efficiency threshold flag.
inline ScalingSeries scaling_analysis(std::span<const std::pair<double, double>> points,
                                      std::optional<double> baseline_n = std::nullopt,
                                      double efficiency_threshold = 0.70) {
    if (points.size() < 2) {
        raise(errc::structural, "scaling analysis needs at least 2 points, got " +
                                    std::to_string(points.size()));
    }
    std::vector<std::pair<double, double>> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!(sorted[i].first > 0.0)) {
            raise(errc::structural, "resource counts must be > 0");
        }
        if (!(sorted[i].second > 0.0) || !std::isfinite(sorted[i].second)) {
            raise(errc::data_validation, "times must be finite and > 0");
        }
        if (i > 0 && sorted[i].first == sorted[i - 1].first) {
            raise(errc::structural,
                  "duplicate resource count " + std::to_string(sorted[i].first));
        }
    }

    const double base_n = baseline_n.value_or(sorted.front().first);
    std::size_t base_idx = sorted.size();
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].first == base_n) base_idx = i;
    }
    if (base_idx == sorted.size()) {
        raise(errc::lookup, "baseline resource count " + std::to_string(base_n) +
                                " is not among the measured points");
    }
    const double base_time = sorted[base_idx].second;

    ScalingSeries series;
    series.baseline_index = base_idx;
    series.efficiency_threshold = efficiency_threshold;
    for (const auto& [n, t] : sorted) {
        ScalingPoint p;
        p.n = n;
        p.seconds = t;
        p.speedup = base_time / t;
        p.ideal_speedup = n / base_n;
        p.efficiency = p.speedup / p.ideal_speedup;
        series.points.push_back(p);
        if (p.efficiency >= efficiency_threshold) {
            if (!series.max_n_meeting_threshold || n > *series.max_n_meeting_threshold) {
                series.max_n_meeting_threshold = n;
            }
        }
    }
    return series;
}

// Serial-fraction fit: speedup model S(N) = 1 / ((1-f) + f * (N_base / N)).
struct AmdahlFit {
    double parallel_fraction = 0.0;  // f in [0,1]
    double residual_rmse = 0.0;
    double max_speedup = 1.0;  // 1 / (1-f)
};

namespace detail {

inline double amdahl_speedup(double f, double n_ratio_inv) {
    return 1.0 / ((1.0 - f) + f * n_ratio_inv);
}

inline double amdahl_sse(double f, const ScalingSeries& series) {
    const double base_n = series.points[series.baseline_index].n;
    double sse = 0.0;
    for (const ScalingPoint& p : series.points) {
        const double model = amdahl_speedup(f, base_n / p.n);
        const double r = model - p.speedup;
        sse += r * r;
    }
    return sse;
}

}  // namespace detail

// Least-squares fit of the parallel fraction over [0,1]: a coarse grid scan
// to bracket the minimum, then golden-section refinement. Deterministic.
inline AmdahlFit amdahl_fit(const ScalingSeries& series) {
    if (series.points.size() < 2) {
        raise(errc::structural, "Amdahl fit needs at least 2 points");
    }

    constexpr int grid = 1024;
    double best_f = 0.0;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        const double f = static_cast<double>(i) / grid;
        const double sse = detail::amdahl_sse(f, series);
        if (sse < best_sse) {
            best_sse = sse;
            best_f = f;
        }
    }

    double lo = std::max(0.0, best_f - 1.0 / grid);
    double hi = std::min(1.0, best_f + 1.0 / grid);
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = detail::amdahl_sse(x1, series);
    double f2 = detail::amdahl_sse(x2, series);
    for (int i = 0; i < 120; ++i) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = detail::amdahl_sse(x1, series);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = detail::amdahl_sse(x2, series);
        }
    }

    AmdahlFit fit;
    fit.parallel_fraction = 0.5 * (lo + hi);
    fit.residual_rmse =
        std::sqrt(detail::amdahl_sse(fit.parallel_fraction, series) /
                  static_cast<double>(series.points.size()));
    fit.max_speedup = fit.parallel_fraction >= 1.0
                          ? std::numeric_limits<double>::infinity()
                          : 1.0 / (1.0 - fit.parallel_fraction);
    return fit;
}

}  // namespace stepstat
