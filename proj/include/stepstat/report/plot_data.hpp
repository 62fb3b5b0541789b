#pragma once

#include "stepstat/analysis/scaling.hpp"
#include "stepstat/error.hpp"
#include "stepstat/stats/descriptive.hpp"

#include <cstdio>
#include <span>
#include <string>
#include <vector>

namespace stepstat {

enum class PlotKind { timestep_box, scaling_curve, thread_scaling };

inline PlotKind parse_plot_kind(const std::string& text) {
    if (text == "timestep_box") return PlotKind::timestep_box;
    if (text == "scaling_curve") return PlotKind::scaling_curve;
    if (text == "thread_scaling") return PlotKind::thread_scaling;
    raise(errc::config, "unknown plot kind '" + text + "'");
}

namespace detail {

inline std::string plot_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace detail

struct PlotGroup {
    std::string label;
    std::vector<double> values;
};

// Box-plot data: one row per group with the five-number summary (linear
// interpolation between order statistics) and the outliers beyond 1.5*IQR.
inline std::string emit_timestep_box(std::span<const PlotGroup> groups) {
    if (groups.empty()) {
        raise(errc::insufficient_data, "box plot needs at least one group");
    }
    std::string out = "group\tn\tmin\tq1\tmedian\tq3\tmax\toutliers\n";
    for (const PlotGroup& g : groups) {
        const FiveNumberSummary f = five_number_summary(g.values);
        out += g.label;
        out += '\t';
        out += std::to_string(g.values.size());
        for (double v : {f.min, f.q1, f.median, f.q3, f.max}) {
            out += '\t';
            out += detail::plot_number(v);
        }
        out += '\t';
        for (std::size_t i = 0; i < f.outliers.size(); ++i) {
            if (i > 0) out += ',';
            out += detail::plot_number(f.outliers[i]);
        }
        out += '\n';
    }
    return out;
}

// Scaling curve data: resource count, time, speedup, efficiency and the
// ideal-speedup overlay, one row per measured point.
inline std::string emit_scaling_curve(const ScalingSeries& series,
                                      PlotKind kind = PlotKind::scaling_curve) {
    const char* axis = kind == PlotKind::thread_scaling ? "threads" : "n";
    std::string out = std::string(axis) + "\tseconds\tspeedup\tefficiency\tideal\n";
    for (const ScalingPoint& p : series.points) {
        out += detail::plot_number(p.n);
        out += '\t';
        out += detail::plot_number(p.seconds);
        out += '\t';
        out += detail::plot_number(p.speedup);
        out += '\t';
        out += detail::plot_number(p.efficiency);
        out += '\t';
        out += detail::plot_number(p.ideal_speedup);
        out += '\n';
    }
    return out;
}

}  // namespace stepstat
