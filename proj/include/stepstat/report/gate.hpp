#pragma once

#include "stepstat/analysis/compare.hpp"
#include "stepstat/error.hpp"

#include <cstdio>
#include <string>

namespace stepstat {

// Process exit codes; the CI contract of the CLI.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitGateViolation = 3;
inline constexpr int kExitNumerical = 4;

enum class GatePolicy { fail_on_slower, fail_on_not_faster };

inline const char* to_string(GatePolicy p) {
    return p == GatePolicy::fail_on_slower ? "fail_on_slower" : "fail_on_not_faster";
}

inline GatePolicy parse_gate_policy(const std::string& text) {
    if (text == "fail_on_slower") return GatePolicy::fail_on_slower;
    if (text == "fail_on_not_faster") return GatePolicy::fail_on_not_faster;
    raise(errc::config, "unknown gate policy '" + text +
                            "' (expected fail_on_slower or fail_on_not_faster)");
}

inline bool gate_passes(const ComparisonVerdict& verdict, GatePolicy policy) {
    switch (policy) {
        case GatePolicy::fail_on_slower: return verdict.verdict != Verdict::slower;
        case GatePolicy::fail_on_not_faster: return verdict.verdict == Verdict::faster;
    }
    return false;
}

inline int gate_exit_code(const ComparisonVerdict& verdict, GatePolicy policy) {
    return gate_passes(verdict, policy) ? kExitSuccess : kExitGateViolation;
}

namespace detail {

inline std::string sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace detail

// Machine-readable one-line verdict for CI logs.
inline std::string verdict_line(const ComparisonVerdict& v) {
    std::string line = "verdict=";
    line += to_string(v.verdict);
    line += " speedup=" + detail::sci(v.speedup);
    line += " t=" + detail::sci(v.mean_test.t_stat);
    line += " p_mean=" + detail::sci(v.mean_test.p_value);
    line += " f=" + detail::sci(v.variance_test.f_stat);
    line += " p_var=" + detail::sci(v.variance_test.p_value);
    line += " cv_baseline=" +
            (v.baseline_summary.cv ? detail::sci(*v.baseline_summary.cv) : std::string("na"));
    line += " cv_candidate=" +
            (v.candidate_summary.cv ? detail::sci(*v.candidate_summary.cv) : std::string("na"));
    line += " n=" + std::to_string(v.window.length);
    line += " window=" + std::to_string(v.window.first_step) + ".." +
            std::to_string(v.window.first_step + v.window.length - 1);
    line += " alpha=" + detail::sci(v.mean_test.alpha);
    line += std::string(" significant=") + (v.mean_test.significant ? "true" : "false");
    return line;
}

}  // namespace stepstat
