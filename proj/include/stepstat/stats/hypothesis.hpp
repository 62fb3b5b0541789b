#pragma once

#include "stepstat/error.hpp"
#include "stepstat/stats/descriptive.hpp"
#include "stepstat/stats/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace stepstat {

enum class TestVariant { pooled, welch, paired };
enum class Sidedness { two_sided, less, greater };

inline const char* to_string(TestVariant v) {
    switch (v) {
        case TestVariant::pooled: return "pooled";
        case TestVariant::welch: return "welch";
        case TestVariant::paired: return "paired";
    }
    return "?";
}

inline TestVariant parse_test_variant(const std::string& text) {
    if (text == "pooled") return TestVariant::pooled;
    if (text == "welch") return TestVariant::welch;
    if (text == "paired") return TestVariant::paired;
    raise(errc::config, "unknown t-test variant '" + text + "' (expected pooled, welch or paired)");
}

struct TTestResult {
    double t_stat = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
    TestVariant variant = TestVariant::pooled;
    Sidedness sidedness = Sidedness::two_sided;
    double alpha = 0.05;
    bool significant = false;
    // Both samples had zero variance but different means.
    bool perfect_separation = false;
};

struct FTestResult {
    double f_stat = 1.0;
    double dof_num = 0.0;
    double dof_den = 0.0;
    double p_value = 1.0;
    Sidedness sidedness = Sidedness::two_sided;
    double alpha = 0.05;
    bool significant = false;
    // At least one sample had zero variance; f_stat is 0 or infinite.
    bool degenerate = false;
};

namespace detail {

inline void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        raise(errc::domain, "alpha must lie in (0,1), got " + std::to_string(alpha));
    }
}

inline double t_p_value(double t, double dof, Sidedness sidedness) {
    switch (sidedness) {
        case Sidedness::two_sided: return 2.0 * (1.0 - student_t_cdf(std::fabs(t), dof));
        case Sidedness::less: return student_t_cdf(t, dof);
        case Sidedness::greater: return 1.0 - student_t_cdf(t, dof);
    }
    return 1.0;
}

}  // namespace detail

// Two-sample t-test on the difference of means, t = (mean_a - mean_b) / se.
// pooled: classical Student statistic, dof = n1 + n2 - 2.
// welch:  unequal-variance statistic with Welch-Satterthwaite dof.
// paired: one-sample test on stepwise differences (samples must align).
inline TTestResult t_test(std::span<const double> a, std::span<const double> b,
                          TestVariant variant = TestVariant::pooled,
                          Sidedness sidedness = Sidedness::two_sided, double alpha = 0.05) {
    detail::check_sample(a, "t_test sample a");
    detail::check_sample(b, "t_test sample b");
    detail::check_alpha(alpha);

    TTestResult r;
    r.variant = variant;
    r.sidedness = sidedness;
    r.alpha = alpha;

    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    const double m1 = detail::sample_mean(a);
    const double m2 = detail::sample_mean(b);
    const double v1 = detail::sample_variance(a, m1);
    const double v2 = detail::sample_variance(b, m2);

    if (variant == TestVariant::paired) {
        if (a.size() != b.size()) {
            raise(errc::alignment, "paired t-test needs equal sample sizes, got " +
                                       std::to_string(a.size()) + " and " + std::to_string(b.size()));
        }
        std::vector<double> diff(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
        const double md = detail::sample_mean(diff);
        const double vd = detail::sample_variance(diff, md);
        r.dof = n1 - 1.0;
        if (vd == 0.0) {
            if (md == 0.0) {
                r.t_stat = 0.0;
                r.p_value = 1.0;
            } else {
                r.t_stat = md > 0.0 ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity();
                r.p_value = 0.0;
                r.perfect_separation = true;
            }
        } else {
            r.t_stat = md / std::sqrt(vd / n1);
            r.p_value = detail::t_p_value(r.t_stat, r.dof, sidedness);
        }
        r.significant = r.p_value < alpha;
        return r;
    }

    // Degenerate rule: constant samples are legitimate with quantized timers.
    if (v1 == 0.0 && v2 == 0.0) {
        r.dof = n1 + n2 - 2.0;
        if (m1 == m2) {
            r.t_stat = 0.0;
            r.p_value = 1.0;
        } else {
            r.t_stat = (m1 - m2) > 0.0 ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity();
            r.p_value = 0.0;
            r.perfect_separation = true;
        }
        r.significant = r.p_value < alpha;
        return r;
    }

    double se = 0.0;
    if (variant == TestVariant::pooled) {
        const double pooled_var = ((n1 - 1.0) * v1 + (n2 - 1.0) * v2) / (n1 + n2 - 2.0);
        se = std::sqrt(pooled_var * (1.0 / n1 + 1.0 / n2));
        r.dof = n1 + n2 - 2.0;
    } else {
        const double v1n = v1 / n1;
        const double v2n = v2 / n2;
        se = std::sqrt(v1n + v2n);
        r.dof = (v1n + v2n) * (v1n + v2n) /
                (v1n * v1n / (n1 - 1.0) + v2n * v2n / (n2 - 1.0));
    }

    r.t_stat = (m1 - m2) / se;
    r.p_value = detail::t_p_value(r.t_stat, r.dof, sidedness);
    r.significant = r.p_value < alpha;
    return r;
}

// F-test on the ratio of sample variances, f = var(a) / var(b).
// The orientation is fixed; no reordering of the larger variance on top.
inline FTestResult f_test(std::span<const double> a, std::span<const double> b,
                          Sidedness sidedness = Sidedness::two_sided, double alpha = 0.05) {
    detail::check_sample(a, "f_test sample a");
    detail::check_sample(b, "f_test sample b");
    detail::check_alpha(alpha);

    const double m1 = detail::sample_mean(a);
    const double m2 = detail::sample_mean(b);
    const double v1 = detail::sample_variance(a, m1);
    const double v2 = detail::sample_variance(b, m2);

    FTestResult r;
    r.sidedness = sidedness;
    r.alpha = alpha;
    r.dof_num = static_cast<double>(a.size() - 1);
    r.dof_den = static_cast<double>(b.size() - 1);

    if (v1 == 0.0 && v2 == 0.0) {
        raise(errc::degenerate_variance, "f_test: both samples have zero variance");
    }
    if (v1 == 0.0 || v2 == 0.0) {
        r.f_stat = v1 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        r.p_value = 0.0;
        r.degenerate = true;
        r.significant = true;
        return r;
    }

    r.f_stat = v1 / v2;
    const double cdf = f_cdf(r.f_stat, r.dof_num, r.dof_den);
    switch (sidedness) {
        case Sidedness::two_sided:
            r.p_value = std::min(1.0, 2.0 * std::min(cdf, 1.0 - cdf));
            break;
        case Sidedness::less: r.p_value = cdf; break;
        case Sidedness::greater: r.p_value = 1.0 - cdf; break;
    }
    r.significant = r.p_value < alpha;
    return r;
}

}  // namespace stepstat
