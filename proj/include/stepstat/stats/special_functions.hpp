#pragma once

#include "stepstat/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace stepstat {

namespace detail {

inline constexpr int kBetaMaxIterations = 300;
inline constexpr double kBetaRelTolerance = 1e-12;

inline std::string fmt_args(double x, double a, double b) {
    return "x=" + std::to_string(x) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
}

// Continued fraction for the incomplete beta function (modified Lentz).
// Converges rapidly for x < (a+1)/(a+b+2); callers switch via symmetry.
inline double beta_continued_fraction(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;

    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= kBetaMaxIterations; ++m) {
        const int m2 = 2 * m;

        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;

        if (std::fabs(delta - 1.0) < kBetaRelTolerance) return h;
    }
    raise(errc::convergence,
          "incomplete beta continued fraction did not converge after " +
              std::to_string(kBetaMaxIterations) + " iterations (" + fmt_args(x, a, b) + ")");
}

}  // namespace detail

// Regularized incomplete beta function I_x(a,b).
// Evaluates the continued fraction on whichever side of
// x = (a+1)/(a+b+2) converges fast, using I_x(a,b) = 1 - I_{1-x}(b,a).
inline double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        raise(errc::domain, "incomplete beta requires a > 0 and b > 0 (" + detail::fmt_args(x, a, b) + ")");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        raise(errc::domain, "incomplete beta requires x in [0,1] (" + detail::fmt_args(x, a, b) + ")");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    // Symmetry shortcut keeps the t and F midpoints exact.
    if (x == 0.5 && a == b) return 0.5;

    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);

    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * detail::beta_continued_fraction(x, a, b) / a;
    }
    return 1.0 - front * detail::beta_continued_fraction(1.0 - x, b, a) / b;
}

// P(T <= t) for Student's t with `dof` degrees of freedom.
inline double student_t_cdf(double t, double dof) {
    if (!(dof > 0.0)) {
        raise(errc::domain, "student_t_cdf requires dof > 0, got " + std::to_string(dof));
    }
    if (std::isnan(t)) {
        raise(errc::domain, "student_t_cdf requires a finite t statistic");
    }
    if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
    if (t == 0.0) return 0.5;

    const double x = dof / (dof + t * t);
    const double tail = 0.5 * regularized_incomplete_beta(x, 0.5 * dof, 0.5);
    return t > 0.0 ? 1.0 - tail : tail;
}

// P(F <= x) for the F distribution with (d1, d2) degrees of freedom.
inline double f_cdf(double x, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) {
        raise(errc::domain, "f_cdf requires positive degrees of freedom");
    }
    if (std::isnan(x) || x < 0.0) {
        raise(errc::domain, "f_cdf requires x >= 0, got " + std::to_string(x));
    }
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;

    const double y = d1 * x / (d1 * x + d2);
    return regularized_incomplete_beta(y, 0.5 * d1, 0.5 * d2);
}

// Upper quantile of Student's t: the value q with P(T <= q) = p.
// Bisection on the monotone CDF; plenty accurate for confidence intervals.
inline double student_t_quantile(double p, double dof) {
    if (!(dof > 0.0)) {
        raise(errc::domain, "student_t_quantile requires dof > 0");
    }
    if (!(p > 0.0 && p < 1.0)) {
        raise(errc::domain, "student_t_quantile requires p in (0,1), got " + std::to_string(p));
    }
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -student_t_quantile(1.0 - p, dof);

    double lo = 0.0;
    double hi = 1.0;
    while (student_t_cdf(hi, dof) < p) {
        hi *= 2.0;
        if (hi > 1e300) return std::numeric_limits<double>::infinity();
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, dof) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-14 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace stepstat
