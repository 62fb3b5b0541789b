#pragma once

#include "stepstat/error.hpp"
#include "stepstat/ingest/timing_series.hpp"
#include "stepstat/stats/descriptive.hpp"
#include "stepstat/stats/hypothesis.hpp"

#include <cstdint>
#include <string>

namespace stepstat {

enum class Verdict { faster, slower, indistinguishable };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::faster: return "faster";
        case Verdict::slower: return "slower";
        case Verdict::indistinguishable: return "indistinguishable";
    }
    return "?";
}

struct CompareOptions {
    double alpha = 0.05;
    TestVariant variant = TestVariant::pooled;
    std::size_t n = 35;        // sample window length
    std::uint64_t warmup = 2;  // applied only if a series is not yet trimmed
    double ci_level = 0.95;
};

struct StepWindow {
    std::uint64_t first_step = 0;
    std::size_t length = 0;
};

// The statistical decision comparing two runs. speedup > 1 means the
// candidate's mean step is faster than the baseline's.
struct ComparisonVerdict {
    std::string baseline_id;
    std::string candidate_id;
    SampleSummary baseline_summary;
    SampleSummary candidate_summary;
    double speedup = 1.0;  // baseline mean / candidate mean
    TTestResult mean_test;
    FTestResult variance_test;
    StepWindow window;
    Verdict verdict = Verdict::indistinguishable;
};

namespace detail {

inline TimingSeries apply_protocol(const TimingSeries& series, const CompareOptions& opts) {
    TimingSeries s = series.trimmed ? series : trim_warmup(series, opts.warmup);
    return sample_first_n(s, opts.n);
}

}  // namespace detail

// Applies the trim/sample protocol to both runs, enforces an identical step
// window, and classifies the candidate against the baseline. The verdict
// requires both significance and direction of the mean test; the variance
// test is reported alongside but never flips it.
inline ComparisonVerdict compare_runs(const TimingSeries& baseline, const TimingSeries& candidate,
                                      const CompareOptions& opts = {}) {
    const TimingSeries base = detail::apply_protocol(baseline, opts);
    const TimingSeries cand = detail::apply_protocol(candidate, opts);

    for (std::size_t i = 0; i < base.steps.size(); ++i) {
        if (base.steps[i].index != cand.steps[i].index) {
            raise(errc::alignment,
                  "step windows differ at position " + std::to_string(i) + ": baseline has step " +
                      std::to_string(base.steps[i].index) + ", candidate has step " +
                      std::to_string(cand.steps[i].index));
        }
    }

    const std::vector<double> base_vals = base.durations();
    const std::vector<double> cand_vals = cand.durations();

    ComparisonVerdict v;
    v.baseline_id = baseline.run_id;
    v.candidate_id = candidate.run_id;
    v.baseline_summary = summarize(base_vals, opts.ci_level);
    v.candidate_summary = summarize(cand_vals, opts.ci_level);
    v.speedup = v.baseline_summary.mean / v.candidate_summary.mean;
    v.window = StepWindow{base.steps.front().index, base.steps.size()};

    v.mean_test = t_test(base_vals, cand_vals, opts.variant, Sidedness::two_sided, opts.alpha);

    // Two constant samples would make the standalone F-test refuse; inside a
    // comparison that simply means no variance difference to report.
    if (v.baseline_summary.variance == 0.0 && v.candidate_summary.variance == 0.0) {
        v.variance_test.f_stat = 1.0;
        v.variance_test.p_value = 1.0;
        v.variance_test.dof_num = static_cast<double>(base_vals.size() - 1);
        v.variance_test.dof_den = static_cast<double>(cand_vals.size() - 1);
        v.variance_test.alpha = opts.alpha;
        v.variance_test.significant = false;
        v.variance_test.degenerate = true;
    } else {
        v.variance_test = f_test(base_vals, cand_vals, Sidedness::two_sided, opts.alpha);
    }

    if (v.mean_test.significant && v.speedup > 1.0) {
        v.verdict = Verdict::faster;
    } else if (v.mean_test.significant && v.speedup < 1.0) {
        v.verdict = Verdict::slower;
    } else {
        v.verdict = Verdict::indistinguishable;
    }
    return v;
}

}  // namespace stepstat
