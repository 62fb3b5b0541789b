// stepstat command-line front end: ingestion, comparison verdicts, sweep
// planning/execution, scaling and bandwidth reports, synthetic workloads and
// power estimation.
//
// Exit codes: 0 success, 2 input/parse error, 3 gate violation,
// 4 internal numerical error.

#include "stepstat/stepstat.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

namespace fs = std::filesystem;
using stepstat::Error;
using stepstat::TimingSeries;

bool g_no_color = false;

std::string colorize(const std::string& text, const char* code) {
    if (g_no_color) return text;
    return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string verdict_colored(stepstat::Verdict v) {
    switch (v) {
        case stepstat::Verdict::faster: return colorize("faster", "32");
        case stepstat::Verdict::slower: return colorize("slower", "31");
        case stepstat::Verdict::indistinguishable: return colorize("indistinguishable", "33");
    }
    return "?";
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    return stepstat::read_file(path);
}

// Environment seed for synth/power when --seed is not given.
std::uint64_t default_seed() {
    if (const char* env = std::getenv("STEPSTAT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            stepstat::raise(stepstat::errc::config,
                            std::string("STEPSTAT_SEED is not an integer: ") + env);
        }
    }
    return 0;
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

std::string summary_row(const stepstat::SampleSummary& s) {
    std::string out = "mean " + fmt("%.6g", s.mean) + " s, std " + fmt("%.4g", s.stddev) +
                      " s, cv " + (s.cv ? fmt("%.2f", *s.cv * 100.0) + "%" : std::string("n/a")) +
                      ", ci" + fmt("%g", s.ci_level * 100.0) + " [" + fmt("%.6g", s.ci_lo) + ", " +
                      fmt("%.6g", s.ci_hi) + "]";
    return out;
}

// ---------------------------------------------------------------------------
// ingest

struct IngestOpts {
    std::string input;
    std::string format = "csv";
    std::string pattern;
    std::string run_id;
    std::string out;
    std::uint64_t warmup = 2;
    std::size_t sample_n = 35;
    bool raw = false;
    // optional config snapshot
    std::string label;
    std::string distribution;
    std::string hardware_tag;
    int nodes = 0;
    int ranks_per_node = 0;
    int threads_per_rank = 0;
    int cores_per_node = 0;
};

int run_ingest(const IngestOpts& opts) {
    const std::string text = read_input(opts.input);
    const std::string source = opts.input == "-" ? "<stdin>" : opts.input;

    TimingSeries series;
    if (opts.format == "csv") {
        series = stepstat::parse_step_csv(text, source);
    } else if (opts.format == "log") {
        if (opts.pattern.empty()) {
            stepstat::raise(stepstat::errc::config, "--format log requires --pattern");
        }
        series = stepstat::parse_step_log(text, opts.pattern, source);
    } else {
        stepstat::raise(stepstat::errc::config, "unknown format '" + opts.format + "'");
    }

    series.run_id = !opts.run_id.empty() ? opts.run_id
                                         : (opts.input == "-" ? "stdin" : fs::path(opts.input).stem().string());
    if (opts.nodes > 0 || !opts.label.empty() || !opts.distribution.empty()) {
        stepstat::RunConfig cfg;
        cfg.nodes = opts.nodes > 0 ? opts.nodes : 1;
        cfg.ranks_per_node = opts.ranks_per_node > 0 ? opts.ranks_per_node : 1;
        cfg.threads_per_rank = opts.threads_per_rank > 0 ? opts.threads_per_rank : 1;
        cfg.cores_per_node = opts.cores_per_node;
        cfg.distribution = opts.distribution.empty() ? stepstat::Distribution::none
                                                     : stepstat::parse_distribution(opts.distribution);
        cfg.hardware_tag = opts.hardware_tag;
        cfg.label = !opts.label.empty() ? opts.label : stepstat::default_config_label(cfg);
        series.config = cfg;
    }

    if (!opts.raw) {
        series = stepstat::sample_first_n(stepstat::trim_warmup(series, opts.warmup), opts.sample_n);
    }

    const std::string out_path = !opts.out.empty() ? opts.out : series.run_id + ".json";
    stepstat::save_series(series, out_path);
    std::cout << "wrote " << out_path << " (" << series.steps.size() << " steps, window "
              << series.steps.front().index << ".." << series.steps.back().index << ")\n";
    for (const std::string& note : series.annotations) {
        std::cerr << "note: " << note << "\n";
    }
    return stepstat::kExitSuccess;
}

// ---------------------------------------------------------------------------
// summarize

struct SummarizeOpts {
    std::vector<std::string> inputs;
    double ci_level = 0.95;
    std::string plot;
};

int run_summarize(const SummarizeOpts& opts) {
    stepstat::TableSection table;
    table.header = {"run", "n", "mean (s)", "std (s)", "cv", "ci lo", "ci hi"};

    std::vector<stepstat::PlotGroup> groups;
    std::vector<double> means;
    std::vector<double> pooled;
    for (const std::string& input : opts.inputs) {
        const TimingSeries series = stepstat::load_series(input);
        const auto values = series.durations();
        const auto s = stepstat::summarize(values, opts.ci_level);
        table.rows.push_back({series.run_id, std::to_string(s.n), fmt("%.6g", s.mean),
                              fmt("%.4g", s.stddev),
                              s.cv ? fmt("%.4f", *s.cv) : std::string("n/a"), fmt("%.6g", s.ci_lo),
                              fmt("%.6g", s.ci_hi)});
        groups.push_back({series.run_id, values});
        means.push_back(s.mean);
        pooled.insert(pooled.end(), values.begin(), values.end());
    }

    std::cout << stepstat::render_table(table);

    // Cross-run aggregation is reported both ways: the mean of per-run means
    // and the summary of the pooled observations.
    if (opts.inputs.size() > 1) {
        const auto mean_of_means = stepstat::summarize(means, opts.ci_level);
        const auto pooled_summary = stepstat::summarize(pooled, opts.ci_level);
        std::cout << "\nacross runs (mean of means): " << summary_row(mean_of_means) << "\n";
        std::cout << "across runs (pooled steps)  : " << summary_row(pooled_summary) << "\n";
    }

    if (!opts.plot.empty()) {
        stepstat::write_file(opts.plot, stepstat::emit_timestep_box(groups));
        std::cout << "wrote " << opts.plot << "\n";
    }
    return stepstat::kExitSuccess;
}

// ---------------------------------------------------------------------------
// compare

struct CompareCliOpts {
    std::string baseline;
    std::string candidate;
    double alpha = 0.05;
    std::size_t n = 35;
    std::uint64_t warmup = 2;
    std::string variant = "pooled";
    std::string gate;
    std::string plot;
};

int run_compare(const CompareCliOpts& opts) {
    const TimingSeries baseline = stepstat::load_series(opts.baseline);
    const TimingSeries candidate = stepstat::load_series(opts.candidate);

    stepstat::CompareOptions compare_opts;
    compare_opts.alpha = opts.alpha;
    compare_opts.n = opts.n;
    compare_opts.warmup = opts.warmup;
    compare_opts.variant = stepstat::parse_test_variant(opts.variant);

    const auto verdict = stepstat::compare_runs(baseline, candidate, compare_opts);

    std::cout << "baseline : " << verdict.baseline_id << " (n=" << verdict.window.length
              << ", window " << verdict.window.first_step << ".."
              << verdict.window.first_step + verdict.window.length - 1 << ")\n";
    std::cout << "           " << summary_row(verdict.baseline_summary) << "\n";
    std::cout << "candidate: " << verdict.candidate_id << "\n";
    std::cout << "           " << summary_row(verdict.candidate_summary) << "\n";
    std::cout << "speedup  : " << fmt("%.4f", verdict.speedup) << "x\n";
    std::cout << "mean test: t=" << fmt("%.4g", verdict.mean_test.t_stat) << " dof="
              << fmt("%.4g", verdict.mean_test.dof) << " p=" << fmt("%.4g", verdict.mean_test.p_value)
              << " (" << stepstat::to_string(verdict.mean_test.variant) << ", alpha "
              << fmt("%g", verdict.mean_test.alpha) << ") -> "
              << (verdict.mean_test.significant ? "significant" : "not significant") << "\n";
    std::cout << "var test : f=" << fmt("%.4g", verdict.variance_test.f_stat) << " dof=("
              << fmt("%g", verdict.variance_test.dof_num) << ","
              << fmt("%g", verdict.variance_test.dof_den) << ") p="
              << fmt("%.4g", verdict.variance_test.p_value) << " -> "
              << (verdict.variance_test.significant ? "variances differ"
                                                    : "variances indistinguishable")
              << "\n";
    std::cout << "verdict  : " << verdict_colored(verdict.verdict) << "\n";
    std::cout << stepstat::verdict_line(verdict) << "\n";

    if (!opts.plot.empty()) {
        const auto base_window = stepstat::detail::apply_protocol(baseline, compare_opts);
        const auto cand_window = stepstat::detail::apply_protocol(candidate, compare_opts);
        const std::vector<stepstat::PlotGroup> groups{
            {verdict.baseline_id, base_window.durations()},
            {verdict.candidate_id, cand_window.durations()}};
        stepstat::write_file(opts.plot, stepstat::emit_timestep_box(groups));
        std::cout << "wrote " << opts.plot << "\n";
    }

    if (!opts.gate.empty()) {
        const auto policy = stepstat::parse_gate_policy(opts.gate);
        const int code = stepstat::gate_exit_code(verdict, policy);
        if (code != stepstat::kExitSuccess) {
            std::cerr << "gate " << stepstat::to_string(policy) << " violated\n";
        }
        return code;
    }
    return stepstat::kExitSuccess;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
    std::string plan_file;
    bool dry_run = false;
};

void print_plan(const stepstat::SweepPlan& plan) {
    stepstat::TableSection table;
    table.header = {"label", "nodes", "ranks/node", "total ranks", "threads", "distribution",
                    "bind"};
    for (const auto& cfg : plan.configs) {
        table.rows.push_back({cfg.label, std::to_string(cfg.nodes),
                              std::to_string(cfg.ranks_per_node), std::to_string(cfg.total_ranks()),
                              std::to_string(cfg.threads_per_rank),
                              stepstat::to_string(cfg.distribution),
                              cfg.cores_per_socket_bind
                                  ? std::to_string(*cfg.cores_per_socket_bind) + "/socket"
                                  : "-"});
    }
    std::cout << stepstat::render_table(table);
    std::cout << "\nrepetitions: " << plan.repetitions << "\nworkdir: " << plan.workdir.string()
              << "\nresults index: " << plan.results_index.string() << "\n";
}

int run_sweep_plan(const SweepOpts& opts) {
    const auto plan = stepstat::load_sweep_plan(opts.plan_file);
    print_plan(plan);
    std::cout << "\ncommands:\n";
    stepstat::execute_plan(plan, stepstat::ExecMode::dry_run, std::cout);
    return stepstat::kExitSuccess;
}

int run_sweep_run(const SweepOpts& opts) {
    const auto plan = stepstat::load_sweep_plan(opts.plan_file);
    if (opts.dry_run) {
        stepstat::execute_plan(plan, stepstat::ExecMode::dry_run, std::cout);
        return stepstat::kExitSuccess;
    }
    const auto artifacts = stepstat::execute_plan(plan, stepstat::ExecMode::run, std::cout);
    int failures = 0;
    for (const auto& a : artifacts) {
        if (a.exit_status != 0) ++failures;
    }
    std::cout << artifacts.size() << " runs, " << failures << " failed; index at "
              << plan.results_index.string() << "\n";
    return stepstat::kExitSuccess;
}

// ---------------------------------------------------------------------------
// scaling

struct ScalingOpts {
    std::string input;
    std::optional<double> baseline;
    double threshold = 0.70;
    std::string kind = "nodes";
    std::string plot;
    bool amdahl = true;
};

std::vector<std::pair<double, double>> parse_scaling_csv(const std::string& text,
                                                         const std::string& source) {
    const auto lines = stepstat::detail::split_lines(text);
    if (lines.empty() || stepstat::detail::strip_cr(lines[0]) != "n,seconds") {
        stepstat::raise(stepstat::errc::parse, source + ":1: expected header 'n,seconds'");
    }
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = stepstat::detail::strip_cr(lines[i]);
        if (line.empty()) continue;
        const auto fields = stepstat::detail::split_fields(line);
        if (fields.size() != 2) {
            stepstat::raise(stepstat::errc::parse,
                            source + ":" + std::to_string(i + 1) + ": expected 2 fields");
        }
        points.emplace_back(stepstat::detail::parse_seconds(fields[0], i + 1, source),
                            stepstat::detail::parse_seconds(fields[1], i + 1, source));
    }
    return points;
}

int run_scaling(const ScalingOpts& opts) {
    const std::string text = read_input(opts.input);
    const std::string source = opts.input == "-" ? "<stdin>" : opts.input;
    const auto points = parse_scaling_csv(text, source);
    const auto series = stepstat::scaling_analysis(points, opts.baseline, opts.threshold);

    stepstat::TableSection table;
    const std::string axis = opts.kind == "threads" ? "threads" : "n";
    table.header = {axis, "seconds", "speedup", "efficiency", "ideal"};
    for (const auto& p : series.points) {
        table.rows.push_back({fmt("%g", p.n), fmt("%.6g", p.seconds), fmt("%.4f", p.speedup),
                              fmt("%.4f", p.efficiency), fmt("%.4f", p.ideal_speedup)});
    }
    std::cout << stepstat::render_table(table);

    if (series.max_n_meeting_threshold) {
        std::cout << "\nefficiency >= " << fmt("%.2f", series.efficiency_threshold) << " up to "
                  << axis << " = " << fmt("%g", *series.max_n_meeting_threshold) << "\n";
    } else {
        std::cout << "\nno point meets efficiency >= " << fmt("%.2f", series.efficiency_threshold)
                  << "\n";
    }

    if (opts.amdahl) {
        const auto fit = stepstat::amdahl_fit(series);
        std::cout << "serial-fraction fit: parallel fraction "
                  << fmt("%.4f", fit.parallel_fraction) << ", max speedup "
                  << (std::isinf(fit.max_speedup) ? std::string("inf")
                                                  : fmt("%.2f", fit.max_speedup))
                  << ", rmse " << fmt("%.3g", fit.residual_rmse) << "\n";
    }

    if (!opts.plot.empty()) {
        const auto kind = opts.kind == "threads" ? stepstat::PlotKind::thread_scaling
                                                 : stepstat::PlotKind::scaling_curve;
        stepstat::write_file(opts.plot, stepstat::emit_scaling_curve(series, kind));
        std::cout << "wrote " << opts.plot << "\n";
    }
    return stepstat::kExitSuccess;
}

// ---------------------------------------------------------------------------
// bandwidth

struct BandwidthOpts {
    std::vector<std::string> inputs;
    std::vector<std::string> pairs;  // "setting A:setting B"
    std::string marker = "*";
};

int run_bandwidth(const BandwidthOpts& opts) {
    stepstat::ReportDocument doc;
    doc.title = "memory bandwidth report";
    doc.meta.generated_at = stepstat::detail::utc_timestamp();

    std::vector<stepstat::BandwidthRecord> records;
    std::vector<std::string> node_order;
    for (const std::string& input : opts.inputs) {
        const std::string text = read_input(input);
        doc.meta.input_digests.push_back(input + " " + stepstat::digest_hex(text));
        for (auto& rec : stepstat::parse_bandwidth_csv(text, input)) {
            if (std::find(node_order.begin(), node_order.end(), rec.node_label) ==
                node_order.end()) {
                node_order.push_back(rec.node_label);
            }
            records.push_back(std::move(rec));
        }
    }

    std::vector<std::pair<std::string, std::string>> ratio_pairs;
    for (const std::string& pair : opts.pairs) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos) {
            stepstat::raise(stepstat::errc::config,
                            "--pair expects 'setting A:setting B', got '" + pair + "'");
        }
        ratio_pairs.emplace_back(pair.substr(0, colon), pair.substr(colon + 1));
    }

    const auto report = stepstat::bandwidth_report(records, ratio_pairs);

    for (const std::string& node : node_order) {
        std::vector<stepstat::BandwidthRecord> node_records;
        for (const auto& rec : records) {
            if (rec.node_label == node) node_records.push_back(rec);
        }
        doc.sections.push_back(stepstat::bandwidth_table(node_records, "node " + node));
    }
    std::cout << stepstat::render_document(doc, opts.marker);

    for (const auto& ratio : report.ratios) {
        std::cout << "\n'" << ratio.setting_a << "' vs '" << ratio.setting_b
                  << "': bandwidth ratio " << fmt("%.4f", ratio.bandwidth_ratio)
                  << ", runtime speedup " << fmt("%.4f", ratio.runtime_speedup) << "\n";
    }
    return stepstat::kExitSuccess;
}

// ---------------------------------------------------------------------------
// synth

struct SynthOpts {
    stepstat::SyntheticSpec spec;
    std::string shape = "normal";
    std::string out = "-";
    bool seed_given = false;
    // launcher-style placement flags tolerated so the generator can stand in
    // for the application inside a sweep template
    std::string distribution;
    int cores_per_socket = 0;
    std::vector<std::string> effect_if_dist;  // e.g. "cyclic=0.04"
};

int run_synth(SynthOpts opts) {
    opts.spec.shape = stepstat::parse_noise_shape(opts.shape);
    if (!opts.seed_given) opts.spec.seed = default_seed();

    for (const std::string& rule : opts.effect_if_dist) {
        const auto eq = rule.find('=');
        if (eq == std::string::npos) {
            stepstat::raise(stepstat::errc::config,
                            "--effect-if-dist expects 'name=fraction', got '" + rule + "'");
        }
        if (rule.substr(0, eq) == opts.distribution) {
            try {
                opts.spec.effect_fraction = std::stod(rule.substr(eq + 1));
            } catch (const std::exception&) {
                stepstat::raise(stepstat::errc::config,
                                "--effect-if-dist has a bad fraction in '" + rule + "'");
            }
        }
    }

    const auto series = stepstat::generate_synthetic(opts.spec);
    const std::string csv = stepstat::to_step_csv(series);
    if (opts.out == "-") {
        std::cout << csv;
    } else {
        stepstat::write_file(opts.out, csv);
        std::cout << "wrote " << opts.out << " (" << series.steps.size() << " steps)\n";
    }
    return stepstat::kExitSuccess;
}

// ---------------------------------------------------------------------------
// power

struct PowerOpts {
    stepstat::PowerSpec spec;
    std::string shape = "normal";
    std::string variant = "pooled";
    bool seed_given = false;
};

int run_power(PowerOpts opts) {
    opts.spec.shape = stepstat::parse_noise_shape(opts.shape);
    opts.spec.variant = stepstat::parse_test_variant(opts.variant);
    if (!opts.seed_given) opts.spec.seed = default_seed();
    const double power = stepstat::power_estimate(opts.spec);
    std::cout << "power=" << fmt("%.4f", power) << " effect=" << fmt("%g", opts.spec.effect_fraction)
              << " cv=" << fmt("%g", opts.spec.cv) << " n=" << opts.spec.n_per_group
              << " alpha=" << fmt("%g", opts.spec.alpha) << " trials=" << opts.spec.trials
              << " seed=" << opts.spec.seed << " shape=" << stepstat::to_string(opts.spec.shape)
              << "\n";
    return stepstat::kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statistical comparison harness for noisy per-step benchmark timings"};
    app.set_version_flag("--version", std::string("stepstat ") + stepstat::kVersion);
    app.require_subcommand(1);
    app.add_flag("--no-color", g_no_color, "disable ANSI colors (NO_COLOR is also honored)");

    IngestOpts ingest_opts;
    auto* ingest = app.add_subcommand("ingest", "Parse a timing log or CSV into a series file");
    ingest->add_option("input", ingest_opts.input, "step CSV/log file, or - for stdin")->required();
    ingest->add_option("--format", ingest_opts.format, "input format: csv or log")
        ->check(CLI::IsMember({"csv", "log"}));
    ingest->add_option("--pattern", ingest_opts.pattern,
                       "log line pattern with (?<step>...) and (?<seconds>...) captures");
    ingest->add_option("--run-id", ingest_opts.run_id, "run identifier (default: file stem)");
    ingest->add_option("--out", ingest_opts.out, "output series file (default: <run-id>.json)");
    ingest->add_option("--warmup", ingest_opts.warmup, "warmup steps to trim (default 2)");
    ingest->add_option("--n", ingest_opts.sample_n, "sample size to keep (default 35)");
    ingest->add_flag("--raw", ingest_opts.raw, "skip the trim/sample protocol");
    ingest->add_option("--label", ingest_opts.label, "config label to attach");
    ingest->add_option("--nodes", ingest_opts.nodes, "config: node count");
    ingest->add_option("--ranks-per-node", ingest_opts.ranks_per_node, "config: ranks per node");
    ingest->add_option("--threads", ingest_opts.threads_per_rank, "config: threads per rank");
    ingest->add_option("--cores-per-node", ingest_opts.cores_per_node, "config: cores per node");
    ingest->add_option("--distribution", ingest_opts.distribution,
                       "config: default, round_robin or block");
    ingest->add_option("--hardware-tag", ingest_opts.hardware_tag, "config: hardware tag");

    SummarizeOpts summarize_opts;
    auto* summarize = app.add_subcommand("summarize", "Descriptive statistics for series files");
    summarize->add_option("series", summarize_opts.inputs, "series files (JSON or step CSV)")
        ->required()
        ->expected(-1);
    summarize->add_option("--ci", summarize_opts.ci_level, "confidence level (default 0.95)");
    summarize->add_option("--plot", summarize_opts.plot, "write box-plot TSV to this file");

    CompareCliOpts compare_opts;
    auto* compare = app.add_subcommand("compare", "Decide whether a candidate run beat a baseline");
    compare->add_option("baseline", compare_opts.baseline, "baseline series file")->required();
    compare->add_option("candidate", compare_opts.candidate, "candidate series file")->required();
    compare->add_option("--alpha", compare_opts.alpha, "significance level (default 0.05)");
    compare->add_option("--n", compare_opts.n, "sample window length (default 35)");
    compare->add_option("--warmup", compare_opts.warmup,
                        "warmup steps to trim if not already trimmed (default 2)");
    compare->add_option("--variant", compare_opts.variant, "t-test variant")
        ->check(CLI::IsMember({"pooled", "welch", "paired"}));
    compare->add_option("--gate", compare_opts.gate,
                        "CI gate policy: fail_on_slower or fail_on_not_faster (exit 3 on violation)")
        ->check(CLI::IsMember({"fail_on_slower", "fail_on_not_faster"}));
    compare->add_option("--plot", compare_opts.plot, "write box-plot TSV of both windows");

    SweepOpts sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "Plan or execute a placement/affinity sweep");
    sweep->require_subcommand(1);
    auto* sweep_plan = sweep->add_subcommand("plan", "Expand a plan file and print the matrix");
    sweep_plan->add_option("plan", sweep_opts.plan_file, "sweep plan file")->required();
    auto* sweep_run = sweep->add_subcommand("run", "Execute a plan sequentially");
    sweep_run->add_option("plan", sweep_opts.plan_file, "sweep plan file")->required();
    sweep_run->add_flag("--dry-run", sweep_opts.dry_run, "print commands without executing");

    ScalingOpts scaling_opts;
    auto* scaling = app.add_subcommand("scaling", "Strong-scaling analysis of (n, seconds) points");
    scaling->add_option("input", scaling_opts.input, "CSV with header n,seconds, or - for stdin")
        ->required();
    double baseline_arg = 0.0;
    auto* baseline_opt =
        scaling->add_option("--baseline", baseline_arg, "baseline resource count (default: smallest n)");
    scaling->add_option("--threshold", scaling_opts.threshold,
                        "efficiency threshold to flag (default 0.70)");
    scaling->add_option("--kind", scaling_opts.kind, "axis kind: nodes or threads")
        ->check(CLI::IsMember({"nodes", "threads"}));
    scaling->add_option("--plot", scaling_opts.plot, "write scaling-curve TSV to this file");
    scaling->add_flag("!--no-amdahl", scaling_opts.amdahl, "skip the serial-fraction fit");

    BandwidthOpts bandwidth_opts;
    auto* bandwidth = app.add_subcommand("bandwidth", "Bandwidth/runtime report from CSVs");
    bandwidth->add_option("input", bandwidth_opts.inputs, "bandwidth CSV files")
        ->required()
        ->expected(-1);
    bandwidth->add_option("--pair", bandwidth_opts.pairs,
                          "ratio pair 'setting A:setting B' (repeatable)");
    bandwidth->add_option("--marker", bandwidth_opts.marker, "best-value marker (default '*')");

    SynthOpts synth_opts;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic step CSV");
    synth->add_option("--mean", synth_opts.spec.mean, "mean step duration in seconds");
    synth->add_option("--cv", synth_opts.spec.cv, "coefficient of variation");
    synth->add_option("--steps", synth_opts.spec.n_steps, "total steps including warmup");
    synth->add_option("--warmup", synth_opts.spec.warmup_steps, "warmup steps");
    synth->add_option("--warmup-factor", synth_opts.spec.warmup_inflation,
                      "warmup inflation factor");
    synth->add_option("--effect", synth_opts.spec.effect_fraction,
                      "effect fraction (mean scaled by 1 - effect)");
    auto* synth_seed =
        synth->add_option("--seed", synth_opts.spec.seed, "RNG seed (default: STEPSTAT_SEED or 0)");
    synth->add_option("--shape", synth_opts.shape, "noise shape: normal or lognormal")
        ->check(CLI::IsMember({"normal", "lognormal"}));
    synth->add_option("--out", synth_opts.out, "output file, or - for stdout (default)");
    synth->add_option("--distribution", synth_opts.distribution,
                      "placement token observed by the stand-in application");
    synth->add_option("--cores-per-socket", synth_opts.cores_per_socket,
                      "placement token observed by the stand-in application");
    synth->add_option("--effect-if-dist", synth_opts.effect_if_dist,
                      "apply 'name=fraction' when --distribution matches (repeatable)");
    int synth_ranks = 0;
    int synth_nodes = 0;
    synth->add_option("--ranks", synth_ranks, "accepted for launch templates, ignored");
    synth->add_option("--nodes", synth_nodes, "accepted for launch templates, ignored");

    PowerOpts power_opts;
    auto* power = app.add_subcommand("power", "Monte-Carlo power of the comparison protocol");
    power->add_option("--effect", power_opts.spec.effect_fraction, "effect fraction to detect");
    power->add_option("--cv", power_opts.spec.cv, "coefficient of variation of the noise");
    power->add_option("--n", power_opts.spec.n_per_group, "sample size per group (default 35)");
    power->add_option("--alpha", power_opts.spec.alpha, "significance level (default 0.05)");
    power->add_option("--trials", power_opts.spec.trials, "Monte-Carlo trials (default 1000)");
    auto* power_seed =
        power->add_option("--seed", power_opts.spec.seed, "RNG seed (default: STEPSTAT_SEED or 0)");
    power->add_option("--shape", power_opts.shape, "noise shape: normal or lognormal")
        ->check(CLI::IsMember({"normal", "lognormal"}));
    power->add_option("--variant", power_opts.variant, "t-test variant")
        ->check(CLI::IsMember({"pooled", "welch"}));

    // let the global --no-color flag appear after a subcommand too
    for (CLI::App* sub : {ingest, summarize, compare, sweep, sweep_plan, sweep_run, scaling,
                          bandwidth, synth, power}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? stepstat::kExitSuccess : stepstat::kExitInput;
    }

    if (std::getenv("NO_COLOR") != nullptr) g_no_color = true;
    synth_opts.seed_given = synth_seed->count() > 0;
    power_opts.seed_given = power_seed->count() > 0;

    try {
        if (app.got_subcommand(ingest)) return run_ingest(ingest_opts);
        if (app.got_subcommand(summarize)) return run_summarize(summarize_opts);
        if (app.got_subcommand(compare)) return run_compare(compare_opts);
        if (app.got_subcommand(sweep)) {
            if (sweep->got_subcommand(sweep_plan)) return run_sweep_plan(sweep_opts);
            return run_sweep_run(sweep_opts);
        }
        if (app.got_subcommand(scaling)) {
            if (baseline_opt->count() > 0) scaling_opts.baseline = baseline_arg;
            return run_scaling(scaling_opts);
        }
        if (app.got_subcommand(bandwidth)) return run_bandwidth(bandwidth_opts);
        if (app.got_subcommand(synth)) return run_synth(synth_opts);
        if (app.got_subcommand(power)) return run_power(power_opts);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.numerical() ? stepstat::kExitNumerical : stepstat::kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return stepstat::kExitNumerical;
    }
    return stepstat::kExitSuccess;
}
