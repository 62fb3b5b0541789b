#pragma once

#include "stepstat/error.hpp"
#include "stepstat/experiment/launch.hpp"
#include "stepstat/experiment/sweep.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace stepstat {

enum class ExecMode { dry_run, run };

struct RunArtifact {
    RunConfig config;
    int repetition = 0;
    std::filesystem::path log_path;
    int exit_status = 0;
    std::string command;  // shell-quoted, env prefix included
    std::string started_at;
    std::string finished_at;
};

// Test instrumentation: called around every child process in run mode.
struct ExecHooks {
    std::function<void(const RunConfig&, int repetition)> on_start;
    std::function<void(const RunArtifact&)> on_finish;
};

namespace detail {

inline std::string shell_quote(const std::string& token) {
    std::string out = "'";
    for (char c : token) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    out += "'";
    return out;
}

inline std::string shell_command(const LaunchSpec& spec) {
    std::string cmd = "env";
    for (const auto& [name, value] : spec.env) {
        cmd += ' ';
        cmd += shell_quote(name + "=" + value);
    }
    for (const std::string& token : spec.argv) {
        cmd += ' ';
        cmd += shell_quote(token);
    }
    return cmd;
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json j{
        {"nodes", c.nodes},
        {"ranks_per_node", c.ranks_per_node},
        {"threads_per_rank", c.threads_per_rank},
        {"distribution", to_string(c.distribution)},
        {"cores_per_node", c.cores_per_node},
        {"sockets_per_node", c.sockets_per_node},
        {"label", c.label},
        {"hardware_tag", c.hardware_tag},
    };
    if (c.cores_per_socket_bind) j["cores_per_socket_bind"] = *c.cores_per_socket_bind;
    return j;
}

inline RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    c.nodes = j.at("nodes").get<int>();
    c.ranks_per_node = j.at("ranks_per_node").get<int>();
    c.threads_per_rank = j.at("threads_per_rank").get<int>();
    c.distribution = parse_distribution(j.at("distribution").get<std::string>());
    c.cores_per_node = j.value("cores_per_node", 0);
    c.sockets_per_node = j.value("sockets_per_node", 2);
    c.label = j.value("label", "");
    c.hardware_tag = j.value("hardware_tag", "");
    if (j.contains("cores_per_socket_bind")) {
        c.cores_per_socket_bind = j.at("cores_per_socket_bind").get<int>();
    }
    return c;
}

}  // namespace detail

inline std::filesystem::path run_log_path(const SweepPlan& plan, const RunConfig& config,
                                          int repetition) {
    std::string name = config.label;
    if (plan.repetitions > 1) name += "_rep" + std::to_string(repetition);
    return plan.workdir / (name + ".log");
}

// Executes (or prints) every config x repetition in plan order.
// Run mode is strictly sequential: one child at a time, stdout+stderr
// captured to the per-run log, one index record appended per run. A failing
// child is recorded and the plan continues; an unwritable index is fatal.
inline std::vector<RunArtifact> execute_plan(const SweepPlan& plan, ExecMode mode,
                                             std::ostream& out, const ExecHooks& hooks = {}) {
    std::vector<RunArtifact> artifacts;

    std::ofstream index;
    if (mode == ExecMode::run) {
        std::error_code ec;
        std::filesystem::create_directories(plan.workdir, ec);
        if (!plan.results_index.parent_path().empty()) {
            std::filesystem::create_directories(plan.results_index.parent_path(), ec);
        }
        index.open(plan.results_index, std::ios::app);
        if (!index) {
            raise(errc::io, "cannot open results index '" + plan.results_index.string() +
                                "' for writing");
        }
    }

    for (const RunConfig& config : plan.configs) {
        for (int rep = 0; rep < plan.repetitions; ++rep) {
            RunArtifact artifact;
            artifact.config = config;
            artifact.repetition = rep;
            artifact.log_path = run_log_path(plan, config, rep);

            const LaunchSpec spec =
                build_launch_command(config, plan.command_template, plan.app, artifact.log_path);
            artifact.command = detail::shell_command(spec);

            if (mode == ExecMode::dry_run) {
                out << artifact.command << "\n";
                artifacts.push_back(artifact);
                continue;
            }

            if (hooks.on_start) hooks.on_start(config, rep);
            artifact.started_at = detail::utc_timestamp();
            const std::string full =
                artifact.command + " > " + detail::shell_quote(artifact.log_path.string()) +
                " 2>&1";
            const int raw = std::system(full.c_str());
            if (raw == -1) {
                artifact.exit_status = -1;
            } else if (WIFEXITED(raw)) {
                artifact.exit_status = WEXITSTATUS(raw);
            } else if (WIFSIGNALED(raw)) {
                artifact.exit_status = 128 + WTERMSIG(raw);
            } else {
                artifact.exit_status = raw;
            }
            artifact.finished_at = detail::utc_timestamp();
            if (hooks.on_finish) hooks.on_finish(artifact);

            nlohmann::json record{
                {"run_id", config.label + (plan.repetitions > 1
                                               ? "_rep" + std::to_string(rep)
                                               : std::string())},
                {"config", detail::config_to_json(config)},
                {"repetition", rep},
                {"log_path", artifact.log_path.string()},
                {"exit_status", artifact.exit_status},
                {"command", artifact.command},
                {"started_at", artifact.started_at},
                {"finished_at", artifact.finished_at},
            };
            index << record.dump() << "\n";
            index.flush();
            if (!index) {
                raise(errc::io, "failed to append to results index '" +
                                    plan.results_index.string() + "'");
            }

            out << (artifact.exit_status == 0 ? "ok   " : "FAIL ") << config.label;
            if (plan.repetitions > 1) out << " rep " << rep;
            out << " -> " << artifact.log_path.string() << " (exit " << artifact.exit_status
                << ")\n";
            artifacts.push_back(artifact);
        }
    }
    return artifacts;
}

}  // namespace stepstat
