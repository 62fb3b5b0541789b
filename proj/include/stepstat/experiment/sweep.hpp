#pragma once

#include "stepstat/error.hpp"
#include "stepstat/experiment/run_config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace stepstat {

struct SweepAxes {
    std::vector<int> nodes;
    std::vector<int> total_ranks;
    std::vector<Distribution> distributions;
    std::optional<int> threads_per_rank;       // pin; default derives by fill policy
    std::optional<int> cores_per_socket_bind;
    bool allow_oversubscribe = false;
};

struct SweepPlan {
    std::vector<RunConfig> configs;
    int repetitions = 1;
    std::string command_template;  // needs {nodes} {total_ranks} {extra_flags} {app}
    std::string app;
    std::filesystem::path workdir = "runs";
    std::filesystem::path results_index = "runs/index.jsonl";
};

namespace detail {

struct RejectedCombo {
    int nodes = 0;
    int total_ranks = 0;
    Distribution distribution = Distribution::none;
    std::string reason;
};

inline std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace detail

// Cartesian product of the axes, filtered by hardware feasibility.
// Ordering is deterministic: nodes ascending, then total ranks ascending,
// then distributions in the order given.
inline SweepPlan expand_sweep(const SweepAxes& axes, const Hardware& hardware,
                              int repetitions = 1) {
    if (axes.nodes.empty() || axes.total_ranks.empty() || axes.distributions.empty()) {
        raise(errc::planning, "sweep axes must all be nonempty");
    }
    if (repetitions < 1) {
        raise(errc::planning, "repetitions must be >= 1");
    }
    if (hardware.cores_per_node < 1 || hardware.sockets_per_node < 1) {
        raise(errc::planning, "hardware must declare cores_per_node and sockets_per_node");
    }

    std::vector<Distribution> dists;
    for (Distribution d : axes.distributions) {
        if (std::find(dists.begin(), dists.end(), d) == dists.end()) dists.push_back(d);
    }

    SweepPlan plan;
    plan.repetitions = repetitions;
    std::vector<detail::RejectedCombo> rejected;

    for (int nodes : detail::sorted_unique(axes.nodes)) {
        for (int total_ranks : detail::sorted_unique(axes.total_ranks)) {
            for (Distribution dist : dists) {
                detail::RejectedCombo rej{nodes, total_ranks, dist, ""};
                if (nodes < 1 || total_ranks < 1) {
                    rej.reason = "counts must be >= 1";
                    rejected.push_back(rej);
                    continue;
                }
                if (total_ranks % nodes != 0) {
                    rej.reason = "total ranks not divisible by node count";
                    rejected.push_back(rej);
                    continue;
                }
                RunConfig cfg;
                cfg.nodes = nodes;
                cfg.ranks_per_node = total_ranks / nodes;
                cfg.distribution = dist;
                cfg.cores_per_socket_bind = axes.cores_per_socket_bind;
                cfg.cores_per_node = hardware.cores_per_node;
                cfg.sockets_per_node = hardware.sockets_per_node;
                cfg.hardware_tag = hardware.tag;
                try {
                    cfg.threads_per_rank = derive_threads(hardware.cores_per_node,
                                                          cfg.ranks_per_node,
                                                          axes.threads_per_rank);
                    cfg.label = default_config_label(cfg);
                    validate_config(cfg, axes.allow_oversubscribe);
                } catch (const Error& e) {
                    rej.reason = e.what();
                    rejected.push_back(rej);
                    continue;
                }
                plan.configs.push_back(cfg);
            }
        }
    }

    if (plan.configs.empty()) {
        std::ostringstream msg;
        msg << "no feasible configuration; rejected combinations:";
        for (const auto& r : rejected) {
            msg << "\n  nodes=" << r.nodes << " total_ranks=" << r.total_ranks
                << " distribution=" << to_string(r.distribution) << ": " << r.reason;
        }
        raise(errc::planning, msg.str());
    }
    return plan;
}

namespace detail {

inline std::string trim_ws(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim_ws(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

inline int parse_int_value(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        raise(errc::config, "plan key '" + key + "': invalid integer '" + value + "'");
    }
}

inline bool parse_bool_value(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    raise(errc::config, "plan key '" + key + "': invalid boolean '" + value + "'");
}

}  // namespace detail

// Declarative sweep plan file: `key = value` lines, `#` comments, axes as
// comma-separated lists. See the CLI help for the key reference.
inline SweepPlan parse_sweep_plan(const std::string& text, const std::string& source = "<plan>") {
    Hardware hardware;
    SweepAxes axes;
    int repetitions = 1;
    std::string command_template;
    std::string app;
    std::filesystem::path workdir = "runs";
    std::optional<std::filesystem::path> results_index;

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim_ws(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            raise(errc::config, source + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = detail::trim_ws(line.substr(0, eq));
        const std::string value = detail::trim_ws(line.substr(eq + 1));

        if (key == "cores_per_node") {
            hardware.cores_per_node = detail::parse_int_value(value, key);
        } else if (key == "sockets_per_node") {
            hardware.sockets_per_node = detail::parse_int_value(value, key);
        } else if (key == "hardware_tag") {
            hardware.tag = value;
        } else if (key == "nodes") {
            for (const auto& v : detail::split_list(value)) {
                axes.nodes.push_back(detail::parse_int_value(v, key));
            }
        } else if (key == "total_ranks") {
            for (const auto& v : detail::split_list(value)) {
                axes.total_ranks.push_back(detail::parse_int_value(v, key));
            }
        } else if (key == "distribution") {
            for (const auto& v : detail::split_list(value)) {
                axes.distributions.push_back(parse_distribution(v));
            }
        } else if (key == "threads") {
            if (value != "fill") axes.threads_per_rank = detail::parse_int_value(value, key);
        } else if (key == "cores_per_socket_bind") {
            axes.cores_per_socket_bind = detail::parse_int_value(value, key);
        } else if (key == "allow_oversubscribe") {
            axes.allow_oversubscribe = detail::parse_bool_value(value, key);
        } else if (key == "repetitions") {
            repetitions = detail::parse_int_value(value, key);
        } else if (key == "template") {
            command_template = value;
        } else if (key == "app") {
            app = value;
        } else if (key == "workdir") {
            workdir = value;
        } else if (key == "results_index") {
            results_index = value;
        } else {
            raise(errc::config, source + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }

    if (command_template.empty()) {
        raise(errc::config, source + ": missing required key 'template'");
    }
    if (app.empty()) {
        raise(errc::config, source + ": missing required key 'app'");
    }

    SweepPlan plan = expand_sweep(axes, hardware, repetitions);
    plan.command_template = command_template;
    plan.app = app;
    plan.workdir = workdir;
    plan.results_index = results_index.value_or(workdir / "index.jsonl");
    return plan;
}

inline SweepPlan load_sweep_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        raise(errc::io, "cannot open sweep plan '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_sweep_plan(buffer.str(), path.string());
}

}  // namespace stepstat
