#pragma once

#include "stepstat/error.hpp"
#include "stepstat/experiment/run_config.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace stepstat {

// One fully resolved launcher invocation.
struct LaunchSpec {
    std::vector<std::string> argv;
    std::vector<std::pair<std::string, std::string>> env;
    std::filesystem::path expected_log;
};

namespace detail {

inline void replace_all(std::string& text, const std::string& placeholder,
                        const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(placeholder, pos)) != std::string::npos) {
        text.replace(pos, placeholder.size(), value);
        pos += value.size();
    }
}

inline std::vector<std::string> split_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (c == ' ' || c == '\t') {
            if (!current.empty()) {
                tokens.push_back(current);
                current.clear();
            }
        } else {
            current += c;
        }
    }
    if (!current.empty()) tokens.push_back(current);
    return tokens;
}

}  // namespace detail

// Placement flags for one config. Block and round-robin map to the launcher's
// `--distribution=block` / `--distribution=cyclic`; the scheduler default
// emits no token at all. Socket binding adds `--cores-per-socket=k`.
inline std::string placement_flags(const RunConfig& config) {
    std::string flags;
    switch (config.distribution) {
        case Distribution::none: break;
        case Distribution::round_robin: flags += "--distribution=cyclic"; break;
        case Distribution::block: flags += "--distribution=block"; break;
    }
    if (config.cores_per_socket_bind) {
        if (!flags.empty()) flags += ' ';
        flags += "--cores-per-socket=" + std::to_string(*config.cores_per_socket_bind);
    }
    return flags;
}

// Expands the command template for one config. The template must contain all
// of {nodes}, {total_ranks}, {extra_flags} and {app}. The thread count is
// exported through OMP_NUM_THREADS rather than spliced into the command.
inline LaunchSpec build_launch_command(const RunConfig& config, const std::string& command_template,
                                       const std::string& app,
                                       const std::filesystem::path& expected_log = {}) {
    for (const char* placeholder : {"{nodes}", "{total_ranks}", "{extra_flags}", "{app}"}) {
        if (command_template.find(placeholder) == std::string::npos) {
            raise(errc::template_error,
                  std::string("command template is missing placeholder ") + placeholder);
        }
    }

    std::string text = command_template;
    detail::replace_all(text, "{nodes}", std::to_string(config.nodes));
    detail::replace_all(text, "{total_ranks}", std::to_string(config.total_ranks()));
    detail::replace_all(text, "{extra_flags}", placement_flags(config));
    detail::replace_all(text, "{app}", app);

    LaunchSpec spec;
    spec.argv = detail::split_tokens(text);
    if (spec.argv.empty()) {
        raise(errc::template_error, "command template expanded to an empty command");
    }
    spec.env.emplace_back("OMP_NUM_THREADS", std::to_string(config.threads_per_rank));
    spec.expected_log = expected_log;
    return spec;
}

}  // namespace stepstat
