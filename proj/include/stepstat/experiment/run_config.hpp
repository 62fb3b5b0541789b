#pragma once

#include "stepstat/error.hpp"

#include <optional>
#include <string>

namespace stepstat {

// How MPI ranks are handed out to nodes. `none` leaves placement to the
// scheduler; round_robin puts successive ranks on successive nodes; block
// groups successive ranks on the same node.
enum class Distribution { none, round_robin, block };

inline const char* to_string(Distribution d) {
    switch (d) {
        case Distribution::none: return "default";
        case Distribution::round_robin: return "round_robin";
        case Distribution::block: return "block";
    }
    return "?";
}

inline Distribution parse_distribution(const std::string& text) {
    if (text == "default") return Distribution::none;
    if (text == "round_robin" || text == "round-robin" || text == "cyclic") {
        return Distribution::round_robin;
    }
    if (text == "block") return Distribution::block;
    raise(errc::config,
          "unknown distribution '" + text + "' (expected default, round_robin or block)");
}

struct Hardware {
    int cores_per_node = 0;
    int sockets_per_node = 2;
    std::string tag;
};

// Placement and affinity knobs of one run.
struct RunConfig {
    int nodes = 1;
    int ranks_per_node = 1;
    int threads_per_rank = 1;
    Distribution distribution = Distribution::none;
    std::optional<int> cores_per_socket_bind;
    int cores_per_node = 0;
    int sockets_per_node = 2;
    std::string label;
    std::string hardware_tag;

    int total_ranks() const { return nodes * ranks_per_node; }
};

inline std::string default_config_label(const RunConfig& c) {
    std::string s = "n" + std::to_string(c.nodes) + "_r" + std::to_string(c.total_ranks()) + "x" +
                    std::to_string(c.threads_per_rank) + "_" + to_string(c.distribution);
    if (c.cores_per_socket_bind) s += "_cps" + std::to_string(*c.cores_per_socket_bind);
    return s;
}

// Rejects oversubscription (ranks*threads beyond the physical cores) unless
// explicitly overridden, and checks socket-binding placement feasibility.
inline void validate_config(const RunConfig& c, bool allow_oversubscribe = false) {
    if (c.nodes < 1 || c.ranks_per_node < 1 || c.threads_per_rank < 1) {
        raise(errc::feasibility, "config '" + c.label + "': counts must be >= 1");
    }
    if (c.cores_per_node < 1) {
        raise(errc::feasibility, "config '" + c.label + "': cores_per_node must be declared");
    }
    if (!allow_oversubscribe && c.ranks_per_node * c.threads_per_rank > c.cores_per_node) {
        raise(errc::feasibility,
              "config '" + c.label + "': " + std::to_string(c.ranks_per_node) + " ranks x " +
                  std::to_string(c.threads_per_rank) + " threads oversubscribes " +
                  std::to_string(c.cores_per_node) + " cores per node");
    }
    if (c.cores_per_socket_bind) {
        if (*c.cores_per_socket_bind < 1) {
            raise(errc::feasibility, "config '" + c.label + "': cores_per_socket_bind must be >= 1");
        }
        if (c.ranks_per_node > c.sockets_per_node * *c.cores_per_socket_bind) {
            raise(errc::feasibility,
                  "config '" + c.label + "': cannot place " + std::to_string(c.ranks_per_node) +
                      " ranks per node with " + std::to_string(*c.cores_per_socket_bind) +
                      " bound cores on each of " + std::to_string(c.sockets_per_node) + " sockets");
        }
    }
}

// Thread count for a rank layout. Fill policy gives one thread per core,
// floor(cores_per_node / ranks_per_node); an explicit count is checked for
// oversubscription instead.
inline int derive_threads(int cores_per_node, int ranks_per_node,
                          std::optional<int> explicit_threads = std::nullopt) {
    if (cores_per_node < 1 || ranks_per_node < 1 || cores_per_node < ranks_per_node) {
        raise(errc::feasibility, "derive_threads requires cores_per_node >= ranks_per_node >= 1");
    }
    if (!explicit_threads) return cores_per_node / ranks_per_node;
    const int k = *explicit_threads;
    if (k < 1) {
        raise(errc::feasibility, "explicit thread count must be >= 1");
    }
    if (ranks_per_node * k > cores_per_node) {
        raise(errc::feasibility, "explicit thread count " + std::to_string(k) + " oversubscribes " +
                                     std::to_string(cores_per_node) + " cores with " +
                                     std::to_string(ranks_per_node) + " ranks per node");
    }
    return k;
}

}  // namespace stepstat
