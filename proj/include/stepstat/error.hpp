#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace stepstat {

// Error taxonomy. The CLI maps kinds to process exit codes:
// usage/input problems exit 2, numerical failures exit 4.
enum class errc {
    insufficient_data,
    data_validation,
    parse,
    structural,
    config,
    feasibility,
    planning,
    template_error,
    alignment,
    lookup,
    empty_extraction,
    empty_result,
    degenerate_variance,
    io,
    domain,
    convergence,
};

inline const char* errc_name(errc kind) {
    switch (kind) {
        case errc::insufficient_data: return "insufficient-data";
        case errc::data_validation: return "data-validation";
        case errc::parse: return "parse";
        case errc::structural: return "structural";
        case errc::config: return "configuration";
        case errc::feasibility: return "feasibility";
        case errc::planning: return "planning";
        case errc::template_error: return "template";
        case errc::alignment: return "alignment";
        case errc::lookup: return "lookup";
        case errc::empty_extraction: return "empty-extraction";
        case errc::empty_result: return "empty-result";
        case errc::degenerate_variance: return "degenerate-variance";
        case errc::io: return "io";
        case errc::domain: return "domain";
        case errc::convergence: return "numerical-convergence";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc kind, const std::string& msg)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + msg), kind_(kind) {}

    errc kind() const noexcept { return kind_; }

    // Convergence failures are internal numerical errors; everything else is
    // a problem with the inputs or the requested operation.
    bool numerical() const noexcept { return kind_ == errc::convergence; }

private:
    errc kind_;
};

[[noreturn]] inline void raise(errc kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace stepstat
