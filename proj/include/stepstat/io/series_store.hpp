#pragma once

#include "stepstat/error.hpp"
#include "stepstat/experiment/executor.hpp"
#include "stepstat/ingest/step_parsers.hpp"
#include "stepstat/ingest/timing_series.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace stepstat {

namespace detail {

// FNV-1a 64-bit; used to fingerprint raw inputs in reports, not for security.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace detail

inline std::string digest_hex(std::string_view bytes) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                  static_cast<unsigned long long>(detail::fnv1a64(bytes)));
    return buf;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(errc::io, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    if (!path.parent_path().empty()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        raise(errc::io, "cannot write '" + path.string() + "'");
    }
    out << content;
    if (!out) {
        raise(errc::io, "failed while writing '" + path.string() + "'");
    }
}

inline nlohmann::json series_to_json(const TimingSeries& series) {
    nlohmann::json steps = nlohmann::json::array();
    for (const TimingStep& s : series.steps) {
        steps.push_back(nlohmann::json::array({s.index, s.seconds}));
    }
    nlohmann::json j{
        {"run_id", series.run_id},
        {"source", series.source},
        {"trimmed", series.trimmed},
        {"steps", std::move(steps)},
        {"digest", digest_hex(to_step_csv(series))},
    };
    if (series.sample_size_used) j["sample_size_used"] = *series.sample_size_used;
    if (series.config) j["config"] = detail::config_to_json(*series.config);
    if (!series.annotations.empty()) j["annotations"] = series.annotations;
    return j;
}

inline TimingSeries series_from_json(const nlohmann::json& j, const std::string& source) {
    TimingSeries series;
    series.run_id = j.at("run_id").get<std::string>();
    series.source = j.value("source", source);
    series.trimmed = j.value("trimmed", false);
    for (const nlohmann::json& step : j.at("steps")) {
        series.steps.push_back(
            TimingStep{step.at(0).get<std::uint64_t>(), step.at(1).get<double>()});
    }
    if (j.contains("sample_size_used")) {
        series.sample_size_used = j.at("sample_size_used").get<std::size_t>();
    }
    if (j.contains("config")) series.config = detail::config_from_json(j.at("config"));
    if (j.contains("annotations")) {
        series.annotations = j.at("annotations").get<std::vector<std::string>>();
    }
    detail::validate_steps(series.steps, source);
    return series;
}

inline void save_series(const TimingSeries& series, const std::filesystem::path& path) {
    write_file(path, series_to_json(series).dump(2) + "\n");
}

// Loads a normalized series document (JSON) or a raw step CSV, detected by
// the first non-whitespace byte.
inline TimingSeries load_series(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    const auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(content);
        } catch (const nlohmann::json::exception& e) {
            raise(errc::parse, path.string() + ": invalid series document: " + e.what());
        }
        try {
            return series_from_json(j, path.string());
        } catch (const nlohmann::json::exception& e) {
            raise(errc::parse, path.string() + ": malformed series document: " + e.what());
        }
    }
    TimingSeries series = parse_step_csv(content, path.string());
    series.run_id = path.stem().string();
    return series;
}

}  // namespace stepstat
