#pragma once

#include "stepstat/error.hpp"
#include "stepstat/ingest/step_parsers.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace stepstat {

// One memory-bandwidth measurement: a (bandwidth, total runtime) pair for a
// named rank/thread setting on a tagged node.
struct BandwidthRecord {
    std::string setting;
    double bandwidth_mbytes_per_s = 0.0;
    double total_runtime_s = 0.0;
    std::string node_label;
};

inline constexpr const char* kBandwidthCsvHeader =
    "setting,bandwidth_mbytes_per_s,total_runtime_s,node_label";

inline std::vector<BandwidthRecord> parse_bandwidth_csv(std::string_view text,
                                                        const std::string& source = "<csv>") {
    const auto lines = detail::split_lines(text);
    if (lines.empty() || detail::strip_cr(lines[0]) != kBandwidthCsvHeader) {
        raise(errc::parse, source + ":1: expected header '" + std::string(kBandwidthCsvHeader) + "'");
    }

    std::vector<BandwidthRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string_view line = detail::strip_cr(lines[i]);
        if (line.empty()) continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != 4) {
            raise(errc::parse, source + ":" + std::to_string(i + 1) + ": expected 4 fields, got " +
                                   std::to_string(fields.size()));
        }
        BandwidthRecord rec;
        rec.setting = std::string(fields[0]);
        rec.bandwidth_mbytes_per_s = detail::parse_seconds(fields[1], i + 1, source);
        rec.total_runtime_s = detail::parse_seconds(fields[2], i + 1, source);
        rec.node_label = std::string(fields[3]);
        if (rec.setting.empty()) {
            raise(errc::data_validation, source + ":" + std::to_string(i + 1) + ": empty setting");
        }
        if (!(rec.bandwidth_mbytes_per_s > 0.0)) {
            raise(errc::data_validation,
                  source + ":" + std::to_string(i + 1) + ": bandwidth must be > 0");
        }
        if (!(rec.total_runtime_s > 0.0)) {
            raise(errc::data_validation,
                  source + ":" + std::to_string(i + 1) + ": total runtime must be > 0");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace stepstat
