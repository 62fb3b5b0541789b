#pragma once

#include "stepstat/error.hpp"
#include "stepstat/ingest/bandwidth.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stepstat {

// Per-setting aggregate. Best bandwidth and best runtime are tracked
// independently: the fastest run is not always the highest-bandwidth run.
struct SettingStats {
    std::string setting;
    std::string node_label;  // from the first record of the group
    std::size_t n_records = 0;
    double best_bandwidth = 0.0;  // max over records
    double mean_bandwidth = 0.0;
    double best_runtime = 0.0;  // min over records
    double mean_runtime = 0.0;
};

// Cross-setting comparison, oriented so both ratios are > 1 when A is the
// better setting: bandwidth ratio = best_bw(A)/best_bw(B), runtime speedup =
// best_rt(B)/best_rt(A).
struct SettingRatio {
    std::string setting_a;
    std::string setting_b;
    double bandwidth_ratio = 1.0;
    double runtime_speedup = 1.0;
};

struct BandwidthReport {
    std::vector<SettingStats> settings;  // in order of first appearance
    std::vector<SettingRatio> ratios;
};

inline BandwidthReport bandwidth_report(
    std::span<const BandwidthRecord> records,
    std::span<const std::pair<std::string, std::string>> ratio_pairs = {}) {
    if (records.empty()) {
        raise(errc::insufficient_data, "bandwidth report needs at least one record");
    }

    BandwidthReport report;
    auto find_setting = [&report](const std::string& name) -> SettingStats* {
        for (SettingStats& s : report.settings) {
            if (s.setting == name) return &s;
        }
        return nullptr;
    };

    for (const BandwidthRecord& rec : records) {
        SettingStats* stats = find_setting(rec.setting);
        if (stats == nullptr) {
            SettingStats fresh;
            fresh.setting = rec.setting;
            fresh.node_label = rec.node_label;
            fresh.best_bandwidth = rec.bandwidth_mbytes_per_s;
            fresh.best_runtime = rec.total_runtime_s;
            report.settings.push_back(fresh);
            stats = &report.settings.back();
        }
        ++stats->n_records;
        stats->mean_bandwidth += rec.bandwidth_mbytes_per_s;
        stats->mean_runtime += rec.total_runtime_s;
        if (rec.bandwidth_mbytes_per_s > stats->best_bandwidth) {
            stats->best_bandwidth = rec.bandwidth_mbytes_per_s;
        }
        if (rec.total_runtime_s < stats->best_runtime) {
            stats->best_runtime = rec.total_runtime_s;
        }
    }
    for (SettingStats& s : report.settings) {
        s.mean_bandwidth /= static_cast<double>(s.n_records);
        s.mean_runtime /= static_cast<double>(s.n_records);
    }

    for (const auto& [name_a, name_b] : ratio_pairs) {
        const SettingStats* a = find_setting(name_a);
        if (a == nullptr) {
            raise(errc::lookup, "ratio pair names unknown setting '" + name_a + "'");
        }
        const SettingStats* b = find_setting(name_b);
        if (b == nullptr) {
            raise(errc::lookup, "ratio pair names unknown setting '" + name_b + "'");
        }
        SettingRatio ratio;
        ratio.setting_a = name_a;
        ratio.setting_b = name_b;
        ratio.bandwidth_ratio = a->best_bandwidth / b->best_bandwidth;
        ratio.runtime_speedup = b->best_runtime / a->best_runtime;
        report.ratios.push_back(ratio);
    }
    return report;
}

}  // namespace stepstat
