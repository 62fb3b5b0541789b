#pragma once

#include "stepstat/analysis/bandwidth_report.hpp"
#include "stepstat/error.hpp"
#include "stepstat/ingest/bandwidth.hpp"
#include "stepstat/version.hpp"

#include <cstdio>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stepstat {

inline std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

// One rectangular table. Best-value markers point at (row, column) cells.
struct TableSection {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::set<std::pair<std::size_t, std::size_t>> best_cells;
};

struct ReportMeta {
    std::string tool_version = kVersion;
    std::string generated_at;  // kept out of tables so rendering stays diffable
    std::vector<std::string> input_digests;
};

struct ReportDocument {
    std::string title;
    ReportMeta meta;
    std::vector<TableSection> sections;
};

// Deterministic monospace rendering. Best cells carry the marker prefix;
// column widths adapt so identical inputs yield byte-identical text.
inline std::string render_table(const TableSection& section, const std::string& marker = "*") {
    if (section.header.empty()) {
        raise(errc::structural, "table has no header row");
    }
    if (section.rows.empty()) {
        raise(errc::structural, "table has no data rows");
    }
    const std::size_t cols = section.header.size();
    for (std::size_t r = 0; r < section.rows.size(); ++r) {
        if (section.rows[r].size() != cols) {
            raise(errc::structural, "table row " + std::to_string(r) + " has " +
                                        std::to_string(section.rows[r].size()) +
                                        " cells, expected " + std::to_string(cols));
        }
    }
    for (const auto& [r, c] : section.best_cells) {
        if (r >= section.rows.size() || c >= cols) {
            raise(errc::structural, "best-value marker references a missing cell");
        }
    }

    std::vector<std::vector<std::string>> cells = section.rows;
    for (const auto& [r, c] : section.best_cells) {
        cells[r][c] = marker + cells[r][c];
    }

    std::vector<std::size_t> widths(cols);
    for (std::size_t c = 0; c < cols; ++c) widths[c] = section.header[c].size();
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < cols; ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }

    auto emit_row = [&](const std::vector<std::string>& row, std::string& out) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c > 0) out += " | ";
            out += row[c];
            out.append(widths[c] - row[c].size(), ' ');
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
    };

    std::string out;
    if (!section.title.empty()) {
        out += section.title;
        out += '\n';
    }
    emit_row(section.header, out);
    std::string rule;
    for (std::size_t c = 0; c < cols; ++c) {
        if (c > 0) rule += "-+-";
        rule.append(widths[c], '-');
    }
    out += rule;
    out += '\n';
    for (const auto& row : cells) emit_row(row, out);
    return out;
}

inline std::string render_document(const ReportDocument& doc, const std::string& marker = "*") {
    std::string out;
    if (!doc.title.empty()) {
        out += doc.title;
        out += '\n';
        out.append(doc.title.size(), '=');
        out += '\n';
    }
    out += "tool version: " + doc.meta.tool_version + '\n';
    if (!doc.meta.generated_at.empty()) out += "generated at: " + doc.meta.generated_at + '\n';
    for (const std::string& digest : doc.meta.input_digests) {
        out += "input: " + digest + '\n';
    }
    for (const TableSection& section : doc.sections) {
        out += '\n';
        out += render_table(section, marker);
    }
    return out;
}

// Bandwidth results in the per-setting grouped shape: one row per record,
// setting named on the first row of its group, best bandwidth and best
// runtime of each group marked. Bandwidth keeps 4 decimals, runtime 2.
inline TableSection bandwidth_table(std::span<const BandwidthRecord> records,
                                    const std::string& title = "") {
    if (records.empty()) {
        raise(errc::insufficient_data, "bandwidth table needs at least one record");
    }
    const BandwidthReport report = bandwidth_report(records);

    TableSection section;
    section.title = title;
    section.header = {"Setting", "Bandwidth (MBytes/s)", "Total Runtime (s)"};

    for (const SettingStats& stats : report.settings) {
        bool first = true;
        bool bw_marked = false;
        bool rt_marked = false;
        for (const BandwidthRecord& rec : records) {
            if (rec.setting != stats.setting) continue;
            const std::size_t row = section.rows.size();
            section.rows.push_back({first ? rec.setting : std::string(),
                                    format_fixed(rec.bandwidth_mbytes_per_s, 4),
                                    format_fixed(rec.total_runtime_s, 2)});
            // Mark each best once even if duplicated values appear.
            if (!bw_marked && rec.bandwidth_mbytes_per_s == stats.best_bandwidth) {
                section.best_cells.insert({row, 1});
                bw_marked = true;
            }
            if (!rt_marked && rec.total_runtime_s == stats.best_runtime) {
                section.best_cells.insert({row, 2});
                rt_marked = true;
            }
            first = false;
        }
    }
    return section;
}

}  // namespace stepstat
