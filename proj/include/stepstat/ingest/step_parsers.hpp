#pragma once

#include "stepstat/error.hpp"
#include "stepstat/ingest/timing_series.hpp"

#include <charconv>
#include <cstdio>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace stepstat {

namespace detail {

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    // A trailing newline produces one empty tail entry; drop it.
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

inline std::uint64_t parse_step_index(std::string_view field, std::size_t line_no,
                                      const std::string& source) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        raise(errc::parse, source + ":" + std::to_string(line_no) + ": invalid step index '" +
                               std::string(field) + "'");
    }
    return value;
}

inline double parse_seconds(std::string_view field, std::size_t line_no,
                            const std::string& source) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        raise(errc::parse, source + ":" + std::to_string(line_no) + ": invalid duration '" +
                               std::string(field) + "'");
    }
    return value;
}

}  // namespace detail

inline constexpr const char* kStepCsvHeader = "step,seconds";

// Canonical step CSV: header `step,seconds`, one record per line,
// LF or CRLF, `.` decimal separator.
inline TimingSeries parse_step_csv(std::string_view text, const std::string& source = "<csv>") {
    const auto lines = detail::split_lines(text);
    if (lines.empty() || detail::strip_cr(lines[0]) != kStepCsvHeader) {
        raise(errc::parse, source + ":1: expected header '" + std::string(kStepCsvHeader) + "'");
    }

    TimingSeries series;
    series.run_id = source;
    series.source = source;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string_view line = detail::strip_cr(lines[i]);
        if (line.empty()) continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != 2) {
            raise(errc::parse, source + ":" + std::to_string(i + 1) + ": expected 2 fields, got " +
                                   std::to_string(fields.size()));
        }
        TimingStep step;
        step.index = detail::parse_step_index(fields[0], i + 1, source);
        step.seconds = detail::parse_seconds(fields[1], i + 1, source);
        series.steps.push_back(step);
    }
    detail::validate_steps(series.steps, source);
    return series;
}

// Serializes back to the canonical CSV. Uses max precision so that a
// round trip reproduces the series exactly.
inline std::string to_step_csv(const TimingSeries& series) {
    std::string out = kStepCsvHeader;
    out += '\n';
    char buf[64];
    for (const TimingStep& s : series.steps) {
        std::snprintf(buf, sizeof(buf), "%llu,%.17g\n", static_cast<unsigned long long>(s.index),
                      s.seconds);
        out += buf;
    }
    return out;
}

namespace detail {

struct CompiledLinePattern {
    std::regex re;
    int step_group = 0;     // 1-based submatch indices
    int seconds_group = 0;
};

// std::regex (ECMAScript) has no named captures, so `(?<step>...)` groups are
// rewritten to plain capturing groups and their positions recorded. Group
// numbering must skip `(?:`, `(?=` and `(?!`, escaped parens, and parens
// inside character classes.
inline CompiledLinePattern compile_line_pattern(const std::string& pattern) {
    std::string translated;
    translated.reserve(pattern.size());
    int capture_index = 0;
    int step_group = 0;
    int seconds_group = 0;
    bool in_class = false;
    bool escaped = false;

    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const char c = pattern[i];
        if (escaped) {
            translated += c;
            escaped = false;
            continue;
        }
        if (c == '\\') {
            translated += c;
            escaped = true;
            continue;
        }
        if (in_class) {
            translated += c;
            if (c == ']') in_class = false;
            continue;
        }
        if (c == '[') {
            translated += c;
            in_class = true;
            continue;
        }
        if (c != '(') {
            translated += c;
            continue;
        }
        // '(' outside a class: decide what kind of group this opens.
        if (i + 1 < pattern.size() && pattern[i + 1] == '?') {
            const bool named = i + 2 < pattern.size() && pattern[i + 2] == '<' &&
                               i + 3 < pattern.size() && pattern[i + 3] != '=' &&
                               pattern[i + 3] != '!';
            if (!named) {
                translated += c;  // non-capturing or lookahead, copy verbatim
                continue;
            }
            const std::size_t name_start = i + 3;
            const std::size_t name_end = pattern.find('>', name_start);
            if (name_end == std::string::npos) {
                raise(errc::config, "line pattern has an unterminated group name");
            }
            const std::string name = pattern.substr(name_start, name_end - name_start);
            ++capture_index;
            if (name == "step") {
                step_group = capture_index;
            } else if (name == "seconds") {
                seconds_group = capture_index;
            }
            translated += '(';
            i = name_end;  // skip '(?<name>' -> '('
            continue;
        }
        ++capture_index;
        translated += c;
    }

    if (step_group == 0 || seconds_group == 0) {
        raise(errc::config,
              "line pattern must contain both named captures (?<step>...) and (?<seconds>...)");
    }

    CompiledLinePattern compiled;
    try {
        compiled.re = std::regex(translated, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        raise(errc::config, std::string("invalid line pattern: ") + e.what());
    }
    compiled.step_group = step_group;
    compiled.seconds_group = seconds_group;
    return compiled;
}

}  // namespace detail

// Free-form log extraction: every line matching `pattern` yields one step,
// everything else is skipped. The pattern must contain named captures
// (?<step>...) and (?<seconds>...).
inline TimingSeries parse_step_log(std::string_view text, const std::string& pattern,
                                   const std::string& source = "<log>") {
    const detail::CompiledLinePattern compiled = detail::compile_line_pattern(pattern);

    TimingSeries series;
    series.run_id = source;
    series.source = source;

    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string_view raw = detail::strip_cr(lines[i]);
        std::match_results<std::string_view::const_iterator> m;
        if (!std::regex_search(raw.begin(), raw.end(), m, compiled.re)) continue;
        const std::string step_text = m[static_cast<std::size_t>(compiled.step_group)].str();
        const std::string secs_text = m[static_cast<std::size_t>(compiled.seconds_group)].str();
        TimingStep step;
        step.index = detail::parse_step_index(step_text, i + 1, source);
        step.seconds = detail::parse_seconds(secs_text, i + 1, source);
        series.steps.push_back(step);
    }

    if (series.steps.empty()) {
        raise(errc::empty_extraction,
              source + ": no line matched the pattern; refusing to analyze an empty extraction");
    }
    detail::validate_steps(series.steps, source);
    return series;
}

}  // namespace stepstat
