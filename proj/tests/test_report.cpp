#include "stepstat/report/gate.hpp"
#include "stepstat/report/plot_data.hpp"
#include "stepstat/report/table.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

using stepstat::BandwidthRecord;
using stepstat::Error;
using stepstat::GatePolicy;
using stepstat::PlotGroup;
using stepstat::TableSection;
using stepstat::Verdict;

namespace {

std::vector<BandwidthRecord> table_fixture() {
    return {
        {"12 ranks 2 threads", 15961.8202, 16464.42, "broadwell24"},
        {"12 ranks 2 threads", 16228.4178, 16450.08, "broadwell24"},
        {"12 ranks 2 threads", 15978.3218, 16201.49, "broadwell24"},
        {"6 ranks 4 threads", 8092.9993, 28883.01, "broadwell24"},
        {"6 ranks 4 threads", 8054.4494, 29045.81, "broadwell24"},
        {"6 ranks 4 threads", 8043.7417, 29035.68, "broadwell24"},
    };
}

stepstat::ComparisonVerdict verdict_with(Verdict v) {
    stepstat::ComparisonVerdict verdict;
    verdict.verdict = v;
    verdict.window = {2, 35};
    return verdict;
}

}  // namespace

TEST_CASE("bandwidth table marks best per group, independently per column", "[report][table]") {
    const auto section = stepstat::bandwidth_table(table_fixture(), "node broadwell24");
    const std::string text = stepstat::render_table(section);

    // the best-bandwidth row and the best-runtime row differ for this setting
    REQUIRE(text.find("*16228.4178") != std::string::npos);
    REQUIRE(text.find("*16201.49") != std::string::npos);
    REQUIRE(text.find("*16450.08") == std::string::npos);
    // the other group's best values coincide on one row
    REQUIRE(text.find("*8092.9993") != std::string::npos);
    REQUIRE(text.find("*28883.01") != std::string::npos);
    // setting label appears once per group
    REQUIRE(text.find("12 ranks 2 threads") != std::string::npos);

    SECTION("rendering twice is byte-identical") {
        REQUIRE(stepstat::render_table(section) == text);
    }
    SECTION("fixed decimal places: 4 for bandwidth, 2 for runtime") {
        REQUIRE(section.rows[0][1] == "15961.8202");
        REQUIRE(section.rows[0][2] == "16464.42");
    }
    SECTION("configurable marker") {
        const std::string bold = stepstat::render_table(section, "**");
        REQUIRE(bold.find("**16228.4178") != std::string::npos);
    }
}

TEST_CASE("render_table validates its shape", "[report][table]") {
    TableSection section;
    section.header = {"a", "b"};

    SECTION("empty rows are structural errors") {
        REQUIRE_THROWS_AS(stepstat::render_table(section), Error);
    }
    SECTION("ragged rows are structural errors") {
        section.rows = {{"1", "2"}, {"only-one"}};
        REQUIRE_THROWS_AS(stepstat::render_table(section), Error);
    }
    SECTION("markers must reference existing cells") {
        section.rows = {{"1", "2"}};
        section.best_cells.insert({5, 0});
        REQUIRE_THROWS_AS(stepstat::render_table(section), Error);
    }
    SECTION("single cell is its own best") {
        TableSection tiny;
        tiny.header = {"v"};
        tiny.rows = {{"42"}};
        tiny.best_cells.insert({0, 0});
        REQUIRE(stepstat::render_table(tiny).find("*42") != std::string::npos);
    }
}

TEST_CASE("render_document keeps metadata out of the tables", "[report][table]") {
    stepstat::ReportDocument doc;
    doc.title = "bandwidth";
    doc.meta.generated_at = "2021-08-01T00:00:00Z";
    doc.meta.input_digests = {"fnv1a:0123456789abcdef"};
    doc.sections.push_back(stepstat::bandwidth_table(table_fixture()));

    const std::string text = stepstat::render_document(doc);
    REQUIRE(text.find("fnv1a:0123456789abcdef") != std::string::npos);

    const std::string table_only = stepstat::render_table(doc.sections[0]);
    REQUIRE(table_only.find("2021-08-01") == std::string::npos);
}

TEST_CASE("timestep box data carries the five-number summary", "[report][plot]") {
    std::vector<double> ramp;
    for (int i = 1; i <= 35; ++i) ramp.push_back(i);
    const std::vector<PlotGroup> groups{{"run-a", ramp}, {"flat", {5, 5, 5, 5, 5}}};

    const std::string tsv = stepstat::emit_timestep_box(groups);
    REQUIRE(tsv.find("group\tn\tmin\tq1\tmedian\tq3\tmax\toutliers\n") == 0);
    REQUIRE(tsv.find("run-a\t35\t1\t9.5\t18\t26.5\t35\t\n") != std::string::npos);
    REQUIRE(tsv.find("flat\t5\t5\t5\t5\t5\t5\t\n") != std::string::npos);

    SECTION("outliers are listed in the last column") {
        const std::vector<PlotGroup> spiky{{"g", {10, 11, 12, 13, 14, 15, 16, 100}}};
        const std::string out = stepstat::emit_timestep_box(spiky);
        REQUIRE(out.find("\t100\n") != std::string::npos);
    }
    SECTION("too few points is an insufficient-data error") {
        const std::vector<PlotGroup> tiny{{"g", {1, 2, 3, 4}}};
        REQUIRE_THROWS_AS(stepstat::emit_timestep_box(tiny), Error);
    }
    SECTION("deterministic output") {
        REQUIRE(stepstat::emit_timestep_box(groups) == tsv);
    }
}

TEST_CASE("scaling curve data has the ideal overlay", "[report][plot]") {
    const std::vector<std::pair<double, double>> pts{{1.0, 100.0}, {2.0, 50.0}};
    const auto series = stepstat::scaling_analysis(pts);
    const std::string tsv = stepstat::emit_scaling_curve(series);
    REQUIRE(tsv.find("n\tseconds\tspeedup\tefficiency\tideal\n") == 0);
    REQUIRE(tsv.find("1\t100\t1\t1\t1\n") != std::string::npos);
    REQUIRE(tsv.find("2\t50\t2\t1\t2\n") != std::string::npos);

    SECTION("thread scaling renames the axis column") {
        const std::string threads =
            stepstat::emit_scaling_curve(series, stepstat::PlotKind::thread_scaling);
        REQUIRE(threads.find("threads\tseconds") == 0);
    }
}

TEST_CASE("regression gate policies", "[report][gate]") {
    SECTION("fail_on_slower") {
        REQUIRE(stepstat::gate_exit_code(verdict_with(Verdict::slower),
                                         GatePolicy::fail_on_slower) == 3);
        REQUIRE(stepstat::gate_exit_code(verdict_with(Verdict::indistinguishable),
                                         GatePolicy::fail_on_slower) == 0);
        REQUIRE(stepstat::gate_exit_code(verdict_with(Verdict::faster),
                                         GatePolicy::fail_on_slower) == 0);
    }
    SECTION("fail_on_not_faster") {
        REQUIRE(stepstat::gate_exit_code(verdict_with(Verdict::indistinguishable),
                                         GatePolicy::fail_on_not_faster) == 3);
        REQUIRE(stepstat::gate_exit_code(verdict_with(Verdict::slower),
                                         GatePolicy::fail_on_not_faster) == 3);
        REQUIRE(stepstat::gate_exit_code(verdict_with(Verdict::faster),
                                         GatePolicy::fail_on_not_faster) == 0);
    }
    SECTION("verdict line is machine readable") {
        auto v = verdict_with(Verdict::faster);
        v.speedup = 1.0417;
        const std::string line = stepstat::verdict_line(v);
        REQUIRE(line.find("verdict=faster") == 0);
        REQUIRE(line.find("speedup=1.0417") != std::string::npos);
        REQUIRE(line.find("window=2..36") != std::string::npos);
        REQUIRE(line.find('\n') == std::string::npos);
    }
}
