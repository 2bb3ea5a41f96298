#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "onto/conformance.hpp"
#include "onto/parser.hpp"
#include "onto/refinement.hpp"
#include "onto/report_io.hpp"
#include "support/corpus.hpp"

using namespace onto;

namespace {

int count_lines(const std::string& text) {
    int lines = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) ++lines;
    return lines;
}

}  // namespace

TEST_CASE("the empty report has a pinned canonical json form") {
    CHECK(serialize_report(Report{}, ReportFormat::json) ==
          R"({"diagnostics":[],"status":"pass"})");
}

TEST_CASE("a lone A1 violation serializes as a single diagnostic") {
    Workspace ws = support::load_pair();
    // The shared node is classified as both target and environment so the
    // only finding in partial mode is the axiom itself.
    auto parsed = parse_instance_model(
        "model m conforms SituationCO\n"
        "ps : \"Particular Situation\"\n"
        "t : \"Target Entity\", \"Natural Environment\"\n"
        "link \"deals with target\" ps -> t\n"
        "link \"deals with environment\" ps -> t\n"
        "link \"is surrounded by\" t -> t\n");
    REQUIRE(parsed.ok());
    Report report = validate(*parsed.value, ws, {ValidationMode::partial});
    std::string json_text = serialize_report(report, ReportFormat::json);
    auto parsed_json = nlohmann::json::parse(json_text);
    CHECK(parsed_json["status"] == "fail");
    REQUIRE(parsed_json["diagnostics"].size() == 1);
    CHECK(parsed_json["diagnostics"][0]["code"] == "AXIOM_A1");
    CHECK(parsed_json["diagnostics"][0]["witness"]["ps"] == "ps");
    CHECK(parsed_json["diagnostics"][0]["witness"]["thing"] == "t");
}

TEST_CASE("matrix table output mirrors the matrix layout") {
    Workspace ws = support::load_pair();
    MatrixReport report = verify_refinement(ws, support::load_refmap());
    std::string table = serialize_report(report, ReportFormat::table);
    // header line + rule line + one line per row
    CHECK(count_lines(table) == 2 + 21);
    CHECK(table.find("card | Term 1") != std::string::npos);
    CHECK(table.find("(Power of) Thing") != std::string::npos);
    CHECK(table.find("verdict") != std::string::npos);
}

TEST_CASE("matrix csv output is one header plus one line per row") {
    Workspace ws = support::load_pair();
    MatrixReport report = verify_refinement(ws, support::load_refmap());
    std::string csv = serialize_report(report, ReportFormat::csv);
    CHECK(count_lines(csv) == 22);
    CHECK(csv.rfind("lower_card1,lower_term1,lower_relationship", 0) == 0);
}

TEST_CASE("matrix json is schema-stable and machine-parseable") {
    Workspace ws = support::load_pair();
    MatrixReport report = verify_refinement(ws, support::load_refmap());
    std::string first = serialize_report(report, ReportFormat::json);
    std::string second = serialize_report(report, ReportFormat::json);
    CHECK(first == second);

    auto j = nlohmann::json::parse(first);
    CHECK(j["mode"] == "default");
    CHECK(j["status"] == "pass");
    CHECK(j["rows"].size() == 21);
    CHECK(j["unmapped_lower"].empty());
    const auto& row = j["rows"][0];
    CHECK(row["lower"]["relationship"] == "implies universals");
    CHECK(row["lower"]["source_card"] == "1");
    CHECK(row["upper"]["relationship"] == "relates with assertions");
    CHECK(row["verdict"] == "pass");
    CHECK(row["verdicts"]["multiplicity_source"] == true);
}

TEST_CASE("empty refinement map: full coverage gap in json") {
    Workspace ws = support::load_pair();
    RefinementMap empty;
    empty.lower_ontology = "SituationCO";
    empty.upper_ontology = "ThingFO";
    MatrixReport report = verify_refinement(ws, empty);
    auto j = nlohmann::json::parse(serialize_report(report, ReportFormat::json));
    CHECK(j["rows"].empty());
    CHECK(j["unmapped_lower"].size() == 21);
    CHECK(j["status"] == "fail");
}

TEST_CASE("csv cells with commas or quotes are escaped") {
    Report report;
    Violation v;
    v.code = "X";
    v.subjects = {"a,b", "c\"d"};
    v.message = "left, right";
    report.diagnostics.push_back(v);
    std::string csv = serialize_report(report, ReportFormat::csv);
    CHECK(csv.find("\"a,b; c\"\"d\"") != std::string::npos);
    CHECK(csv.find("\"left, right\"") != std::string::npos);
}

TEST_CASE("validation report table includes the status line") {
    Report empty;
    CHECK(serialize_report(empty, ReportFormat::table) == "status: pass\n");

    Report failing;
    failing.diagnostics.push_back({"MULT_MIN", Severity::error, {"n", "r"}, "too few", {}});
    std::string table = serialize_report(failing, ReportFormat::table);
    CHECK(table.rfind("status: fail", 0) == 0);
    CHECK(table.find("MULT_MIN") != std::string::npos);
}
