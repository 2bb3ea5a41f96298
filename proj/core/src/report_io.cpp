// report_io.cpp - json/csv/table renderers for validation and matrix reports
#include "onto/report_io.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace onto {

namespace {

using nlohmann::json;  // std::map-backed objects: keys serialize alphabetically

std::string csv_cell(std::string_view value) {
    bool needs_quotes = value.find_first_of(",\"\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

struct TableWriter {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string render() const {
        std::vector<std::size_t> widths(header.size());
        for (std::size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
        for (const auto& row : rows)
            for (std::size_t c = 0; c < row.size(); ++c)
                widths[c] = std::max(widths[c], row[c].size());

        std::ostringstream out;
        auto emit = [&](const std::vector<std::string>& cells) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c) out << " | ";
                out << cells[c];
                if (c + 1 < cells.size())
                    out << std::string(widths[c] - cells[c].size(), ' ');
            }
            out << "\n";
        };
        emit(header);
        std::size_t total = 0;
        for (std::size_t c = 0; c < widths.size(); ++c) total += widths[c] + (c ? 3 : 0);
        out << std::string(total, '-') << "\n";
        for (const auto& row : rows) emit(row);
        return out.str();
    }
};

json violation_to_json(const Violation& v) {
    json j;
    j["code"] = v.code;
    j["severity"] = std::string(to_string(v.severity));
    j["subjects"] = v.subjects;
    j["message"] = v.message;
    if (!v.witness.empty()) j["witness"] = v.witness;
    return j;
}

json row_side_to_json(const RelationshipDef& def) {
    json j;
    j["source_card"] = def.source_mult.to_string();
    j["source"] = def.source.display();
    j["relationship"] = def.name;
    j["target_card"] = def.target_mult.to_string();
    j["target"] = def.target.display();
    return j;
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    if (name == "table") return ReportFormat::table;
    return std::nullopt;
}

std::string serialize_report(const Report& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: {
            json j;
            j["status"] = report.pass() ? "pass" : "fail";
            j["diagnostics"] = json::array();
            for (const auto& v : report.diagnostics) j["diagnostics"].push_back(violation_to_json(v));
            return j.dump();
        }
        case ReportFormat::csv: {
            std::ostringstream out;
            out << "code,severity,subjects,message,witness\n";
            for (const auto& v : report.diagnostics) {
                std::vector<std::string> witness_parts;
                for (const auto& [var, node] : v.witness) witness_parts.push_back(var + "=" + node);
                out << csv_cell(v.code) << "," << to_string(v.severity) << ","
                    << csv_cell(join(v.subjects, "; ")) << "," << csv_cell(v.message) << ","
                    << csv_cell(join(witness_parts, "; ")) << "\n";
            }
            return out.str();
        }
        case ReportFormat::table: {
            std::ostringstream out;
            out << "status: " << (report.pass() ? "pass" : "fail") << "\n";
            if (report.diagnostics.empty()) return out.str();
            TableWriter table;
            table.header = {"code", "severity", "subjects", "message"};
            for (const auto& v : report.diagnostics)
                table.rows.push_back({v.code, std::string(to_string(v.severity)),
                                      join(v.subjects, "; "), v.message});
            out << table.render();
            return out.str();
        }
    }
    return {};
}

std::string serialize_report(const MatrixReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: {
            json j;
            j["mode"] = std::string(to_string(report.mode));
            j["status"] = report.pass() ? "pass" : "fail";
            j["unmapped_lower"] = report.unmapped_lower;
            j["rows"] = json::array();
            for (const auto& row : report.rows) {
                json r;
                r["lower"] = row_side_to_json(row.lower_def);
                r["upper"] = row_side_to_json(row.upper_def);
                r["verdict"] = row.pass() ? "pass" : "fail";
                json verdicts;
                verdicts["endpoint_source"] = row.source_endpoint_ok;
                verdicts["endpoint_target"] = row.target_endpoint_ok;
                verdicts["multiplicity_source"] = row.source_mult_ok;
                verdicts["multiplicity_target"] = row.target_mult_ok;
                r["verdicts"] = verdicts;
                r["notes"] = row.notes;
                j["rows"].push_back(r);
            }
            return j.dump();
        }
        case ReportFormat::csv: {
            std::ostringstream out;
            out << "lower_card1,lower_term1,lower_relationship,lower_card2,lower_term2,"
                   "upper_card1,upper_term1,upper_relationship,upper_card2,upper_term2,verdict\n";
            for (const auto& row : report.rows) {
                const auto& lo = row.lower_def;
                const auto& up = row.upper_def;
                out << csv_cell(lo.source_mult.to_string()) << "," << csv_cell(lo.source.display())
                    << "," << csv_cell(lo.name) << "," << csv_cell(lo.target_mult.to_string())
                    << "," << csv_cell(lo.target.display()) << ","
                    << csv_cell(up.source_mult.to_string()) << "," << csv_cell(up.source.display())
                    << "," << csv_cell(up.name) << "," << csv_cell(up.target_mult.to_string())
                    << "," << csv_cell(up.target.display()) << ","
                    << (row.pass() ? "pass" : "fail") << "\n";
            }
            return out.str();
        }
        case ReportFormat::table: {
            TableWriter table;
            table.header = {"card", "Term 1", "relationship", "card", "Term 2",
                            "card", "Term 1", "relationship", "card", "Term 2", "verdict"};
            for (const auto& row : report.rows) {
                const auto& lo = row.lower_def;
                const auto& up = row.upper_def;
                table.rows.push_back({lo.source_mult.to_string(), lo.source.display(), lo.name,
                                      lo.target_mult.to_string(), lo.target.display(),
                                      up.source_mult.to_string(), up.source.display(), up.name,
                                      up.target_mult.to_string(), up.target.display(),
                                      row.pass() ? "pass" : "fail"});
            }
            std::ostringstream out;
            out << table.render();
            if (!report.unmapped_lower.empty())
                out << "unmapped lower relationships: " << join(report.unmapped_lower, ", ")
                    << "\n";
            return out.str();
        }
    }
    return {};
}

}  // namespace onto
