// report_io.hpp - report rendering: json (canonical), csv, table
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "onto/diagnostics.hpp"
#include "onto/refinement.hpp"

namespace onto {

enum class ReportFormat { json, csv, table };

std::optional<ReportFormat> parse_report_format(std::string_view name);

/// Validation / well-formedness report. JSON is the canonical machine
/// format with stable (alphabetical) key order:
///   {"diagnostics":[{code,message,severity,subjects,witness?}...],"status":...}
std::string serialize_report(const Report& report, ReportFormat format);

/// Matrix report. csv and table reproduce the matrix column order
/// (card, Term 1, relationship, card, Term 2 - both sides) with an appended
/// verdict column.
std::string serialize_report(const MatrixReport& report, ReportFormat format);

}  // namespace onto
