// diagnostics.hpp - source spans, parse diagnostics, and validation findings
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace onto {

enum class Severity { error, warning };

std::string_view to_string(Severity s);

/// Position of a declaration or token inside an input file. Lines and
/// columns are 1-based; length is the token length in bytes.
struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;
    int length = 0;
};

/// A problem found while parsing. Errors prevent construction of the model
/// object; warnings do not.
struct ParseDiagnostic {
    Severity severity = Severity::error;
    std::string code;
    std::string message;
    SourceSpan span;
};

/// A finding produced by well-formedness or conformance checking.
/// `witness` is populated for axiom violations only (variable -> node id).
struct Violation {
    std::string code;
    Severity severity = Severity::error;
    std::vector<std::string> subjects;  // nonempty
    std::string message;
    std::map<std::string, std::string> witness;
};

bool operator==(const Violation& a, const Violation& b);

/// Canonical report ordering: by code, then subjects, then message.
void sort_canonical(std::vector<Violation>& violations);

struct Report {
    std::vector<Violation> diagnostics;

    bool pass() const { return diagnostics.empty(); }
};

/// Thrown when an operation's inputs reference an ontology, term,
/// relationship, or node that cannot be resolved.
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace onto
