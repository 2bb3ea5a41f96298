// parser.hpp - text formats: .onto, .inst, .refmap
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "onto/diagnostics.hpp"
#include "onto/instance.hpp"
#include "onto/model.hpp"
#include "onto/refinement_types.hpp"

namespace onto {

/// Outcome of a parse: a value (absent when any error-severity diagnostic
/// was produced) plus the collected diagnostics. Parsing is total - any
/// byte sequence yields either a value or diagnostics.
template <class T>
struct ParseResult {
    std::optional<T> value;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return value.has_value(); }

    bool has_error(std::string_view code) const {
        for (const auto& d : diagnostics)
            if (d.code == code) return true;
        return false;
    }
};

ParseResult<Ontology> parse_ontology(std::string_view text, std::string file = "<input>");

ParseResult<InstanceModel> parse_instance_model(std::string_view text,
                                                std::string file = "<input>");

ParseResult<RefinementMap> parse_refinement_map(std::string_view text,
                                                std::string file = "<input>");

/// Multiplicity tokens: "N" -> [N,N]; "*" -> [0,unbounded]; "N..M" -> [N,M];
/// "N..*" -> [N,unbounded]. Returns nullopt (and fills `error` when given)
/// for malformed tokens or min > max.
std::optional<Multiplicity> parse_multiplicity(std::string_view token,
                                               std::string* error = nullptr);

}  // namespace onto
