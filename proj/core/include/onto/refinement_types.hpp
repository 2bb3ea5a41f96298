// refinement_types.hpp - refinement map data (shared by parser and verifier)
#pragma once

#include <string>
#include <vector>

#include "onto/diagnostics.hpp"

namespace onto {

/// One declared correspondence: a lower-ontology relationship refines an
/// upper-ontology relationship.
struct RefinementRow {
    std::string lower;
    std::string upper;
    SourceSpan span;
};

bool operator==(const RefinementRow& a, const RefinementRow& b);

struct RefinementMap {
    std::string lower_ontology;
    std::string upper_ontology;
    std::vector<RefinementRow> rows;  // order preserved; lower names unique
};

bool operator==(const RefinementMap& a, const RefinementMap& b);

}  // namespace onto
