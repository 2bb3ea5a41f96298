// refinement.hpp - non-taxonomic relationship refinement verification
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "onto/model.hpp"
#include "onto/refinement_types.hpp"

namespace onto {

/// standard mode checks upper bounds only (an upper-level minimum constrains
/// the union of all refining relationships, not each one individually);
/// strict mode additionally requires lower.min >= upper.min, i.e. full
/// interval containment.
enum class RefinementMode { standard, strict };

std::string_view to_string(RefinementMode mode);  // "default" / "strict"

bool multiplicity_refines(const Multiplicity& lower, const Multiplicity& upper,
                          RefinementMode mode);

struct EndpointVerdict {
    bool ok = false;
    std::optional<TermRef> resolved;  // the stereotype that was compared
    std::string failure;              // e.g. NO_STEREOTYPE, with detail
    std::vector<std::string> notes;   // e.g. qualifier encountered
};

/// True iff the upper endpoint term subsumes the lower term's effective
/// stereotype in the upper ontology's taxonomy. A lower term whose
/// stereotype chain never reaches the upper ontology fails with
/// NO_STEREOTYPE. A term that already belongs to the upper ontology stands
/// for itself. Qualifier annotations on the upper endpoint are stripped for
/// subsumption and surfaced as notes.
EndpointVerdict endpoint_refines(const Workspace& workspace, const TermRef& lower_term,
                                 const EndpointRef& upper_endpoint,
                                 const OntologyIndex& upper_ontology);

struct RowResult {
    RefinementRow row;
    RelationshipDef lower_def;
    RelationshipDef upper_def;
    bool source_endpoint_ok = false;
    bool target_endpoint_ok = false;
    bool source_mult_ok = false;
    bool target_mult_ok = false;
    std::vector<std::string> notes;

    bool pass() const {
        return source_endpoint_ok && target_endpoint_ok && source_mult_ok && target_mult_ok;
    }
};

struct MatrixReport {
    std::vector<RowResult> rows;                // map order
    std::vector<std::string> unmapped_lower;    // lower relationships absent from the map
    RefinementMode mode = RefinementMode::standard;

    bool all_rows_pass() const;
    bool coverage_complete() const { return unmapped_lower.empty(); }
    bool pass() const { return all_rows_pass() && coverage_complete(); }
};

/// One RowResult per map row (map order), checking both endpoints and both
/// multiplicity pairs. Throws ResolutionError when a row references an
/// unknown relationship or an ontology is missing from the workspace.
MatrixReport verify_refinement(const Workspace& workspace, const RefinementMap& map,
                               RefinementMode mode = RefinementMode::standard);

}  // namespace onto
