// conformance.hpp - instance model validation against a schema ontology
#pragma once

#include <vector>

#include "onto/diagnostics.hpp"
#include "onto/instance.hpp"
#include "onto/model.hpp"

namespace onto {

/// partial mode suppresses minimum-multiplicity and generalization-set
/// completeness checks (for models that describe an incomplete world).
enum class ValidationMode { complete, partial };

struct ValidationOptions {
    ValidationMode mode = ValidationMode::complete;
};

/// Every link endpoint must be an instance of the relationship's declared
/// endpoint term (subtypes accepted). One TYPE_MISMATCH per failing end.
std::vector<Violation> check_typing(const IndexedModel& model);

/// Counts well-typed partners per node against the relationship bounds
/// (mistyped links are excluded from counting; they are already reported by
/// check_typing). MULT_MIN / MULT_MAX per failure; min checks skipped in
/// partial mode.
std::vector<Violation> check_multiplicities(const IndexedModel& model, ValidationOptions options);

/// Disjointness: no node may fall into two distinct children of a disjoint
/// set (GENSET_DISJOINT). Completeness, in complete mode only: every
/// instance of the parent must fall into some child (GENSET_INCOMPLETE).
std::vector<Violation> check_generalization_sets(const IndexedModel& model,
                                                 ValidationOptions options);

/// Full validation: typing, multiplicities, generalization sets, and every
/// axiom of the schema ontology, merged into one canonically ordered
/// report. Throws ResolutionError when conforms_to or any referenced name
/// does not resolve.
Report validate(const InstanceModel& model, const Workspace& workspace,
                ValidationOptions options = {});

}  // namespace onto
