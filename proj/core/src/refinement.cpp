// refinement.cpp - verification of relationship refinement across layers
#include "onto/refinement.hpp"

#include <algorithm>
#include <set>

namespace onto {

std::string_view to_string(RefinementMode mode) {
    return mode == RefinementMode::strict ? "strict" : "default";
}

bool multiplicity_refines(const Multiplicity& lower, const Multiplicity& upper,
                          RefinementMode mode) {
    bool max_ok = !upper.max || (lower.max && *lower.max <= *upper.max);
    if (mode == RefinementMode::standard) return max_ok;
    return max_ok && lower.min >= upper.min;
}

EndpointVerdict endpoint_refines(const Workspace& workspace, const TermRef& lower_term,
                                 const EndpointRef& upper_endpoint,
                                 const OntologyIndex& upper_ontology) {
    EndpointVerdict verdict;
    if (!upper_endpoint.qualifier.empty())
        verdict.notes.push_back("qualifier \"" + upper_endpoint.qualifier +
                                "\" on upper endpoint \"" + upper_endpoint.term +
                                "\" ignored for subsumption");

    // Follow the stereotype chain until it lands in the upper ontology. A
    // term already belonging to the upper ontology stands for itself.
    TermRef current = lower_term;
    std::set<TermRef> visited;
    while (true) {
        if (current.ontology == upper_ontology.name()) {
            if (!upper_ontology.term(current.name)) {
                verdict.failure = "NO_STEREOTYPE: '" + current.to_string() +
                                  "' does not resolve in the upper ontology";
                return verdict;
            }
            verdict.resolved = current;
            verdict.ok = upper_ontology.subsumes(upper_endpoint.term, current.name);
            if (!verdict.ok)
                verdict.failure = "\"" + upper_endpoint.term + "\" does not subsume \"" +
                                  current.name + "\"";
            return verdict;
        }
        if (!visited.insert(current).second) {
            verdict.failure = "NO_STEREOTYPE: stereotype chain of '" + lower_term.to_string() +
                              "' cycles without reaching '" + upper_ontology.name() + "'";
            return verdict;
        }
        if (!workspace.find(current.ontology)) {
            verdict.failure = "NO_STEREOTYPE: stereotype chain of '" + lower_term.to_string() +
                              "' passes through '" + current.ontology +
                              "' which is not loaded";
            return verdict;
        }
        StereotypeResult step = effective_stereotype(workspace, current);
        if (step.status == StereotypeStatus::none) {
            verdict.failure = "NO_STEREOTYPE: '" + current.to_string() +
                              "' carries no effective stereotype";
            return verdict;
        }
        if (step.status == StereotypeStatus::ambiguous) {
            std::string names;
            for (const auto& c : step.candidates) names += (names.empty() ? "" : ", ") + c;
            verdict.failure = "NO_STEREOTYPE: '" + current.to_string() +
                              "' has ambiguous inherited stereotypes (" + names + ")";
            return verdict;
        }
        current = step.stereotype;
    }
}

bool MatrixReport::all_rows_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const RowResult& r) { return r.pass(); });
}

MatrixReport verify_refinement(const Workspace& workspace, const RefinementMap& map,
                               RefinementMode mode) {
    const OntologyIndex& lower = workspace.require(map.lower_ontology);
    const OntologyIndex& upper = workspace.require(map.upper_ontology);

    MatrixReport report;
    report.mode = mode;

    for (const auto& row : map.rows) {
        const RelationshipDef* lower_def = lower.relationship(row.lower);
        if (!lower_def)
            throw ResolutionError("refinement map references unknown relationship \"" +
                                  row.lower + "\" in ontology '" + map.lower_ontology + "'");
        const RelationshipDef* upper_def = upper.relationship(row.upper);
        if (!upper_def)
            throw ResolutionError("refinement map references unknown relationship \"" +
                                  row.upper + "\" in ontology '" + map.upper_ontology + "'");

        RowResult result;
        result.row = row;
        result.lower_def = *lower_def;
        result.upper_def = *upper_def;

        auto check_endpoint = [&](const EndpointRef& lower_end, const EndpointRef& upper_end,
                                  const char* side) {
            EndpointVerdict v = endpoint_refines(
                workspace, TermRef{map.lower_ontology, lower_end.term}, upper_end, upper);
            for (auto& note : v.notes) result.notes.push_back(std::move(note));
            if (!v.ok && !v.failure.empty())
                result.notes.push_back(std::string(side) + " endpoint: " + v.failure);
            return v.ok;
        };
        result.source_endpoint_ok =
            check_endpoint(lower_def->source, upper_def->source, "source");
        result.target_endpoint_ok =
            check_endpoint(lower_def->target, upper_def->target, "target");
        result.source_mult_ok =
            multiplicity_refines(lower_def->source_mult, upper_def->source_mult, mode);
        result.target_mult_ok =
            multiplicity_refines(lower_def->target_mult, upper_def->target_mult, mode);
        report.rows.push_back(std::move(result));
    }

    std::set<std::string> mapped;
    for (const auto& row : map.rows) mapped.insert(row.lower);
    for (const auto& rel : lower.onto().relationships)
        if (!mapped.count(rel.name)) report.unmapped_lower.push_back(rel.name);

    return report;
}

}  // namespace onto
