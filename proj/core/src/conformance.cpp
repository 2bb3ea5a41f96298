// conformance.cpp - typing, multiplicity, and generalization-set checks
#include "onto/conformance.hpp"

#include <algorithm>
#include <set>

namespace onto {

namespace {

Violation make(std::string code, std::vector<std::string> subjects, std::string message) {
    Violation v;
    v.code = std::move(code);
    v.severity = Severity::error;
    v.subjects = std::move(subjects);
    v.message = std::move(message);
    return v;
}

bool node_in(const std::vector<std::string>& sorted_ids, const std::string& id) {
    return std::binary_search(sorted_ids.begin(), sorted_ids.end(), id);
}

// A link counts toward multiplicities only when both endpoints satisfy the
// relationship's declared terms; mistyped links are reported by
// check_typing and excluded here.
bool link_well_typed(const IndexedModel& model, const InstanceLink& link,
                     const RelationshipDef& rel) {
    return node_in(model.instances_of(rel.source.term), link.source) &&
           node_in(model.instances_of(rel.target.term), link.target);
}

}  // namespace

std::vector<Violation> check_typing(const IndexedModel& model) {
    const OntologyIndex& schema = model.schema();
    std::vector<Violation> out;
    for (const auto& link : model.model().links) {
        const RelationshipDef* rel = schema.relationship(link.relationship);
        if (!rel) continue;  // guarded by IndexedModel construction
        if (!node_in(model.instances_of(rel->source.term), link.source))
            out.push_back(make("TYPE_MISMATCH", {link.source, link.relationship},
                               "link \"" + link.relationship + "\" " + link.source + " -> " +
                                   link.target + ": source node '" + link.source +
                                   "' is not an instance of \"" + rel->source.term + "\""));
        if (!node_in(model.instances_of(rel->target.term), link.target))
            out.push_back(make("TYPE_MISMATCH", {link.target, link.relationship},
                               "link \"" + link.relationship + "\" " + link.source + " -> " +
                                   link.target + ": target node '" + link.target +
                                   "' is not an instance of \"" + rel->target.term + "\""));
    }
    sort_canonical(out);
    return out;
}

std::vector<Violation> check_multiplicities(const IndexedModel& model, ValidationOptions options) {
    const OntologyIndex& schema = model.schema();
    const bool check_min = options.mode == ValidationMode::complete;
    std::vector<Violation> out;

    for (const auto& rel : schema.onto().relationships) {
        // Well-typed adjacency for this relationship.
        std::map<std::string, std::set<std::string>> out_partners;
        std::map<std::string, std::set<std::string>> in_partners;
        for (const auto& link : model.model().links) {
            if (link.relationship != rel.name) continue;
            if (!link_well_typed(model, link, rel)) continue;
            out_partners[link.source].insert(link.target);
            in_partners[link.target].insert(link.source);
        }

        auto report = [&](const std::string& node, int count, const Multiplicity& bound,
                          const char* side) {
            if (check_min && count < bound.min)
                out.push_back(make("MULT_MIN", {node, rel.name},
                                   "node '" + node + "' has " + std::to_string(count) + " " +
                                       side + " \"" + rel.name + "\" partner(s); multiplicity [" +
                                       bound.to_string() + "] requires at least " +
                                       std::to_string(bound.min)));
            if (bound.max && count > *bound.max)
                out.push_back(make("MULT_MAX", {node, rel.name},
                                   "node '" + node + "' has " + std::to_string(count) + " " +
                                       side + " \"" + rel.name + "\" partner(s); multiplicity [" +
                                       bound.to_string() + "] allows at most " +
                                       std::to_string(*bound.max)));
        };

        // target_mult bounds target partners per source instance,
        // source_mult bounds source partners per target instance.
        for (const auto& node : model.instances_of(rel.source.term)) {
            auto it = out_partners.find(node);
            report(node, it == out_partners.end() ? 0 : static_cast<int>(it->second.size()),
                   rel.target_mult, "outgoing");
        }
        for (const auto& node : model.instances_of(rel.target.term)) {
            auto it = in_partners.find(node);
            report(node, it == in_partners.end() ? 0 : static_cast<int>(it->second.size()),
                   rel.source_mult, "incoming");
        }
    }
    sort_canonical(out);
    return out;
}

std::vector<Violation> check_generalization_sets(const IndexedModel& model,
                                                 ValidationOptions options) {
    const OntologyIndex& schema = model.schema();
    std::vector<Violation> out;
    for (const auto& gs : schema.onto().generalization_sets) {
        for (const auto& node : model.model().nodes) {
            std::vector<std::string> memberships;
            for (const auto& child : gs.children)
                if (schema.term(child) && node_in(model.instances_of(child), node.id))
                    memberships.push_back(child);

            if (gs.disjointness == Disjointness::disjoint && memberships.size() > 1) {
                std::string names;
                for (const auto& m : memberships) names += (names.empty() ? "\"" : ", \"") + m + "\"";
                out.push_back(make("GENSET_DISJOINT", {node.id, gs.parent},
                                   "node '" + node.id + "' falls into " +
                                       std::to_string(memberships.size()) +
                                       " disjoint children of \"" + gs.parent + "\": " + names));
            }
            if (gs.completeness == Completeness::complete &&
                options.mode == ValidationMode::complete && memberships.empty() &&
                schema.term(gs.parent) && node_in(model.instances_of(gs.parent), node.id)) {
                out.push_back(make("GENSET_INCOMPLETE", {node.id, gs.parent},
                                   "node '" + node.id + "' is an instance of \"" + gs.parent +
                                       "\" but of none of its complete set's children"));
            }
        }
    }
    sort_canonical(out);
    return out;
}

Report validate(const InstanceModel& model, const Workspace& workspace,
                ValidationOptions options) {
    const OntologyIndex* schema = workspace.find(model.conforms_to);
    if (!schema)
        throw ResolutionError("instance model '" + model.name + "' conforms to '" +
                              model.conforms_to + "' which is not loaded");
    IndexedModel indexed(model, *schema);

    Report report;
    auto append = [&](std::vector<Violation> batch) {
        for (auto& v : batch) report.diagnostics.push_back(std::move(v));
    };
    append(check_typing(indexed));
    append(check_multiplicities(indexed, options));
    append(check_generalization_sets(indexed, options));

    for (const auto& rule : schema->onto().axioms) {
        for (const auto& witness : evaluate_axiom(rule, indexed, *schema)) {
            Violation v;
            v.code = "AXIOM_" + rule.id;
            v.severity = Severity::error;
            for (const auto& u : rule.universals) v.subjects.push_back(witness.at(u.variable));
            std::string assignment;
            for (const auto& [var, node] : witness)
                assignment += (assignment.empty() ? "" : ", ") + var + " = " + node;
            v.message = "axiom " + rule.id + " violated by " + assignment;
            v.witness = witness;
            report.diagnostics.push_back(std::move(v));
        }
    }

    sort_canonical(report.diagnostics);
    return report;
}

}  // namespace onto
