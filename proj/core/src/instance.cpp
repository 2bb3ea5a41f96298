#include "onto/instance.hpp"

#include <algorithm>

namespace onto {

bool operator==(const InstanceNode& a, const InstanceNode& b) {
    return a.id == b.id && a.asserted_terms == b.asserted_terms;
}

bool operator==(const InstanceLink& a, const InstanceLink& b) {
    return a.relationship == b.relationship && a.source == b.source && a.target == b.target;
}

const InstanceNode* InstanceModel::find_node(std::string_view id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

bool operator==(const InstanceModel& a, const InstanceModel& b) {
    return a.name == b.name && a.conforms_to == b.conforms_to && a.nodes == b.nodes &&
           a.links == b.links;
}

namespace {

// Asserted terms and extent queries resolve through synonyms; the canonical
// name is what gets indexed.
const Term& canonical_term(const OntologyIndex& schema, std::string_view name,
                           const std::string& context) {
    auto lookup = schema.lookup(name);
    switch (lookup.status) {
        case OntologyIndex::LookupStatus::found:
            return *lookup.term;
        case OntologyIndex::LookupStatus::ambiguous:
            throw ResolutionError(context + " references synonym \"" + std::string(name) +
                                  "\" shared by several terms of '" + schema.name() + "'");
        case OntologyIndex::LookupStatus::not_found:
        default:
            throw ResolutionError(context + " references unknown term \"" + std::string(name) +
                                  "\" (ontology '" + schema.name() + "')");
    }
}

}  // namespace

IndexedModel::IndexedModel(InstanceModel model, const OntologyIndex& schema)
    : model_(std::move(model)), schema_(&schema) {
    // Direct assertions first, then close upward over the taxonomy so that
    // instances_of("Context Entity") also reaches "Space Entity" nodes.
    std::map<std::string, std::set<std::string>> extent_sets;
    for (const auto& node : model_.nodes) {
        for (const auto& asserted : node.asserted_terms) {
            const Term& term_decl =
                canonical_term(*schema_, asserted, "node '" + node.id + "'");
            const std::string& term = term_decl.name;
            extent_sets[term].insert(node.id);
            for (const auto& anc : schema_->ancestors(term)) extent_sets[anc].insert(node.id);
        }
    }
    for (auto& [term, ids] : extent_sets)
        extents_.emplace(term, std::vector<std::string>(ids.begin(), ids.end()));

    for (const auto& link : model_.links) {
        if (!schema_->relationship(link.relationship))
            throw ResolutionError("link references unknown relationship \"" + link.relationship +
                                  "\" (ontology '" + schema_->name() + "')");
        outgoing_[link.relationship][link.source].insert(link.target);
        incoming_[link.relationship][link.target].insert(link.source);
    }
}

const std::vector<std::string>& IndexedModel::instances_of(std::string_view term) const {
    const Term& canonical = canonical_term(*schema_, term, "extent query");
    auto it = extents_.find(canonical.name);
    return it == extents_.end() ? empty_ : it->second;
}

std::vector<std::string> IndexedModel::partners(std::string_view relationship,
                                                std::string_view node,
                                                Direction direction) const {
    if (!has_node(node))
        throw ResolutionError("unknown node id '" + std::string(node) + "'");
    const auto& table = direction == Direction::outgoing ? outgoing_ : incoming_;
    auto rel_it = table.find(std::string(relationship));
    if (rel_it == table.end()) return {};
    auto node_it = rel_it->second.find(std::string(node));
    if (node_it == rel_it->second.end()) return {};
    return {node_it->second.begin(), node_it->second.end()};
}

bool IndexedModel::has_link(std::string_view relationship, std::string_view source,
                            std::string_view target) const {
    auto rel_it = outgoing_.find(std::string(relationship));
    if (rel_it == outgoing_.end()) return false;
    auto src_it = rel_it->second.find(std::string(source));
    return src_it != rel_it->second.end() && src_it->second.count(std::string(target)) > 0;
}

bool IndexedModel::has_node(std::string_view id) const {
    return model_.find_node(id) != nullptr;
}

}  // namespace onto
