// instance.hpp - finite typed instance graphs and their indexes
#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "onto/diagnostics.hpp"
#include "onto/model.hpp"

namespace onto {

struct InstanceNode {
    std::string id;
    std::vector<std::string> asserted_terms;  // nonempty, duplicates collapsed
    SourceSpan span;
};

bool operator==(const InstanceNode& a, const InstanceNode& b);

struct InstanceLink {
    std::string relationship;
    std::string source;
    std::string target;
    SourceSpan span;
};

bool operator==(const InstanceLink& a, const InstanceLink& b);

/// Closed-world description of one micro-world. Links are a set: duplicate
/// (relationship, source, target) triples collapse to one.
struct InstanceModel {
    std::string name;
    std::string conforms_to;
    std::vector<InstanceNode> nodes;
    std::vector<InstanceLink> links;

    const InstanceNode* find_node(std::string_view id) const;
};

bool operator==(const InstanceModel& a, const InstanceModel& b);

enum class Direction { outgoing, incoming };

/// Immutable evaluation view of an instance model against one schema
/// ontology: taxonomy-aware class extents and link adjacency, both
/// precomputed. Concurrent reads are safe.
class IndexedModel {
public:
    /// Throws ResolutionError if a node asserts a term or a link names a
    /// relationship unknown to the schema.
    IndexedModel(InstanceModel model, const OntologyIndex& schema);

    const InstanceModel& model() const { return model_; }
    const OntologyIndex& schema() const { return *schema_; }

    /// Node ids whose asserted terms are subsumed by `term`, sorted.
    const std::vector<std::string>& instances_of(std::string_view term) const;

    /// Partner node ids over one relationship, sorted. Throws
    /// ResolutionError for an unknown node id.
    std::vector<std::string> partners(std::string_view relationship, std::string_view node,
                                      Direction direction) const;

    bool has_link(std::string_view relationship, std::string_view source,
                  std::string_view target) const;

    bool has_node(std::string_view id) const;

private:
    InstanceModel model_;
    const OntologyIndex* schema_;
    std::map<std::string, std::vector<std::string>> extents_;  // term -> sorted node ids
    std::map<std::string, std::map<std::string, std::set<std::string>>> outgoing_;
    std::map<std::string, std::map<std::string, std::set<std::string>>> incoming_;
    std::vector<std::string> empty_;
};

}  // namespace onto
