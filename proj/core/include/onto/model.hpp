// model.hpp - ontologies, terms, taxonomies, stereotypes, and layers
#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "onto/axioms.hpp"
#include "onto/diagnostics.hpp"
#include "onto/multiplicity.hpp"

namespace onto {

/// Architectural level of an ontology. Ranks are ordered from the
/// foundational level (0) down to the instance level (4); lower rank means
/// higher level.
enum class Layer { foundational = 0, core = 1, top_domain = 2, low_domain = 3, instance = 4 };

int layer_rank(Layer layer);
std::string_view to_string(Layer layer);
std::optional<Layer> parse_layer(std::string_view name);

/// Qualified reference to a term in a named ontology.
struct TermRef {
    std::string ontology;
    std::string name;

    std::string to_string() const { return ontology + "." + name; }
};

bool operator==(const TermRef& a, const TermRef& b);
bool operator<(const TermRef& a, const TermRef& b);

/// Relationship endpoint: a term of the owning ontology, optionally carrying
/// an annotation such as "(Power of)" that is ignored for resolution.
struct EndpointRef {
    std::string term;
    std::string qualifier;

    /// Rendering used in matrix output: qualifier-prefixed term name.
    std::string display() const;
};

bool operator==(const EndpointRef& a, const EndpointRef& b);

enum class TermOrigin { own, reused };

struct Term {
    std::string name;
    std::vector<std::string> synonyms;
    TermOrigin origin = TermOrigin::own;
    std::optional<TermRef> stereotype;
    std::string qualifier;
    SourceSpan span;
};

bool operator==(const Term& a, const Term& b);

/// child is-a parent, both terms of the same ontology.
struct TaxonomicLink {
    std::string child;
    std::string parent;
    SourceSpan span;
};

bool operator==(const TaxonomicLink& a, const TaxonomicLink& b);

enum class Completeness { complete, incomplete };
enum class Disjointness { disjoint, overlapping };

struct GeneralizationSet {
    std::string parent;
    std::vector<std::string> children;  // nonempty, no duplicates
    Completeness completeness = Completeness::incomplete;
    Disjointness disjointness = Disjointness::overlapping;
    SourceSpan span;
};

bool operator==(const GeneralizationSet& a, const GeneralizationSet& b);

/// Directed non-taxonomic relationship. source_mult bounds the number of
/// source partners per target instance; target_mult bounds the number of
/// target partners per source instance (UML reading: the card written next
/// to an end bounds instances of that end per opposite instance).
struct RelationshipDef {
    std::string name;
    EndpointRef source;
    EndpointRef target;
    Multiplicity source_mult;
    Multiplicity target_mult;
    std::string definition;
    SourceSpan span;
};

bool operator==(const RelationshipDef& a, const RelationshipDef& b);

struct Import {
    std::string name;
    Layer layer = Layer::core;
    bool optional = false;  // optional imports may be absent from a workspace
    SourceSpan span;
};

bool operator==(const Import& a, const Import& b);

struct Ontology {
    std::string name;
    std::string version;
    Layer layer = Layer::core;
    std::vector<Import> imports;
    std::vector<Term> terms;
    std::vector<TaxonomicLink> taxonomy;
    std::vector<GeneralizationSet> generalization_sets;
    std::vector<RelationshipDef> relationships;
    std::vector<AxiomRule> axioms;

    const Import* find_import(std::string_view name) const;
};

/// Structural equality; source spans are ignored.
bool operator==(const Ontology& a, const Ontology& b);

/// Immutable lookup structure over one ontology: name and synonym tables,
/// taxonomy reachability, relationship table. Safe for concurrent reads.
class OntologyIndex {
public:
    explicit OntologyIndex(Ontology ontology);

    const Ontology& onto() const { return ontology_; }
    const std::string& name() const { return ontology_.name; }

    const Term* term(std::string_view canonical_name) const;
    const RelationshipDef* relationship(std::string_view name) const;

    enum class LookupStatus { found, not_found, ambiguous };
    struct Lookup {
        LookupStatus status = LookupStatus::not_found;
        const Term* term = nullptr;
        std::vector<std::string> candidates;  // canonical names, sorted
    };
    /// Resolves a name or synonym to its canonical term. A synonym shared by
    /// several terms is ambiguous and returns all candidates.
    Lookup lookup(std::string_view name_or_synonym) const;

    /// True iff ancestor is reachable from descendant via zero or more
    /// taxonomic links. Throws ResolutionError for unknown terms.
    bool subsumes(std::string_view ancestor, std::string_view descendant) const;

    /// Proper ancestors (excludes the term itself); tolerant of cycles.
    const std::set<std::string>& ancestors(std::string_view term) const;

    /// The term plus everything it subsumes, sorted.
    std::vector<std::string> descendants_including_self(std::string_view term) const;

    std::vector<std::string> direct_parents(std::string_view term) const;

    /// Term sets lying on taxonomic cycles, one sorted component per entry.
    const std::vector<std::vector<std::string>>& taxonomy_cycles() const { return cycles_; }

private:
    Ontology ontology_;
    std::unordered_map<std::string, std::size_t> term_by_name_;
    std::unordered_map<std::string, std::vector<std::size_t>> term_by_synonym_;
    std::unordered_map<std::string, std::size_t> rel_by_name_;
    std::unordered_map<std::string, std::vector<std::string>> parents_;
    std::unordered_map<std::string, std::set<std::string>> ancestors_;
    std::vector<std::vector<std::string>> cycles_;
};

/// A set of ontologies resolved by declared name. Ontologies are indexed
/// eagerly on add and immutable afterwards.
class Workspace {
public:
    /// Fails (returns false) if an ontology with the same name is present.
    bool add(Ontology ontology);

    const OntologyIndex* find(std::string_view ontology_name) const;
    /// Like find, but throws ResolutionError.
    const OntologyIndex& require(std::string_view ontology_name) const;

    std::vector<const OntologyIndex*> all() const;  // insertion order
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<std::unique_ptr<OntologyIndex>> entries_;
    std::unordered_map<std::string, std::size_t> by_name_;
};

enum class ResolveStatus { found, not_found, ambiguous };

struct ResolveResult {
    ResolveStatus status = ResolveStatus::not_found;
    TermRef term;                         // canonical, when found
    std::vector<std::string> candidates;  // for not_found/ambiguous
};

/// Resolves (ontology name, term name or synonym) against a workspace.
/// Synonym hits return the canonical term.
ResolveResult resolve_term(const Workspace& workspace, const TermRef& qualified_name);

/// Reflexive-transitive taxonomic reachability. Both refs must name terms of
/// the same ontology; throws ResolutionError otherwise.
bool subsumes(const Workspace& workspace, const TermRef& ancestor, const TermRef& descendant);

enum class StereotypeStatus { found, none, ambiguous };

struct StereotypeResult {
    StereotypeStatus status = StereotypeStatus::none;
    TermRef stereotype;
    std::vector<std::string> candidates;  // conflicting stereotypes, sorted
};

/// The term's own stereotype if present, otherwise the nearest ancestor's
/// (breadth-first; two equally-near ancestors carrying different stereotypes
/// are reported as ambiguous rather than silently chosen).
StereotypeResult effective_stereotype(const Workspace& workspace, const TermRef& term);

/// Well-formedness diagnostics for one ontology against its workspace:
/// taxonomy acyclicity, endpoint resolution, generalization-set subtyping,
/// stereotype layer rules, the single-foundational rule. Diagnostics are
/// sorted by code then subject. Imports declared optional and absent from
/// the workspace are skipped.
std::vector<Violation> check_ontology_wellformedness(const Workspace& workspace,
                                                     const std::string& ontology_name);

}  // namespace onto
