#include "onto/model.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <tuple>

namespace onto {

int layer_rank(Layer layer) { return static_cast<int>(layer); }

std::string_view to_string(Layer layer) {
    switch (layer) {
        case Layer::foundational: return "foundational";
        case Layer::core: return "core";
        case Layer::top_domain: return "top_domain";
        case Layer::low_domain: return "low_domain";
        case Layer::instance: return "instance";
    }
    return "core";
}

std::optional<Layer> parse_layer(std::string_view name) {
    if (name == "foundational") return Layer::foundational;
    if (name == "core") return Layer::core;
    if (name == "top_domain") return Layer::top_domain;
    if (name == "low_domain") return Layer::low_domain;
    if (name == "instance") return Layer::instance;
    return std::nullopt;
}

bool operator==(const TermRef& a, const TermRef& b) {
    return a.ontology == b.ontology && a.name == b.name;
}

bool operator<(const TermRef& a, const TermRef& b) {
    return std::tie(a.ontology, a.name) < std::tie(b.ontology, b.name);
}

std::string EndpointRef::display() const {
    if (qualifier.empty()) return term;
    return qualifier + " " + term;
}

bool operator==(const EndpointRef& a, const EndpointRef& b) {
    return a.term == b.term && a.qualifier == b.qualifier;
}

bool operator==(const Term& a, const Term& b) {
    return a.name == b.name && a.synonyms == b.synonyms && a.origin == b.origin &&
           a.stereotype == b.stereotype && a.qualifier == b.qualifier;
}

bool operator==(const TaxonomicLink& a, const TaxonomicLink& b) {
    return a.child == b.child && a.parent == b.parent;
}

bool operator==(const GeneralizationSet& a, const GeneralizationSet& b) {
    return a.parent == b.parent && a.children == b.children &&
           a.completeness == b.completeness && a.disjointness == b.disjointness;
}

bool operator==(const RelationshipDef& a, const RelationshipDef& b) {
    return a.name == b.name && a.source == b.source && a.target == b.target &&
           a.source_mult == b.source_mult && a.target_mult == b.target_mult &&
           a.definition == b.definition;
}

bool operator==(const Import& a, const Import& b) {
    return a.name == b.name && a.layer == b.layer && a.optional == b.optional;
}

bool operator==(const RelationAtom& a, const RelationAtom& b) {
    return a.relationship == b.relationship && a.lhs == b.lhs && a.rhs == b.rhs;
}

namespace {
bool heads_equal(const AxiomHead& a, const AxiomHead& b) {
    if (a.index() != b.index()) return false;
    if (const auto* p = std::get_if<PositiveHead>(&a))
        return p->atom == std::get<PositiveHead>(b).atom;
    if (const auto* n = std::get_if<NegatedHead>(&a))
        return n->atom == std::get<NegatedHead>(b).atom;
    const auto& ea = std::get<ExistentialHead>(a);
    const auto& eb = std::get<ExistentialHead>(b);
    return ea.variable == eb.variable && ea.guard == eb.guard && ea.atoms == eb.atoms;
}
}  // namespace

bool operator==(const AxiomRule& a, const AxiomRule& b) {
    if (a.id != b.id || a.body != b.body || !heads_equal(a.head, b.head)) return false;
    if (a.universals.size() != b.universals.size()) return false;
    for (std::size_t i = 0; i < a.universals.size(); ++i)
        if (a.universals[i].variable != b.universals[i].variable ||
            a.universals[i].guard != b.universals[i].guard)
            return false;
    return true;
}

const Import* Ontology::find_import(std::string_view name) const {
    for (const auto& imp : imports)
        if (imp.name == name) return &imp;
    return nullptr;
}

bool operator==(const Ontology& a, const Ontology& b) {
    return a.name == b.name && a.version == b.version && a.layer == b.layer &&
           a.imports == b.imports && a.terms == b.terms && a.taxonomy == b.taxonomy &&
           a.generalization_sets == b.generalization_sets &&
           a.relationships == b.relationships && a.axioms == b.axioms;
}

// ---------------------------------------------------------------------------
// OntologyIndex

OntologyIndex::OntologyIndex(Ontology ontology) : ontology_(std::move(ontology)) {
    for (std::size_t i = 0; i < ontology_.terms.size(); ++i) {
        const Term& t = ontology_.terms[i];
        term_by_name_.emplace(t.name, i);
        for (const auto& syn : t.synonyms) term_by_synonym_[syn].push_back(i);
    }
    for (std::size_t i = 0; i < ontology_.relationships.size(); ++i)
        rel_by_name_.emplace(ontology_.relationships[i].name, i);

    for (const auto& link : ontology_.taxonomy) {
        auto& ps = parents_[link.child];
        if (std::find(ps.begin(), ps.end(), link.parent) == ps.end()) ps.push_back(link.parent);
    }

    // Ancestor closure per term, tolerant of cycles (flagged below).
    for (const auto& t : ontology_.terms) {
        std::set<std::string> acc;
        std::deque<std::string> queue{t.name};
        std::set<std::string> seen{t.name};
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            auto it = parents_.find(cur);
            if (it == parents_.end()) continue;
            for (const auto& p : it->second) {
                acc.insert(p);
                if (seen.insert(p).second) queue.push_back(p);
            }
        }
        ancestors_.emplace(t.name, std::move(acc));
    }

    // A term lying on a cycle is its own ancestor.
    std::set<std::string> on_cycle;
    for (const auto& [term, anc] : ancestors_)
        if (anc.count(term)) on_cycle.insert(term);
    std::set<std::string> emitted;
    for (const auto& term : on_cycle) {
        if (emitted.count(term)) continue;
        std::vector<std::string> component;
        for (const auto& other : on_cycle) {
            if (ancestors_.at(term).count(other) && ancestors_.at(other).count(term)) {
                component.push_back(other);
                emitted.insert(other);
            }
        }
        std::sort(component.begin(), component.end());
        cycles_.push_back(std::move(component));
    }
    std::sort(cycles_.begin(), cycles_.end());
}

const Term* OntologyIndex::term(std::string_view canonical_name) const {
    auto it = term_by_name_.find(std::string(canonical_name));
    return it == term_by_name_.end() ? nullptr : &ontology_.terms[it->second];
}

const RelationshipDef* OntologyIndex::relationship(std::string_view name) const {
    auto it = rel_by_name_.find(std::string(name));
    return it == rel_by_name_.end() ? nullptr : &ontology_.relationships[it->second];
}

OntologyIndex::Lookup OntologyIndex::lookup(std::string_view name_or_synonym) const {
    Lookup result;
    if (const Term* t = term(name_or_synonym)) {
        result.status = LookupStatus::found;
        result.term = t;
        return result;
    }
    auto it = term_by_synonym_.find(std::string(name_or_synonym));
    if (it == term_by_synonym_.end()) return result;
    if (it->second.size() == 1) {
        result.status = LookupStatus::found;
        result.term = &ontology_.terms[it->second.front()];
        return result;
    }
    result.status = LookupStatus::ambiguous;
    for (auto idx : it->second) result.candidates.push_back(ontology_.terms[idx].name);
    std::sort(result.candidates.begin(), result.candidates.end());
    return result;
}

bool OntologyIndex::subsumes(std::string_view ancestor, std::string_view descendant) const {
    if (!term(ancestor))
        throw ResolutionError("unresolved term '" + std::string(ancestor) + "' in ontology '" +
                              ontology_.name + "'");
    auto it = ancestors_.find(std::string(descendant));
    if (it == ancestors_.end())
        throw ResolutionError("unresolved term '" + std::string(descendant) + "' in ontology '" +
                              ontology_.name + "'");
    return ancestor == descendant || it->second.count(std::string(ancestor)) > 0;
}

const std::set<std::string>& OntologyIndex::ancestors(std::string_view term_name) const {
    auto it = ancestors_.find(std::string(term_name));
    if (it == ancestors_.end())
        throw ResolutionError("unresolved term '" + std::string(term_name) + "' in ontology '" +
                              ontology_.name + "'");
    return it->second;
}

std::vector<std::string> OntologyIndex::descendants_including_self(std::string_view term_name) const {
    if (!term(term_name))
        throw ResolutionError("unresolved term '" + std::string(term_name) + "' in ontology '" +
                              ontology_.name + "'");
    std::vector<std::string> out;
    for (const auto& t : ontology_.terms)
        if (subsumes(term_name, t.name)) out.push_back(t.name);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> OntologyIndex::direct_parents(std::string_view term_name) const {
    auto it = parents_.find(std::string(term_name));
    return it == parents_.end() ? std::vector<std::string>{} : it->second;
}

// ---------------------------------------------------------------------------
// Workspace

bool Workspace::add(Ontology ontology) {
    if (by_name_.count(ontology.name)) return false;
    auto idx = std::make_unique<OntologyIndex>(std::move(ontology));
    by_name_.emplace(idx->name(), entries_.size());
    entries_.push_back(std::move(idx));
    return true;
}

const OntologyIndex* Workspace::find(std::string_view ontology_name) const {
    auto it = by_name_.find(std::string(ontology_name));
    return it == by_name_.end() ? nullptr : entries_[it->second].get();
}

const OntologyIndex& Workspace::require(std::string_view ontology_name) const {
    const OntologyIndex* idx = find(ontology_name);
    if (!idx)
        throw ResolutionError("ontology '" + std::string(ontology_name) +
                              "' is not loaded in the workspace");
    return *idx;
}

std::vector<const OntologyIndex*> Workspace::all() const {
    std::vector<const OntologyIndex*> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.get());
    return out;
}

// ---------------------------------------------------------------------------
// Operations

ResolveResult resolve_term(const Workspace& workspace, const TermRef& qualified_name) {
    ResolveResult result;
    const OntologyIndex* idx = workspace.find(qualified_name.ontology);
    if (!idx) return result;
    auto lookup = idx->lookup(qualified_name.name);
    switch (lookup.status) {
        case OntologyIndex::LookupStatus::found:
            result.status = ResolveStatus::found;
            result.term = TermRef{qualified_name.ontology, lookup.term->name};
            break;
        case OntologyIndex::LookupStatus::ambiguous:
            result.status = ResolveStatus::ambiguous;
            result.candidates = std::move(lookup.candidates);
            break;
        case OntologyIndex::LookupStatus::not_found:
            break;
    }
    return result;
}

bool subsumes(const Workspace& workspace, const TermRef& ancestor, const TermRef& descendant) {
    if (ancestor.ontology != descendant.ontology)
        throw ResolutionError("subsumes requires terms of the same ontology: '" +
                              ancestor.to_string() + "' vs '" + descendant.to_string() + "'");
    return workspace.require(ancestor.ontology).subsumes(ancestor.name, descendant.name);
}

StereotypeResult effective_stereotype(const Workspace& workspace, const TermRef& term_ref) {
    const OntologyIndex& idx = workspace.require(term_ref.ontology);
    const Term* term = idx.term(term_ref.name);
    if (!term)
        throw ResolutionError("unresolved term '" + term_ref.to_string() + "'");

    StereotypeResult result;
    if (term->stereotype) {
        result.status = StereotypeStatus::found;
        result.stereotype = *term->stereotype;
        return result;
    }

    // Breadth-first up the taxonomy; the nearest level carrying stereotypes
    // wins, and must agree within that level.
    std::vector<std::string> frontier{term->name};
    std::set<std::string> visited{term->name};
    while (!frontier.empty()) {
        std::vector<std::string> next;
        std::set<TermRef> found;
        for (const auto& cur : frontier) {
            for (const auto& parent : idx.direct_parents(cur)) {
                if (!visited.insert(parent).second) continue;
                const Term* pt = idx.term(parent);
                if (pt && pt->stereotype)
                    found.insert(*pt->stereotype);
                else
                    next.push_back(parent);
            }
        }
        if (found.size() == 1) {
            result.status = StereotypeStatus::found;
            result.stereotype = *found.begin();
            return result;
        }
        if (found.size() > 1) {
            result.status = StereotypeStatus::ambiguous;
            for (const auto& ref : found) result.candidates.push_back(ref.to_string());
            return result;
        }
        frontier = std::move(next);
    }
    return result;  // none
}

namespace {

Violation make_diag(std::string code, std::vector<std::string> subjects, std::string message) {
    Violation v;
    v.code = std::move(code);
    v.severity = Severity::error;
    v.subjects = std::move(subjects);
    v.message = std::move(message);
    return v;
}

// Layer rules: own-term stereotypes must come from a strictly higher level
// (lower rank); reused-term sources from a same-or-higher level. The layer
// of an absent import is taken from its declaration.
void check_stereotype_rules(const Workspace& workspace, const OntologyIndex& idx,
                            std::vector<Violation>& out) {
    const Ontology& onto = idx.onto();
    for (const auto& term : onto.terms) {
        if (!term.stereotype) continue;
        const TermRef& ref = *term.stereotype;
        const Import* import = onto.find_import(ref.ontology);
        if (!import && ref.ontology != onto.name) {
            out.push_back(make_diag(
                "UNRESOLVED_REF", {term.name, ref.to_string()},
                "stereotype of term \"" + term.name + "\" references ontology '" + ref.ontology +
                    "' which is not declared as an import"));
            continue;
        }

        const OntologyIndex* source = workspace.find(ref.ontology);
        Layer source_layer = source ? source->onto().layer
                                    : (import ? import->layer : onto.layer);
        if (import && source && source->onto().layer != import->layer) {
            out.push_back(make_diag(
                "IMPORT_LAYER_MISMATCH", {onto.name, ref.ontology},
                "import '" + ref.ontology + "' declared at layer " +
                    std::string(to_string(import->layer)) + " but the loaded ontology is at layer " +
                    std::string(to_string(source->onto().layer))));
        }

        int own_rank = layer_rank(onto.layer);
        int src_rank = layer_rank(source_layer);
        if (term.origin == TermOrigin::own) {
            if (src_rank >= own_rank)
                out.push_back(make_diag(
                    "LAYER_VIOLATION", {term.name, ref.to_string()},
                    "term \"" + term.name + "\" is enriched by '" + ref.to_string() +
                        "' at layer " + std::string(to_string(source_layer)) +
                        "; enrichment must come from a strictly higher level"));
        } else {
            if (src_rank > own_rank)
                out.push_back(make_diag(
                    "LAYER_VIOLATION", {term.name, ref.to_string()},
                    "reused term \"" + term.name + "\" has source '" + ref.to_string() +
                        "' at layer " + std::string(to_string(source_layer)) +
                        "; reuse must come from the same or a higher level"));
        }

        if (source) {
            auto lookup = source->lookup(ref.name);
            if (lookup.status != OntologyIndex::LookupStatus::found)
                out.push_back(make_diag(
                    "UNRESOLVED_REF", {term.name, ref.to_string()},
                    "stereotype of term \"" + term.name + "\" references unknown term '" +
                        ref.to_string() + "'"));
        }
        // Optional import absent from the workspace: nothing to check against.
    }
}

}  // namespace

std::vector<Violation> check_ontology_wellformedness(const Workspace& workspace,
                                                     const std::string& ontology_name) {
    const OntologyIndex& idx = workspace.require(ontology_name);
    const Ontology& onto = idx.onto();
    std::vector<Violation> out;

    for (const auto& cycle : idx.taxonomy_cycles()) {
        std::string names;
        for (const auto& n : cycle) names += (names.empty() ? "\"" : ", \"") + n + "\"";
        out.push_back(make_diag("TAXONOMY_CYCLE", cycle,
                                "taxonomy contains a cycle through " + names));
    }

    for (const auto& imp : onto.imports) {
        if (!workspace.find(imp.name) && !imp.optional)
            out.push_back(make_diag("UNRESOLVED_IMPORT", {onto.name, imp.name},
                                    "import '" + imp.name + "' is not loaded in the workspace"));
        if (onto.layer == Layer::foundational)
            out.push_back(make_diag("LAYER_VIOLATION", {onto.name, imp.name},
                                    "a foundational-layer ontology may not import anything"));
    }

    for (const auto& rel : onto.relationships) {
        for (const auto* end : {&rel.source, &rel.target}) {
            if (!idx.term(end->term))
                out.push_back(make_diag("UNRESOLVED_REF", {rel.name, end->term},
                                        "relationship \"" + rel.name +
                                            "\" endpoint references unknown term \"" + end->term +
                                            "\""));
        }
    }

    for (const auto& gs : onto.generalization_sets) {
        for (const auto& child : gs.children) {
            auto parents = idx.direct_parents(child);
            if (std::find(parents.begin(), parents.end(), gs.parent) == parents.end())
                out.push_back(make_diag(
                    "GENSET_CHILD_NOT_SUBTYPE", {gs.parent, child},
                    "generalization-set child \"" + child + "\" has no taxonomic link to \"" +
                        gs.parent + "\""));
        }
    }

    check_stereotype_rules(workspace, idx, out);

    if (onto.layer == Layer::foundational) {
        std::vector<std::string> foundational;
        for (const auto* other : workspace.all())
            if (other->onto().layer == Layer::foundational) foundational.push_back(other->name());
        if (foundational.size() > 1) {
            std::sort(foundational.begin(), foundational.end());
            std::string names;
            for (const auto& n : foundational) names += (names.empty() ? "" : ", ") + n;
            out.push_back(make_diag("DUPLICATE_FOUNDATIONAL", foundational,
                                    "workspace holds more than one foundational ontology: " +
                                        names));
        }
    }

    sort_canonical(out);
    return out;
}

}  // namespace onto
