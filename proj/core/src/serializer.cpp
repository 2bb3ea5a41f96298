// serializer.cpp - canonical emission; output reparses to a structurally
// equal object
#include "onto/serializer.hpp"

#include <sstream>

namespace onto {

std::string quote(std::string_view name) {
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

namespace {

std::string endpoint_text(const EndpointRef& ref) {
    if (ref.qualifier.empty()) return quote(ref.term);
    return quote(ref.qualifier + " " + ref.term);
}

void emit_atom(std::ostringstream& out, const RelationAtom& atom) {
    out << quote(atom.relationship) << "(" << atom.lhs << ", " << atom.rhs << ")";
}

void emit_conjunction(std::ostringstream& out, const std::vector<RelationAtom>& atoms) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out << " & ";
        emit_atom(out, atoms[i]);
    }
}

}  // namespace

std::string serialize_ontology(const Ontology& onto) {
    std::ostringstream out;
    out << "ontology " << onto.name << " version " << quote(onto.version) << " layer "
        << to_string(onto.layer) << "\n";

    if (!onto.imports.empty()) out << "\n";
    for (const auto& imp : onto.imports) {
        out << "import " << imp.name << " layer " << to_string(imp.layer);
        if (imp.optional) out << " optional";
        out << "\n";
    }

    if (!onto.terms.empty()) out << "\n";
    for (const auto& term : onto.terms) {
        out << "term " << quote(term.name);
        if (!term.synonyms.empty()) {
            out << " synonyms ";
            for (std::size_t i = 0; i < term.synonyms.size(); ++i) {
                if (i) out << ", ";
                out << quote(term.synonyms[i]);
            }
        }
        if (!term.qualifier.empty()) out << " qualifier " << quote(term.qualifier);
        if (term.origin == TermOrigin::reused) out << " reused";
        if (term.stereotype)
            out << " stereotype " << term.stereotype->ontology << "."
                << quote(term.stereotype->name);
        out << "\n";
    }

    if (!onto.taxonomy.empty()) out << "\n";
    for (const auto& link : onto.taxonomy)
        out << "isa " << quote(link.child) << " of " << quote(link.parent) << "\n";

    if (!onto.generalization_sets.empty()) out << "\n";
    for (const auto& gs : onto.generalization_sets) {
        out << "genset " << quote(gs.parent) << " children ";
        for (std::size_t i = 0; i < gs.children.size(); ++i) {
            if (i) out << ", ";
            out << quote(gs.children[i]);
        }
        out << " {" << (gs.completeness == Completeness::complete ? "complete" : "incomplete")
            << ", " << (gs.disjointness == Disjointness::disjoint ? "disjoint" : "overlapping")
            << "}\n";
    }

    if (!onto.relationships.empty()) out << "\n";
    for (const auto& rel : onto.relationships) {
        out << "rel " << quote(rel.name) << " from " << endpoint_text(rel.source) << " ["
            << rel.source_mult.to_string() << "] to " << endpoint_text(rel.target) << " ["
            << rel.target_mult.to_string() << "]";
        if (!rel.definition.empty()) out << " definition " << quote(rel.definition);
        out << "\n";
    }

    if (!onto.axioms.empty()) out << "\n";
    for (const auto& rule : onto.axioms) {
        out << "axiom " << rule.id << " forall ";
        for (std::size_t i = 0; i < rule.universals.size(); ++i) {
            if (i) out << ", ";
            out << rule.universals[i].variable << ":" << quote(rule.universals[i].guard);
        }
        out << " :\n  ";
        emit_conjunction(out, rule.body);
        out << " -> ";
        if (const auto* pos = std::get_if<PositiveHead>(&rule.head)) {
            emit_atom(out, pos->atom);
        } else if (const auto* neg = std::get_if<NegatedHead>(&rule.head)) {
            out << "not ";
            emit_atom(out, neg->atom);
        } else {
            const auto& ex = std::get<ExistentialHead>(rule.head);
            out << "exists " << ex.variable << ":" << quote(ex.guard) << " : ";
            emit_conjunction(out, ex.atoms);
        }
        out << "\n";
    }
    return out.str();
}

std::string serialize_instance_model(const InstanceModel& model) {
    std::ostringstream out;
    out << "model " << model.name << " conforms " << model.conforms_to << "\n";
    if (!model.nodes.empty()) out << "\n";
    for (const auto& node : model.nodes) {
        out << node.id << " : ";
        for (std::size_t i = 0; i < node.asserted_terms.size(); ++i) {
            if (i) out << ", ";
            out << quote(node.asserted_terms[i]);
        }
        out << "\n";
    }
    if (!model.links.empty()) out << "\n";
    for (const auto& link : model.links)
        out << "link " << quote(link.relationship) << " " << link.source << " -> " << link.target
            << "\n";
    return out.str();
}

std::string serialize_refinement_map(const RefinementMap& map) {
    std::ostringstream out;
    out << "refine " << map.lower_ontology << " onto " << map.upper_ontology << "\n";
    if (!map.rows.empty()) out << "\n";
    for (const auto& row : map.rows)
        out << quote(row.lower) << " -> " << quote(row.upper) << "\n";
    return out.str();
}

}  // namespace onto
