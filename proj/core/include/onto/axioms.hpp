// axioms.hpp - restricted first-order axiom rules and their evaluation
//
// The fragment covers universally guarded rules whose body is a conjunction
// of binary relation atoms and whose head is a positive atom, a negated
// atom, or a single trailing existential block. Evaluation is closed-world
// over a finite instance model and returns the assignments that violate the
// rule.
#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "onto/diagnostics.hpp"

namespace onto {

class IndexedModel;
class OntologyIndex;

/// relationship(lhs, rhs) over rule variables.
struct RelationAtom {
    std::string relationship;
    std::string lhs;
    std::string rhs;
};

bool operator==(const RelationAtom& a, const RelationAtom& b);

struct PositiveHead {
    RelationAtom atom;
};

struct NegatedHead {
    RelationAtom atom;
};

/// exists v:"Guard" : atom & atom ...
struct ExistentialHead {
    std::string variable;
    std::string guard;
    std::vector<RelationAtom> atoms;
};

using AxiomHead = std::variant<PositiveHead, NegatedHead, ExistentialHead>;

struct GuardedVariable {
    std::string variable;
    std::string guard;  // term name in the governing ontology
};

struct AxiomRule {
    std::string id;
    std::vector<GuardedVariable> universals;
    std::vector<RelationAtom> body;
    AxiomHead head;
    SourceSpan span;
};

bool operator==(const AxiomRule& a, const AxiomRule& b);

/// Assignment of every universal variable to a node id.
using Witness = std::map<std::string, std::string>;

/// Returns the universal-variable assignments that satisfy the body but
/// fail the head, in lexicographic order, each at most once. Empty result
/// means the axiom holds on the model.
///
/// Throws ResolutionError if the rule references a term or relationship
/// unknown to the schema.
std::vector<Witness> evaluate_axiom(const AxiomRule& rule, const IndexedModel& model,
                                    const OntologyIndex& schema);

/// Same contract as evaluate_axiom, implemented by exhaustive enumeration
/// of all variable assignments with no indexing or pruning. Exists for
/// differential testing.
std::vector<Witness> evaluate_axiom_naive(const AxiomRule& rule, const IndexedModel& model,
                                          const OntologyIndex& schema);

}  // namespace onto
