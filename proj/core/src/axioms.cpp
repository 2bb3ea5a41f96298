// axioms.cpp - closed-world evaluation of guarded rules over finite models
#include "onto/axioms.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "onto/instance.hpp"

namespace onto {

namespace {

using Assignment = std::map<std::string, std::string>;

void require_rule_resolves(const AxiomRule& rule, const OntologyIndex& schema) {
    auto require_term = [&](const std::string& name) {
        if (!schema.term(name))
            throw ResolutionError("axiom " + rule.id + " guard references unknown term \"" +
                                  name + "\"");
    };
    auto require_rel = [&](const RelationAtom& atom) {
        if (!schema.relationship(atom.relationship))
            throw ResolutionError("axiom " + rule.id + " references unknown relationship \"" +
                                  atom.relationship + "\"");
    };
    for (const auto& u : rule.universals) require_term(u.guard);
    for (const auto& atom : rule.body) require_rel(atom);
    if (const auto* pos = std::get_if<PositiveHead>(&rule.head)) require_rel(pos->atom);
    if (const auto* neg = std::get_if<NegatedHead>(&rule.head)) require_rel(neg->atom);
    if (const auto* ex = std::get_if<ExistentialHead>(&rule.head)) {
        require_term(ex->guard);
        for (const auto& atom : ex->atoms) require_rel(atom);
    }

    std::set<std::string> universals;
    for (const auto& u : rule.universals) universals.insert(u.variable);
    for (const auto& atom : rule.body)
        for (const auto* var : {&atom.lhs, &atom.rhs})
            if (!universals.count(*var))
                throw ResolutionError("axiom " + rule.id + " body uses variable '" + *var +
                                      "' that is not universally quantified");
}

bool atom_holds(const IndexedModel& model, const RelationAtom& atom, const Assignment& assignment) {
    return model.has_link(atom.relationship, assignment.at(atom.lhs), assignment.at(atom.rhs));
}

bool head_holds(const IndexedModel& model, const AxiomHead& head, const Assignment& assignment) {
    if (const auto* pos = std::get_if<PositiveHead>(&head))
        return atom_holds(model, pos->atom, assignment);
    if (const auto* neg = std::get_if<NegatedHead>(&head))
        return !atom_holds(model, neg->atom, assignment);
    const auto& ex = std::get<ExistentialHead>(head);
    Assignment extended = assignment;
    for (const auto& candidate : model.instances_of(ex.guard)) {
        extended[ex.variable] = candidate;
        bool all = true;
        for (const auto& atom : ex.atoms)
            if (!atom_holds(model, atom, extended)) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

}  // namespace

std::vector<Witness> evaluate_axiom_naive(const AxiomRule& rule, const IndexedModel& model,
                                          const OntologyIndex& schema) {
    require_rule_resolves(rule, schema);

    // Plain cartesian product over every guard extension; no indexing, no
    // pruning. This is the differential-testing oracle.
    std::vector<std::vector<std::string>> ranges;
    for (const auto& u : rule.universals) ranges.push_back(model.instances_of(u.guard));

    std::vector<Witness> witnesses;
    std::vector<std::size_t> cursor(ranges.size(), 0);
    for (const auto& range : ranges)
        if (range.empty()) return witnesses;

    while (true) {
        Assignment assignment;
        for (std::size_t i = 0; i < ranges.size(); ++i)
            assignment[rule.universals[i].variable] = ranges[i][cursor[i]];

        bool body_true = true;
        for (const auto& atom : rule.body)
            if (!atom_holds(model, atom, assignment)) {
                body_true = false;
                break;
            }
        if (body_true && !head_holds(model, rule.head, assignment))
            witnesses.push_back(assignment);

        std::size_t level = ranges.size();
        while (level > 0) {
            --level;
            if (++cursor[level] < ranges[level].size()) break;
            cursor[level] = 0;
            if (level == 0) return witnesses;
        }
        if (ranges.empty()) return witnesses;
    }
}

std::vector<Witness> evaluate_axiom(const AxiomRule& rule, const IndexedModel& model,
                                    const OntologyIndex& schema) {
    require_rule_resolves(rule, schema);

    // Candidate sets: guard extension intersected with link participation for
    // every body atom the variable appears in (the body must hold for a
    // witness, so a variable on the left of r must be some r-source).
    std::vector<std::vector<std::string>> candidates;
    candidates.reserve(rule.universals.size());
    for (const auto& u : rule.universals) {
        std::vector<std::string> range = model.instances_of(u.guard);
        for (const auto& atom : rule.body) {
            if (atom.lhs != u.variable && atom.rhs != u.variable) continue;
            std::set<std::string> participants;
            for (const auto& node : range) {
                Direction dir = atom.lhs == u.variable ? Direction::outgoing : Direction::incoming;
                if (!model.partners(atom.relationship, node, dir).empty())
                    participants.insert(node);
            }
            std::vector<std::string> filtered;
            for (const auto& node : range)
                if (participants.count(node)) filtered.push_back(node);
            range = std::move(filtered);
        }
        candidates.push_back(std::move(range));
    }

    std::vector<Witness> witnesses;
    Assignment assignment;

    // Depth-first over universals in declaration order, checking each body
    // atom as soon as both of its variables are bound.
    auto bound_after = [&](std::size_t depth, const std::string& var) {
        for (std::size_t i = 0; i <= depth; ++i)
            if (rule.universals[i].variable == var) return true;
        return false;
    };

    std::function<void(std::size_t)> descend = [&](std::size_t depth) {
        if (depth == rule.universals.size()) {
            if (!head_holds(model, rule.head, assignment)) witnesses.push_back(assignment);
            return;
        }
        const auto& var = rule.universals[depth].variable;
        for (const auto& node : candidates[depth]) {
            assignment[var] = node;
            bool consistent = true;
            for (const auto& atom : rule.body) {
                if ((atom.lhs == var || atom.rhs == var) && bound_after(depth, atom.lhs) &&
                    bound_after(depth, atom.rhs)) {
                    if (!atom_holds(model, atom, assignment)) {
                        consistent = false;
                        break;
                    }
                }
            }
            if (consistent) descend(depth + 1);
        }
        assignment.erase(var);
    };
    descend(0);
    return witnesses;
}

}  // namespace onto
