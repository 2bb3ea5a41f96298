#include <doctest.h>

#include <algorithm>
#include <random>

#include "onto/axioms.hpp"
#include "onto/instance.hpp"
#include "onto/parser.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"

using namespace onto;

namespace {

struct Fixture {
    Workspace ws = support::load_pair();
    const OntologyIndex& schema = *ws.find("SituationCO");
    const AxiomRule& a1 = support::find_axiom(schema.onto(), "A1");
    const AxiomRule& a2 = support::find_axiom(schema.onto(), "A2");
    const AxiomRule& a3 = support::find_axiom(schema.onto(), "A3");

    IndexedModel load(const std::string& file) const {
        return IndexedModel(support::load_instance(file), schema);
    }
};

std::vector<Witness> sorted(std::vector<Witness> ws) {
    std::sort(ws.begin(), ws.end());
    return ws;
}

}  // namespace

TEST_CASE("A1 fixture pair: shared node yields exactly one witness") {
    Fixture f;
    IndexedModel fail = f.load("axiom-a1-fail.inst");
    auto witnesses = evaluate_axiom(f.a1, fail, f.schema);
    REQUIRE(witnesses.size() == 1);
    CHECK(witnesses[0] == Witness{{"ps", "ps"}, {"thing", "t"}});
    CHECK(evaluate_axiom(f.a2, fail, f.schema).empty());
    CHECK(evaluate_axiom(f.a3, fail, f.schema).empty());

    IndexedModel pass = f.load("axiom-a1-pass.inst");
    CHECK(evaluate_axiom(f.a1, pass, f.schema).empty());
    CHECK(evaluate_axiom(f.a2, pass, f.schema).empty());
    CHECK(evaluate_axiom(f.a3, pass, f.schema).empty());
}

TEST_CASE("A2 fixture pair: missing surrounding link yields one witness") {
    Fixture f;
    IndexedModel fail = f.load("axiom-a2-fail.inst");
    auto witnesses = evaluate_axiom(f.a2, fail, f.schema);
    REQUIRE(witnesses.size() == 1);
    CHECK(witnesses[0] == Witness{{"ps", "ps"}, {"te", "te"}, {"ce", "ce"}});
    CHECK(evaluate_axiom(f.a1, fail, f.schema).empty());
    CHECK(evaluate_axiom(f.a3, fail, f.schema).empty());

    IndexedModel pass = f.load("axiom-a2-pass.inst");
    CHECK(evaluate_axiom(f.a1, pass, f.schema).empty());
    CHECK(evaluate_axiom(f.a2, pass, f.schema).empty());
    CHECK(evaluate_axiom(f.a3, pass, f.schema).empty());
}

TEST_CASE("A3 fixture pair: unbacked influence yields one witness") {
    Fixture f;
    IndexedModel fail = f.load("axiom-a3-fail.inst");
    auto witnesses = evaluate_axiom(f.a3, fail, f.schema);
    REQUIRE(witnesses.size() == 1);
    CHECK(witnesses[0] == Witness{{"te", "te"}, {"ce", "ce"}});
    CHECK(evaluate_axiom(f.a1, fail, f.schema).empty());
    CHECK(evaluate_axiom(f.a2, fail, f.schema).empty());

    IndexedModel pass = f.load("axiom-a3-pass.inst");
    CHECK(evaluate_axiom(f.a1, pass, f.schema).empty());
    CHECK(evaluate_axiom(f.a2, pass, f.schema).empty());
    CHECK(evaluate_axiom(f.a3, pass, f.schema).empty());
}

TEST_CASE("the naive evaluator agrees on every fixture") {
    Fixture f;
    for (const char* file : {"axiom-a1-pass.inst", "axiom-a1-fail.inst", "axiom-a2-pass.inst",
                             "axiom-a2-fail.inst", "axiom-a3-pass.inst", "axiom-a3-fail.inst",
                             "scenario-valid.inst", "scenario-mini.inst"}) {
        INFO(file);
        IndexedModel model = f.load(file);
        for (const AxiomRule* rule : {&f.a1, &f.a2, &f.a3})
            CHECK(sorted(evaluate_axiom(*rule, model, f.schema)) ==
                  sorted(evaluate_axiom_naive(*rule, model, f.schema)));
    }
}

TEST_CASE("axioms hold vacuously on the empty model") {
    Fixture f;
    auto parsed = parse_instance_model("model m conforms SituationCO\n");
    REQUIRE(parsed.ok());
    IndexedModel empty(std::move(*parsed.value), f.schema);
    for (const AxiomRule* rule : {&f.a1, &f.a2, &f.a3}) {
        CHECK(evaluate_axiom(*rule, empty, f.schema).empty());
        CHECK(evaluate_axiom_naive(*rule, empty, f.schema).empty());
    }
}

TEST_CASE("a guard with no instances makes the rule hold") {
    Fixture f;
    // No Particular Situation nodes at all; A1 ranges over an empty guard.
    IndexedModel model = f.load("axiom-a3-fail.inst");
    CHECK(evaluate_axiom(f.a1, model, f.schema).empty());
}

TEST_CASE("rules referencing unknown names are resolution errors") {
    Fixture f;
    IndexedModel model = f.load("axiom-a1-pass.inst");

    AxiomRule bad_guard;
    bad_guard.id = "X";
    bad_guard.universals = {{"v", "No Such Term"}};
    bad_guard.head = PositiveHead{{"relates", "v", "v"}};
    CHECK_THROWS_AS(evaluate_axiom(bad_guard, model, f.schema), ResolutionError);

    AxiomRule bad_rel;
    bad_rel.id = "Y";
    bad_rel.universals = {{"v", "Target Entity"}};
    bad_rel.body = {{"no such rel", "v", "v"}};
    bad_rel.head = PositiveHead{{"relates", "v", "v"}};
    CHECK_THROWS_AS(evaluate_axiom(bad_rel, model, f.schema), ResolutionError);
}

TEST_CASE("differential: indexed and naive evaluators agree on random models") {
    Fixture f;
    std::mt19937 rng(90210);
    for (int trial = 0; trial < 300; ++trial) {
        bool biased = trial % 2 == 0;
        IndexedModel model(support::random_model(rng, f.schema, 12, 40, false, biased), f.schema);
        for (const AxiomRule* rule : {&f.a1, &f.a2, &f.a3}) {
            auto fast = sorted(evaluate_axiom(*rule, model, f.schema));
            auto slow = sorted(evaluate_axiom_naive(*rule, model, f.schema));
            REQUIRE(fast == slow);
        }
    }
}

TEST_CASE("witnesses are sound: body holds and head fails on the model") {
    Fixture f;
    std::mt19937 rng(31415);
    auto atom_holds = [](const IndexedModel& m, const RelationAtom& atom, const Witness& w) {
        return m.has_link(atom.relationship, w.at(atom.lhs), w.at(atom.rhs));
    };
    for (int trial = 0; trial < 100; ++trial) {
        IndexedModel model(support::random_model(rng, f.schema), f.schema);
        for (const AxiomRule* rule : {&f.a1, &f.a2, &f.a3}) {
            for (const auto& witness : evaluate_axiom(*rule, model, f.schema)) {
                for (const auto& u : rule->universals) {
                    const auto& extent = model.instances_of(u.guard);
                    CHECK(std::binary_search(extent.begin(), extent.end(), witness.at(u.variable)));
                }
                for (const auto& atom : rule->body) CHECK(atom_holds(model, atom, witness));
                if (const auto* pos = std::get_if<PositiveHead>(&rule->head))
                    CHECK_FALSE(atom_holds(model, pos->atom, witness));
                if (const auto* neg = std::get_if<NegatedHead>(&rule->head))
                    CHECK(atom_holds(model, neg->atom, witness));
                if (const auto* ex = std::get_if<ExistentialHead>(&rule->head)) {
                    for (const auto& candidate : model.instances_of(ex->guard)) {
                        Witness extended = witness;
                        extended[ex->variable] = candidate;
                        bool all = true;
                        for (const auto& atom : ex->atoms)
                            if (!atom_holds(model, atom, extended)) all = false;
                        CHECK_FALSE(all);
                    }
                }
            }
        }
    }
}

TEST_CASE("A3 monotonicity: providing the situation removes exactly that witness") {
    Fixture f;
    std::mt19937 rng(65537);
    int exercised = 0;
    for (int trial = 0; trial < 200 && exercised < 50; ++trial) {
        InstanceModel model = support::random_model(rng, f.schema);
        IndexedModel indexed(model, f.schema);
        auto before = sorted(evaluate_axiom(f.a3, indexed, f.schema));
        if (before.empty()) continue;
        ++exercised;

        const Witness& chosen = before[static_cast<std::size_t>(
            support::below(rng, static_cast<int>(before.size())))];
        InstanceModel fixed = model;
        fixed.nodes.push_back({"fix_ps", {"Particular Situation"}, {}});
        fixed.links.push_back({"deals with target", "fix_ps", chosen.at("te"), {}});
        fixed.links.push_back({"deals with environment", "fix_ps", chosen.at("ce"), {}});

        auto after = sorted(evaluate_axiom(f.a3, IndexedModel(fixed, f.schema), f.schema));
        std::vector<Witness> expected;
        for (const auto& w : before)
            if (w != chosen) expected.push_back(w);
        CHECK(after == expected);
    }
    CHECK(exercised > 0);
}
