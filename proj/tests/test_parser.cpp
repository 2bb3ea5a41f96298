#include <doctest.h>

#include <random>

#include "onto/parser.hpp"
#include "onto/serializer.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"

using namespace onto;

TEST_CASE("parse_ontology reads the bundled corpus") {
    Ontology onto = support::load_ontology("SituationCO.onto");
    CHECK(onto.name == "SituationCO");
    CHECK(onto.version == "1.2");
    CHECK(onto.layer == Layer::core);
    CHECK(onto.relationships.size() == 21);
    CHECK(onto.imports.size() == 5);
    CHECK(onto.find_import("ThingFO") != nullptr);
    CHECK_FALSE(onto.find_import("ThingFO")->optional);
    CHECK(onto.find_import("ProcessCO")->optional);
}

TEST_CASE("parse_ontology rejects an empty file") {
    auto result = parse_ontology("");
    CHECK_FALSE(result.ok());
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].code == "SYNTAX_ERROR");
    CHECK(result.diagnostics[0].message == "expected 'ontology' header");
}

TEST_CASE("parse_ontology flags a duplicate term at the second span") {
    auto result = parse_ontology(
        "ontology X version \"1\" layer core\n"
        "term \"Goal\"\n"
        "term \"Goal\"\n");
    CHECK_FALSE(result.ok());
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].code == "DUPLICATE_TERM");
    CHECK(result.diagnostics[0].span.line == 3);
}

TEST_CASE("parse_ontology flags synonym collisions and missing reuse sources") {
    auto collision = parse_ontology(
        "ontology X version \"1\" layer core\n"
        "term \"A\" synonyms \"B\"\n"
        "term \"B\"\n");
    CHECK(collision.has_error("SYNONYM_COLLISION"));

    auto reused = parse_ontology(
        "ontology X version \"1\" layer core\n"
        "term \"A\" reused\n");
    CHECK(reused.has_error("REUSED_WITHOUT_SOURCE"));
}

TEST_CASE("parse_ontology resolves local references after the whole file") {
    auto forward = parse_ontology(
        "ontology X version \"1\" layer core\n"
        "isa \"A\" of \"B\"\n"
        "term \"A\"\n"
        "term \"B\"\n");
    CHECK(forward.ok());

    auto dangling = parse_ontology(
        "ontology X version \"1\" layer core\n"
        "term \"A\"\n"
        "rel \"r\" from \"A\" [1] to \"Ghost\" [*]\n");
    CHECK_FALSE(dangling.ok());
    CHECK(dangling.has_error("UNRESOLVED_LOCAL_REF"));
}

TEST_CASE("parse_ontology rewrites synonym references to canonical names") {
    auto result = parse_ontology(
        "ontology X version \"1\" layer core\n"
        "term \"Specific Goal\" synonyms \"Objective\"\n"
        "term \"Plan\"\n"
        "isa \"Plan\" of \"Objective\"\n"
        "rel \"steers\" from \"Objective\" [1] to \"Plan\" [*]\n");
    REQUIRE(result.ok());
    CHECK(result.value->taxonomy[0].parent == "Specific Goal");
    CHECK(result.value->relationships[0].source.term == "Specific Goal");
}

TEST_CASE("parse_ontology splits endpoint qualifiers") {
    Ontology thing = support::load_ontology("ThingFO-lite.onto");
    const RelationshipDef* rel = nullptr;
    for (const auto& r : thing.relationships)
        if (r.name == "interacts with other") rel = &r;
    REQUIRE(rel != nullptr);
    CHECK(rel->source.term == "Thing");
    CHECK(rel->source.qualifier == "(Power of)");
    CHECK(rel->source.display() == "(Power of) Thing");
    CHECK(rel->target.qualifier.empty());
}

TEST_CASE("parse_ontology reads axioms with all head forms") {
    Ontology onto = support::load_ontology("SituationCO.onto");

    const AxiomRule& a1 = support::find_axiom(onto, "A1");
    REQUIRE(a1.universals.size() == 2);
    CHECK(a1.universals[0].variable == "ps");
    CHECK(a1.universals[0].guard == "Particular Situation");
    CHECK(a1.universals[1].variable == "thing");
    REQUIRE(a1.body.size() == 1);
    CHECK(a1.body[0] == RelationAtom{"deals with target", "ps", "thing"});
    CHECK(std::holds_alternative<NegatedHead>(a1.head));

    const AxiomRule& a2 = support::find_axiom(onto, "A2");
    CHECK(a2.universals.size() == 3);
    CHECK(a2.body.size() == 2);
    CHECK(std::holds_alternative<PositiveHead>(a2.head));

    const AxiomRule& a3 = support::find_axiom(onto, "A3");
    CHECK(a3.universals.size() == 2);
    const auto& head = std::get<ExistentialHead>(a3.head);
    CHECK(head.variable == "ps");
    CHECK(head.guard == "Particular Situation");
    CHECK(head.atoms.size() == 2);
}

TEST_CASE("parse_multiplicity handles every token form") {
    std::string error;
    CHECK(*parse_multiplicity("1..*") == Multiplicity::at_least(1));
    CHECK(*parse_multiplicity("*") == Multiplicity::any());
    CHECK(*parse_multiplicity("2") == Multiplicity::exactly(2));
    CHECK(*parse_multiplicity("0..3") == Multiplicity{0, 3});
    CHECK_FALSE(parse_multiplicity("3..2", &error).has_value());
    CHECK(error == "multiplicity minimum 3 exceeds maximum 2");
    CHECK_FALSE(parse_multiplicity("", &error).has_value());
    CHECK_FALSE(parse_multiplicity("x", &error).has_value());
    CHECK_FALSE(parse_multiplicity("1..x", &error).has_value());
}

TEST_CASE("malformed multiplicities surface in .onto files") {
    auto result = parse_ontology(
        "ontology X version \"1\" layer core\n"
        "term \"A\"\n"
        "rel \"r\" from \"A\" [3..2] to \"A\" [*]\n");
    CHECK_FALSE(result.ok());
    CHECK(result.has_error("MALFORMED_MULTIPLICITY"));
}

TEST_CASE("parse_instance_model reads nodes and links") {
    auto result = parse_instance_model(
        "model m conforms SituationCO\n"
        "ps1 : \"Particular Situation\"\n"
        "te1 : \"Target Entity\"\n"
        "link \"deals with target\" ps1 -> te1\n");
    REQUIRE(result.ok());
    CHECK(result.value->nodes.size() == 2);
    CHECK(result.value->links.size() == 1);
    CHECK(result.value->links[0].relationship == "deals with target");
}

TEST_CASE("parse_instance_model flags undeclared link endpoints") {
    auto result = parse_instance_model(
        "model m conforms SituationCO\n"
        "ps1 : \"Particular Situation\"\n"
        "link \"relates\" ps1 -> zz9\n");
    CHECK_FALSE(result.ok());
    CHECK(result.has_error("UNDECLARED_NODE"));
}

TEST_CASE("parse_instance_model collapses duplicate links and classifications") {
    auto result = parse_instance_model(
        "model m conforms SituationCO\n"
        "a : \"Target Entity\", \"Target Entity\"\n"
        "b : \"Context Entity\"\n"
        "link \"is surrounded by\" a -> b\n"
        "link \"is surrounded by\" a -> b\n");
    REQUIRE(result.ok());
    CHECK(result.value->nodes[0].asserted_terms.size() == 1);
    CHECK(result.value->links.size() == 1);
}

TEST_CASE("the bundled mini scenario has 7 nodes") {
    InstanceModel mini = support::load_instance("scenario-mini.inst");
    CHECK(mini.nodes.size() == 7);
    CHECK(mini.conforms_to == "SituationCO");
}

TEST_CASE("parse_refinement_map reads the bundled map") {
    RefinementMap map = support::load_refmap();
    CHECK(map.lower_ontology == "SituationCO");
    CHECK(map.upper_ontology == "ThingFO");
    CHECK(map.rows.size() == 21);
    CHECK(map.rows[0].lower == "implies universals");
}

TEST_CASE("parse_refinement_map rejects duplicate lower entries, accepts empty maps") {
    auto dup = parse_refinement_map(
        "refine A onto B\n"
        "\"implies\" -> \"x\"\n"
        "\"implies\" -> \"y\"\n");
    CHECK_FALSE(dup.ok());
    CHECK(dup.has_error("DUPLICATE_MAPPING"));

    auto empty = parse_refinement_map("refine A onto B\n");
    REQUIRE(empty.ok());
    CHECK(empty.value->rows.empty());
}

TEST_CASE("comments and CRLF line endings are accepted") {
    auto result = parse_ontology(
        "# leading comment\r\n"
        "ontology X version \"1\" layer core # trailing\r\n"
        "term \"A\"\r\n");
    REQUIRE(result.ok());
    CHECK(result.value->terms.size() == 1);
}

TEST_CASE("diagnostic spans point inside the input") {
    const char* inputs[] = {
        "ontology",
        "ontology X version \"1\" layer core\nterm\n",
        "ontology X version \"1\" layer core\nrel \"r\" from\n",
        "model m conforms X\nlink \"r\" a ->\n",
        "refine A onto\n",
    };
    for (const char* text : inputs) {
        auto count_lines = [](std::string_view s) {
            return 1 + std::count(s.begin(), s.end(), '\n');
        };
        auto check_spans = [&](const auto& diags) {
            for (const auto& d : diags) {
                CHECK(d.span.line >= 1);
                CHECK(d.span.line <= count_lines(text));
                CHECK(d.span.column >= 1);
            }
        };
        check_spans(parse_ontology(text).diagnostics);
        check_spans(parse_instance_model(text).diagnostics);
        check_spans(parse_refinement_map(text).diagnostics);
    }
}

TEST_CASE("round-trip: every corpus file reparses to an equal object") {
    for (const char* name : {"ThingFO-lite.onto", "SituationCO.onto", "ProcessCO-stub.onto",
                             "GoalCO-stub.onto", "ProjectCO-stub.onto", "PEventCO-stub.onto"}) {
        INFO(name);
        Ontology first = support::load_ontology(name);
        auto second = parse_ontology(serialize_ontology(first));
        REQUIRE(second.ok());
        CHECK(first == *second.value);
    }
    for (const char* name :
         {"scenario-valid.inst", "scenario-mini.inst", "axiom-a1-pass.inst", "axiom-a1-fail.inst",
          "axiom-a2-pass.inst", "axiom-a2-fail.inst", "axiom-a3-pass.inst", "axiom-a3-fail.inst"}) {
        INFO(name);
        InstanceModel first = support::load_instance(name);
        auto second = parse_instance_model(serialize_instance_model(first));
        REQUIRE(second.ok());
        CHECK(first == *second.value);
    }
    RefinementMap map = support::load_refmap();
    auto reparsed = parse_refinement_map(serialize_refinement_map(map));
    REQUIRE(reparsed.ok());
    CHECK(map == *reparsed.value);
}

TEST_CASE("parsing is total over arbitrary bytes") {
    std::mt19937 rng(97);
    for (int i = 0; i < 300; ++i) {
        std::string bytes = support::random_bytes(rng, 400);
        auto o = parse_ontology(bytes);
        CHECK((o.ok() || !o.diagnostics.empty()));
        auto m = parse_instance_model(bytes);
        CHECK((m.ok() || !m.diagnostics.empty()));
        auto r = parse_refinement_map(bytes);
        CHECK((r.ok() || !r.diagnostics.empty()));
    }

    // Mutations of a valid corpus file must not crash either.
    std::string corpus = support::slurp(support::corpus_dir() / "SituationCO.onto");
    for (int i = 0; i < 100; ++i) {
        std::string mutated = corpus;
        int edits = 1 + support::below(rng, 4);
        for (int e = 0; e < edits; ++e) {
            std::size_t pos = static_cast<std::size_t>(
                support::below(rng, static_cast<int>(mutated.size())));
            mutated[pos] = static_cast<char>(rng() % 256);
        }
        auto result = parse_ontology(mutated);
        CHECK((result.ok() || !result.diagnostics.empty()));
    }
}
