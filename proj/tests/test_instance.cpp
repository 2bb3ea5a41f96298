#include <doctest.h>

#include <random>

#include "onto/instance.hpp"
#include "onto/parser.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"

using namespace onto;

namespace {

IndexedModel index_text(const Workspace& ws, const char* text) {
    auto parsed = parse_instance_model(text);
    REQUIRE(parsed.ok());
    return IndexedModel(std::move(*parsed.value), *ws.find("SituationCO"));
}

}  // namespace

TEST_CASE("instances_of is taxonomy-aware") {
    Workspace ws = support::load_pair();
    IndexedModel model = index_text(ws,
                                    "model m conforms SituationCO\n"
                                    "s1 : \"Space Entity\"\n"
                                    "ps1 : \"Particular Situation\"\n");
    CHECK(model.instances_of("Context Entity") == std::vector<std::string>{"s1"});
    CHECK(model.instances_of("Situation") == std::vector<std::string>{"ps1"});
    CHECK(model.instances_of("Target Entity").empty());
    CHECK_THROWS_AS(model.instances_of("Ghost"), ResolutionError);
}

TEST_CASE("instances_of on the empty model is empty") {
    Workspace ws = support::load_pair();
    IndexedModel model = index_text(ws, "model m conforms SituationCO\n");
    CHECK(model.instances_of("Target Entity").empty());
}

TEST_CASE("partners reads links in both directions") {
    Workspace ws = support::load_pair();
    IndexedModel model = index_text(ws,
                                    "model m conforms SituationCO\n"
                                    "ps1 : \"Particular Situation\"\n"
                                    "te1 : \"Target Entity\"\n"
                                    "te2 : \"Target Entity\"\n"
                                    "lone : \"Time Entity\"\n"
                                    "link \"deals with target\" ps1 -> te1\n"
                                    "link \"deals with target\" ps1 -> te2\n");
    CHECK(model.partners("deals with target", "ps1", Direction::outgoing) ==
          std::vector<std::string>{"te1", "te2"});
    CHECK(model.partners("deals with target", "te1", Direction::incoming) ==
          std::vector<std::string>{"ps1"});
    CHECK(model.partners("deals with target", "lone", Direction::outgoing).empty());
    CHECK_THROWS_AS(model.partners("deals with target", "zz", Direction::outgoing),
                    ResolutionError);
}

TEST_CASE("synonyms resolve to their canonical term in assertions and queries") {
    Workspace ws = support::load_pair();
    IndexedModel model = index_text(ws,
                                    "model m conforms SituationCO\n"
                                    "g1 : \"Objective\"\n");
    CHECK(model.instances_of("Specific Goal") == std::vector<std::string>{"g1"});
    CHECK(model.instances_of("Objective") == std::vector<std::string>{"g1"});
    CHECK(model.instances_of("Goal") == std::vector<std::string>{"g1"});
}

TEST_CASE("an ambiguous synonym assertion is a resolution error") {
    auto schema = parse_ontology(R"(
ontology Amb version "1" layer core
term "First" synonyms "Shared"
term "Second" synonyms "Shared"
)");
    REQUIRE(schema.ok());
    Workspace ws;
    ws.add(std::move(*schema.value));
    auto parsed = parse_instance_model(
        "model m conforms Amb\n"
        "x : \"Shared\"\n");
    REQUIRE(parsed.ok());
    CHECK_THROWS_AS(IndexedModel(std::move(*parsed.value), *ws.find("Amb")), ResolutionError);
}

TEST_CASE("node asserting an unknown term is a resolution error") {
    Workspace ws = support::load_pair();
    auto parsed = parse_instance_model(
        "model m conforms SituationCO\n"
        "x : \"No Such Term\"\n");
    REQUIRE(parsed.ok());
    CHECK_THROWS_AS(IndexedModel(std::move(*parsed.value), *ws.find("SituationCO")),
                    ResolutionError);
}

TEST_CASE("partner symmetry holds on random models") {
    Workspace ws = support::load_pair();
    const OntologyIndex& schema = *ws.find("SituationCO");
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        IndexedModel model(support::random_model(rng, schema), schema);
        for (const auto& rel : schema.onto().relationships) {
            for (const auto& n : model.model().nodes) {
                for (const auto& m : model.partners(rel.name, n.id, Direction::outgoing)) {
                    auto back = model.partners(rel.name, m, Direction::incoming);
                    CHECK(std::find(back.begin(), back.end(), n.id) != back.end());
                }
                for (const auto& m : model.partners(rel.name, n.id, Direction::incoming)) {
                    auto fwd = model.partners(rel.name, m, Direction::outgoing);
                    CHECK(std::find(fwd.begin(), fwd.end(), n.id) != fwd.end());
                }
            }
        }
    }
}

TEST_CASE("instances_of is monotone along subsumption") {
    Workspace ws = support::load_pair();
    const OntologyIndex& schema = *ws.find("SituationCO");
    std::mt19937 rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        IndexedModel model(support::random_model(rng, schema), schema);
        for (const auto& broad : schema.onto().terms) {
            for (const auto& narrow : schema.onto().terms) {
                if (!schema.subsumes(broad.name, narrow.name)) continue;
                const auto& wide = model.instances_of(broad.name);
                for (const auto& id : model.instances_of(narrow.name))
                    CHECK(std::binary_search(wide.begin(), wide.end(), id));
            }
        }
    }
}
