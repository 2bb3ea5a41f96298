// Benchmarks for the hot paths: parsing, validation, axiom evaluation
// (indexed vs naive), and refinement verification.
#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "onto/conformance.hpp"
#include "onto/parser.hpp"
#include "onto/refinement.hpp"
#include "onto/serializer.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"

using namespace onto;

namespace {

const std::string& situ_text() {
    static const std::string text =
        support::slurp(support::corpus_dir() / "SituationCO.onto");
    return text;
}

const Workspace& pair_workspace() {
    static const Workspace ws = support::load_pair();
    return ws;
}

}  // namespace

static void BM_parse_ontology(benchmark::State& state) {
    for (auto _ : state) {
        auto result = parse_ontology(situ_text());
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_parse_ontology);

static void BM_serialize_ontology(benchmark::State& state) {
    Ontology onto = support::load_ontology("SituationCO.onto");
    for (auto _ : state) {
        auto text = serialize_ontology(onto);
        benchmark::DoNotOptimize(text);
    }
}
BENCHMARK(BM_serialize_ontology);

static void BM_validate_scenario(benchmark::State& state) {
    const Workspace& ws = pair_workspace();
    InstanceModel model = support::load_instance("scenario-valid.inst");
    for (auto _ : state) {
        Report report = validate(model, ws, {});
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_validate_scenario);

static void BM_axioms_indexed(benchmark::State& state) {
    const Workspace& ws = pair_workspace();
    const OntologyIndex& schema = *ws.find("SituationCO");
    std::mt19937 rng(42);
    IndexedModel model(
        support::random_model(rng, schema, static_cast<int>(state.range(0)), 40), schema);
    for (auto _ : state) {
        for (const auto& rule : schema.onto().axioms) {
            auto witnesses = evaluate_axiom(rule, model, schema);
            benchmark::DoNotOptimize(witnesses);
        }
    }
}
BENCHMARK(BM_axioms_indexed)->Arg(8)->Arg(12);

static void BM_axioms_naive(benchmark::State& state) {
    const Workspace& ws = pair_workspace();
    const OntologyIndex& schema = *ws.find("SituationCO");
    std::mt19937 rng(42);
    IndexedModel model(
        support::random_model(rng, schema, static_cast<int>(state.range(0)), 40), schema);
    for (auto _ : state) {
        for (const auto& rule : schema.onto().axioms) {
            auto witnesses = evaluate_axiom_naive(rule, model, schema);
            benchmark::DoNotOptimize(witnesses);
        }
    }
}
BENCHMARK(BM_axioms_naive)->Arg(8)->Arg(12);

static void BM_verify_refinement(benchmark::State& state) {
    const Workspace& ws = pair_workspace();
    RefinementMap map = support::load_refmap();
    for (auto _ : state) {
        MatrixReport report = verify_refinement(ws, map);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_verify_refinement);

BENCHMARK_MAIN();
