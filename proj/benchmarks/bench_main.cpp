#include <benchmark/benchmark.h>

#include <string>

#include "cam/diff.hpp"
#include "cam/matrix.hpp"
#include "cam/mutation.hpp"
#include "cam/parser.hpp"
#include "cam/relevance.hpp"
#include "cam/simulation.hpp"

namespace {

const char* const k_subject = R"(fn helper(a, b) {
    if (a < b) {
        return b - a;
    }
    return a - b;
}

fn fun(z, k) {
    sort(z);
    sort(k);
    let r = z[1] - k[1];
    let l = 0;
    l = k[0] - k[1];
    let s = 0;
    for (let i = 0; i < 3; i = i + 1) {
        s = s + helper(z[i], k[i]);
    }
    if (r < l) {
        return (r - l) * s;
    }
    return r * l + s;
}
)";

const char* const k_tests = R"(fn test_mixed() {
    let z = [0, 3, 3];
    let k = [0, 2, 3];
    assert_eq(-1, fun(z, k));
}

fn test_sorted_pairs() {
    let z = [1, 4, 9];
    let k = [2, 4, 8];
    assert_eq(2, fun(z, k));
}
)";

const char* const k_diff =
    "--- a/fun.ml\n"
    "+++ b/fun.ml\n"
    "@@ -13,1 +13,1 @@\n"
    "-    l = k[0] + k[1];\n"
    "+    l = k[0] - k[1];\n";

struct Woven {
    cam::ProgramUnit subject;
    cam::ProgramUnit tests;
    cam::CommitDiff diff;
    std::vector<cam::Mutant> foms;
    std::vector<cam::HomPair> pairs;
};

const Woven& woven() {
    static const Woven instance = [] {
        Woven w;
        w.subject = cam::parse_program(k_subject, "fun.ml");
        w.tests = cam::parse_program(k_tests, "fun.mlt");
        w.diff = cam::parse_unified_diff(k_diff);
        w.foms = cam::generate_foms(w.subject, w.diff);
        w.pairs = cam::pair_homs(w.subject, w.foms);
        return w;
    }();
    return instance;
}

const cam::MatrixBundle& bundle() {
    static const cam::MatrixBundle instance = [] {
        cam::ExecOptions options;
        options.threads = 1;
        return cam::build_matrices(woven().subject, woven().tests, woven().foms,
                                   woven().pairs, options);
    }();
    return instance;
}

void BM_ParseProgram(benchmark::State& state) {
    for (auto _ : state) {
        cam::ProgramUnit unit = cam::parse_program(k_subject, "fun.ml");
        benchmark::DoNotOptimize(unit);
    }
}
BENCHMARK(BM_ParseProgram);

void BM_GenerateFoms(benchmark::State& state) {
    const Woven& w = woven();
    for (auto _ : state) {
        auto foms = cam::generate_foms(w.subject, w.diff);
        benchmark::DoNotOptimize(foms);
    }
}
BENCHMARK(BM_GenerateFoms);

void BM_PairHoms(benchmark::State& state) {
    const Woven& w = woven();
    for (auto _ : state) {
        auto pairs = cam::pair_homs(w.subject, w.foms);
        benchmark::DoNotOptimize(pairs);
    }
}
BENCHMARK(BM_PairHoms);

void BM_BuildMatrices(benchmark::State& state) {
    const Woven& w = woven();
    cam::ExecOptions options;
    options.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto result = cam::build_matrices(w.subject, w.tests, w.foms, w.pairs, options);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_BuildMatrices)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DetectRelevant(benchmark::State& state) {
    const Woven& w = woven();
    const cam::MatrixBundle& b = bundle();
    for (auto _ : state) {
        auto report = cam::detect_relevant(b.matrix, b.kills, w.foms, w.pairs);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_DetectRelevant);

void BM_Simulate(benchmark::State& state) {
    const Woven& w = woven();
    const cam::MatrixBundle& b = bundle();
    auto relevance = cam::detect_relevant(b.matrix, b.kills, w.foms, w.pairs);
    cam::SimulationConfig config;
    config.strategy = cam::SelectionStrategy::RandomAll;
    config.seed = 42;
    config.repetitions = 20;
    config.max_picks = 10;
    config.threads = 1;
    for (auto _ : state) {
        auto result = cam::simulate(b.kills, relevance, config);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_Simulate);

}  // namespace

BENCHMARK_MAIN();
