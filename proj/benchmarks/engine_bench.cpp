#include <benchmark/benchmark.h>

#include "hornets/bos.hpp"
#include "support/fixtures.hpp"

using namespace hornets;

namespace {

void BM_EnabledEventsConflict(benchmark::State& state) {
    auto f = fixtures::makeFig3();
    EventEngine engine(f.system, OpRegistry::builtins(), f.names.get());
    for (auto _ : state) benchmark::DoNotOptimize(engine.enabledEvents(f.mu0));
}
BENCHMARK(BM_EnabledEventsConflict);

void BM_EnabledEventsGame(benchmark::State& state) {
    BosModel model = buildBosModel({});
    EventEngine engine(model.system, OpRegistry::builtins(), model.names.get());
    for (auto _ : state) benchmark::DoNotOptimize(engine.enabledEvents(model.initial));
}
BENCHMARK(BM_EnabledEventsGame);

void BM_BuildChainComposition(benchmark::State& state) {
    auto f = fixtures::makeFig2();
    EventEngine engine(f.system, OpRegistry::builtins(), f.names.get());
    StochasticOptions opt;
    for (auto _ : state) benchmark::DoNotOptimize(buildDmc(engine, f.mu0, opt));
}
BENCHMARK(BM_BuildChainComposition);

void BM_BuildChainGameTruncated(benchmark::State& state) {
    BosModel model = buildBosModel({});
    EventEngine engine(model.system, OpRegistry::builtins(), model.names.get());
    DmcLimits limits;
    limits.maxStates = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(buildDmc(engine, model.initial, model.stoch, limits));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildChainGameTruncated)->Arg(64)->Arg(256);

void BM_SimulateGameSteps(benchmark::State& state) {
    BosModel model = buildBosModel({});
    EventEngine engine(model.system, OpRegistry::builtins(), model.names.get());
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simulate(engine, model.initial, seed++, static_cast<std::size_t>(state.range(0)),
                     model.stoch));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateGameSteps)->Arg(100);

void BM_ComposeAndRerate(benchmark::State& state) {
    auto f = fixtures::makeFig2();
    for (auto _ : state) {
        ObjectNetRef n3 = opParallel(f.n1, f.n2);
        benchmark::DoNotOptimize(opUpdateRate(n3, Symbol("c"), 1.0));
    }
}
BENCHMARK(BM_ComposeAndRerate);

} // namespace

BENCHMARK_MAIN();
