#include <benchmark/benchmark.h>

#include "cactus/boltzmann.hpp"
#include "cactus/brownian.hpp"
#include "cactus/cactus_tree.hpp"
#include "cactus/rng.hpp"

using namespace cactus;

static void BM_LabeledTree(benchmark::State& state) {
    Rng rng(1);
    const int edges = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto t = sample_labeled_tree(edges, rng, LabelMode::bridge);
        benchmark::DoNotOptimize(t.size());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LabeledTree)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_SeparatingSplit(benchmark::State& state) {
    Rng rng(2);
    const auto t = sample_labeled_tree(10000, rng, LabelMode::bridge);
    for (auto _ : state) benchmark::DoNotOptimize(separating_split(t, rng).vol1);
}
BENCHMARK(BM_SeparatingSplit);

template <int Degree>
static void BM_BoltzmannMap(benchmark::State& state) {
    static const BoltzmannSampler sampler(WeightSeq::single(Degree));
    Rng rng(3);
    ConditionedOptions opts;
    opts.method = ConditioningMethod::cyclic;
    for (auto _ : state) {
        auto s = sampler.sample(static_cast<int>(state.range(0)), Variant::positive, rng, opts);
        benchmark::DoNotOptimize(s.map.vertex_count());
    }
}
BENCHMARK(BM_BoltzmannMap<4>)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoltzmannMap<3>)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_CactusOfMap(benchmark::State& state) {
    const BoltzmannSampler sampler(WeightSeq::single(4));
    Rng rng(4);
    ConditionedOptions opts;
    opts.method = ConditioningMethod::cyclic;
    const auto s = sampler.sample(static_cast<int>(state.range(0)), Variant::positive, rng, opts);
    const auto g = s.map.underlying_graph();
    for (auto _ : state) benchmark::DoNotOptimize(build_cactus(g).class_count());
}
BENCHMARK(BM_CactusOfMap)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_TuneCritical(benchmark::State& state) {
    const auto q = WeightSeq::single(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(tune_critical(q).a_c);
}
BENCHMARK(BM_TuneCritical)->Arg(3)->Arg(4)->Arg(5);
BENCHMARK_MAIN();
