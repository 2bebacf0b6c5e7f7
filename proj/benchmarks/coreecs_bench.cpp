#include <benchmark/benchmark.h>

#include "coreecs/coreecs.hpp"

namespace {

using namespace coreecs;

const ComponentLabel kPos{"Pos"};
const ComponentLabel kVel{"Vel"};

WorldState world_of(std::int64_t entities) {
    WorldState c = WorldState::empty(
        Schema{{kPos, ComponentKind::Integer}, {kVel, ComponentKind::Integer}});
    for (std::int64_t i = 0; i < entities; ++i) {
        auto [e, next] = c.fresh_entity();
        c = next;
        c = c.with_attached(e, ComponentValue::integer(kPos, i * 3));
        if (i % 2 == 0) c = c.with_attached(e, ComponentValue::integer(kVel, 1));
    }
    return c;
}

void BM_EvalQueryVector(benchmark::State& state) {
    WorldState c = world_of(state.range(0));
    QueryVector qv{Query::conj(Query::incl(kPos), Query::incl(kVel))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_query_vector(c, qv));
    }
}
BENCHMARK(BM_EvalQueryVector)->Arg(16)->Arg(64)->Arg(256);

void BM_ApplyScheduleInertia(benchmark::State& state) {
    WorldState c = world_of(state.range(0));
    Schedule z = Schedule::conc(inertia_system());
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_schedule(c, z));
    }
}
BENCHMARK(BM_ApplyScheduleInertia)->Arg(16)->Arg(64)->Arg(256);

void BM_RunParallelInertia(benchmark::State& state) {
    WorldState c = world_of(64);
    Schedule z = Schedule::conc(inertia_system());
    RunConfig cfg;
    cfg.workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_parallel(c, z, cfg));
    }
}
BENCHMARK(BM_RunParallelInertia)->Arg(1)->Arg(4);

void BM_Canonicalize(benchmark::State& state) {
    WorldState c = world_of(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(canonicalize(c));
    }
}
BENCHMARK(BM_Canonicalize)->Arg(16)->Arg(64);

void BM_BruteForceDeterminism(benchmark::State& state) {
    WorldState c = world_of(6);
    Schedule z = Schedule::conc(inertia_system());
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_determinism(c, z));
    }
}
BENCHMARK(BM_BruteForceDeterminism);

}  // namespace

BENCHMARK_MAIN();
