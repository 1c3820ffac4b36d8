#include <benchmark/benchmark.h>

#include "spc/generators.hpp"
#include "spc/oracle.hpp"
#include "spc/spfd.hpp"
#include "spc/spkey.hpp"
#include "spc/tuplegen.hpp"

using namespace spc;

namespace {

void BM_CheckKey(benchmark::State& state) {
    auto t = random_table(static_cast<std::size_t>(state.range(0)), 5, 10, 0.2, 1);
    AttributeSet k = AttributeSet::all(5);
    for (auto _ : state) benchmark::DoNotOptimize(check_spkey(t, k).holds);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CheckKey)->RangeMultiplier(4)->Range(256, 16384)->Complexity()->Unit(benchmark::kMillisecond);

void BM_RemovalKey(benchmark::State& state) {
    auto t = random_table(static_cast<std::size_t>(state.range(0)), 5, 10, 0.2, 2);
    AttributeSet k = AttributeSet::all(5);
    for (auto _ : state) benchmark::DoNotOptimize(g3_spkey(t, k).value);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RemovalKey)->RangeMultiplier(4)->Range(256, 16384)->Complexity()->Unit(benchmark::kMillisecond);

void BM_AdditionKey(benchmark::State& state) {
    auto inst = gen_prop3(state.range(0) - 2, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(g5_spkey(inst.table, inst.constraint.lhs).value);
}
BENCHMARK(BM_AdditionKey)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

void BM_CheckFd(benchmark::State& state) {
    auto t = random_table(static_cast<std::size_t>(state.range(0)), 4, 8, 0.1, 3);
    for (auto _ : state) benchmark::DoNotOptimize(check_spfd(t, AttributeSet{0, 1}, AttributeSet{2}).holds);
}
BENCHMARK(BM_CheckFd)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

void BM_MeasureFdFamily(benchmark::State& state) {
    auto inst = gen_thm3(state.range(0) - 1, state.range(0));
    const auto& c = inst.constraint;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g3_spfd(inst.table, c.lhs, c.rhs).value);
        benchmark::DoNotOptimize(g5_spfd(inst.table, c.lhs, c.rhs).value);
    }
}
BENCHMARK(BM_MeasureFdFamily)->DenseRange(3, 9, 2)->Unit(benchmark::kMillisecond);

void BM_CheckCjSingular(benchmark::State& state) {
    auto t = random_table(static_cast<std::size_t>(state.range(0)), 2, 6, 0.3, 4);
    for (auto _ : state) benchmark::DoNotOptimize(check_spcj_singular(t, 0, 1).holds);
}
BENCHMARK(BM_CheckCjSingular)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_CliqueReduction(benchmark::State& state) {
    auto inst = reduce_maxclique_to_spcj_g3(Graph::cycle(static_cast<std::size_t>(state.range(0))), 2);
    const auto& c = inst.constraint;
    for (auto _ : state) benchmark::DoNotOptimize(g3_spcj(inst.table, c.lhs, c.rhs).value);
}
BENCHMARK(BM_CliqueReduction)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_OracleCheck(benchmark::State& state) {
    auto t = random_table(static_cast<std::size_t>(state.range(0)), 3, 3, 0.3, 5);
    Constraint c = Constraint::mvd({0}, {1});
    for (auto _ : state) benchmark::DoNotOptimize(oracle_check(t, c).holds);
}
BENCHMARK(BM_OracleCheck)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
