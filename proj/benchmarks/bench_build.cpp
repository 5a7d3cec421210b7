#include <benchmark/benchmark.h>

#include "common.hpp"
#include "scix/bidir.hpp"
#include "scix/bwt_doubling.hpp"
#include "scix/sufsort.hpp"
#include "scix/topo_builder.hpp"

using namespace scix;

namespace {

void BM_BwtSais(benchmark::State& state) {
    const auto t = bench::random_text(state.range(0), 3);
    for (auto _ : state) benchmark::DoNotOptimize(bwt_from_sa(t, sa_build(t)).data());
    state.SetItemsProcessed(state.iterations() * t.size());
}
BENCHMARK(BM_BwtSais)->RangeMultiplier(2)->Range(1 << 18, 1 << 22)->Unit(benchmark::kMillisecond);

// Time per symbol should stay flat as n doubles.
void BM_BwtDoubling(benchmark::State& state) {
    const auto t = bench::random_text(state.range(0), 3);
    DoublingStats st;
    for (auto _ : state) benchmark::DoNotOptimize(build_bwt_doubling(t, {}, &st).data());
    state.SetItemsProcessed(state.iterations() * t.size());
    state.counters["B"] = double(st.plan.block);
}
BENCHMARK(BM_BwtDoubling)->RangeMultiplier(2)->Range(1 << 18, 1 << 22)->Unit(benchmark::kMillisecond);

void BM_BwtDoublingRebuild(benchmark::State& state) {
    const auto t = bench::random_text(state.range(0), 3);
    DoublingOptions o;
    o.rebuild_rotated = true;
    for (auto _ : state) benchmark::DoNotOptimize(build_bwt_doubling(t, o).data());
    state.SetItemsProcessed(state.iterations() * t.size());
}
BENCHMARK(BM_BwtDoublingRebuild)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_Topology(benchmark::State& state) {
    const auto t = bench::random_text(state.range(0), 15);
    const auto fm = FmIndex::build(t);
    TopoOptions o;
    o.plain_counters = state.range(1) != 0;
    TopoStats st;
    for (auto _ : state) benchmark::DoNotOptimize(build_topology(fm, o, &st).size());
    state.SetItemsProcessed(state.iterations() * t.size());
    state.counters["workspace/n"] = double(std::max(st.workspace_bits_open, st.workspace_bits_close)) / double(t.size());
}
BENCHMARK(BM_Topology)->Args({1 << 18, 0})->Args({1 << 18, 1})->Args({1 << 20, 0})->Unit(benchmark::kMillisecond);

void BM_Plcp(benchmark::State& state) {
    const auto t = bench::random_text(state.range(0), 3);
    const auto fm = FmIndex::build(t);
    const BiIndex bi(fm, FmIndex::build(t.reversed()), build_topology(fm));
    for (auto _ : state) benchmark::DoNotOptimize(build_plcp(bi).size());
    state.SetItemsProcessed(state.iterations() * t.size());
}
BENCHMARK(BM_Plcp)->Arg(1 << 18)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace
