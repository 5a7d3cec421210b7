#include <benchmark/benchmark.h>

#include <random>

#include "common.hpp"
#include "scix/bitvec.hpp"
#include "scix/bptree.hpp"
#include "scix/fmindex.hpp"
#include "scix/topo_builder.hpp"
#include "scix/wavelet.hpp"

using namespace scix;

namespace {

BitVector random_bits(std::size_t n) {
    std::mt19937_64 g(7);
    std::vector<std::uint64_t> w((n + 63) / 64);
    for (auto& x : w) x = g();
    return BitVector(std::move(w), n);
}

void BM_Rank1(benchmark::State& state) {
    const std::size_t n = state.range(0);
    const auto bv = random_bits(n);
    std::mt19937_64 g(1);
    std::size_t sink = 0;
    for (auto _ : state) sink += bv.rank1(g() % (n + 1));
    benchmark::DoNotOptimize(sink);
    state.counters["overhead"] = double(bv.size_in_bits()) / double(n);
}
BENCHMARK(BM_Rank1)->Range(1 << 16, 1 << 26);

void BM_Select1(benchmark::State& state) {
    const std::size_t n = state.range(0);
    const auto bv = random_bits(n);
    std::mt19937_64 g(2);
    std::size_t sink = 0;
    for (auto _ : state) sink += bv.select1(1 + g() % bv.ones());
    benchmark::DoNotOptimize(sink);
}
BENCHMARK(BM_Select1)->Range(1 << 16, 1 << 26);

void BM_WaveletRank(benchmark::State& state) {
    const std::size_t n = 1 << 22;
    const auto t = bench::random_text(n, state.range(0));
    const WaveletTree wt(std::span<const Symbol>(t.syms), t.sigma);
    std::mt19937_64 g(3);
    std::size_t sink = 0;
    for (auto _ : state) sink += wt.rank(1 + g() % (t.sigma - 1), g() % (n + 1));
    benchmark::DoNotOptimize(sink);
    state.counters["bits/sym"] = double(wt.size_in_bits()) / double(n);
}
BENCHMARK(BM_WaveletRank)->Arg(3)->Arg(15)->Arg(255);

void BM_WaveletRangeDistinct(benchmark::State& state) {
    const std::size_t n = 1 << 20;
    const auto t = bench::random_text(n, 15);
    const WaveletTree wt(std::span<const Symbol>(t.syms), t.sigma);
    std::mt19937_64 g(4);
    std::vector<WaveletTree::DistinctEntry> out;
    const std::size_t w = state.range(0);
    for (auto _ : state) {
        const std::size_t lo = 1 + g() % (n - w);
        out.clear();
        wt.range_distinct(lo, lo + w - 1, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_WaveletRangeDistinct)->Arg(4)->Arg(64)->Arg(4096);

void BM_TreeParentLca(benchmark::State& state) {
    const auto t = bench::random_text(state.range(0), 3);
    const auto topo = build_topology(FmIndex::build(t));
    std::mt19937_64 g(5);
    std::size_t sink = 0;
    for (auto _ : state) {
        const auto a = topo.leaf_select(1 + g() % topo.leaves());
        const auto b = topo.leaf_select(1 + g() % topo.leaves());
        sink += topo.parent(a) + topo.lca(a, b);
    }
    benchmark::DoNotOptimize(sink);
    state.counters["bits/sym"] = double(topo.size_in_bits()) / double(t.size());
}
BENCHMARK(BM_TreeParentLca)->Arg(1 << 16)->Arg(1 << 20);

}  // namespace
