#include <map>
#include <benchmark/benchmark.h>

#include <random>

#include "common.hpp"
#include "scix/apps.hpp"
#include "scix/fmindex.hpp"

using namespace scix;

namespace {

const Text& text() {
    static const Text t = bench::random_text(1 << 22, 3);
    return t;
}

const FmIndex& index_with(std::size_t sample) {
    static std::map<std::size_t, FmIndex> cache;
    auto it = cache.find(sample);
    if (it == cache.end()) it = cache.emplace(sample, FmIndex::build(text(), {sample})).first;
    return it->second;
}

std::vector<Symbol> pattern_at(std::mt19937_64& g, std::size_t m) {
    const auto& t = text();
    const std::size_t i = g() % (t.size() - m);
    return {t.syms.begin() + i, t.syms.begin() + i + m};
}

void BM_Count(benchmark::State& state) {
    const auto& fm = index_with(32);
    std::mt19937_64 g(11);
    std::size_t sink = 0;
    for (auto _ : state) {
        state.PauseTiming();
        auto p = pattern_at(g, state.range(0));
        state.ResumeTiming();
        sink += fm.count(p);
    }
    benchmark::DoNotOptimize(sink);
}
BENCHMARK(BM_Count)->Arg(8)->Arg(32)->Arg(128);

void BM_Locate(benchmark::State& state) {
    const auto& fm = index_with(state.range(0));
    std::mt19937_64 g(12);
    std::size_t occ = 0;
    for (auto _ : state) {
        state.PauseTiming();
        auto p = pattern_at(g, 10);
        state.ResumeTiming();
        occ += fm.locate(p).size();
    }
    state.counters["occ"] = benchmark::Counter(double(occ), benchmark::Counter::kAvgIterations);
    state.counters["ssa bits/sym"] = double(fm.ssa().size_in_bits()) / double(fm.size());
}
BENCHMARK(BM_Locate)->Arg(8)->Arg(32)->Arg(128);

void BM_Extract(benchmark::State& state) {
    const auto& fm = index_with(32);
    std::mt19937_64 g(13);
    const std::size_t m = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(fm.extract(1 + g() % (fm.size() - m), m).data());
    state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_Extract)->Arg(64)->Arg(4096);

void BM_KmerSpectrum(benchmark::State& state) {
    const auto t = bench::random_text(state.range(0), 3);
    const auto fm = FmIndex::build(t);
    for (auto _ : state) benchmark::DoNotOptimize(kmer_spectrum(fm, 32).data());
    state.SetItemsProcessed(state.iterations() * t.size());
}
BENCHMARK(BM_KmerSpectrum)->Arg(1 << 18)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace
