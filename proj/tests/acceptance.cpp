// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [--only 1,5,...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scix/apps.hpp"
#include "scix/bidir.hpp"
#include "scix/bwt_doubling.hpp"
#include "scix/enumerate.hpp"
#include "scix/error.hpp"
#include "scix/index_file.hpp"
#include "scix/sufsort.hpp"
#include "scix/topo_builder.hpp"
#include "scix_oracle.hpp"
#include "util.hpp"

using namespace scix;
using testutil::random_text;
using testutil::uniform;

namespace {

struct Result {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t ceil_log2(std::size_t x) {
    std::size_t r = 0;
    while ((std::size_t{1} << r) < x) ++r;
    return r;
}

// Block sizes worth forcing for a text: small block alphabets only.
std::vector<std::size_t> forced_blocks(std::uint64_t sigma) {
    std::vector<std::size_t> out{2};
    if (sigma <= 17) out.push_back(4);
    return out;
}

// ---- BWT corpus shared by criteria 1 and 9 ----------------------------------

struct BwtCorpusResult {
    std::size_t cases = 0, runs = 0;
    std::size_t oracle_mismatch = 0;  // doubling vs rotation sort
    std::size_t sais_mismatch = 0;    // doubling vs SA-IS path
    double secs = 0;
};

const BwtCorpusResult& bwt_corpus() {
    static BwtCorpusResult r;
    static bool done = false;
    if (done) return r;
    done = true;
    const auto t0 = std::chrono::steady_clock::now();
    auto one = [&](const Text& t) {
        ++r.cases;
        const auto want = bwt_naive(t);
        const auto sais_bwt = bwt_from_sa(t, sa_build(t));
        auto check = [&](const DoublingOptions& o) {
            ++r.runs;
            const auto got = build_bwt_doubling(t, o);
            r.oracle_mismatch += got != want;
            r.sais_mismatch += got != sais_bwt;
        };
        check({});
        for (auto b : forced_blocks(t.sigma)) {
            DoublingOptions o;
            o.block_size = b;
            check(o);
        }
    };
    for (std::size_t len = 0; len <= 12; ++len) testutil::for_each_string(len, 3, one);
    const std::uint64_t letters[] = {2, 4, 16, 64};
    for (int i = 0; i < 1000; ++i) one(random_text(uniform(1, 4096), letters[i % 4]));
    r.secs = seconds_since(t0);
    return r;
}

Result criterion1() {
    const auto& r = bwt_corpus();
    return {r.oracle_mismatch == 0 && r.secs < 600,
            fmt("%zu texts, %zu doubling runs, %zu mismatches vs rotation sort, %.1fs", r.cases, r.runs,
                r.oracle_mismatch, r.secs)};
}

// ---- topology / PLCP / enumeration corpus (criteria 2-4) --------------------

struct TreeCorpusResult {
    std::size_t cases = 0;
    std::size_t topo_bad = 0, plcp_bad = 0;
    std::size_t enum_bad = 0, watermark_bad = 0, weiner_bad = 0;
    std::size_t worst_watermark_num = 0, worst_watermark_den = 1;
    double worst_weiner_ratio = 0;
    bool banana_topo = false, banana_plcp = false;
};

const TreeCorpusResult& tree_corpus() {
    static TreeCorpusResult r;
    static bool done = false;
    if (done) return r;
    done = true;
    std::vector<std::pair<std::size_t, std::size_t>> want, got;
    auto one = [&](const Text& t) {
        ++r.cases;
        const std::size_t n = t.size();
        const auto fm = FmIndex::build(t, {8});
        const auto tree = oracle::naive_suffix_tree(t);

        const auto topo = build_topology(fm);
        r.topo_bad += topo.to_string() != tree.parens();

        const BiIndex bi(fm, FmIndex::build(t.reversed(), {8}), topo);
        r.plcp_bad += build_plcp(bi).to_vector() != oracle::naive_plcp(t);

        want.clear();
        got.clear();
        for (const auto& v : tree.internal) want.emplace_back(v.lo, v.hi);
        Enumerator en(fm);
        en.run([&](const NodeVisit& v) { got.emplace_back(v.interval.lo, v.interval.hi); });
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        r.enum_bad += want != got;  // equal sorted lists: same set, each visited once
        const auto& st = en.stats();
        const std::size_t bound = t.sigma * ceil_log2(n);
        r.watermark_bad += st.stack_watermark > bound;
        if (bound && st.stack_watermark * r.worst_watermark_den > r.worst_watermark_num * bound) {
            r.worst_watermark_num = st.stack_watermark;
            r.worst_watermark_den = bound;
        }
        r.weiner_bad += st.weiner_links > 4 * n;
        r.worst_weiner_ratio = std::max(r.worst_weiner_ratio, double(st.weiner_links) / double(n));
    };
    for (std::size_t len = 0; len <= 11; ++len) testutil::for_each_string(len, 4, one);
    for (int i = 0; i < 500; ++i) one(random_text(uniform(1, 512), uniform(1, 8)));

    const auto banana = text_from_bytes("banana");
    const auto fm = FmIndex::build(banana);
    const auto topo = build_topology(fm);
    r.banana_topo = topo.to_string() == "(()(()(()()))()(()()))";
    const BiIndex bi(fm, FmIndex::build(banana.reversed()), topo);
    r.banana_plcp = build_plcp(bi).to_vector() == std::vector<std::uint64_t>{0, 3, 2, 1, 0, 0, 0};
    return r;
}

Result criterion2() {
    const auto& r = tree_corpus();
    return {r.topo_bad == 0 && r.banana_topo,
            fmt("%zu texts, %zu parenthesis mismatches, banana %s", r.cases, r.topo_bad, r.banana_topo ? "exact" : "WRONG")};
}

Result criterion3() {
    const auto& r = tree_corpus();
    return {r.plcp_bad == 0 && r.banana_plcp,
            fmt("%zu texts, %zu PLCP mismatches, banana %s", r.cases, r.plcp_bad, r.banana_plcp ? "exact" : "WRONG")};
}

Result criterion4() {
    const auto& r = tree_corpus();
    return {r.enum_bad == 0 && r.watermark_bad == 0 && r.weiner_bad == 0,
            fmt("%zu texts, %zu interval-set mismatches, %zu over watermark bound (worst %zu/%zu), "
                "%zu over 4n Weiner links (worst %.2fn)",
                r.cases, r.enum_bad, r.watermark_bad, r.worst_watermark_num, r.worst_watermark_den, r.weiner_bad,
                r.worst_weiner_ratio)};
}

// ---- space ------------------------------------------------------------------

Result criterion5() {
    const std::size_t n = std::size_t{1} << 20;
    const auto t = random_text(n, 15);  // sigma = 16 with the sentinel
    const auto fm = FmIndex::build(t);
    const double wt = double(fm.bwt().size_in_bits());
    TopoStats ts;
    const auto topo = build_topology(fm, {}, &ts);
    const double bp = double(topo.size_in_bits());
    const BiIndex bi(fm, FmIndex::build(t.reversed()), topo);
    const auto plcp = build_plcp(bi);
    const double ws = double(std::max(ts.workspace_bits_open, ts.workspace_bits_close));
    const double wt_bound = 1.1 * double(n) * double(ceil_log2(t.sigma));
    const bool ok = wt <= wt_bound && bp <= 5.0 * n && plcp.payload_bits() == 2 * n && ws <= 8.0 * n;
    return {ok, fmt("wavelet %.3f n*log(sigma) (<= 1.1), BP %.3fn (<= 5), PLCP %zu bits = 2n %s, counter workspace "
                    "%.3fn / %.3fn (<= 8)",
                    wt / (double(n) * ceil_log2(t.sigma)), bp / n, plcp.payload_bits(),
                    plcp.payload_bits() == 2 * n ? "yes" : "NO", ts.workspace_bits_open / double(n),
                    ts.workspace_bits_close / double(n))};
}

// ---- scaling ----------------------------------------------------------------

Result criterion6() {
    std::vector<double> med;
    for (int e = 20; e <= 22; ++e) {
        const auto t = random_text(std::size_t{1} << e, 3);  // sigma = 4
        std::vector<double> runs;
        for (int k = 0; k < 3; ++k) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto b = build_bwt_doubling(t);
            runs.push_back(seconds_since(t0));
            if (b.size() != t.size()) return {false, "wrong output length"};
        }
        std::sort(runs.begin(), runs.end());
        med.push_back(runs[1]);
    }
    const double r1 = med[1] / med[0], r2 = med[2] / med[1];
    return {r1 <= 2.6 && r2 <= 2.6,
            fmt("median %.2fs / %.2fs / %.2fs at 2^20/2^21/2^22, ratios %.2f and %.2f (<= 2.6)", med[0], med[1], med[2],
                r1, r2)};
}

// ---- applications -----------------------------------------------------------

Result criterion7() {
    std::size_t rep_bad = 0, kmer_bad = 0, mem_bad = 0;
    for (int i = 0; i < 200; ++i) {
        const auto t = random_text(uniform(1, 100), uniform(1, 4));
        const auto fm = FmIndex::build(t, {4});
        std::vector<oracle::RepeatRow> got;
        for (const auto& r : maximal_repeats(fm).rows) got.push_back({repeat_factor(fm, r), r.occ});
        std::sort(got.begin(), got.end());
        rep_bad += got != oracle::brute_maximal_repeats(t);
    }
    Alphabet a;
    const auto banana = text_from_bytes("banana", &a);
    auto bfm = FmIndex::build(banana);
    bfm.set_alphabet(a);
    std::set<std::string> bset;
    for (const auto& r : maximal_repeats(bfm).rows) bset.insert(a.decode(repeat_factor(bfm, r)));
    const bool banana_ok = bset == std::set<std::string>{"a", "ana"};

    for (int i = 0; i < 200; ++i) {
        const auto t = random_text(uniform(1, 200), uniform(1, 6));
        const auto fm = FmIndex::build(t);
        const auto spectrum = kmer_spectrum(fm, t.size());
        for (std::size_t k = 1; k <= t.size(); ++k) kmer_bad += spectrum[k - 1] != oracle::brute_distinct_kmers(t, k);
    }
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t letters = uniform(1, 4);
        const auto t1 = random_text(uniform(1, 200), letters), t2 = random_text(uniform(1, 200), letters);
        const std::size_t min_len = uniform(1, 5);
        std::vector<oracle::MemTriple> got;
        for (const auto& m : maximal_exact_matches(t1, t2, {min_len, 0}).mems) got.emplace_back(m.pos1, m.pos2, m.len);
        mem_bad += got != oracle::brute_mems(t1, t2, min_len);
    }
    return {rep_bad == 0 && kmer_bad == 0 && mem_bad == 0 && banana_ok,
            fmt("repeats %zu/200 mismatches (banana %s), k-mer counts %zu mismatches, MEMs %zu/100 mismatches", rep_bad,
                banana_ok ? "{a, ana}" : "WRONG", kmer_bad, mem_bad)};
}

// ---- FM-index ---------------------------------------------------------------

Result criterion8() {
    std::size_t queries = 0, count_bad = 0, locate_bad = 0, extract_bad = 0, texts = 0, serial_bad = 0;
    while (queries < 10000) {
        const std::uint64_t letters = std::vector<std::uint64_t>{1, 2, 4, 16, 64}[texts % 5];
        const auto t = random_text(uniform(1, 5000), letters);
        const auto fm = FmIndex::build(t, {uniform(1, 64)});
        ++texts;
        extract_bad += fm.extract(1, t.size()) != t.syms;
        for (int q = 0; q < 500; ++q, ++queries) {
            std::vector<Symbol> p;
            const std::size_t m = uniform(1, 8);
            if (q % 2 && t.size() > m) {
                const std::size_t i = uniform(0, t.size() - 1 - m);
                p.assign(t.syms.begin() + i, t.syms.begin() + i + m);
            } else {
                for (std::size_t k = 0; k < m; ++k) p.push_back(static_cast<Symbol>(uniform(1, letters)));
            }
            std::vector<std::uint64_t> want;
            for (auto it = t.syms.begin(); (it = std::search(it, t.syms.end(), p.begin(), p.end())) != t.syms.end(); ++it)
                want.push_back(static_cast<std::uint64_t>(it - t.syms.begin()) + 1);
            count_bad += fm.count(p) != want.size();
            auto got = fm.locate(p);
            std::sort(got.begin(), got.end());
            locate_bad += got != want;
        }
        // Container round trip, including the index alphabet.
        std::string bytes;
        for (std::size_t i = 0; i + 1 < t.size(); ++i) bytes.push_back(static_cast<char>('A' + t.syms[i] % 60));
        if (bytes.empty()) bytes = "x";
        std::ostringstream o1, o2;
        pack(build_index(bytes, {BwtAlgo::Sais, uniform(1, 64)})).write(o1);
        std::istringstream in(o1.str());
        pack(unpack(Container::read(in))).write(o2);
        serial_bad += o1.str() != o2.str();
    }
    return {count_bad == 0 && locate_bad == 0 && extract_bad == 0 && serial_bad == 0,
            fmt("%zu queries on %zu texts: %zu count and %zu locate mismatches; extract(1,n) failed on %zu texts; %zu "
                "round trips not byte-identical",
                queries, texts, count_bad, locate_bad, extract_bad, serial_bad)};
}

// ---- cross-algorithm agreement ----------------------------------------------

Result criterion9() {
    const auto& r = bwt_corpus();
    std::size_t checked = 0, failed = 0, texts = 0;
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t letters = std::vector<std::uint64_t>{1, 2, 3, 15}[i % 4];
        const auto t = random_text(uniform(1, 3000), letters);
        for (std::size_t b : {2u, 4u, 8u}) {
            if (checked_pow(t.sigma, b) > (1u << 16)) continue;
            DoublingOptions o;
            o.block_size = b;
            o.cross_check = true;
            DoublingStats st;
            try {
                build_bwt_doubling(t, o, &st);
            } catch (const InvariantError&) {
                ++failed;
            }
            checked += st.cross_checks;
        }
        ++texts;
    }
    return {r.sais_mismatch == 0 && failed == 0,
            fmt("SA-IS vs doubling: %zu mismatches over %zu runs; cross-check suite: %zu level checks on %zu texts, "
                "%zu failures",
                r.sais_mismatch, r.runs, checked, texts, failed)};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--only" && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            for (std::string tok; std::getline(ss, tok, ',');) only.insert(std::stoi(tok));
        }
    }
    const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
        {"BWT correctness", criterion1},  {"topology", criterion2},        {"PLCP", criterion3},
        {"enumeration", criterion4},      {"space bounds", criterion5},    {"linear scaling", criterion6},
        {"applications", criterion7},     {"FM-index", criterion8},        {"cross-algorithm agreement", criterion9},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        Result r;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        all = all && r.pass;
        std::printf("%s %d %s: %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", id, criteria[i].first, r.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
