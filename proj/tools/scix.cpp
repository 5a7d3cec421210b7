// scix: build, query and analyze compressed text indexes.
//
// Exit codes: 0 ok, 1 usage or bad argument, 2 verification mismatch,
// 3 capacity, IO or corrupt file. SCIX_THREADS is read by nothing; every
// command runs on one thread.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scix/apps.hpp"
#include "scix/bwt_doubling.hpp"
#include "scix/error.hpp"
#include "scix/index_file.hpp"
#include "scix/sufsort.hpp"
#include "scix/topo_builder.hpp"
#include "scix_oracle.hpp"

namespace {

using namespace scix;

constexpr int kOk = 0, kUsage = 1, kMismatch = 2, kIo = 3;
constexpr std::size_t kVerifyLimit = 100000;

struct InputOpts {
    bool binary = false;
    bool fasta = false;
    char separator = '#';
};

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path);
    std::string s((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (is.bad()) throw IoError("read from " + path + " failed");
    return s;
}

// Records joined by the separator; header lines and whitespace dropped.
std::string parse_fasta(const std::string& raw, char sep) {
    std::string out;
    std::istringstream is(raw);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] == '>') {
            if (!first) out.push_back(sep);
            first = false;
            continue;
        }
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
    }
    return out;
}

std::string load_input(const std::string& path, const InputOpts& in) {
    std::string s = read_file(path);
    if (in.fasta) return parse_fasta(s, in.separator);
    if (!in.binary) {
        if (!s.empty() && s.back() == '\n') s.pop_back();
        if (!s.empty() && s.back() == '\r') s.pop_back();
    }
    return s;
}

void add_input_flags(CLI::App* cmd, InputOpts& in) {
    cmd->add_flag("--binary", in.binary, "Index raw bytes (default strips one trailing newline)");
    cmd->add_flag("--fasta", in.fasta, "Concatenate FASTA records");
    cmd->add_option("--separator", in.separator, "Record separator byte in FASTA mode")->capture_default_str();
}

IndexBundle load_index(const std::string& path) { return unpack(Container::load_file(path)); }

std::string decode_range(const FmIndex& fm, std::size_t i, std::size_t m) {
    std::string s;
    for (auto c : fm.extract(i, m)) s.push_back(static_cast<char>(fm.alphabet().byte_of(c)));
    return s;
}

// ---- build ------------------------------------------------------------------

struct BuildArgs {
    std::string input, output;
    InputOpts in;
    std::vector<std::string> components{"bwt", "topo", "plcp", "ssa"};
    std::string algo = "sais";
    std::size_t sample = 32;
};

int cmd_build(const BuildArgs& a) {
    BuildOptions opt;
    opt.sample = a.sample;
    opt.bwt_algo = a.algo == "doubling" ? BwtAlgo::Doubling : BwtAlgo::Sais;
    const std::set<std::string> comp(a.components.begin(), a.components.end());
    opt.ssa = comp.count("ssa") > 0;
    opt.topo = comp.count("topo") > 0 || comp.count("plcp") > 0;
    opt.plcp = comp.count("plcp") > 0;

    const std::string text = load_input(a.input, a.in);
    const auto ix = build_index(text, opt);
    const auto c = pack(ix);
    c.save_file(a.output);
    const double bps = 8.0 * static_cast<double>(c.file_bytes()) / static_cast<double>(ix.fm.size());
    std::cout << "built " << a.output << ": n=" << ix.fm.size() << " sigma=" << ix.fm.sigma()
              << " sections=" << c.sections().size() << " bytes=" << c.file_bytes() << " bits/symbol=" << std::fixed
              << std::setprecision(3) << bps << '\n';
    return kOk;
}

// ---- query ------------------------------------------------------------------

struct QueryArgs {
    std::string index, mode;
    std::vector<std::string> args;
};

int cmd_query(const QueryArgs& a) {
    const auto ix = load_index(a.index);
    const auto& fm = ix.fm;
    if (a.mode == "count" || a.mode == "locate") {
        if (a.args.empty()) throw CLI::ValidationError("query " + a.mode, "needs at least one pattern");
        for (const auto& p : a.args) {
            // A byte outside the alphabet cannot occur: count 0, no positions.
            auto mapped = fm.alphabet().map_pattern(p);
            if (a.mode == "count") {
                std::cout << (mapped ? fm.count(*mapped) : 0) << '\n';
            } else {
                if (!mapped) continue;
                auto pos = fm.locate(*mapped);
                std::sort(pos.begin(), pos.end());
                for (auto v : pos) std::cout << v << '\n';
            }
        }
        return kOk;
    }
    if (a.mode == "extract") {
        if (a.args.size() != 2) throw CLI::ValidationError("query extract", "expects <start> <length>");
        const std::size_t i = std::stoull(a.args[0]), m = std::stoull(a.args[1]);
        if (i == 0 || m == 0 || i + m - 1 > fm.size() - 1)
            throw RangeError("extract range outside the text of length " + std::to_string(fm.size() - 1));
        std::cout << decode_range(fm, i, m) << '\n';
        return kOk;
    }
    throw CLI::ValidationError("query", "mode must be count, locate or extract");
}

// ---- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
    std::string index, mode, other;
    InputOpts in;
    std::size_t k = 0, kmax = 0, min_len = 1, max_pairs = 0;
    bool header = false, no_strings = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
    const auto ix = load_index(a.index);
    const auto& fm = ix.fm;
    if (a.mode == "repeats") {
        write_repeats_tsv(std::cout, fm, maximal_repeats(fm, a.min_len), !a.no_strings && fm.has_ssa(), a.header);
    } else if (a.mode == "kmers") {
        if (a.k == 0 && a.kmax == 0) throw CLI::ValidationError("analyze kmers", "needs --k or --kmax");
        if (a.kmax) write_kmers_tsv(std::cout, 1, kmer_spectrum(fm, a.kmax), a.header);
        else write_kmers_tsv(std::cout, a.k, {distinct_kmers(fm, a.k)}, a.header);
    } else if (a.mode == "mems") {
        if (a.other.empty()) throw CLI::ValidationError("analyze mems", "needs --with <file>");
        const std::string t1 = fm.size() > 1 ? decode_range(fm, 1, fm.size() - 1) : std::string();
        const std::string t2 = load_input(a.other, a.in);
        const auto alpha = Alphabet::from_bytes(t1 + t2);
        MemOptions mo;
        mo.min_len = a.min_len;
        mo.max_pairs = a.max_pairs;
        const auto rep = maximal_exact_matches(text_from_bytes(t1, alpha), text_from_bytes(t2, alpha), mo);
        write_mems_tsv(std::cout, rep, a.header);
        if (rep.truncated) std::cerr << "scix: stopped after " << a.max_pairs << " matches (--max-pairs)\n";
    } else {
        throw CLI::ValidationError("analyze", "mode must be repeats, kmers or mems");
    }
    return kOk;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
    std::string input;
    InputOpts in;
};

int cmd_verify(const VerifyArgs& a) {
    const std::string bytes = load_input(a.input, a.in);
    if (bytes.empty()) throw DomainError("empty input");
    if (bytes.size() > kVerifyLimit) {
        std::cerr << "scix: verify is limited to " << kVerifyLimit << " symbols (input has " << bytes.size() << ")\n";
        return kIo;
    }
    const Text t = text_from_bytes(bytes);
    std::vector<std::string> ok, bad;
    auto check = [&](const std::string& name, bool good) { (good ? ok : bad).push_back(name); };

    const auto ref_sa = oracle::naive_sa(t);
    const auto ref_bwt = bwt_naive(t);
    const auto sa = sa_build(t);
    check("bwt", sa == ref_sa && bwt_from_sa(t, sa) == ref_bwt && build_bwt_doubling(t) == ref_bwt);

    const auto fm = FmIndex(t, bwt_from_sa(t, sa), sa);
    const auto tree = oracle::naive_suffix_tree(t);
    const auto topo = build_topology(fm);
    check("topology", topo.to_string() == tree.parens());

    BiIndex bi(fm, FmIndex::build(t.reversed()), topo);
    check("plcp", build_plcp(bi).to_vector() == oracle::naive_plcp(t));

    // Left-maximal internal nodes of the reference tree.
    std::vector<std::pair<std::size_t, std::size_t>> want, got;
    for (const auto& v : tree.internal) {
        if (v.depth == 0) continue;
        std::set<Symbol> left;
        for (std::size_t r = v.lo; r <= v.hi; ++r) left.insert(ref_bwt[r - 1]);
        if (left.size() >= 2) want.emplace_back(v.lo, v.hi);
    }
    for (const auto& r : maximal_repeats(fm).rows) got.emplace_back(r.interval.lo, r.interval.hi);
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    check("repeats", want == got);

    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
        return s;
    };
    if (!bad.empty()) {
        std::cout << "MISMATCH: " << join(bad) << '\n';
        return kMismatch;
    }
    std::cout << "OK: " << join(ok) << '\n';
    return kOk;
}

// ---- stats ------------------------------------------------------------------

int cmd_stats(const std::string& path) {
    const auto c = Container::load_file(path);
    const auto ix = unpack(c);
    const double n = static_cast<double>(ix.fm.size());
    std::cout << "n\t" << ix.fm.size() << "\nsigma\t" << ix.fm.sigma() << '\n';
    std::cout << "section\tbytes\tbits\tbits/symbol\n";
    std::size_t payload = 0;
    for (const auto& s : c.sections()) {
        const std::size_t bytes = s.payload.size() + Container::kSectionHeaderBytes;
        payload += bytes;
        std::cout << std::string(s.tag.data(), 4) << '\t' << bytes << '\t' << bytes * 8 << '\t' << std::fixed
                  << std::setprecision(3) << 8.0 * static_cast<double>(bytes) / n << '\n';
    }
    std::cout << "header\t" << Container::kHeaderBytes << '\t' << Container::kHeaderBytes * 8 << '\t'
              << 8.0 * Container::kHeaderBytes / n << '\n';
    std::cout << "total\t" << payload + Container::kHeaderBytes << '\t' << (payload + Container::kHeaderBytes) * 8
              << '\t' << 8.0 * static_cast<double>(payload + Container::kHeaderBytes) / n << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressed suffix-tree index toolkit"};
    app.require_subcommand(1);

    BuildArgs ba;
    auto* build = app.add_subcommand("build", "Build an index container from a file");
    build->add_option("input", ba.input, "Input file")->required();
    build->add_option("-o,--output", ba.output, "Index file to write")->required();
    build->add_option("--components", ba.components, "Sections to include")
        ->delimiter(',')
        ->check(CLI::IsMember({"bwt", "topo", "plcp", "ssa"}))
        ->capture_default_str();
    build->add_option("--bwt-algo", ba.algo, "BWT construction")->check(CLI::IsMember({"sais", "doubling"}))->capture_default_str();
    build->add_option("--sample", ba.sample, "Suffix-array sampling rate")->check(CLI::PositiveNumber)->capture_default_str();
    add_input_flags(build, ba.in);

    QueryArgs qa;
    auto* query = app.add_subcommand("query", "count/locate patterns or extract text");
    query->add_option("index", qa.index)->required();
    query->add_option("mode", qa.mode, "count | locate | extract")->required();
    query->add_option("args", qa.args, "Patterns, or <start> <length> for extract");

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Maximal repeats, k-mer counts, maximal exact matches (TSV)");
    analyze->add_option("index", aa.index)->required();
    analyze->add_option("mode", aa.mode, "repeats | kmers | mems")->required();
    analyze->add_option("--k", aa.k, "k for kmers");
    analyze->add_option("--kmax", aa.kmax, "Report k = 1..kmax");
    analyze->add_option("--min-len", aa.min_len, "Minimum repeat/match length")->capture_default_str();
    analyze->add_option("--with", aa.other, "Second text for mems");
    analyze->add_option("--max-pairs", aa.max_pairs, "Stop after this many matches (0 = no limit)");
    analyze->add_flag("--header", aa.header, "Print a TSV header line");
    analyze->add_flag("--no-strings", aa.no_strings, "Omit repeat strings");
    add_input_flags(analyze, aa.in);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Check every construction against the reference implementations");
    verify->add_option("input", va.input)->required();
    add_input_flags(verify, va.in);

    std::string stats_path;
    auto* stats = app.add_subcommand("stats", "Space used per section");
    stats->add_option("index", stats_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*build) return cmd_build(ba);
        if (*query) return cmd_query(qa);
        if (*analyze) return cmd_analyze(aa);
        if (*verify) return cmd_verify(va);
        if (*stats) return cmd_stats(stats_path);
    } catch (const CLI::Error& e) {
        std::cerr << "scix: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "scix: " << e.what() << '\n';
        return kUsage;
    } catch (const RangeError& e) {
        std::cerr << "scix: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "scix: bad number: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "scix: " << e.what() << '\n';
        return kIo;
    } catch (const std::bad_alloc&) {
        std::cerr << "scix: out of memory\n";
        return kIo;
    }
    return kUsage;
}
