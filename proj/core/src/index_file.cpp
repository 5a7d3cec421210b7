#include "scix/index_file.hpp"

#include <zlib.h>

#include <fstream>
#include <sstream>

#include "scix/bwt_doubling.hpp"
#include "scix/error.hpp"
#include "scix/sufsort.hpp"
#include "scix/topo_builder.hpp"

namespace scix {

namespace {

constexpr io::Magic kFileMagic = io::make_magic("SCIX");

std::uint32_t crc_of(const std::string& s) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed large payloads in pieces.
    for (std::size_t off = 0; off < s.size();) {
        const std::size_t len = std::min<std::size_t>(s.size() - off, 1u << 30);
        crc = crc32(crc, reinterpret_cast<const Bytef*>(s.data() + off), static_cast<uInt>(len));
        off += len;
    }
    return static_cast<std::uint32_t>(crc);
}

template <class F>
std::string serialize(F&& f) {
    std::ostringstream os(std::ios::binary);
    io::Writer w(os);
    f(w);
    return std::move(os).str();
}

template <class T>
T deserialize(const Section& s) {
    std::istringstream is(s.payload, std::ios::binary);
    io::Reader r(is);
    T v = T::load(r);
    if (is.peek() != std::char_traits<char>::eof())
        throw FormatError("trailing bytes in section '" + std::string(s.tag.data(), 4) + "'");
    return v;
}

}  // namespace

void Container::put(io::Magic tag, std::string payload) {
    const auto crc = crc_of(payload);
    for (auto& s : sections_) {
        if (s.tag == tag) {
            s.payload = std::move(payload);
            s.crc = crc;
            return;
        }
    }
    sections_.push_back({tag, std::move(payload), crc});
}

const Section* Container::find(io::Magic tag) const {
    for (const auto& s : sections_)
        if (s.tag == tag) return &s;
    return nullptr;
}

std::size_t Container::file_bytes() const noexcept {
    std::size_t b = kHeaderBytes;
    for (const auto& s : sections_) b += kSectionHeaderBytes + s.payload.size();
    return b;
}

void Container::write(std::ostream& os) const {
    io::Writer w(os);
    w.magic(kFileMagic);
    w.pod<std::uint32_t>(kVersion);
    w.pod<std::uint32_t>(static_cast<std::uint32_t>(sections_.size()));
    for (const auto& s : sections_) {
        w.magic(s.tag);
        w.pod<std::uint64_t>(s.payload.size());
        w.pod<std::uint32_t>(s.crc);
        os.write(s.payload.data(), static_cast<std::streamsize>(s.payload.size()));
        if (!os) throw IoError("write failed");
    }
}

Container Container::read(std::istream& is) {
    io::Reader r(is);
    r.expect_magic(kFileMagic);
    const auto version = r.pod<std::uint32_t>();
    if (version != kVersion) throw FormatError("unsupported container version " + std::to_string(version));
    const auto count = r.pod<std::uint32_t>();
    if (count > 64) throw FormatError("too many sections");
    Container c;
    for (std::uint32_t i = 0; i < count; ++i) {
        Section s;
        s.tag = r.pod<io::Magic>();
        const auto len = r.pod<std::uint64_t>();
        s.crc = r.pod<std::uint32_t>();
        if (len > (std::uint64_t{1} << 40)) throw FormatError("section too large");
        s.payload.resize(len);
        is.read(s.payload.data(), static_cast<std::streamsize>(len));
        if (!is) throw FormatError("truncated section '" + std::string(s.tag.data(), 4) + "'");
        if (crc_of(s.payload) != s.crc) throw FormatError("checksum mismatch in section '" + std::string(s.tag.data(), 4) + "'");
        if (c.find(s.tag)) throw FormatError("duplicate section");
        c.sections_.push_back(std::move(s));
    }
    if (is.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after last section");
    return c;
}

void Container::save_file(const std::filesystem::path& p) const {
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + p.string() + " for writing");
    write(os);
    os.close();
    if (!os) throw IoError("write to " + p.string() + " failed");
}

Container Container::load_file(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    if (!is) throw IoError("cannot open " + p.string());
    return read(is);
}

SuffixArray sa_from_bwt(const FmIndex& ix) {
    const std::size_t n = ix.size();
    SuffixArray sa(n);
    // Rank 1 is the sentinel suffix n; LF steps one position to the left.
    std::size_t r = 1;
    for (std::size_t p = n; p >= 1; --p) {
        sa[r - 1] = p;
        r = ix.lf(r);
    }
    return sa;
}

IndexBundle build_index(std::string_view bytes, const BuildOptions& opt) {
    if (bytes.empty()) throw DomainError("empty input");
    if (opt.plcp && !opt.topo) throw DomainError("the plcp component needs the topology");
    Alphabet alpha;
    const Text t = text_from_bytes(bytes, &alpha);

    IndexBundle out;
    SuffixArray sa;
    BwtString bwt;
    if (opt.bwt_algo == BwtAlgo::Sais) {
        sa = sa_build(t);
        bwt = bwt_from_sa(t, sa);
    } else {
        bwt = build_bwt_doubling(t);
    }
    if (opt.bwt_algo == BwtAlgo::Doubling || !opt.ssa) {
        std::vector<std::uint64_t> c(t.sigma + 1, 0);
        for (auto s : bwt) ++c[s + 1];
        for (std::size_t i = 1; i < c.size(); ++i) c[i] += c[i - 1];
        out.fm = FmIndex::from_parts(alpha, std::move(c), WaveletTree(std::span<const Symbol>(bwt), t.sigma));
        if (opt.ssa) {
            sa = sa_from_bwt(out.fm);
            out.fm = FmIndex(t, bwt, sa, {opt.sample});
        }
    } else {
        out.fm = FmIndex(t, bwt, sa, {opt.sample});
    }
    out.fm.set_alphabet(alpha);
    sa = {};
    bwt = {};

    if (opt.topo) out.topo = build_topology(out.fm);
    if (opt.plcp) {
        const Text rt = t.reversed();
        BiIndex bi(out.fm, FmIndex::build(rt, {opt.sample}), *out.topo);
        out.plcp = build_plcp(bi);
    }
    return out;
}

Container pack(const IndexBundle& ix) {
    Container c;
    c.put(tags::kRemap, serialize([&](io::Writer& w) { ix.fm.alphabet().save(w); }));
    c.put(tags::kCounts, serialize([&](io::Writer& w) { w.vec(ix.fm.C()); }));
    c.put(tags::kBwt, serialize([&](io::Writer& w) { ix.fm.bwt().save(w); }));
    if (ix.fm.has_ssa()) c.put(tags::kSsa, serialize([&](io::Writer& w) { ix.fm.ssa().save(w); }));
    if (ix.topo) c.put(tags::kTopo, serialize([&](io::Writer& w) { ix.topo->save(w); }));
    if (ix.plcp) c.put(tags::kPlcp, serialize([&](io::Writer& w) { ix.plcp->save(w); }));
    return c;
}

IndexBundle unpack(const Container& c) {
    auto need = [&](io::Magic tag) -> const Section& {
        const Section* s = c.find(tag);
        if (!s) throw FormatError("missing section '" + std::string(tag.data(), 4) + "'");
        return *s;
    };
    auto alpha = deserialize<Alphabet>(need(tags::kRemap));
    std::vector<std::uint64_t> counts;
    {
        const auto& s = need(tags::kCounts);
        std::istringstream is(s.payload, std::ios::binary);
        io::Reader r(is);
        counts = r.vec<std::uint64_t>(std::uint64_t{1} << 33);
    }
    auto wt = deserialize<WaveletTree>(need(tags::kBwt));
    SampledSA ssa;
    if (const auto* s = c.find(tags::kSsa)) ssa = deserialize<SampledSA>(*s);
    if (alpha.sigma() != wt.sigma()) throw FormatError("alphabet size differs from the BWT");

    IndexBundle ix;
    ix.fm = FmIndex::from_parts(std::move(alpha), std::move(counts), std::move(wt), std::move(ssa));
    if (const auto* s = c.find(tags::kTopo)) {
        ix.topo = deserialize<BpTree>(*s);
        if (ix.topo->leaves() != ix.fm.size()) throw FormatError("topology does not match the BWT");
    }
    if (const auto* s = c.find(tags::kPlcp)) {
        ix.plcp = deserialize<PlcpArray>(*s);
        if (ix.plcp->size() != ix.fm.size()) throw FormatError("PLCP length does not match the BWT");
    }
    return ix;
}

}  // namespace scix
