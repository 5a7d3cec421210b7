#pragma once

// On-disk index container and the build pipeline behind it.
//
// File layout (little-endian):
//   "SCIX" u32 version u32 section_count
//   per section: tag[4] u64 payload_bytes u32 crc32(payload) payload
// Sections are kept as raw bytes, so loading and saving again reproduces the
// file exactly.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scix/bidir.hpp"
#include "scix/bptree.hpp"
#include "scix/fmindex.hpp"
#include "scix/io.hpp"

namespace scix {

struct Section {
    io::Magic tag;
    std::string payload;
    std::uint32_t crc;
};

class Container {
public:
    static constexpr std::uint32_t kVersion = 1;
    static constexpr std::size_t kHeaderBytes = 12;
    static constexpr std::size_t kSectionHeaderBytes = 16;

    /// Adds or replaces a section.
    void put(io::Magic tag, std::string payload);
    const Section* find(io::Magic tag) const;
    const std::vector<Section>& sections() const noexcept { return sections_; }
    /// Bytes the container occupies when written.
    std::size_t file_bytes() const noexcept;

    void write(std::ostream& os) const;
    /// Throws FormatError when the bytes are not an intact container.
    static Container read(std::istream& is);
    void save_file(const std::filesystem::path& p) const;
    static Container load_file(const std::filesystem::path& p);

private:
    std::vector<Section> sections_;
};

namespace tags {
inline constexpr io::Magic kRemap = io::make_magic("REMP");
inline constexpr io::Magic kCounts = io::make_magic("CARR");
inline constexpr io::Magic kBwt = io::make_magic("WTBW");
inline constexpr io::Magic kSsa = io::make_magic("SSA_");
inline constexpr io::Magic kTopo = io::make_magic("TOPO");
inline constexpr io::Magic kPlcp = io::make_magic("PLCP");
}  // namespace tags

enum class BwtAlgo { Sais, Doubling };

struct BuildOptions {
    BwtAlgo bwt_algo = BwtAlgo::Sais;
    std::size_t sample = 32;
    bool ssa = true;
    bool topo = true;
    bool plcp = true;
};

/// The in-memory form of a container. The BWT, C and byte remap are always present.
struct IndexBundle {
    FmIndex fm;
    std::optional<BpTree> topo;
    std::optional<PlcpArray> plcp;
};

/// Indexes raw bytes (the sentinel is appended internally). Throws DomainError on empty input.
IndexBundle build_index(std::string_view bytes, const BuildOptions& opt = {});

Container pack(const IndexBundle& ix);
IndexBundle unpack(const Container& c);

/// Text positions of every suffix by LF-walking the BWT (1-based SA).
SuffixArray sa_from_bwt(const FmIndex& ix);

}  // namespace scix
