#pragma once

// Bidirectional BWT index (forward and reverse FM-indexes with synchronized
// intervals) and permuted-LCP construction by a left-to-right scan.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scix/bptree.hpp"
#include "scix/fmindex.hpp"
#include "scix/topo_builder.hpp"

namespace scix {

/// Intervals of a factor p in the forward index and of reverse(p) in the reverse one.
struct BiInterval {
    Interval fwd;
    Interval rev;
    std::size_t depth = 0;
    friend bool operator==(const BiInterval&, const BiInterval&) = default;
};

struct BiOptions {
    FmOptions fm{};
    TopoOptions topo{};
    /// Also build the reverse-text topology, which contract_right needs.
    bool reverse_topology = false;
};

class BiIndex {
public:
    BiIndex() = default;
    static BiIndex build(const Text& t, const BiOptions& opt = {});
    BiIndex(FmIndex fwd, FmIndex rev, BpTree fwd_topology, std::optional<BpTree> rev_topology = std::nullopt);

    const FmIndex& fwd() const noexcept { return fwd_; }
    const FmIndex& rev() const noexcept { return rev_; }
    const BpTree& fwd_topology() const noexcept { return fwd_topo_; }
    bool has_reverse_topology() const noexcept { return rev_topo_.has_value(); }
    std::size_t size() const noexcept { return fwd_.size(); }

    BiInterval empty_factor() const noexcept { return {fwd_.full(), rev_.full(), 0}; }

    std::optional<BiInterval> extend_left(const BiInterval& v, Symbol c) const;
    std::optional<BiInterval> extend_right(const BiInterval& v, Symbol c) const;
    /// cp -> p. cp must be right-maximal or of length 1.
    BiInterval contract_left(const BiInterval& v) const;
    /// pc -> p. pc must be left-maximal or of length 1; needs the reverse topology.
    BiInterval contract_right(const BiInterval& v) const;

private:
    FmIndex fwd_, rev_;
    BpTree fwd_topo_;
    std::optional<BpTree> rev_topo_;
};

/// PLCP stored as 2n bits: the i-th one sits at position PLCP[i] + 2i.
class PlcpArray {
public:
    PlcpArray() = default;
    explicit PlcpArray(std::span<const std::uint64_t> plcp);
    explicit PlcpArray(BitVector bits);

    std::size_t size() const noexcept { return bits_.ones(); }
    /// PLCP[i], 1 <= i <= size().
    std::uint64_t operator[](std::size_t i) const {
        return static_cast<std::uint64_t>(bits_.select1(i) - 2 * i);
    }
    std::vector<std::uint64_t> to_vector() const;
    const BitVector& bits() const noexcept { return bits_; }

    /// Payload bits (exactly 2n).
    std::size_t payload_bits() const noexcept { return bits_.size(); }
    std::size_t size_in_bits() const noexcept { return bits_.size_in_bits(); }

    void save(io::Writer& w) const;
    static PlcpArray load(io::Reader& r);

    friend bool operator==(const PlcpArray&, const PlcpArray&) = default;

private:
    BitVector bits_;
};

struct PlcpStats {
    std::size_t extensions = 0;
    std::size_t contractions = 0;
    std::size_t psi_steps = 0;
};

PlcpArray build_plcp(const BiIndex& ix, PlcpStats* stats = nullptr);

}  // namespace scix
