#pragma once

// Stack-based enumeration of the internal nodes of a (virtual) suffix tree
// through Weiner links, over one BWT or two BWTs in lockstep.
//
// A node is known by the ordered array of its children (label, interval).
// Expanding a node computes, for every child, the distinct symbols of its
// BWT range; symbol c sends the child into the array of node c.path. An array
// that collects at least two children is a node and goes on the stack, the
// widest one first, which keeps at most sigma * log2(n) arrays on the stack.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "scix/fmindex.hpp"
#include "scix/wavelet.hpp"

namespace scix {

struct ChildEntry {
    Symbol label;
    Interval sub;
    friend bool operator==(const ChildEntry&, const ChildEntry&) = default;
};

struct NodeVisit {
    Interval interval;
    std::span<const ChildEntry> children;
    std::size_t depth;  // string depth of the node
};

struct EnumStats {
    std::size_t visits = 0;
    std::size_t weiner_links = 0;
    std::size_t stack_watermark = 0;  // most arrays on the stack at once
    std::size_t pushes = 0;
    bool largest_first = true;  // every expansion pushed its widest array first
};

class Enumerator {
public:
    using Visitor = std::function<void(const NodeVisit&)>;

    /// `c` holds sigma+1 cumulative counts of the sequence indexed by `bwt`.
    Enumerator(const WaveletTree& bwt, std::span<const std::uint64_t> c);
    explicit Enumerator(const FmIndex& ix) : Enumerator(ix.bwt(), ix.C()) {}

    /// Visits every internal node once, root first. Returns the visit count.
    std::size_t run(const Visitor& visit);
    const EnumStats& stats() const noexcept { return stats_; }

private:
    const WaveletTree& bwt_;
    std::span<const std::uint64_t> c_;
    EnumStats stats_;
};

/// Convenience wrapper around Enumerator.
std::size_t enumerate_internal(const FmIndex& ix, const Enumerator::Visitor& visit, EnumStats* stats = nullptr);

// ---- two BWTs -------------------------------------------------------------

/// Child of a node of the joint tree. One side may be empty; an empty side
/// is the zero-width interval {p+1, p} located where its suffixes would sit.
struct JointChild {
    Symbol label;
    Interval a;
    Interval b;
};

struct JointVisit {
    Interval a;  // node interval in the first BWT
    Interval b;  // node interval in the second BWT
    std::span<const JointChild> children;
    std::size_t depth;
};

struct JointStats {
    std::size_t visits = 0;
    std::size_t weiner_links = 0;
    std::size_t stack_watermark = 0;
    std::size_t pushes = 0;
    bool hybrid_only = true;  // every pushed node had children from both sides
};

/// Traverses the nodes of the joint suffix tree of two texts whose subtrees
/// contain suffixes (or rotations) of both, the hybrid nodes. Both BWTs must
/// be over one alphabet, with C arrays of equal length.
class JointEnumerator {
public:
    using Visitor = std::function<void(const JointVisit&)>;

    JointEnumerator(const WaveletTree& bwt1, std::span<const std::uint64_t> c1, const WaveletTree& bwt2,
                    std::span<const std::uint64_t> c2);

    std::size_t run(const Visitor& visit);
    const JointStats& stats() const noexcept { return stats_; }

private:
    const WaveletTree& w1_;
    const WaveletTree& w2_;
    std::span<const std::uint64_t> c1_, c2_;
    JointStats stats_;
};

}  // namespace scix
