#pragma once

// Balanced-parentheses tree topology.
//
// A node is identified by the 1-based position of its opening parenthesis.
// Navigation runs on a range-min-max tree over the excess sequence
// E(p) = #open - #close in [1..p], with fixed-size leaf blocks; operations
// cost O(log n) worst case. Leaves are numbered 1..leaves() left to right.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scix/bitvec.hpp"

namespace scix {

class BpTree {
public:
    using Node = std::size_t;
    /// Returned by navigation operations when the requested relative does not exist.
    static constexpr Node npos = 0;
    static constexpr std::size_t kBlockBits = 2048;

    BpTree() { build_directory(); }
    /// Takes ownership of a parenthesis bitvector (1 = open). Throws FormatError
    /// unless it encodes a single balanced tree (or is empty).
    explicit BpTree(BitVector parens);
    static BpTree from_string(std::string_view parens);

    std::size_t size() const noexcept { return bits_.size(); }
    std::size_t nodes() const noexcept { return bits_.ones(); }
    std::size_t leaves() const noexcept { return leaf_cum_.back(); }
    Node root() const noexcept { return bits_.size() ? 1 : npos; }
    const BitVector& parens() const noexcept { return bits_; }
    std::string to_string() const;

    bool is_leaf(Node x) const;
    Node find_close(Node x) const;
    /// Opening parenthesis matching the closing parenthesis at position p.
    Node find_open(std::size_t p) const;

    Node parent(Node x) const;
    Node first_child(Node x) const;
    Node next_sibling(Node x) const;
    /// k-th child (1-based) or npos.
    Node child(Node x, std::size_t k) const;
    std::size_t degree(Node x) const;

    Node lca(Node x, Node y) const;
    std::size_t depth(Node x) const;
    Node level_ancestor(Node x, std::size_t d) const;
    /// Longest downward path length from x to a leaf (0 for leaves).
    std::size_t height(Node x) const;
    std::size_t subtree_size(Node x) const { return (find_close(x) - x + 1) / 2; }

    /// 1-based rank of the leftmost/rightmost leaf in the subtree of x.
    std::size_t leftmost_leaf(Node x) const;
    std::size_t rightmost_leaf(Node x) const;
    /// Node of the i-th leaf.
    Node leaf_select(std::size_t i) const;
    /// Rank of leaf x among all leaves.
    std::size_t leaf_rank(Node x) const;

    /// Preorder number (1-based) of x and its inverse.
    std::size_t preorder(Node x) const;
    Node preorder_select(std::size_t k) const { return bits_.select1(k); }

    /// Excess at position p (E(0) == 0).
    std::int64_t excess(std::size_t p) const {
        return 2 * static_cast<std::int64_t>(bits_.rank1(p)) - static_cast<std::int64_t>(p);
    }
    /// Leftmost position of the minimum excess in [i..j], 1 <= i <= j <= size().
    std::size_t range_min_pos(std::size_t i, std::size_t j) const;

    std::size_t size_in_bits() const noexcept;

    void save(io::Writer& w) const;
    static BpTree load(io::Reader& r);

    friend bool operator==(const BpTree& a, const BpTree& b) { return a.bits_ == b.bits_; }

private:
    struct MinMax {
        std::int32_t min;
        std::int32_t max;
    };

    void build_directory();
    void check_node(Node x) const;
    bool open_at(std::size_t p) const noexcept { return bits_.get0(p - 1); }

    /// Smallest p > i with E(p) <= target, or size()+1.
    std::size_t fwd_search_le(std::size_t i, std::int64_t target) const;
    /// Largest p < i with E(p) <= target (p may be 0), or SIZE_MAX.
    std::size_t bwd_search_le(std::size_t i, std::int64_t target) const;
    /// Min and max of E over [i..j].
    MinMax range_minmax(std::size_t i, std::size_t j) const;
    /// Count of leaves whose opening parenthesis lies in [1..p].
    std::size_t leaves_upto(std::size_t p) const;

    std::size_t scan_fwd(std::size_t from, std::size_t to, std::int64_t cur, std::int64_t target) const;
    std::size_t scan_bwd(std::size_t from, std::size_t to, std::int64_t cur, std::int64_t target) const;
    void scan_minmax(std::size_t from, std::size_t to, std::int64_t cur, std::int64_t& mn, std::int64_t& mx) const;

    BitVector bits_;
    std::size_t nblocks_ = 0;
    std::size_t leaf_base_ = 1;     // index of the first leaf node in tree_
    std::vector<MinMax> tree_;      // heap-ordered min/max excess per block range
    std::vector<std::uint64_t> leaf_cum_;  // leaves with opening paren before each block (+ total)
};

}  // namespace scix
