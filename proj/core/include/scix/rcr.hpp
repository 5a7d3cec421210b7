#pragma once

// Range minimum queries and range distinct-color reporting.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "scix/bptree.hpp"

namespace scix {

/// Range-minimum structure that does not retain the array: the 2d-min-heap
/// of the values (parent of k = nearest k' < k with value <= value[k], under a
/// virtual root) stored as a BP tree. Array position k is the node of
/// preorder k+1, and rmq(i, j) is answered through lca / level ancestor.
/// Ties resolve to the leftmost minimum.
class Rmq {
public:
    Rmq() = default;
    explicit Rmq(std::span<const std::uint64_t> values);

    std::size_t size() const noexcept { return n_; }
    /// Leftmost position of the minimum of values[i..j], 1 <= i <= j <= size().
    std::size_t query(std::size_t i, std::size_t j) const;

    std::size_t size_in_bits() const noexcept { return heap_.size_in_bits() + 64; }

private:
    std::size_t n_ = 0;
    BpTree heap_;
};

/// C[i] = largest j < i with A[j] == A[i], or 0 if A[i] is a first occurrence;
/// together with an Rmq over C.
class PrevOccArray {
public:
    PrevOccArray() = default;
    explicit PrevOccArray(std::span<const std::uint64_t> colors);

    std::size_t size() const noexcept { return prev_.size(); }
    /// C[i], 1-based.
    std::uint64_t operator[](std::size_t i) const { return prev_.at(i - 1); }
    const Rmq& rmq() const noexcept { return rmq_; }

private:
    std::vector<std::uint64_t> prev_;
    Rmq rmq_;
};

struct ColorHit {
    std::uint64_t color;
    std::size_t pos;  // leftmost occurrence of color inside the queried range

    friend bool operator==(const ColorHit&, const ColorHit&) = default;
};

using ColorAccessor = std::function<std::uint64_t(std::size_t)>;

/// Distinct colors of A[i..j] with their leftmost positions. Recursively splits
/// the range at the minimum of C and stops as soon as C[x] >= i. The accessor is
/// read once per reported color. An empty range (i > j) reports nothing.
std::vector<ColorHit> rcr_report(const ColorAccessor& colors, const PrevOccArray& prev, std::size_t i,
                                 std::size_t j);

}  // namespace scix
