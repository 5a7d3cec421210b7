#include "scix/rcr.hpp"

#include <string>
#include <unordered_map>
#include <utility>

namespace scix {

Rmq::Rmq(std::span<const std::uint64_t> values) : n_(values.size()) {
    BitBuilder bp(2 * (n_ + 1));
    std::vector<std::uint64_t> stack;
    stack.reserve(64);
    bp.push_back(true);  // virtual root
    for (auto v : values) {
        while (!stack.empty() && stack.back() > v) {
            stack.pop_back();
            bp.push_back(false);
        }
        bp.push_back(true);
        stack.push_back(v);
    }
    bp.append_run(false, stack.size() + 1);
    heap_ = BpTree(BitVector(std::move(bp)));
}

std::size_t Rmq::query(std::size_t i, std::size_t j) const {
    if (i == 0 || i > j || j > n_) {
        throw RangeError("rmq range [" + std::to_string(i) + "," + std::to_string(j) + "] out of bounds");
    }
    if (i == j) return i;
    const auto x = heap_.preorder_select(i + 1);
    const auto y = heap_.preorder_select(j + 1);
    const auto l = heap_.lca(x, y);
    if (l == x) return i;
    const auto c = heap_.level_ancestor(y, heap_.depth(l) + 1);
    return heap_.preorder(c) - 1;
}

PrevOccArray::PrevOccArray(std::span<const std::uint64_t> colors) : prev_(colors.size()) {
    std::unordered_map<std::uint64_t, std::size_t> last;
    for (std::size_t i = 0; i < colors.size(); ++i) {
        auto [it, fresh] = last.try_emplace(colors[i], i + 1);
        prev_[i] = fresh ? 0 : it->second;
        it->second = i + 1;
    }
    rmq_ = Rmq(prev_);
}

std::vector<ColorHit> rcr_report(const ColorAccessor& colors, const PrevOccArray& prev, std::size_t i,
                                 std::size_t j) {
    std::vector<ColorHit> out;
    if (i > j) return out;
    if (i == 0 || j > prev.size()) throw RangeError("rcr_report range out of bounds");
    std::vector<std::pair<std::size_t, std::size_t>> todo{{i, j}};
    while (!todo.empty()) {
        auto [a, b] = todo.back();
        todo.pop_back();
        const std::size_t x = prev.rmq().query(a, b);
        if (prev[x] >= i) continue;
        out.push_back({colors(x), x});
        if (x < b) todo.emplace_back(x + 1, b);
        if (a < x) todo.emplace_back(a, x - 1);
    }
    return out;
}

}  // namespace scix
