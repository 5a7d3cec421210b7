#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scix/io.hpp"

namespace scix {

using Symbol = std::uint32_t;

/// Symbol 0 is the sentinel '$'.
inline constexpr Symbol kSentinel = 0;

/// A sentinel-terminated integer text: symbols in [0..sigma), the last
/// symbol is 0 and 0 occurs nowhere else.
struct Text {
    std::vector<Symbol> syms;
    std::uint64_t sigma = 1;

    std::size_t size() const noexcept { return syms.size(); }
    Symbol operator[](std::size_t i) const { return syms[i - 1]; }  // 1-based

    /// Throws DomainError unless the sentinel convention holds.
    void validate() const;

    /// Reverse of T[1..n-1] followed by the sentinel.
    Text reversed() const;

    friend bool operator==(const Text&, const Text&) = default;
};

/// Dense byte alphabet: the k-th smallest used byte maps to symbol k (k >= 1).
class Alphabet {
public:
    Alphabet() { to_sym_.fill(0); }

    static Alphabet from_bytes(std::string_view bytes);

    /// Symbol of a byte, or nullopt if the byte is not part of the alphabet.
    std::optional<Symbol> map(unsigned char b) const noexcept {
        return to_sym_[b] ? std::optional<Symbol>(to_sym_[b]) : std::nullopt;
    }
    unsigned char byte_of(Symbol s) const { return to_byte_.at(s - 1); }
    std::uint64_t sigma() const noexcept { return to_byte_.size() + 1; }
    const std::vector<unsigned char>& bytes() const noexcept { return to_byte_; }

    /// Maps a whole pattern; nullopt if any byte is unmapped.
    std::optional<std::vector<Symbol>> map_pattern(std::string_view p) const;
    std::string decode(const std::vector<Symbol>& syms) const;

    void save(io::Writer& w) const;
    static Alphabet load(io::Reader& r);

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.to_byte_ == b.to_byte_; }

private:
    std::array<Symbol, 256> to_sym_{};
    std::vector<unsigned char> to_byte_;
};

/// Remaps `bytes` through a fresh dense alphabet and appends the sentinel.
Text text_from_bytes(std::string_view bytes, Alphabet* alphabet_out = nullptr);

/// Text over an explicit alphabet (bytes must be mapped).
Text text_from_bytes(std::string_view bytes, const Alphabet& alphabet);

}  // namespace scix
