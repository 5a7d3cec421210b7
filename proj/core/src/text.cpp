#include "scix/text.hpp"

#include <algorithm>

#include "scix/error.hpp"

namespace scix {

void Text::validate() const {
    if (syms.empty()) throw DomainError("text is empty (missing sentinel)");
    if (syms.back() != kSentinel) throw DomainError("text does not end with the sentinel");
    for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
        if (syms[i] == kSentinel) throw DomainError("sentinel occurs before the end of the text");
        if (syms[i] >= sigma) throw DomainError("symbol out of alphabet range");
    }
}

Text Text::reversed() const {
    Text r;
    r.sigma = sigma;
    r.syms.assign(syms.rbegin() + 1, syms.rend());
    r.syms.push_back(kSentinel);
    return r;
}

Alphabet Alphabet::from_bytes(std::string_view bytes) {
    std::array<bool, 256> used{};
    for (unsigned char b : bytes) used[b] = true;
    Alphabet a;
    for (unsigned v = 0; v < 256; ++v) {
        if (used[v]) {
            a.to_byte_.push_back(static_cast<unsigned char>(v));
            a.to_sym_[v] = static_cast<Symbol>(a.to_byte_.size());
        }
    }
    return a;
}

std::optional<std::vector<Symbol>> Alphabet::map_pattern(std::string_view p) const {
    std::vector<Symbol> out;
    out.reserve(p.size());
    for (unsigned char b : p) {
        auto s = map(b);
        if (!s) return std::nullopt;
        out.push_back(*s);
    }
    return out;
}

std::string Alphabet::decode(const std::vector<Symbol>& syms) const {
    std::string s;
    s.reserve(syms.size());
    for (auto c : syms) s.push_back(c == kSentinel ? '$' : static_cast<char>(byte_of(c)));
    return s;
}

void Alphabet::save(io::Writer& w) const {
    w.vec(to_byte_);
}

Alphabet Alphabet::load(io::Reader& r) {
    Alphabet a;
    a.to_byte_ = r.vec<unsigned char>(256);
    for (std::size_t k = 0; k < a.to_byte_.size(); ++k) {
        if (k > 0 && a.to_byte_[k] <= a.to_byte_[k - 1]) throw FormatError("alphabet map not strictly increasing");
        a.to_sym_[a.to_byte_[k]] = static_cast<Symbol>(k + 1);
    }
    return a;
}

Text text_from_bytes(std::string_view bytes, Alphabet* alphabet_out) {
    auto a = Alphabet::from_bytes(bytes);
    Text t = text_from_bytes(bytes, a);
    if (alphabet_out) *alphabet_out = std::move(a);
    return t;
}

Text text_from_bytes(std::string_view bytes, const Alphabet& alphabet) {
    Text t;
    t.sigma = alphabet.sigma();
    t.syms.reserve(bytes.size() + 1);
    for (unsigned char b : bytes) {
        auto s = alphabet.map(b);
        if (!s) throw DomainError("byte not in alphabet");
        t.syms.push_back(*s);
    }
    t.syms.push_back(kSentinel);
    return t;
}

}  // namespace scix
