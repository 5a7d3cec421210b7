#pragma once

// Little-endian binary serialization helpers shared by all on-disk sections.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string_view>
#include <type_traits>
#include <vector>

#include "scix/error.hpp"

namespace scix::io {

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

using Magic = std::array<char, 4>;

constexpr Magic make_magic(std::string_view s) {
    return {s[0], s[1], s[2], s[3]};
}

class Writer {
public:
    explicit Writer(std::ostream& os) : os_(os) {}

    template <class T>
        requires std::is_trivially_copyable_v<T>
    void pod(const T& v) {
        os_.write(reinterpret_cast<const char*>(&v), sizeof(T));
        check();
    }

    void magic(const Magic& m) {
        os_.write(m.data(), 4);
        check();
    }

    /// u64 element count followed by the raw elements.
    template <class T>
        requires std::is_trivially_copyable_v<T>
    void vec(const std::vector<T>& v) {
        pod<std::uint64_t>(v.size());
        if (!v.empty()) {
            os_.write(reinterpret_cast<const char*>(v.data()),
                      static_cast<std::streamsize>(v.size() * sizeof(T)));
            check();
        }
    }

    std::ostream& stream() { return os_; }

private:
    void check() {
        if (!os_) throw IoError("write failed");
    }
    std::ostream& os_;
};

class Reader {
public:
    explicit Reader(std::istream& is) : is_(is) {}

    template <class T>
        requires std::is_trivially_copyable_v<T>
    T pod() {
        T v;
        is_.read(reinterpret_cast<char*>(&v), sizeof(T));
        if (!is_) throw FormatError("truncated input");
        return v;
    }

    void expect_magic(const Magic& m) {
        Magic got{};
        is_.read(got.data(), 4);
        if (!is_) throw FormatError("truncated input");
        if (got != m) {
            throw FormatError("bad magic: expected '" + std::string(m.data(), 4) + "', got '" +
                              std::string(got.data(), 4) + "'");
        }
    }

    template <class T>
        requires std::is_trivially_copyable_v<T>
    std::vector<T> vec(std::uint64_t max_elems = (std::uint64_t{1} << 40)) {
        auto n = pod<std::uint64_t>();
        if (n > max_elems) throw FormatError("vector length out of range");
        std::vector<T> v(n);
        if (n != 0) {
            is_.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
            if (!is_) throw FormatError("truncated input");
        }
        return v;
    }

    std::istream& stream() { return is_; }

private:
    std::istream& is_;
};

}  // namespace scix::io
