#include <sstream>

#include "doctest.h"
#include "scix/bitvec.hpp"
#include "scix/error.hpp"
#include "util.hpp"

using namespace scix;

namespace {

BitVector from_list(std::initializer_list<int> bits) {
    std::vector<std::uint8_t> v(bits.begin(), bits.end());
    return BitVector(std::span<const std::uint8_t>(v));
}

void check_against_scan(const std::vector<std::uint8_t>& bits, std::size_t probes) {
    BitVector bv{std::span<const std::uint8_t>(bits)};
    std::vector<std::size_t> pref(bits.size() + 1, 0), ones, zeros;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        pref[i + 1] = pref[i] + bits[i];
        (bits[i] ? ones : zeros).push_back(i + 1);
    }
    REQUIRE(bv.size() == bits.size());
    REQUIRE(bv.ones() == ones.size());
    for (std::size_t q = 0; q < probes; ++q) {
        std::size_t i = testutil::uniform(0, bits.size());
        CHECK(bv.rank1(i) == pref[i]);
        CHECK(bv.rank1(i) + bv.rank0(i) == i);
        if (!ones.empty()) {
            std::size_t j = testutil::uniform(1, ones.size());
            CHECK(bv.select1(j) == ones[j - 1]);
            CHECK(bv.rank1(bv.select1(j)) == j);
        }
        if (!zeros.empty()) {
            std::size_t j = testutil::uniform(1, zeros.size());
            CHECK(bv.select0(j) == zeros[j - 1]);
        }
    }
}

}  // namespace

TEST_CASE("bitvector small examples") {
    BitVector empty;
    CHECK(empty.rank1(0) == 0);
    auto v = from_list({1, 0, 1, 1});
    CHECK(v.rank1(4) == 3);
    CHECK(v.rank1(0) == 0);
    CHECK(v.select1(2) == 3);
    CHECK(v.rank0(3) == 1);
    CHECK_THROWS_AS(v.rank1(5), RangeError);
    CHECK_THROWS_AS(v.select1(4), RangeError);
    CHECK_THROWS_AS(v.select0(2), RangeError);
    CHECK_THROWS_AS(v.select1(0), RangeError);
}

TEST_CASE("bitvector random against linear scan") {
    for (double density : {0.5, 0.01, 0.99}) {
        std::vector<std::uint8_t> bits(100000);
        std::bernoulli_distribution d(density);
        for (auto& b : bits) b = d(testutil::rng());
        check_against_scan(bits, 100);
    }
}

TEST_CASE("bitvector exhaustive rank/select on many sizes") {
    for (std::size_t n : {1, 63, 64, 65, 511, 512, 513, 2047, 2048, 2049, 4097, 9000, 20000}) {
        std::vector<std::uint8_t> bits(n);
        for (auto& b : bits) b = testutil::uniform(0, 3) == 0;
        BitVector bv{std::span<const std::uint8_t>(bits)};
        std::size_t r = 0, z = 0;
        for (std::size_t i = 1; i <= n; ++i) {
            if (bits[i - 1]) {
                ++r;
                REQUIRE(bv.select1(r) == i);
            } else {
                ++z;
                REQUIRE(bv.select0(z) == i);
            }
            REQUIRE(bv.rank1(i) == r);
            REQUIRE(bv.bit(i) == bool(bits[i - 1]));
        }
    }
}

TEST_CASE("bitvector all zeros and all ones") {
    for (int val : {0, 1}) {
        std::vector<std::uint8_t> bits(10000, static_cast<std::uint8_t>(val));
        check_against_scan(bits, 200);
    }
}

TEST_CASE("bitvector overhead bound") {
    std::vector<std::uint8_t> bits(1 << 16);
    for (auto& b : bits) b = testutil::uniform(0, 1);
    BitVector bv{std::span<const std::uint8_t>(bits)};
    CHECK(bv.size_in_bits() <= 1.25 * bits.size() + 1024);
}

TEST_CASE("bitvector serialization round trip") {
    std::vector<std::uint8_t> bits(12345);
    for (auto& b : bits) b = testutil::uniform(0, 1);
    BitVector bv{std::span<const std::uint8_t>(bits)};
    std::stringstream ss;
    io::Writer w(ss);
    bv.save(w);
    std::string first = ss.str();
    io::Reader r(ss);
    auto back = BitVector::load(r);
    CHECK(back == bv);
    std::stringstream ss2;
    io::Writer w2(ss2);
    back.save(w2);
    CHECK(ss2.str() == first);
    for (std::size_t j = 1; j <= back.ones(); j += 97) CHECK(back.select1(j) == bv.select1(j));
}

TEST_CASE("elias-fano prefix sums") {
    std::vector<std::uint64_t> vals{3, 1, 4, 1, 5};
    EliasFanoSeq ef(vals);
    CHECK(ef.prefix_sum(3) == 8);
    CHECK(ef.prefix_sum(5) == 14);
    CHECK(ef.prefix_sum(1) == 3);
    CHECK(ef.prefix_sum(0) == 0);
    CHECK_THROWS_AS(ef.prefix_sum(6), RangeError);

    EliasFanoSeq e0(std::vector<std::uint64_t>{});
    CHECK(e0.prefix_sum(0) == 0);

    std::vector<std::uint64_t> z{0, 0, 7};
    EliasFanoSeq ez(z);
    CHECK(ez.prefix_sum(2) == 0);
    CHECK(ez.value(3) == 7);

    std::vector<std::uint64_t> huge{~std::uint64_t{0}, 2};
    CHECK_THROWS_AS(EliasFanoSeq{huge}, CapacityError);
}

TEST_CASE("elias-fano random against running total") {
    std::vector<std::uint64_t> vals(100000);
    for (auto& v : vals) v = testutil::uniform(0, 1000);
    EliasFanoSeq ef(vals);
    std::uint64_t run = 0;
    for (std::size_t i = 1; i <= vals.size(); ++i) {
        run += vals[i - 1];
        REQUIRE(ef.prefix_sum(i) == run);
    }
    const double n = static_cast<double>(vals.size());
    const double bound = n * (2 + std::ceil(std::log2(static_cast<double>(run) / n))) * 1.25 + 4096;
    CHECK(static_cast<double>(ef.size_in_bits()) <= bound);

    std::stringstream ss;
    io::Writer w(ss);
    ef.save(w);
    io::Reader r(ss);
    auto back = EliasFanoSeq::load(r);
    for (std::size_t i = 0; i <= vals.size(); i += 1001) CHECK(back.prefix_sum(i) == ef.prefix_sum(i));
}

TEST_CASE("packed array") {
    PackedArray a(1000, 13);
    for (std::size_t i = 0; i < 1000; ++i) a.set(i, (i * 7919) & 8191);
    for (std::size_t i = 0; i < 1000; ++i) CHECK(a.get(i) == ((i * 7919) & 8191));
    PackedArray w64(10, 64);
    w64.set(3, ~std::uint64_t{0});
    CHECK(w64.get(3) == ~std::uint64_t{0});
    CHECK(w64.get(4) == 0);
}
