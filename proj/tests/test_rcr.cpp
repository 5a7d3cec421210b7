#include <algorithm>
#include <set>

#include "doctest.h"
#include "scix/error.hpp"
#include "scix/rcr.hpp"
#include "scix/wavelet.hpp"
#include "util.hpp"

using namespace scix;

TEST_CASE("rmq examples") {
    std::vector<std::uint64_t> v{2, 1, 3};
    Rmq r(v);
    CHECK(r.query(1, 3) == 2);
    CHECK(r.query(3, 3) == 3);
    CHECK(r.query(1, 1) == 1);
    CHECK_THROWS_AS(r.query(0, 2), RangeError);
    CHECK_THROWS_AS(r.query(2, 4), RangeError);
    std::vector<std::uint64_t> ties{5, 1, 4, 1, 1};
    Rmq rt(ties);
    CHECK(rt.query(1, 5) == 2);
    CHECK(rt.query(3, 5) == 4);
}

TEST_CASE("rmq random against linear scan") {
    for (std::uint64_t range : {3ULL, 1000ULL, 1ULL << 40}) {
        std::vector<std::uint64_t> v(10000);
        for (auto& x : v) x = testutil::uniform(0, range);
        Rmq r(v);
        for (int q = 0; q < 200; ++q) {
            std::size_t i = testutil::uniform(1, v.size()), j = testutil::uniform(i, v.size());
            auto it = std::min_element(v.begin() + (i - 1), v.begin() + j);
            REQUIRE(r.query(i, j) == static_cast<std::size_t>(it - v.begin()) + 1);
        }
    }
    std::vector<std::uint64_t> small(60);
    for (auto& x : small) x = testutil::uniform(0, 5);
    Rmq rs(small);
    for (std::size_t i = 1; i <= small.size(); ++i)
        for (std::size_t j = i; j <= small.size(); ++j) {
            auto it = std::min_element(small.begin() + (i - 1), small.begin() + j);
            REQUIRE(rs.query(i, j) == static_cast<std::size_t>(it - small.begin()) + 1);
        }
}

TEST_CASE("previous occurrence array") {
    std::vector<std::uint64_t> a{1, 3, 3, 2, 0, 1, 1};
    PrevOccArray p(a);
    std::vector<std::uint64_t> expect{0, 0, 2, 0, 0, 1, 6};
    for (std::size_t i = 1; i <= a.size(); ++i) {
        CHECK(p[i] == expect[i - 1]);
        CHECK(p[i] < i);
    }
}

TEST_CASE("rcr report banana") {
    std::vector<std::uint64_t> a{1, 3, 3, 2, 0, 1, 1};  // annb$aa
    PrevOccArray p(a);
    ColorAccessor acc = [&](std::size_t i) { return a[i - 1]; };
    auto hits = rcr_report(acc, p, 1, 4);
    std::sort(hits.begin(), hits.end(), [](auto& x, auto& y) { return x.pos < y.pos; });
    CHECK(hits == std::vector<ColorHit>{{1, 1}, {3, 2}, {2, 4}});
    CHECK(rcr_report(acc, p, 3, 3) == std::vector<ColorHit>{{3, 3}});
    CHECK(rcr_report(acc, p, 4, 3).empty());

    std::vector<std::uint64_t> same(30, 7);
    PrevOccArray ps(same);
    ColorAccessor accs = [&](std::size_t i) { return same[i - 1]; };
    CHECK(rcr_report(accs, ps, 5, 20) == std::vector<ColorHit>{{7, 5}});
}

TEST_CASE("rcr report equals wavelet range distinct") {
    for (std::uint64_t sigma : {2, 5, 17}) {
        std::vector<std::uint64_t> a(300);
        for (auto& c : a) c = testutil::uniform(0, sigma - 1);
        PrevOccArray p(a);
        WaveletTree wt(a, sigma);
        std::size_t reads = 0;
        ColorAccessor acc = [&](std::size_t i) {
            ++reads;
            return a[i - 1];
        };
        for (std::size_t i = 1; i <= a.size(); ++i) {
            for (std::size_t j = i; j <= a.size(); ++j) {
                reads = 0;
                auto hits = rcr_report(acc, p, i, j);
                REQUIRE(reads <= 2 * hits.size() + 1);
                std::set<std::uint64_t> got;
                for (auto& h : hits) {
                    REQUIRE(h.pos >= i);
                    REQUIRE(h.pos <= j);
                    REQUIRE(a[h.pos - 1] == h.color);
                    REQUIRE(std::find(a.begin() + (i - 1), a.begin() + (h.pos - 1), h.color) == a.begin() + (h.pos - 1));
                    got.insert(h.color);
                }
                REQUIRE(got.size() == hits.size());
                std::set<std::uint64_t> want;
                for (auto& d : wt.range_distinct(i, j)) want.insert(d.symbol);
                REQUIRE(got == want);
            }
        }
    }
}
