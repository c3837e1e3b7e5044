#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sto/instances.hpp"
#include "sto/rng.hpp"
#include "sto/set_oracle.hpp"

using namespace sto;

namespace {

// the worked example family used throughout
SetFamily f0() { return SetFamily::from_sets({{1, 2, 3}, {4, 5}, {3, 4}}); }

}  // namespace

TEST_CASE("build parameter extremes") {
    auto f = f0();
    auto low = SetOracle::build(f, 2, f.total_size);  // T = N, tiny table
    CHECK(low.large_count() == 2);
    auto high = SetOracle::build(f, 2, 1);  // T = 1, full table
    CHECK(high.large_count() == 3);
    CHECK(high.size_words().part("table") == 9);
}

TEST_CASE("f0 disjointness answers") {
    auto f = f0();
    for (int64_t t : {int64_t{1}, int64_t{3}, f.total_size}) {
        auto o = SetOracle::build(f, 2, t);
        CHECK(o.query_disjoint({0, 1}) == true);   // {1,2,3} vs {4,5}
        CHECK(o.query_disjoint({0, 2}) == false);  // share 3
        CHECK(o.query_disjoint({1, 2}) == false);  // share 4
    }
    auto o3 = SetOracle::build(f, 3, 1);
    CHECK(o3.query_disjoint({0, 1, 2}) == true);  // pairwise witnesses differ
}

TEST_CASE("duplicate ids collapse to self-intersection") {
    auto f = SetFamily::from_sets({{1, 2}, {}});
    auto o = SetOracle::build(f, 2, 1);
    CHECK(o.query_disjoint({0, 0}) == false);  // S cap S = S, nonempty
    CHECK(o.query_disjoint({1, 1}) == true);   // empty set
    CHECK(o.query_disjoint({0, 1}) == true);
}

TEST_CASE("f0 intersection enumeration") {
    auto f = f0();
    for (int64_t t : {int64_t{1}, f.total_size}) {
        auto o = SetOracle::build(f, 2, t, SetOracleMode::intersection);
        CHECK(o.enumerate_intersection(0, 2) == std::vector<int64_t>{3});
        CHECK(o.enumerate_intersection(1, 2) == std::vector<int64_t>{4});
        CHECK(o.enumerate_intersection(0, 1).empty());
    }
}

TEST_CASE("errors: invalid ids, wrong mode, bad parameters") {
    auto f = f0();
    auto o = SetOracle::build(f, 2, 3);
    CHECK_THROWS_AS(o.query_disjoint({0, 17}), validation_error);
    CHECK_THROWS_AS(o.query_disjoint({-1, 0}), validation_error);
    CHECK_THROWS_AS(o.enumerate_intersection(0, 1), validation_error);  // wrong mode
    CHECK_THROWS_AS(SetOracle::build(f, 1, 1), validation_error);
    CHECK_THROWS_AS(SetOracle::build(f, 2, 0), validation_error);
    CHECK_THROWS_AS(SetOracle::build(f, 3, 1, SetOracleMode::intersection), validation_error);
}

TEST_CASE("budget error reports required words") {
    auto f = gen_set_family(64, 1024, 512, 0.0, 5);
    try {
        SetOracle::build(f, 3, 1, SetOracleMode::disjointness, /*word_budget=*/1000);
        CHECK(false);
    } catch (const budget_error& e) {
        CHECK(e.required_words >= 64ull * 64 * 64);
        CHECK(e.budget_words == 1000);
    }
}

TEST_CASE("brute oracle basics") {
    auto f = f0();
    CHECK(brute_disjoint(f, {0, 1}) == true);
    CHECK(brute_disjoint(f, {0, 2}) == false);
    CHECK(brute_intersection(f, 0, 2) == std::vector<int64_t>{3});
    auto with_empty = SetFamily::from_sets({{}, {1, 2, 3}});
    CHECK(brute_disjoint(with_empty, {0, 1}) == true);
    CHECK(brute_disjoint(with_empty, {0, 0}) == true);
}

TEST_CASE("exactness: oracle equals brute force across random families") {
    Rng rng(2024);
    for (int iter = 0; iter < 500; ++iter) {
        const int64_t m = 1 + static_cast<int64_t>(rng.below(24));
        const int64_t universe = 1 + static_cast<int64_t>(rng.below(120));
        const int64_t cap = std::min<int64_t>(m * universe, 400);
        const int64_t target =
            m + static_cast<int64_t>(rng.below(static_cast<uint64_t>(cap - m + 1)));
        auto f = gen_set_family(m, universe, target, rng.unit(), rng.next());
        const int64_t t = 1 + static_cast<int64_t>(rng.below(static_cast<uint64_t>(f.total_size)));
        auto o = SetOracle::build(f, 2, t);
        auto oi = SetOracle::build(f, 2, t, SetOracleMode::intersection);
        for (int32_t i = 0; i < m; ++i)
            for (int32_t j = 0; j < m; ++j) {
                REQUIRE(o.query_disjoint({i, j}) == brute_disjoint(f, {i, j}));
                REQUIRE(oi.enumerate_intersection(i, j) == brute_intersection(f, i, j));
            }
    }
}

TEST_CASE("exactness for k=3 tuples") {
    Rng rng(88);
    for (int iter = 0; iter < 60; ++iter) {
        const int64_t m = 2 + static_cast<int64_t>(rng.below(10));
        auto f = gen_set_family(m, 60, m + static_cast<int64_t>(rng.below(100)), rng.unit(),
                                rng.next());
        const int64_t t = 1 + static_cast<int64_t>(rng.below(static_cast<uint64_t>(f.total_size)));
        auto o = SetOracle::build(f, 3, t);
        for (int q = 0; q < 200; ++q) {
            std::vector<int32_t> ids = {
                static_cast<int32_t>(rng.below(static_cast<uint64_t>(m))),
                static_cast<int32_t>(rng.below(static_cast<uint64_t>(m))),
                static_cast<int32_t>(rng.below(static_cast<uint64_t>(m)))};
            REQUIRE(o.query_disjoint(ids) == brute_disjoint(f, ids));
        }
    }
}

TEST_CASE("space law: total minus membership share bounded by table term") {
    // documented constants: c_member = 5, c_table = 2
    auto f = gen_set_family(256, 1 << 14, 1 << 13, 1.0, 31);
    for (int64_t f_target : {4, 16, 64, 256}) {
        const int64_t t = std::max<int64_t>(1, 2 * f.total_size / f_target);
        auto o = SetOracle::build(f, 2, t);
        const int64_t fk = o.large_count() * o.large_count();
        const int64_t total = static_cast<int64_t>(o.size_words().total_words);
        CHECK(total - 5 * f.total_size <= 2 * fk);
        // measured vs formula: size <= c*(f^k + N) with c = 5
        CHECK(total <= 5 * (fk + f.total_size));
    }
}

TEST_CASE("query work law: probes per small-path query") {
    auto f = gen_set_family(128, 1 << 12, 1 << 11, 1.0, 77);
    const int k = 2;
    for (int64_t f_target : {8, 32}) {
        const int64_t t = std::max<int64_t>(1, k * f.total_size / f_target);
        auto o = SetOracle::build(f, k, t);
        const int64_t threshold = f.total_size / o.large_count();
        Rng rng(5);
        for (int q = 0; q < 2000; ++q) {
            int32_t i = static_cast<int32_t>(rng.below(f.size()));
            int32_t j = static_cast<int32_t>(rng.below(f.size()));
            if (o.is_large(i) && o.is_large(j)) continue;
            o.reset_probes();
            o.query_disjoint({i, j});
            CHECK(o.probes() <= static_cast<uint64_t>((k - 1) * threshold + k));
        }
    }
}

TEST_CASE("intersection-mode storage bounded by N*f") {
    auto f = gen_set_family(64, 512, 700, 0.8, 3);
    for (int64_t f_target : {4, 16, 64}) {
        const int64_t t = std::max<int64_t>(1, 2 * f.total_size / f_target);
        auto o = SetOracle::build(f, 2, t, SetOracleMode::intersection);
        const uint64_t stored = o.size_words().part("table") -
                                static_cast<uint64_t>(o.large_count() * o.large_count());
        CHECK(stored <= static_cast<uint64_t>(f.total_size * o.large_count()));
    }
}

TEST_CASE("empty family edge case") {
    auto f = SetFamily::from_sets({{}});
    auto o = SetOracle::build(f, 2, 1);
    CHECK(o.query_disjoint({0, 0}) == true);
}
