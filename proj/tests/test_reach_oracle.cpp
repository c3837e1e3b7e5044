#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sto/instances.hpp"
#include "sto/reach_oracle.hpp"
#include "sto/rng.hpp"

using namespace sto;

namespace {

Digraph path3() { return Digraph::from_edges(3, {{0, 1}, {1, 2}}); }

}  // namespace

TEST_CASE("path graph basics") {
    auto g = path3();
    auto o2 = ReachOracle::build(g, 2, g.n);
    CHECK(o2.heavy_count() == 0);  // all degrees <= alpha
    CHECK(o2.query(0, 2) == true);
    CHECK(o2.query(2, 0) == false);  // no edges out of the tail
    auto o1 = ReachOracle::build(g, 1, g.n);
    CHECK(o1.query(0, 2) == false);
    CHECK(o1.query(0, 1) == true);
}

TEST_CASE("alpha=1 makes every non-isolated vertex of a star heavy") {
    // hub 0 out to 1..4, back-edges from 5..6
    auto g = Digraph::from_edges(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 0}, {6, 0}});
    auto o = ReachOracle::build(g, 2, 1);
    CHECK(o.is_heavy(0));
    CHECK_FALSE(o.is_heavy(1));
    CHECK(o.query(5, 1) == true);  // 5 -> 0 -> 1
    CHECK(o.query(1, 5) == false);
}

TEST_CASE("distinct vertices required") {
    auto g = path3();
    auto o = ReachOracle::build(g, 2, 1);
    CHECK_THROWS_AS(o.query(1, 1), validation_error);
    CHECK_THROWS_AS(o.query(0, 9), validation_error);
    CHECK(brute_reach(g, 1, 1, 2) == false);
}

TEST_CASE("parameter validation and budget") {
    auto g = path3();
    CHECK_THROWS_AS(ReachOracle::build(g, 0, 1), validation_error);
    CHECK_THROWS_AS(ReachOracle::build(g, 2, 0), validation_error);
    auto dense = gen_digraph(128, 4000, 3);
    CHECK_THROWS_AS(ReachOracle::build(dense, 4, 1, /*word_budget=*/100), budget_error);
}

TEST_CASE("exactness against truncated BFS on 500 random graphs") {
    Rng rng(500);
    for (int iter = 0; iter < 500; ++iter) {
        const int64_t n = 2 + static_cast<int64_t>(rng.below(40));
        const int64_t max_e = std::min<int64_t>(n * (n - 1), 4 * n);
        const int64_t m = static_cast<int64_t>(rng.below(static_cast<uint64_t>(max_e + 1)));
        auto g = gen_digraph(n, m, rng.next());
        for (int k : {2, 3, 4}) {
            const int64_t alpha = 1 + static_cast<int64_t>(rng.below(8));
            auto o = ReachOracle::build(g, k, alpha);
            for (int q = 0; q < 100; ++q) {
                int64_t u = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
                int64_t v = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
                if (u == v) continue;
                REQUIRE(o.query(u, v) == brute_reach(g, u, v, k));
            }
        }
    }
}

TEST_CASE("monotonicity in k") {
    Rng rng(81);
    auto g = gen_digraph(60, 150, 4);
    auto o2 = ReachOracle::build(g, 2, 4);
    auto o3 = ReachOracle::build(g, 3, 4);
    auto o4 = ReachOracle::build(g, 4, 4);
    for (int q = 0; q < 500; ++q) {
        int64_t u = static_cast<int64_t>(rng.below(60));
        int64_t v = static_cast<int64_t>(rng.below(60));
        if (u == v) continue;
        if (o2.query(u, v)) CHECK(o3.query(u, v));
        if (o3.query(u, v)) CHECK(o4.query(u, v));
    }
}

TEST_CASE("k = n-1 equals full reachability") {
    Rng rng(12);
    auto g = gen_digraph(12, 30, 9);
    auto o = ReachOracle::build(g, static_cast<int>(g.n - 1), 3);
    for (int64_t u = 0; u < g.n; ++u)
        for (int64_t v = 0; v < g.n; ++v) {
            if (u == v) continue;
            CHECK(o.query(u, v) == brute_reach(g, u, v, static_cast<int>(g.n)));
        }
}

TEST_CASE("size accounting tracks the level-table + linear formula") {
    auto g = gen_digraph(200, 600, 21);
    for (int k : {2, 3, 4}) {
        for (int64_t alpha : {2, 4, 8, 16}) {
            auto o = ReachOracle::build(g, k, alpha);
            const uint64_t h = static_cast<uint64_t>(o.heavy_count());
            const uint64_t m = g.edge_count();
            const uint64_t bound =
                4 * (static_cast<uint64_t>(k - 1) * h * h + 2 * m + static_cast<uint64_t>(g.n));
            CHECK(o.size_words().total_words <= bound);
            CHECK(o.size_words().part("level_tables") ==
                  static_cast<uint64_t>(k - 1) * h * h);
        }
    }
}

TEST_CASE("query expansion work bounded by alpha^(k-1)") {
    Rng rng(66);
    auto g = gen_digraph(300, 900, 8);
    for (int k : {2, 3, 4}) {
        for (int64_t alpha : {2, 4, 8}) {
            auto o = ReachOracle::build(g, k, alpha);
            double bound = 4.0;
            for (int i = 0; i < k - 1; ++i) bound *= static_cast<double>(alpha);
            for (int q = 0; q < 300; ++q) {
                int64_t u = static_cast<int64_t>(rng.below(300));
                int64_t v = static_cast<int64_t>(rng.below(300));
                if (u == v) continue;
                o.reset_probes();
                o.query(u, v);
                CHECK(static_cast<double>(o.probes()) <= bound);
            }
        }
    }
}

TEST_CASE("heavy count stays under 2n/alpha on generated sparse graphs") {
    Rng rng(3030);
    for (int iter = 0; iter < 40; ++iter) {
        const int64_t n = 50 + static_cast<int64_t>(rng.below(200));
        auto g = gen_digraph(n, 3 * n, rng.next());
        for (int64_t alpha : {1, 2, 3, 4, 8, 16}) {
            auto o = ReachOracle::build(g, 2, alpha);
            CHECK(o.heavy_count() <= 2 * n / alpha);
        }
    }
}
