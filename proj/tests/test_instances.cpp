#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <set>

#include "sto/instances.hpp"
#include "sto/rng.hpp"
#include "sto/sum_index.hpp"

using namespace sto;

TEST_CASE("gen_set_family contract") {
    auto f = gen_set_family(3, 5, 7, 0.0, 1);
    CHECK(f.size() == 3);
    CHECK(f.total_size >= 6);
    CHECK(f.total_size <= 8);
    f.validate();
}

TEST_CASE("gen_set_family forced singleton") {
    for (double skew : {0.0, 0.5, 1.0}) {
        auto f = gen_set_family(1, 1, 1, skew, 0);
        REQUIRE(f.size() == 1);
        CHECK(f.set(0) == std::vector<int64_t>{0});
    }
}

TEST_CASE("gen_set_family rejects infeasible target") {
    CHECK_THROWS_AS(gen_set_family(2, 2, 5, 0.0, 1), validation_error);
}

TEST_CASE("gen_set_family determinism") {
    auto a = gen_set_family(17, 1000, 400, 0.7, 42);
    auto b = gen_set_family(17, 1000, 400, 0.7, 42);
    CHECK(a.sets == b.sets);
    auto c = gen_set_family(17, 1000, 400, 0.7, 43);
    CHECK(a.sets != c.sets);
}

TEST_CASE("gen_set_family skew shapes sizes") {
    auto flat = gen_set_family(64, 4096, 2048, 0.0, 9);
    auto skewed = gen_set_family(64, 4096, 2048, 1.0, 9);
    // Zipf head is much larger than the uniform share; tail smaller.
    CHECK(skewed.set(0).size() > 2 * flat.set(0).size());
    CHECK(skewed.sets.back().size() < flat.sets.back().size());
    CHECK(skewed.total_size == 2048);
    CHECK(flat.total_size == 2048);
}

TEST_CASE("gen_sum_instance planted witnesses verified by brute force") {
    auto [inst, targets] = gen_sum_instance(2, 3, 1000, 1, 7);
    REQUIRE(targets.size() == 1);
    // brute force over all n^2 pairs
    auto w = brute_sum(inst, targets[0]);
    REQUIRE(w.has_value());
    CHECK(w->values[0] + w->values[1] == targets[0]);

    auto [inst3, targets3] = gen_sum_instance(3, 2, 50, 2, 11);
    REQUIRE(targets3.size() == 2);
    for (int64_t z : targets3) {
        auto w3 = brute_sum(inst3, z);
        REQUIRE(w3.has_value());
        CHECK(w3->values[0] + w3->values[1] + w3->values[2] == z);
    }
}

TEST_CASE("gen_sum_instance single pair") {
    auto [inst, targets] = gen_sum_instance(2, 1, 10, 1, 3);
    REQUIRE(targets.size() == 1);
    CHECK(targets[0] == inst.arrays[0][0] + inst.arrays[1][0]);
}

TEST_CASE("gen_sum_instance rejects forced duplicates") {
    CHECK_THROWS_AS(gen_sum_instance(2, 100, 10, 0, 1), validation_error);
}

TEST_CASE("gen_digraph smallest complete case") {
    auto g = gen_digraph(2, 2, 0);
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0] == std::pair<int64_t, int64_t>{0, 1});
    CHECK(g.edges[1] == std::pair<int64_t, int64_t>{1, 0});
}

TEST_CASE("gen_digraph empty and random") {
    auto empty = gen_digraph(4, 0, 1);
    CHECK(empty.edges.empty());
    auto g = gen_digraph(100, 300, 5);
    CHECK(g.edges.size() == 300);
    g.validate();
    auto g2 = gen_digraph(100, 300, 5);
    CHECK(g.edges == g2.edges);
}

TEST_CASE("gen_digraph rejects out-of-range edge counts") {
    CHECK_THROWS_AS(gen_digraph(3, 7, 0), validation_error);
}

TEST_CASE("json roundtrip is exact for 1000 random instances of each type") {
    Rng rng(1234);
    for (int iter = 0; iter < 1000; ++iter) {
        const int64_t m = 1 + static_cast<int64_t>(rng.below(12));
        const int64_t universe = 1 + static_cast<int64_t>(rng.below(200));
        const int64_t target =
            m + static_cast<int64_t>(rng.below(static_cast<uint64_t>(
                    std::max<int64_t>(1, std::min<int64_t>(m * universe, 300) - m))));
        auto f = gen_set_family(m, universe, target, rng.unit(), rng.next());
        auto any = instance_from_json(instance_to_json(f));
        auto& f2 = std::get<SetFamily>(any);
        CHECK(f2.sets == f.sets);
        CHECK(f2.universe_bound == f.universe_bound);
        CHECK(f2.total_size == f.total_size);

        const int64_t k = 2 + static_cast<int64_t>(rng.below(3));
        const int64_t len = 1 + static_cast<int64_t>(rng.below(30));
        auto [s, targets] = gen_sum_instance(k, len, len + 50, 0, rng.next());
        auto any_s = instance_from_json(instance_to_json(s));
        auto& s2 = std::get<SumInstance>(any_s);
        CHECK(s2.arrays == s.arrays);
        CHECK(s2.value_bound == s.value_bound);

        const int64_t n = 1 + static_cast<int64_t>(rng.below(20));
        const int64_t max_e = n * (n - 1);
        auto g = gen_digraph(n, static_cast<int64_t>(rng.below(static_cast<uint64_t>(max_e + 1))),
                             rng.next());
        auto any_g = instance_from_json(instance_to_json(g));
        auto& g2 = std::get<Digraph>(any_g);
        CHECK(g2.n == g.n);
        CHECK(g2.edges == g.edges);
    }
}

TEST_CASE("file roundtrip through disk") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "sto_test_io";
    fs::create_directories(dir);
    auto f = gen_set_family(5, 50, 30, 0.5, 99);
    write_instance(dir / "f.json", f);
    auto f2 = read_set_family(dir / "f.json");
    CHECK(f2.sets == f.sets);
    CHECK(f2.universe_bound == f.universe_bound);

    auto g = gen_digraph(10, 20, 3);
    write_instance(dir / "g.json", g);
    CHECK(read_digraph(dir / "g.json").edges == g.edges);

    auto [s, t] = gen_sum_instance(2, 5, 100, 2, 4);
    write_instance(dir / "s.json", s);
    CHECK(read_sum_instance(dir / "s.json").arrays == s.arrays);
    fs::remove_all(dir);
}

TEST_CASE("malformed files are rejected with named positions") {
    CHECK_THROWS_AS(instance_from_json("{not json"), parse_error);
    CHECK_THROWS_AS(instance_from_json(R"({"type":"set_family","sets":[[1]]})"), parse_error);
    CHECK_THROWS_AS(instance_from_json(R"({"type":"wat"})"), parse_error);
    CHECK_THROWS_AS(
        instance_from_json(R"({"type":"set_family","universe":4,"sets":[[1,"x"]]})"),
        parse_error);

    // duplicate element in a set
    CHECK_THROWS_AS(
        instance_from_json(R"({"type":"set_family","universe":9,"sets":[[1,1,2]]})"),
        validation_error);
    // unsorted set
    CHECK_THROWS_AS(
        instance_from_json(R"({"type":"set_family","universe":9,"sets":[[3,1]]})"),
        validation_error);
    // self-loop names the edge
    try {
        instance_from_json(R"({"type":"digraph","n":5,"edges":[[3,3]]})");
        CHECK(false);
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("self-loop") != std::string::npos);
    }
    // element above the declared universe
    CHECK_THROWS_AS(
        instance_from_json(R"({"type":"set_family","universe":2,"sets":[[5]]})"),
        validation_error);
}

TEST_CASE("from_sets canonicalizes unsorted input") {
    auto f = SetFamily::from_sets({{3, 1, 2, 3}, {5, 4}});
    CHECK(f.set(0) == std::vector<int64_t>{1, 2, 3});
    CHECK(f.set(1) == std::vector<int64_t>{4, 5});
    CHECK(f.total_size == 5);
    CHECK(f.universe_bound == 6);
}

TEST_CASE("generated instances satisfy their invariants") {
    Rng rng(777);
    for (int iter = 0; iter < 200; ++iter) {
        const int64_t m = 1 + static_cast<int64_t>(rng.below(20));
        const int64_t universe = 1 + static_cast<int64_t>(rng.below(500));
        const int64_t cap = std::min<int64_t>(m * universe, 500);
        const int64_t target =
            m + static_cast<int64_t>(rng.below(static_cast<uint64_t>(cap - m + 1)));
        CHECK_NOTHROW(gen_set_family(m, universe, target, rng.unit(), rng.next()).validate());

        const int64_t n = 1 + static_cast<int64_t>(rng.below(40));
        auto [inst, tg] = gen_sum_instance(2, n, n + 20, std::min<int64_t>(n, 3), rng.next());
        CHECK_NOTHROW(inst.validate());

        const int64_t gn = 2 + static_cast<int64_t>(rng.below(30));
        const int64_t ge = static_cast<int64_t>(rng.below(static_cast<uint64_t>(gn * (gn - 1))));
        CHECK_NOTHROW(gen_digraph(gn, ge, rng.next()).validate());
    }
}
