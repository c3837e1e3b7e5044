#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sto/errors.hpp"

namespace sto {

// A family of m sets over a non-negative integer universe. Canonical form:
// every set sorted strictly ascending (deduplicated), total_size = sum of
// set sizes. Immutable by convention after construction.
struct SetFamily {
    std::vector<std::vector<int64_t>> sets;
    int64_t universe_bound = 1;  // max element value + 1
    int64_t total_size = 0;      // N

    // Canonicalizes (sorts + dedups) unsorted input, then validates.
    static SetFamily from_sets(std::vector<std::vector<int64_t>> sets);

    size_t size() const { return sets.size(); }  // m
    const std::vector<int64_t>& set(size_t i) const { return sets[i]; }

    // Throws validation_error unless all invariants hold.
    void validate() const;
};

// k integer arrays of equal length n, the instance for (k+1)-SUM indexing.
struct SumInstance {
    std::vector<std::vector<int64_t>> arrays;
    int64_t value_bound = 0;  // max |value|

    static SumInstance from_arrays(std::vector<std::vector<int64_t>> arrays);

    size_t k() const { return arrays.size(); }
    size_t n() const { return arrays.empty() ? 0 : arrays[0].size(); }

    void validate() const;
};

// Simple directed graph: no self-loops, no duplicate edges. Edges kept
// sorted lexicographically; out_adj/in_adj are sorted neighbor lists.
struct Digraph {
    int64_t n = 0;
    std::vector<std::pair<int64_t, int64_t>> edges;
    std::vector<std::vector<int64_t>> out_adj;
    std::vector<std::vector<int64_t>> in_adj;

    static Digraph from_edges(int64_t n, std::vector<std::pair<int64_t, int64_t>> edges);

    size_t edge_count() const { return edges.size(); }
    int64_t out_degree(int64_t v) const { return static_cast<int64_t>(out_adj[v].size()); }
    int64_t in_degree(int64_t v) const { return static_cast<int64_t>(in_adj[v].size()); }

    void validate() const;
};

// Deterministic generators. Same (params, seed) gives the same instance on
// every platform.
//
// skew=0 gives near-uniform set sizes; skew=1 gives Zipf(1) sizes, with the
// Zipf exponent interpolated linearly in between. total_size lands exactly
// on target_N (within the 10% contract). Rejects target_N > m*universe.
SetFamily gen_set_family(int64_t m, int64_t universe, int64_t target_n, double skew,
                         uint64_t seed);

// Returns the instance plus `planted` query targets, each guaranteed to have
// a witness tuple. Rejects value_bound small enough to force duplicate
// values in an array (2*value_bound + 1 < n).
std::pair<SumInstance, std::vector<int64_t>> gen_sum_instance(int64_t k, int64_t n,
                                                              int64_t value_bound,
                                                              int64_t planted, uint64_t seed);

// Uniform random simple directed graph with exactly m_edges edges.
Digraph gen_digraph(int64_t n, int64_t m_edges, uint64_t seed);

// JSON file round-trip: write(x) then read gives back x exactly. Reading is
// strict: files must already be in canonical form, anything else is a
// parse_error (malformed JSON) or validation_error (invariant violation).
void write_instance(const std::filesystem::path& path, const SetFamily& family);
void write_instance(const std::filesystem::path& path, const SumInstance& instance);
void write_instance(const std::filesystem::path& path, const Digraph& graph);

using AnyInstance = std::variant<SetFamily, SumInstance, Digraph>;
AnyInstance read_instance(const std::filesystem::path& path);

SetFamily read_set_family(const std::filesystem::path& path);
SumInstance read_sum_instance(const std::filesystem::path& path);
Digraph read_digraph(const std::filesystem::path& path);

// String forms of the same documents (used by tests and the CLI).
std::string instance_to_json(const SetFamily& family);
std::string instance_to_json(const SumInstance& instance);
std::string instance_to_json(const Digraph& graph);
AnyInstance instance_from_json(const std::string& text, const std::string& origin = "<string>");

}  // namespace sto
