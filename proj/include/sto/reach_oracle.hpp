#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "sto/errors.hpp"
#include "sto/instances.hpp"
#include "sto/size_report.hpp"

namespace sto {

// Bounded-hop reachability oracle with a heavy/light degree split. Vertices
// with max(outdeg, indeg) > alpha are heavy; one boolean matrix per hop
// level 2..k answers heavy-to-heavy queries, everything else expands the
// light endpoint's neighborhood recursively (at most alpha branches per
// level). Level 1 is a hashed edge lookup.
//
// Holds a reference to the graph; immutable after build, concurrent queries
// are safe.
class ReachOracle {
  public:
    static ReachOracle build(const Digraph& graph, int k, int64_t alpha,
                             uint64_t word_budget = uint64_t{1} << 28);

    // Is there a directed path from u to v using at least 1 and at most k
    // edges? Throws validation_error for u == v (queries are over distinct
    // vertices) or out-of-range vertices.
    bool query(int64_t u, int64_t v) const;

    const OracleSizeReport& size_words() const { return size_; }
    const Digraph& graph() const { return *graph_; }
    int max_hops() const { return k_; }
    int64_t alpha() const { return alpha_; }
    int64_t heavy_count() const { return static_cast<int64_t>(heavy_.size()); }
    bool is_heavy(int64_t v) const { return heavy_rank_[static_cast<size_t>(v)] >= 0; }

    // Instrumentation: edge lookups + table reads + neighbor expansions.
    uint64_t probes() const { return probe_count_.load(std::memory_order_relaxed); }
    void reset_probes() const { probe_count_.store(0, std::memory_order_relaxed); }

  private:
    const Digraph* graph_ = nullptr;
    int k_ = 1;
    int64_t alpha_ = 1;
    std::vector<int64_t> heavy_;
    std::vector<int32_t> heavy_rank_;
    // levels_[l-2] is the |heavy|^2 matrix for "path of <= l edges".
    std::vector<std::vector<uint8_t>> levels_;
    std::vector<int64_t> edge_slots_;  // open addressing over u*n+v
    uint64_t edge_mask_ = 0;
    OracleSizeReport size_;
    mutable std::atomic<uint64_t> probe_count_{0};

    bool edge(int64_t u, int64_t v) const;
    bool reach_level(int64_t u, int64_t v, int level) const;

  public:
    ReachOracle() = default;
    ReachOracle(ReachOracle&& o) noexcept { *this = std::move(o); }
    ReachOracle& operator=(ReachOracle&& o) noexcept;
    ReachOracle(const ReachOracle&) = delete;
    ReachOracle& operator=(const ReachOracle&) = delete;
};

// Reference: breadth-first search truncated at depth k. False for u == v.
bool brute_reach(const Digraph& graph, int64_t u, int64_t v, int k);

}  // namespace sto
