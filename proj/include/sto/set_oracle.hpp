#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "sto/errors.hpp"
#include "sto/instances.hpp"
#include "sto/size_report.hpp"

namespace sto {

// Open-addressing membership table over int64 values, linear probing,
// power-of-two slots. Deterministic layout for a fixed input.
class MembershipTable {
  public:
    MembershipTable() = default;
    explicit MembershipTable(const std::vector<int64_t>& values);

    bool contains(int64_t x) const;
    uint64_t words() const { return slots_.size(); }

  private:
    static constexpr int64_t kEmpty = INT64_MIN;  // values must be > INT64_MIN
    std::vector<int64_t> slots_;
    uint64_t mask_ = 0;
};

enum class SetOracleMode { disjointness, intersection };

inline constexpr uint64_t kDefaultWordBudget = uint64_t{1} << 28;

// k-set-disjointness oracle with a tunable space/time knob. The f largest
// sets are "large": all f^k answers among them are precomputed; every other
// set has size at most N/f and is handled by brute-force membership probes.
// Intersection mode (k=2 only) stores the pairwise intersection lists of
// large pairs instead of a boolean table.
//
// Holds a reference to the family; the caller keeps it alive. Immutable
// after build, concurrent queries are safe.
class SetOracle {
  public:
    static SetOracle build(const SetFamily& family, int k, int64_t target_time,
                           SetOracleMode mode = SetOracleMode::disjointness,
                           uint64_t word_budget = kDefaultWordBudget);

    // True when the k queried sets have empty common intersection. Duplicate
    // ids are allowed (a set intersected with itself is itself).
    bool query_disjoint(std::span<const int32_t> ids) const;
    bool query_disjoint(std::initializer_list<int32_t> ids) const {
        return query_disjoint(std::span<const int32_t>(ids.begin(), ids.size()));
    }

    // Sorted list of common elements; intersection mode only.
    std::vector<int64_t> enumerate_intersection(int32_t i, int32_t j) const;

    const OracleSizeReport& size_words() const { return size_; }
    const SetFamily& family() const { return *family_; }
    int arity() const { return k_; }
    int64_t large_count() const { return f_; }
    bool is_large(int32_t id) const { return rank_of_[static_cast<size_t>(id)] >= 0; }

    // Instrumentation: membership lookups issued by queries since the last
    // reset. Build-time work is not counted.
    uint64_t probes() const { return probe_count_.load(std::memory_order_relaxed); }
    void reset_probes() const { probe_count_.store(0, std::memory_order_relaxed); }

  private:
    const SetFamily* family_ = nullptr;
    int k_ = 2;
    SetOracleMode mode_ = SetOracleMode::disjointness;
    int64_t f_ = 0;
    std::vector<int32_t> large_ids_;       // f largest sets, ties to lower index
    std::vector<int32_t> rank_of_;         // set id -> large rank, or -1 for small
    std::vector<uint8_t> table_;           // f^k disjointness answers
    std::vector<std::vector<int64_t>> pair_lists_;  // f^2 intersection lists
    std::vector<MembershipTable> membership_;
    OracleSizeReport size_;
    mutable std::atomic<uint64_t> probe_count_{0};

    void check_id(int32_t id) const;
    bool probe_path_disjoint(std::span<const int32_t> ids) const;

  public:
    SetOracle(SetOracle&& o) noexcept { *this = std::move(o); }
    SetOracle& operator=(SetOracle&& o) noexcept;
    SetOracle(const SetOracle&) = delete;
    SetOracle& operator=(const SetOracle&) = delete;
    SetOracle() = default;
};

// Reference oracles: direct sorted-merge computation, no preprocessing.
bool brute_disjoint(const SetFamily& family, std::span<const int32_t> ids);
inline bool brute_disjoint(const SetFamily& family, std::initializer_list<int32_t> ids) {
    return brute_disjoint(family, std::span<const int32_t>(ids.begin(), ids.size()));
}
std::vector<int64_t> brute_intersection(const SetFamily& family, int32_t i, int32_t j);

}  // namespace sto
