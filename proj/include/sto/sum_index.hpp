#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <vector>

#include "sto/errors.hpp"
#include "sto/instances.hpp"
#include "sto/size_report.hpp"

namespace sto {

// One element picked from each array, with original positions. Always
// satisfies sum(values) == the queried z.
struct SumWitness {
    std::vector<int64_t> values;
    std::vector<int32_t> positions;
};

enum class SumIndexMode { full_table, linear };

// The two extremes of the (k+1)-SUM indexing space/time curve.
//   full_table: every one of the n^k k-wise sums, mapped to one witness
//               (the first in lexicographic position order); O(1) queries.
//   linear:     each array sorted separately, Theta(k*n) words; k=2 queries
//               run an opposite-direction two-pointer scan, k>=3 enumerates
//               the first k-2 arrays and scans the last two (O(n^{k-1})).
// Holds a reference to the instance; immutable after build.
class SumIndex {
  public:
    static SumIndex build(const SumInstance& instance, SumIndexMode mode,
                          uint64_t word_budget = uint64_t{1} << 28);

    std::optional<SumWitness> query(int64_t z) const;

    const OracleSizeReport& size_words() const { return size_; }
    SumIndexMode mode() const { return mode_; }
    uint64_t distinct_sums() const { return table_entries_; }

    // Instrumentation: full_table counts table lookups, linear counts
    // two-pointer comparisons.
    uint64_t probes() const { return probe_count_.load(std::memory_order_relaxed); }
    void reset_probes() const { probe_count_.store(0, std::memory_order_relaxed); }

  private:
    const SumInstance* instance_ = nullptr;
    SumIndexMode mode_ = SumIndexMode::linear;

    // full_table: open addressing sum -> packed position tuple.
    std::vector<int64_t> keys_;
    std::vector<uint64_t> packed_;
    std::vector<uint8_t> used_;
    uint64_t mask_ = 0;
    uint32_t pos_bits_ = 0;
    uint64_t table_entries_ = 0;

    // linear: arrays sorted by value with original index maps.
    std::vector<std::vector<std::pair<int64_t, int32_t>>> sorted_;

    OracleSizeReport size_;
    mutable std::atomic<uint64_t> probe_count_{0};

    std::optional<SumWitness> query_table(int64_t z) const;
    std::optional<SumWitness> query_linear(int64_t z) const;
    std::optional<SumWitness> two_pointer(int64_t target, size_t a, size_t b,
                                          SumWitness prefix) const;

  public:
    SumIndex() = default;
    SumIndex(SumIndex&& o) noexcept { *this = std::move(o); }
    SumIndex& operator=(SumIndex&& o) noexcept;
    SumIndex(const SumIndex&) = delete;
    SumIndex& operator=(const SumIndex&) = delete;
};

// Reference oracle: full n^k enumeration, first witness in lexicographic
// position order.
std::optional<SumWitness> brute_sum(const SumInstance& instance, int64_t z);

}  // namespace sto
