#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sto/errors.hpp"
#include "sto/hashing.hpp"
#include "sto/instances.hpp"
#include "sto/reach_oracle.hpp"
#include "sto/set_oracle.hpp"
#include "sto/sum_index.hpp"

namespace sto {

// Bit packing used by the disjointness -> sum-indexing reductions. An
// encoded word is, from the least significant bit up: k-1 value blocks of
// value_bits+1 bits (top bit of each block is a carry guard), then k id
// blocks of id_bits+1 bits. Set ids are stored 1-based inside their fields,
// the all-zeros field is reserved as invalid.
struct BitLayout {
    int k = 2;               // number of arrays in the target instance
    uint32_t value_bits = 0; // per value block
    uint32_t id_bits = 0;    // per id block
    uint32_t total_bits = 0; // (k-1)*(value_bits+1) + k*(id_bits+1)
    int64_t max_value = 0;   // M, the largest element in the family

    uint32_t value_offset(int block) const {
        return static_cast<uint32_t>(block) * (value_bits + 1);
    }
    uint32_t id_offset(int block) const {
        return static_cast<uint32_t>(k - 1) * (value_bits + 1) +
               static_cast<uint32_t>(block) * (id_bits + 1);
    }
};

struct SumReduction {
    SumInstance instance;
    BitLayout layout;
};

// Pairwise reduction: one entry per (element, containing set) occurrence in
// each array; a query integer encodes (M, i, j) so that a witness exists iff
// S_i and S_j share an element.
SumReduction sd_to_3sumi(const SetFamily& family);
int64_t encode_sd_query(const BitLayout& layout, int32_t i, int32_t j);

// Field extraction, for checking that queries decode back to (M, i, j).
struct DecodedQuery {
    int64_t value;
    std::vector<int32_t> ids;  // 0-based
};
DecodedQuery decode_query(const BitLayout& layout, int64_t z);

// k-wise generalization: array 0 entries repeat M-x in every value block,
// array a>0 entries carry x in value block a-1; each array marks its own id
// block. A query writes M into every value block, so the k blocks solve the
// equations (M-x_1)+x_a = M, which forces one common element.
SumReduction ksd_to_k1sumi(const SetFamily& family, int k);
int64_t encode_ksd_query(const BitLayout& layout, std::span<const int32_t> ids);

// ---------------------------------------------------------------------------
// Randomized reduction from pairwise sum indexing to set disjointness /
// intersection. A1/A2 are bucketed by an almost-linear hash h1 into R
// buckets; each bucket spawns sqrt(Q) shifted sets under a second hash h2
// onto [Q], so that one disjointness query per (high, low) split of h2(z)
// detects candidate buckets. Elements of overfull buckets (> 3n/R) are kept
// in explicit overflow lists with lookup tables over the full arrays.
// Decision variant: ~log2(n) independent h2 rounds drive the false-positive
// rate down, then an O(n/R) bucket scan confirms a real witness.
// Reporting variant: a single h2 with a larger range; every reported slot is
// verified directly against z.
struct HashedSDInstance {
    int64_t n = 0;
    int64_t R = 1;
    int64_t Q = 1;
    int64_t sqrt_q = 1;
    int64_t bucket_cap = 0;  // 3n/R
    AlmostLinearHash h1;
    std::vector<AlmostLinearHash> h2_list;
    SetFamily shifted;  // all rounds' B_{i,j} then C_{i,j} sets
    std::vector<std::vector<int64_t>> bucket_a, bucket_b;  // kept bucket contents
    std::vector<int64_t> overflow_a, overflow_b;
    MembershipTable member_a, member_b;

    // Set ids inside `shifted`: round-major, B side before C side.
    int32_t set_id(size_t round, bool c_side, int64_t bucket, int64_t shift) const {
        int64_t per_side = R * sqrt_q;
        return static_cast<int32_t>(static_cast<int64_t>(round) * 2 * per_side +
                                    (c_side ? per_side : 0) + bucket * sqrt_q + shift);
    }
};

HashedSDInstance threesumi_to_sd(const SumInstance& instance, double gamma, uint64_t seed);
HashedSDInstance threesumi_to_si(const SumInstance& instance, double gamma, double delta,
                                 uint64_t seed);

struct SumQueryStats {
    uint64_t sd_queries = 0;            // disjointness queries issued
    uint64_t scans_triggered = 0;       // bucket verification scans (decision variant)
    uint64_t candidates_enumerated = 0; // elements reported by intersections (reporting)
};

// Exact answers; the verification steps remove all hashing false positives.
// The oracle must be built over red.shifted (disjointness mode for the
// decision variant, intersection mode for the reporting variant).
bool answer_3sumi_via_sd(const HashedSDInstance& red, int64_t z, const SetOracle& oracle,
                         SumQueryStats* stats = nullptr);
bool answer_3sumi_via_si(const HashedSDInstance& red, int64_t z, const SetOracle& oracle,
                         SumQueryStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Set disjointness <-> 2-hop reachability, size-preserving both ways.

struct SdReachInstance {
    Digraph graph;                        // vertex i < m is set i, then elements
    int64_t set_count = 0;                // m
    std::vector<int64_t> element_values;  // sorted distinct elements; value j at vertex m+j
};
SdReachInstance sd_to_2reach(const SetFamily& family);

// disjoint(S_i, S_j) == !reach2(v_i, v_j); the i == j diagonal cannot be a
// reachability query (distinct vertices), S_i is disjoint from itself iff
// it is empty, i.e. v_i has no out-edges.
bool answer_sd_via_2reach(const SdReachInstance& red, const ReachOracle& oracle, int32_t i,
                          int32_t j);

struct ReachSdInstance {
    SetFamily family;  // out-set of v at id v (includes v), in-set of v at id n+v
    int64_t vertex_count = 0;
};
ReachSdInstance tworeach_to_sd(const Digraph& graph);

bool answer_2reach_via_sd(const ReachSdInstance& red, const SetOracle& oracle, int64_t u,
                          int64_t v);

// ---------------------------------------------------------------------------
// Boolean matrix multiplication <-> set disjointness.

struct BoolMatrix {
    int64_t n = 0;
    std::vector<uint8_t> cells;  // row-major

    static BoolMatrix zeros(int64_t n) {
        BoolMatrix m;
        m.n = n;
        m.cells.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
        return m;
    }
    static BoolMatrix identity(int64_t n) {
        BoolMatrix m = zeros(n);
        for (int64_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }
    bool at(int64_t i, int64_t j) const {
        return cells[static_cast<size_t>(i * n + j)] != 0;
    }
    void set(int64_t i, int64_t j, bool v) {
        cells[static_cast<size_t>(i * n + j)] = v ? 1 : 0;
    }
};

struct BmmSdInstance {
    SetFamily family;  // set i = ones of row i of A, set n+j = ones of column j of B
    int64_t n = 0;
};
BmmSdInstance bmm_to_sd(const BoolMatrix& a, const BoolMatrix& b);

struct SdBmmInstance {
    BoolMatrix a;
    BoolMatrix b;                         // A transposed
    int64_t rows = 0;                     // original m (rows of A in use)
    std::vector<int64_t> element_columns; // sorted distinct elements; column index = position
};
SdBmmInstance sd_to_bmm(const SetFamily& family);

}  // namespace sto
