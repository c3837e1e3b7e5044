#include "sto/reductions.hpp"

#include <algorithm>
#include <cmath>

#include "sto/rng.hpp"

namespace sto {

namespace {

uint32_t ceil_log2(uint64_t x) {
    uint32_t b = 0;
    while ((uint64_t{1} << b) < x) ++b;
    return b;
}

uint32_t bit_width_u64(uint64_t x) {
    uint32_t b = 0;
    while (x > 0) {
        ++b;
        x >>= 1;
    }
    return b;
}

int64_t family_max_element(const SetFamily& f) {
    int64_t m = 0;
    for (const auto& s : f.sets)
        if (!s.empty()) m = std::max(m, s.back());
    return m;
}

BitLayout make_layout(const SetFamily& family, int k) {
    BitLayout l;
    l.k = k;
    l.max_value = family_max_element(family);
    const uint64_t n_total = static_cast<uint64_t>(family.total_size);
    // The value field must hold both M and N-scale values; block sums reach
    // 2M and must stay under the carry guard.
    l.value_bits = std::max(ceil_log2(std::max<uint64_t>(n_total, 2)),
                            bit_width_u64(static_cast<uint64_t>(l.max_value)));
    if (l.value_bits == 0) l.value_bits = 1;
    // 1-based ids: m itself must fit, so bit_width(m) rather than ceil(log m).
    l.id_bits = bit_width_u64(family.size());
    l.total_bits = static_cast<uint32_t>(k - 1) * (l.value_bits + 1) +
                   static_cast<uint32_t>(k) * (l.id_bits + 1);
    if (l.total_bits > 63)
        throw validation_error("bit layout: " + std::to_string(l.total_bits) +
                               " bits exceed the 63-bit word limit");
    return l;
}

}  // namespace

DecodedQuery decode_query(const BitLayout& layout, int64_t z) {
    DecodedQuery d;
    const uint64_t uz = static_cast<uint64_t>(z);
    d.value = static_cast<int64_t>((uz >> layout.value_offset(0)) &
                                   ((uint64_t{1} << layout.value_bits) - 1));
    for (int b = 0; b < layout.k; ++b) {
        uint64_t field =
            (uz >> layout.id_offset(b)) & ((uint64_t{1} << layout.id_bits) - 1);
        d.ids.push_back(static_cast<int32_t>(field) - 1);
    }
    return d;
}

SumReduction sd_to_3sumi(const SetFamily& family) {
    SumReduction red;
    red.layout = make_layout(family, 2);
    const BitLayout& l = red.layout;

    std::vector<int64_t> a1, a2;
    a1.reserve(static_cast<size_t>(family.total_size));
    a2.reserve(static_cast<size_t>(family.total_size));
    for (size_t i = 0; i < family.size(); ++i) {
        const uint64_t id = static_cast<uint64_t>(i) + 1;
        for (int64_t x : family.set(i)) {
            a1.push_back(static_cast<int64_t>(static_cast<uint64_t>(x) |
                                              (id << l.id_offset(0))));
            a2.push_back(static_cast<int64_t>(static_cast<uint64_t>(l.max_value - x) |
                                              (id << l.id_offset(1))));
        }
    }
    red.instance = SumInstance::from_arrays({std::move(a1), std::move(a2)});
    return red;
}

int64_t encode_sd_query(const BitLayout& layout, int32_t i, int32_t j) {
    if (i < 0 || j < 0 || static_cast<uint64_t>(i) + 1 >= (uint64_t{1} << (layout.id_bits + 1)) ||
        static_cast<uint64_t>(j) + 1 >= (uint64_t{1} << (layout.id_bits + 1)))
        throw validation_error("encode_sd_query: set index out of field range");
    uint64_t z = static_cast<uint64_t>(layout.max_value);
    z |= (static_cast<uint64_t>(i) + 1) << layout.id_offset(0);
    z |= (static_cast<uint64_t>(j) + 1) << layout.id_offset(1);
    return static_cast<int64_t>(z);
}

SumReduction ksd_to_k1sumi(const SetFamily& family, int k) {
    if (k < 2) throw validation_error("ksd_to_k1sumi: k must be >= 2");
    SumReduction red;
    red.layout = make_layout(family, k);
    const BitLayout& l = red.layout;

    std::vector<std::vector<int64_t>> arrays(static_cast<size_t>(k));
    for (auto& a : arrays) a.reserve(static_cast<size_t>(family.total_size));
    for (size_t i = 0; i < family.size(); ++i) {
        const uint64_t id = static_cast<uint64_t>(i) + 1;
        for (int64_t x : family.set(i)) {
            for (int arr = 0; arr < k; ++arr) {
                uint64_t word = id << l.id_offset(arr);
                if (arr == 0) {
                    for (int b = 0; b < k - 1; ++b)
                        word |= static_cast<uint64_t>(l.max_value - x) << l.value_offset(b);
                } else {
                    word |= static_cast<uint64_t>(x) << l.value_offset(arr - 1);
                }
                arrays[static_cast<size_t>(arr)].push_back(static_cast<int64_t>(word));
            }
        }
    }
    red.instance = SumInstance::from_arrays(std::move(arrays));
    return red;
}

int64_t encode_ksd_query(const BitLayout& layout, std::span<const int32_t> ids) {
    if (static_cast<int>(ids.size()) != layout.k)
        throw validation_error("encode_ksd_query: expected exactly k set indices");
    uint64_t z = 0;
    for (int b = 0; b < layout.k - 1; ++b)
        z |= static_cast<uint64_t>(layout.max_value) << layout.value_offset(b);
    for (int b = 0; b < layout.k; ++b) {
        int32_t id = ids[static_cast<size_t>(b)];
        if (id < 0 || static_cast<uint64_t>(id) + 1 >= (uint64_t{1} << (layout.id_bits + 1)))
            throw validation_error("encode_ksd_query: set index out of field range");
        z |= (static_cast<uint64_t>(id) + 1) << layout.id_offset(b);
    }
    return static_cast<int64_t>(z);
}

// --------------------------------------------------------- hashed reduction

namespace {

uint32_t bucket_bits_for(double gamma, int64_t n) {
    uint32_t r_bits = static_cast<uint32_t>(
        std::ceil(gamma * std::log2(static_cast<double>(n)) - 1e-9));
    return r_bits < 1 ? 1 : r_bits;
}

HashedSDInstance hashed_instance_common(const SumInstance& instance, uint32_t r_bits,
                                        uint32_t s_bits, size_t rounds, uint64_t seed) {
    const int64_t n = static_cast<int64_t>(instance.n());
    HashedSDInstance red;
    red.n = n;
    red.R = int64_t{1} << r_bits;

    if (s_bits < 1) s_bits = 1;
    if (2 * s_bits > 62) throw validation_error("hashed reduction: instance too large");
    red.sqrt_q = int64_t{1} << s_bits;
    red.Q = red.sqrt_q * red.sqrt_q;

    Rng seeder(seed);
    red.h1 = sample_hash(r_bits, seeder.next());
    red.h2_list.reserve(rounds);
    for (size_t i = 0; i < rounds; ++i) red.h2_list.push_back(sample_hash(2 * s_bits, seeder.next()));

    red.bucket_cap = 3 * n / red.R;
    red.bucket_a.assign(static_cast<size_t>(red.R), {});
    red.bucket_b.assign(static_cast<size_t>(red.R), {});
    for (int64_t x : instance.arrays[0])
        red.bucket_a[red.h1(static_cast<uint64_t>(x))].push_back(x);
    for (int64_t y : instance.arrays[1])
        red.bucket_b[red.h1(static_cast<uint64_t>(y))].push_back(y);
    for (auto& b : red.bucket_a) {
        if (static_cast<int64_t>(b.size()) > red.bucket_cap) {
            red.overflow_a.insert(red.overflow_a.end(), b.begin(), b.end());
            b.clear();
        }
    }
    for (auto& b : red.bucket_b) {
        if (static_cast<int64_t>(b.size()) > red.bucket_cap) {
            red.overflow_b.insert(red.overflow_b.end(), b.begin(), b.end());
            b.clear();
        }
    }
    red.member_a = MembershipTable(instance.arrays[0]);
    red.member_b = MembershipTable(instance.arrays[1]);

    // Shifted sets: B_{i,j} = { h2(x) - j*sqrtQ mod Q }, C_{i,j} = { j - h2(y) mod Q }.
    const uint64_t q_mask = static_cast<uint64_t>(red.Q) - 1;
    std::vector<std::vector<int64_t>> sets(rounds * 2 * static_cast<size_t>(red.R) *
                                           static_cast<size_t>(red.sqrt_q));
    for (size_t round = 0; round < rounds; ++round) {
        const AlmostLinearHash& h2 = red.h2_list[round];
        for (int64_t i = 0; i < red.R; ++i) {
            for (int64_t j = 0; j < red.sqrt_q; ++j) {
                auto& bs = sets[static_cast<size_t>(red.set_id(round, false, i, j))];
                bs.reserve(red.bucket_a[static_cast<size_t>(i)].size());
                for (int64_t x : red.bucket_a[static_cast<size_t>(i)]) {
                    uint64_t v = (h2(static_cast<uint64_t>(x)) -
                                  static_cast<uint64_t>(j) * static_cast<uint64_t>(red.sqrt_q)) &
                                 q_mask;
                    bs.push_back(static_cast<int64_t>(v));
                }
                auto& cs = sets[static_cast<size_t>(red.set_id(round, true, i, j))];
                cs.reserve(red.bucket_b[static_cast<size_t>(i)].size());
                for (int64_t y : red.bucket_b[static_cast<size_t>(i)]) {
                    uint64_t v = (static_cast<uint64_t>(j) - h2(static_cast<uint64_t>(y))) & q_mask;
                    cs.push_back(static_cast<int64_t>(v));
                }
            }
        }
    }
    red.shifted = SetFamily::from_sets(std::move(sets));
    red.shifted.universe_bound = red.Q;
    return red;
}

}  // namespace

HashedSDInstance threesumi_to_sd(const SumInstance& instance, double gamma, uint64_t seed) {
    if (instance.k() != 2) throw validation_error("threesumi_to_sd: pairwise instances only");
    if (instance.n() < 2) throw validation_error("threesumi_to_sd: n must be >= 2");
    if (gamma <= 0.0 || gamma >= 1.0)
        throw validation_error("threesumi_to_sd: gamma must be in (0,1)");
    const int64_t n = static_cast<int64_t>(instance.n());
    const uint32_t r_bits = bucket_bits_for(gamma, n);
    const int64_t r = int64_t{1} << r_bits;
    const size_t rounds = static_cast<size_t>(
        std::ceil(std::log2(static_cast<double>(std::max<int64_t>(n, 2)))));
    // sqrt(Q) snaps to the power of two closest to 5n/R; the per-round
    // false-positive rate stays below 1 and the shifted family stays within
    // 8 * log2(n) * n^2/R elements.
    const uint32_t s_bits = static_cast<uint32_t>(std::max<int64_t>(
        1, std::llround(std::log2(5.0 * static_cast<double>(n) / static_cast<double>(r)))));
    return hashed_instance_common(instance, r_bits, s_bits, rounds, seed);
}

HashedSDInstance threesumi_to_si(const SumInstance& instance, double gamma, double delta,
                                 uint64_t seed) {
    if (instance.k() != 2) throw validation_error("threesumi_to_si: pairwise instances only");
    if (instance.n() < 2) throw validation_error("threesumi_to_si: n must be >= 2");
    if (gamma <= 0.0 || gamma >= 1.0)
        throw validation_error("threesumi_to_si: gamma must be in (0,1)");
    if (delta <= 0.0) throw validation_error("threesumi_to_si: delta must be > 0");
    const double n = static_cast<double>(instance.n());
    const uint32_t r_bits = bucket_bits_for(gamma, static_cast<int64_t>(instance.n()));
    // Q is the smallest even power of two at least n^{1+delta} / R.
    const double q_target = std::pow(n, 1.0 + delta) / std::exp2(r_bits);
    const uint32_t s_bits = static_cast<uint32_t>(
        std::max(1.0, std::ceil(0.5 * std::log2(q_target) - 1e-9)));
    return hashed_instance_common(instance, r_bits, s_bits, 1, seed);
}

namespace {

// Both t and t-1 (mod Q) are tried when splitting the h2 target, and both
// h1(z)-i and h1(z)-i-1 for the partner bucket: the multiply-shift family
// satisfies h(x)+h(y) = h(x+y) - carry with carry in {0,1}.
struct SplitTargets {
    int64_t t[2];
};

SplitTargets h2_targets(const HashedSDInstance& red, const AlmostLinearHash& h2, int64_t z) {
    const uint64_t q_mask = static_cast<uint64_t>(red.Q) - 1;
    const uint64_t base = h2(static_cast<uint64_t>(z));
    return {{static_cast<int64_t>(base), static_cast<int64_t>((base - 1) & q_mask)}};
}

bool scan_overflow(const HashedSDInstance& red, int64_t z) {
    for (int64_t e : red.overflow_a)
        if (red.member_b.contains(z - e)) return true;
    for (int64_t e : red.overflow_b)
        if (red.member_a.contains(z - e)) return true;
    return false;
}

void check_oracle(const HashedSDInstance& red, const SetOracle& oracle) {
    if (&oracle.family() != &red.shifted)
        throw validation_error("hashed reduction: oracle was not built over this shifted family");
}

}  // namespace

bool answer_3sumi_via_sd(const HashedSDInstance& red, int64_t z, const SetOracle& oracle,
                         SumQueryStats* stats) {
    check_oracle(red, oracle);
    SumQueryStats local;
    SumQueryStats& st = stats ? *stats : local;

    if (scan_overflow(red, z)) return true;

    const uint64_t r_mask = static_cast<uint64_t>(red.R) - 1;
    const uint64_t h1z = red.h1(static_cast<uint64_t>(z));
    std::vector<SplitTargets> per_round;
    per_round.reserve(red.h2_list.size());
    for (const auto& h2 : red.h2_list) per_round.push_back(h2_targets(red, h2, z));
    for (int64_t i = 0; i < red.R; ++i) {
        for (int carry1 = 0; carry1 < 2; ++carry1) {
            const int64_t i2 = static_cast<int64_t>(
                (h1z - static_cast<uint64_t>(carry1) - static_cast<uint64_t>(i)) & r_mask);
            bool alive = true;
            for (size_t round = 0; round < red.h2_list.size() && alive; ++round) {
                const SplitTargets& targets = per_round[round];
                bool hit = false;
                for (int c = 0; c < 2 && !hit; ++c) {
                    const int64_t hi = targets.t[c] / red.sqrt_q;
                    const int64_t lo = targets.t[c] % red.sqrt_q;
                    ++st.sd_queries;
                    hit = !oracle.query_disjoint({red.set_id(round, false, i, hi),
                                                  red.set_id(round, true, i2, lo)});
                }
                alive = hit;
            }
            if (!alive) continue;
            // Candidate bucket pair survived every round: verify for real.
            ++st.scans_triggered;
            for (int64_t x : red.bucket_a[static_cast<size_t>(i)])
                if (red.member_b.contains(z - x)) return true;
        }
    }
    return false;
}

bool answer_3sumi_via_si(const HashedSDInstance& red, int64_t z, const SetOracle& oracle,
                         SumQueryStats* stats) {
    check_oracle(red, oracle);
    SumQueryStats local;
    SumQueryStats& st = stats ? *stats : local;
    if (red.h2_list.size() != 1)
        throw validation_error("answer_3sumi_via_si: reporting variant uses a single h2");

    if (scan_overflow(red, z)) return true;

    const AlmostLinearHash& h2 = red.h2_list[0];
    const uint64_t r_mask = static_cast<uint64_t>(red.R) - 1;
    const uint64_t q_mask = static_cast<uint64_t>(red.Q) - 1;
    const uint64_t h1z = red.h1(static_cast<uint64_t>(z));
    for (int64_t i = 0; i < red.R; ++i) {
        const auto& bucket = red.bucket_a[static_cast<size_t>(i)];
        for (int carry1 = 0; carry1 < 2; ++carry1) {
            const int64_t i2 = static_cast<int64_t>(
                (h1z - static_cast<uint64_t>(carry1) - static_cast<uint64_t>(i)) & r_mask);
            const SplitTargets targets = h2_targets(red, h2, z);
            for (int c = 0; c < 2; ++c) {
                const int64_t hi = targets.t[c] / red.sqrt_q;
                const int64_t lo = targets.t[c] % red.sqrt_q;
                ++st.sd_queries;
                auto common = oracle.enumerate_intersection(red.set_id(0, false, i, hi),
                                                            red.set_id(0, true, i2, lo));
                st.candidates_enumerated += common.size();
                for (int64_t slot : common) {
                    // Preimages on the A1 side of this slot, verified directly.
                    const uint64_t want =
                        (static_cast<uint64_t>(slot) +
                         static_cast<uint64_t>(hi) * static_cast<uint64_t>(red.sqrt_q)) &
                        q_mask;
                    for (int64_t x : bucket) {
                        if (h2(static_cast<uint64_t>(x)) == want &&
                            red.member_b.contains(z - x))
                            return true;
                    }
                }
            }
        }
    }
    return false;
}

// ------------------------------------------------- 2-reachability reduction

SdReachInstance sd_to_2reach(const SetFamily& family) {
    SdReachInstance red;
    red.set_count = static_cast<int64_t>(family.size());
    for (const auto& s : family.sets)
        red.element_values.insert(red.element_values.end(), s.begin(), s.end());
    std::sort(red.element_values.begin(), red.element_values.end());
    red.element_values.erase(
        std::unique(red.element_values.begin(), red.element_values.end()),
        red.element_values.end());

    const int64_t n_vertices = red.set_count + static_cast<int64_t>(red.element_values.size());
    std::vector<std::pair<int64_t, int64_t>> edges;
    edges.reserve(2 * static_cast<size_t>(family.total_size));
    for (size_t i = 0; i < family.size(); ++i) {
        for (int64_t x : family.set(i)) {
            const int64_t u = red.set_count +
                              (std::lower_bound(red.element_values.begin(),
                                                red.element_values.end(), x) -
                               red.element_values.begin());
            edges.emplace_back(static_cast<int64_t>(i), u);
            edges.emplace_back(u, static_cast<int64_t>(i));
        }
    }
    red.graph = Digraph::from_edges(n_vertices, std::move(edges));
    return red;
}

bool answer_sd_via_2reach(const SdReachInstance& red, const ReachOracle& oracle, int32_t i,
                          int32_t j) {
    if (i < 0 || j < 0 || i >= red.set_count || j >= red.set_count)
        throw validation_error("answer_sd_via_2reach: set index out of range");
    if (i == j) return red.graph.out_degree(i) == 0;
    return !oracle.query(i, j);
}

ReachSdInstance tworeach_to_sd(const Digraph& graph) {
    if (graph.n < 1) throw validation_error("tworeach_to_sd: graph must have vertices");
    ReachSdInstance red;
    red.vertex_count = graph.n;
    std::vector<std::vector<int64_t>> sets(2 * static_cast<size_t>(graph.n));
    for (int64_t v = 0; v < graph.n; ++v) {
        auto out = graph.out_adj[static_cast<size_t>(v)];
        out.push_back(v);
        sets[static_cast<size_t>(v)] = std::move(out);
        sets[static_cast<size_t>(graph.n + v)] = graph.in_adj[static_cast<size_t>(v)];
    }
    red.family = SetFamily::from_sets(std::move(sets));
    return red;
}

bool answer_2reach_via_sd(const ReachSdInstance& red, const SetOracle& oracle, int64_t u,
                          int64_t v) {
    if (u < 0 || v < 0 || u >= red.vertex_count || v >= red.vertex_count)
        throw validation_error("answer_2reach_via_sd: vertex out of range");
    if (u == v) throw validation_error("answer_2reach_via_sd: distinct vertices required");
    return !oracle.query_disjoint(
        {static_cast<int32_t>(u), static_cast<int32_t>(red.vertex_count + v)});
}

// ------------------------------------------------------------ BMM reduction

BmmSdInstance bmm_to_sd(const BoolMatrix& a, const BoolMatrix& b) {
    if (a.n != b.n) throw validation_error("bmm_to_sd: dimension mismatch");
    BmmSdInstance red;
    red.n = a.n;
    std::vector<std::vector<int64_t>> sets(2 * static_cast<size_t>(a.n));
    for (int64_t i = 0; i < a.n; ++i)
        for (int64_t j = 0; j < a.n; ++j) {
            if (a.at(i, j)) sets[static_cast<size_t>(i)].push_back(j);
            if (b.at(i, j)) sets[static_cast<size_t>(a.n + j)].push_back(i);
        }
    red.family = SetFamily::from_sets(std::move(sets));
    return red;
}

SdBmmInstance sd_to_bmm(const SetFamily& family) {
    SdBmmInstance red;
    red.rows = static_cast<int64_t>(family.size());
    for (const auto& s : family.sets)
        red.element_columns.insert(red.element_columns.end(), s.begin(), s.end());
    std::sort(red.element_columns.begin(), red.element_columns.end());
    red.element_columns.erase(
        std::unique(red.element_columns.begin(), red.element_columns.end()),
        red.element_columns.end());

    const int64_t dim = std::max<int64_t>(
        {family.total_size, red.rows, static_cast<int64_t>(red.element_columns.size()), 1});
    red.a = BoolMatrix::zeros(dim);
    for (size_t i = 0; i < family.size(); ++i) {
        for (int64_t x : family.set(i)) {
            const int64_t col = std::lower_bound(red.element_columns.begin(),
                                                 red.element_columns.end(), x) -
                                red.element_columns.begin();
            red.a.set(static_cast<int64_t>(i), col, true);
        }
    }
    red.b = BoolMatrix::zeros(dim);
    for (int64_t i = 0; i < dim; ++i)
        for (int64_t j = 0; j < dim; ++j)
            if (red.a.at(i, j)) red.b.set(j, i, true);
    return red;
}

}  // namespace sto
