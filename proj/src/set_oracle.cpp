#include "sto/set_oracle.hpp"

#include <algorithm>
#include <numeric>

namespace sto {

namespace {

uint64_t next_pow2(uint64_t x) {
    if (x <= 1) return 1;
    return uint64_t{1} << (64 - static_cast<uint32_t>(__builtin_clzll(x - 1)));
}

uint64_t mix(uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ull;
    return x ^ (x >> 33);
}

}  // namespace

MembershipTable::MembershipTable(const std::vector<int64_t>& values) {
    if (values.empty()) return;
    uint64_t n_slots = next_pow2(2 * values.size());
    slots_.assign(n_slots, kEmpty);
    mask_ = n_slots - 1;
    for (int64_t v : values) {
        uint64_t i = mix(static_cast<uint64_t>(v)) & mask_;
        while (slots_[i] != kEmpty) {
            if (slots_[i] == v) break;
            i = (i + 1) & mask_;
        }
        slots_[i] = v;
    }
}

bool MembershipTable::contains(int64_t x) const {
    if (slots_.empty()) return false;
    uint64_t i = mix(static_cast<uint64_t>(x)) & mask_;
    while (slots_[i] != kEmpty) {
        if (slots_[i] == x) return true;
        i = (i + 1) & mask_;
    }
    return false;
}

SetOracle& SetOracle::operator=(SetOracle&& o) noexcept {
    family_ = o.family_;
    k_ = o.k_;
    mode_ = o.mode_;
    f_ = o.f_;
    large_ids_ = std::move(o.large_ids_);
    rank_of_ = std::move(o.rank_of_);
    table_ = std::move(o.table_);
    pair_lists_ = std::move(o.pair_lists_);
    membership_ = std::move(o.membership_);
    size_ = std::move(o.size_);
    probe_count_.store(o.probe_count_.load(std::memory_order_relaxed),
                       std::memory_order_relaxed);
    return *this;
}

SetOracle SetOracle::build(const SetFamily& family, int k, int64_t target_time,
                           SetOracleMode mode, uint64_t word_budget) {
    if (k < 2) throw validation_error("set oracle: k must be >= 2");
    if (mode == SetOracleMode::intersection && k != 2)
        throw validation_error("set oracle: intersection mode is pairwise (k=2) only");
    const int64_t n_total = family.total_size;
    if (target_time < 1 || (n_total > 0 && target_time > n_total))
        throw validation_error("set oracle: target_T must be in [1, N]");

    SetOracle o;
    o.family_ = &family;
    o.k_ = k;
    o.mode_ = mode;

    const int64_t m = static_cast<int64_t>(family.size());
    // Inverts the O(kN/f) query bound; capped at m.
    int64_t f = std::min<int64_t>(m, (k * n_total + target_time - 1) / target_time);
    o.f_ = f;

    // f largest sets, ties broken by lower set index.
    std::vector<int32_t> order(static_cast<size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
        return family.set(static_cast<size_t>(a)).size() >
               family.set(static_cast<size_t>(b)).size();
    });
    o.large_ids_.assign(order.begin(), order.begin() + f);
    o.rank_of_.assign(static_cast<size_t>(m), -1);
    for (int64_t r = 0; r < f; ++r)
        o.rank_of_[static_cast<size_t>(o.large_ids_[static_cast<size_t>(r)])] =
            static_cast<int32_t>(r);

    uint64_t table_entries = 1;
    if (mode == SetOracleMode::disjointness) {
        bool saturated = false;
        for (int i = 0; i < k; ++i) {
            if (f != 0 && table_entries > UINT64_MAX / static_cast<uint64_t>(f)) {
                saturated = true;
                break;
            }
            table_entries *= static_cast<uint64_t>(f);
        }
        if (saturated || table_entries > word_budget)
            throw budget_error("set oracle: f^k table exceeds word budget",
                               saturated ? UINT64_MAX : table_entries, word_budget);
    }

    o.membership_.reserve(static_cast<size_t>(m));
    uint64_t membership_words = 0;
    for (int64_t i = 0; i < m; ++i) {
        o.membership_.emplace_back(family.set(static_cast<size_t>(i)));
        membership_words += o.membership_.back().words();
    }

    if (mode == SetOracleMode::disjointness) {
        o.table_.assign(f == 0 ? 0 : static_cast<size_t>(table_entries), 0);
        // Brute-force fill over all f^k large tuples via an odometer.
        std::vector<int64_t> ranks(static_cast<size_t>(k), 0);
        if (f > 0) {
            for (uint64_t cell = 0;; ++cell) {
                // Resolve ranks -> ids, iterate the smallest of the tuple.
                int32_t smallest = o.large_ids_[static_cast<size_t>(ranks[0])];
                for (int i = 1; i < k; ++i) {
                    int32_t id = o.large_ids_[static_cast<size_t>(ranks[static_cast<size_t>(i)])];
                    if (family.set(static_cast<size_t>(id)).size() <
                        family.set(static_cast<size_t>(smallest)).size())
                        smallest = id;
                }
                bool disjoint = true;
                for (int64_t x : family.set(static_cast<size_t>(smallest))) {
                    bool everywhere = true;
                    for (int i = 0; i < k && everywhere; ++i) {
                        int32_t id = o.large_ids_[static_cast<size_t>(ranks[static_cast<size_t>(i)])];
                        if (id == smallest) continue;
                        everywhere = o.membership_[static_cast<size_t>(id)].contains(x);
                    }
                    if (everywhere) {
                        disjoint = false;
                        break;
                    }
                }
                o.table_[cell] = disjoint ? 1 : 0;
                int i = k - 1;
                while (i >= 0 && ++ranks[static_cast<size_t>(i)] == f) {
                    ranks[static_cast<size_t>(i)] = 0;
                    --i;
                }
                if (i < 0) break;
            }
        }
    } else {
        o.pair_lists_.assign(static_cast<size_t>(f) * static_cast<size_t>(f), {});
        for (int64_t a = 0; a < f; ++a)
            for (int64_t b = 0; b < f; ++b)
                o.pair_lists_[static_cast<size_t>(a * f + b)] = brute_intersection(
                    family, o.large_ids_[static_cast<size_t>(a)],
                    o.large_ids_[static_cast<size_t>(b)]);
    }

    o.size_.add("large_ids", static_cast<uint64_t>(f));
    o.size_.add("rank_of", static_cast<uint64_t>(m));
    if (mode == SetOracleMode::disjointness) {
        o.size_.add("table", f == 0 ? 0 : table_entries);
    } else {
        uint64_t stored = 0;
        for (const auto& l : o.pair_lists_) stored += l.size();
        o.size_.add("table", stored + static_cast<uint64_t>(f) * static_cast<uint64_t>(f));
    }
    o.size_.add("membership", membership_words);
    return o;
}

void SetOracle::check_id(int32_t id) const {
    if (id < 0 || static_cast<size_t>(id) >= family_->size())
        throw validation_error("set oracle: invalid set id " + std::to_string(id));
}

bool SetOracle::probe_path_disjoint(std::span<const int32_t> ids) const {
    // Distinct ids only; iterate the smallest queried set, probing the rest.
    int32_t smallest = ids[0];
    for (int32_t id : ids)
        if (family_->set(static_cast<size_t>(id)).size() <
            family_->set(static_cast<size_t>(smallest)).size())
            smallest = id;
    for (int64_t x : family_->set(static_cast<size_t>(smallest))) {
        bool everywhere = true;
        for (int32_t id : ids) {
            if (id == smallest) continue;
            probe_count_.fetch_add(1, std::memory_order_relaxed);
            if (!membership_[static_cast<size_t>(id)].contains(x)) {
                everywhere = false;
                break;
            }
        }
        if (everywhere) return false;
    }
    return true;
}

bool SetOracle::query_disjoint(std::span<const int32_t> ids) const {
    if (static_cast<int>(ids.size()) != k_)
        throw validation_error("set oracle: expected exactly k set ids");
    bool all_large = true;
    for (int32_t id : ids) {
        check_id(id);
        all_large = all_large && is_large(id);
    }
    if (mode_ == SetOracleMode::disjointness && all_large) {
        uint64_t cell = 0;
        for (int32_t id : ids)
            cell = cell * static_cast<uint64_t>(f_) +
                   static_cast<uint64_t>(rank_of_[static_cast<size_t>(id)]);
        probe_count_.fetch_add(1, std::memory_order_relaxed);
        return table_[cell] != 0;
    }
    if (mode_ == SetOracleMode::intersection && all_large) {
        int64_t ra = rank_of_[static_cast<size_t>(ids[0])];
        int64_t rb = rank_of_[static_cast<size_t>(ids[1])];
        probe_count_.fetch_add(1, std::memory_order_relaxed);
        return pair_lists_[static_cast<size_t>(ra * f_ + rb)].empty();
    }
    // Small path: collapse duplicates before dispatch.
    std::vector<int32_t> distinct(ids.begin(), ids.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    return probe_path_disjoint(distinct);
}

std::vector<int64_t> SetOracle::enumerate_intersection(int32_t i, int32_t j) const {
    if (mode_ != SetOracleMode::intersection)
        throw validation_error("set oracle: not built in intersection mode");
    check_id(i);
    check_id(j);
    if (is_large(i) && is_large(j)) {
        int64_t ra = rank_of_[static_cast<size_t>(i)];
        int64_t rb = rank_of_[static_cast<size_t>(j)];
        probe_count_.fetch_add(1, std::memory_order_relaxed);
        return pair_lists_[static_cast<size_t>(ra * f_ + rb)];
    }
    const auto& si = family_->set(static_cast<size_t>(i));
    const auto& sj = family_->set(static_cast<size_t>(j));
    int32_t walk = si.size() <= sj.size() ? i : j;
    int32_t other = walk == i ? j : i;
    std::vector<int64_t> out;
    if (walk == other) return family_->set(static_cast<size_t>(walk));
    for (int64_t x : family_->set(static_cast<size_t>(walk))) {
        probe_count_.fetch_add(1, std::memory_order_relaxed);
        if (membership_[static_cast<size_t>(other)].contains(x)) out.push_back(x);
    }
    return out;
}

bool brute_disjoint(const SetFamily& family, std::span<const int32_t> ids) {
    if (ids.empty()) throw validation_error("brute_disjoint: no set ids");
    std::vector<int32_t> distinct(ids.begin(), ids.end());
    for (int32_t id : distinct)
        if (id < 0 || static_cast<size_t>(id) >= family.size())
            throw validation_error("brute_disjoint: invalid set id " + std::to_string(id));
    std::sort(distinct.begin(), distinct.end(), [&](int32_t a, int32_t b) {
        return family.set(static_cast<size_t>(a)).size() <
               family.set(static_cast<size_t>(b)).size();
    });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int64_t> current = family.set(static_cast<size_t>(distinct[0]));
    for (size_t i = 1; i < distinct.size() && !current.empty(); ++i) {
        const auto& next = family.set(static_cast<size_t>(distinct[i]));
        std::vector<int64_t> merged;
        std::set_intersection(current.begin(), current.end(), next.begin(), next.end(),
                              std::back_inserter(merged));
        current = std::move(merged);
    }
    return current.empty();
}

std::vector<int64_t> brute_intersection(const SetFamily& family, int32_t i, int32_t j) {
    if (i < 0 || static_cast<size_t>(i) >= family.size() || j < 0 ||
        static_cast<size_t>(j) >= family.size())
        throw validation_error("brute_intersection: invalid set id");
    const auto& a = family.set(static_cast<size_t>(i));
    const auto& b = family.set(static_cast<size_t>(j));
    std::vector<int64_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace sto
