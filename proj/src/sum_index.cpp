#include "sto/sum_index.hpp"

#include <algorithm>
#include <cassert>

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

uint32_t bit_width_u64(uint64_t x) {
    uint32_t b = 0;
    while (x > 0) {
        ++b;
        x >>= 1;
    }
    return b;
}

void check_witness(const SumWitness& w, const SumInstance& inst, int64_t z) {
    int64_t sum = 0;
    for (size_t i = 0; i < w.values.size(); ++i) {
        sum += w.values[i];
        assert(inst.arrays[i][static_cast<size_t>(w.positions[i])] == w.values[i]);
    }
    (void)inst;
    if (sum != z) throw validation_error("sum index: internal witness does not sum to z");
}

}  // namespace

SumIndex& SumIndex::operator=(SumIndex&& o) noexcept {
    instance_ = o.instance_;
    mode_ = o.mode_;
    keys_ = std::move(o.keys_);
    packed_ = std::move(o.packed_);
    used_ = std::move(o.used_);
    mask_ = o.mask_;
    pos_bits_ = o.pos_bits_;
    table_entries_ = o.table_entries_;
    sorted_ = std::move(o.sorted_);
    size_ = std::move(o.size_);
    probe_count_.store(o.probe_count_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    return *this;
}

SumIndex SumIndex::build(const SumInstance& instance, SumIndexMode mode, uint64_t word_budget) {
    instance.validate();
    SumIndex idx;
    idx.instance_ = &instance;
    idx.mode_ = mode;
    const size_t k = instance.k();
    const size_t n = instance.n();

    if (mode == SumIndexMode::linear) {
        idx.sorted_.resize(k);
        for (size_t a = 0; a < k; ++a) {
            auto& s = idx.sorted_[a];
            s.reserve(n);
            for (size_t i = 0; i < n; ++i)
                s.emplace_back(instance.arrays[a][i], static_cast<int32_t>(i));
            std::sort(s.begin(), s.end());
        }
        idx.size_.add("sorted_arrays", 2 * static_cast<uint64_t>(k) * static_cast<uint64_t>(n));
        return idx;
    }

    // full_table: n^k entries before deduplication.
    uint64_t combos = 1;
    for (size_t i = 0; i < k; ++i) {
        if (n != 0 && combos > word_budget / n)
            throw budget_error("sum index: n^k table exceeds word budget", combos * n,
                               word_budget);
        combos *= n;
    }
    if (combos > word_budget)
        throw budget_error("sum index: n^k table exceeds word budget", combos, word_budget);

    idx.pos_bits_ = n <= 1 ? 1 : bit_width_u64(n - 1);
    if (static_cast<uint64_t>(idx.pos_bits_) * k > 64)
        throw budget_error("sum index: packed position tuple exceeds 64 bits", combos,
                           word_budget);

    const uint64_t n_slots = next_pow2(2 * combos);
    idx.keys_.assign(n_slots, 0);
    idx.packed_.assign(n_slots, 0);
    idx.used_.assign(n_slots, 0);
    idx.mask_ = n_slots - 1;

    std::vector<size_t> pos(k, 0);
    uint64_t stored = 0;
    for (; n > 0;) {
        int64_t sum = 0;
        uint64_t packed = 0;
        for (size_t a = 0; a < k; ++a) {
            sum += instance.arrays[a][pos[a]];
            packed = (packed << idx.pos_bits_) | pos[a];
        }
        uint64_t slot = mix(static_cast<uint64_t>(sum)) & idx.mask_;
        for (;;) {
            if (!idx.used_[slot]) {
                idx.used_[slot] = 1;
                idx.keys_[slot] = sum;
                idx.packed_[slot] = packed;  // first lexicographic position tuple wins
                ++stored;
                break;
            }
            if (idx.keys_[slot] == sum) break;
            slot = (slot + 1) & idx.mask_;
        }
        size_t a = k;
        while (a > 0 && ++pos[a - 1] == n) pos[--a] = 0;
        if (a == 0) break;
    }
    idx.table_entries_ = stored;
    // Two words per slot (key + packed positions); slot count dominates.
    idx.size_.add("table_slots", 2 * n_slots);
    return idx;
}

std::optional<SumWitness> SumIndex::query(int64_t z) const {
    auto w = mode_ == SumIndexMode::full_table ? query_table(z) : query_linear(z);
    if (w) check_witness(*w, *instance_, z);
    return w;
}

std::optional<SumWitness> SumIndex::query_table(int64_t z) const {
    probe_count_.fetch_add(1, std::memory_order_relaxed);
    uint64_t slot = mix(static_cast<uint64_t>(z)) & mask_;
    while (used_[slot]) {
        if (keys_[slot] == z) {
            const size_t k = instance_->k();
            SumWitness w;
            w.positions.resize(k);
            w.values.resize(k);
            uint64_t packed = packed_[slot];
            for (size_t a = k; a-- > 0;) {
                w.positions[a] = static_cast<int32_t>(packed & ((uint64_t{1} << pos_bits_) - 1));
                packed >>= pos_bits_;
                w.values[a] = instance_->arrays[a][static_cast<size_t>(w.positions[a])];
            }
            return w;
        }
        slot = (slot + 1) & mask_;
    }
    return std::nullopt;
}

std::optional<SumWitness> SumIndex::two_pointer(int64_t target, size_t a, size_t b,
                                                SumWitness prefix) const {
    const auto& left = sorted_[a];
    const auto& right = sorted_[b];
    size_t i = 0;
    size_t j = right.size();
    while (i < left.size() && j > 0) {
        probe_count_.fetch_add(1, std::memory_order_relaxed);
        const int64_t s = left[i].first + right[j - 1].first;
        if (s == target) {
            prefix.values.push_back(left[i].first);
            prefix.positions.push_back(left[i].second);
            prefix.values.push_back(right[j - 1].first);
            prefix.positions.push_back(right[j - 1].second);
            return prefix;
        }
        if (s < target)
            ++i;
        else
            --j;
    }
    return std::nullopt;
}

std::optional<SumWitness> SumIndex::query_linear(int64_t z) const {
    const size_t k = instance_->k();
    if (k == 2) return two_pointer(z, 0, 1, {});

    // Enumerate value choices of the first k-2 arrays, two-pointer the rest.
    const size_t n = instance_->n();
    if (n == 0) return std::nullopt;
    std::vector<size_t> pos(k - 2, 0);
    for (;;) {
        SumWitness prefix;
        int64_t partial = 0;
        for (size_t a = 0; a + 2 < k; ++a) {
            partial += instance_->arrays[a][pos[a]];
            prefix.values.push_back(instance_->arrays[a][pos[a]]);
            prefix.positions.push_back(static_cast<int32_t>(pos[a]));
        }
        if (auto w = two_pointer(z - partial, k - 2, k - 1, std::move(prefix))) return w;
        size_t a = k - 2;
        while (a > 0 && ++pos[a - 1] == n) pos[--a] = 0;
        if (a == 0) break;
    }
    return std::nullopt;
}

std::optional<SumWitness> brute_sum(const SumInstance& instance, int64_t z) {
    const size_t k = instance.k();
    const size_t n = instance.n();
    if (n == 0) return std::nullopt;
    std::vector<size_t> pos(k, 0);
    for (;;) {
        int64_t sum = 0;
        for (size_t a = 0; a < k; ++a) sum += instance.arrays[a][pos[a]];
        if (sum == z) {
            SumWitness w;
            for (size_t a = 0; a < k; ++a) {
                w.values.push_back(instance.arrays[a][pos[a]]);
                w.positions.push_back(static_cast<int32_t>(pos[a]));
            }
            return w;
        }
        size_t a = k;
        while (a > 0 && ++pos[a - 1] == n) pos[--a] = 0;
        if (a == 0) break;
    }
    return std::nullopt;
}

}  // namespace sto
