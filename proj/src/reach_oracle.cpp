#include "sto/reach_oracle.hpp"

#include <algorithm>
#include <deque>

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

constexpr int64_t kEmptySlot = -1;

}  // namespace

ReachOracle& ReachOracle::operator=(ReachOracle&& o) noexcept {
    graph_ = o.graph_;
    k_ = o.k_;
    alpha_ = o.alpha_;
    heavy_ = std::move(o.heavy_);
    heavy_rank_ = std::move(o.heavy_rank_);
    levels_ = std::move(o.levels_);
    edge_slots_ = std::move(o.edge_slots_);
    edge_mask_ = o.edge_mask_;
    size_ = std::move(o.size_);
    probe_count_.store(o.probe_count_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    return *this;
}

ReachOracle ReachOracle::build(const Digraph& graph, int k, int64_t alpha,
                               uint64_t word_budget) {
    if (k < 1) throw validation_error("reach oracle: k must be >= 1");
    if (alpha < 1) throw validation_error("reach oracle: alpha must be >= 1");

    ReachOracle o;
    o.graph_ = &graph;
    o.k_ = k;
    o.alpha_ = alpha;

    const int64_t n = graph.n;
    o.heavy_rank_.assign(static_cast<size_t>(n), -1);
    for (int64_t v = 0; v < n; ++v) {
        if (std::max(graph.out_degree(v), graph.in_degree(v)) > alpha) {
            o.heavy_rank_[static_cast<size_t>(v)] = static_cast<int32_t>(o.heavy_.size());
            o.heavy_.push_back(v);
        }
    }
    const uint64_t h = o.heavy_.size();

    if (k >= 2) {
        const uint64_t needed = static_cast<uint64_t>(k - 1) * h * h;
        if (h > 0 && needed / h / h != static_cast<uint64_t>(k - 1))
            throw budget_error("reach oracle: level tables overflow", UINT64_MAX, word_budget);
        if (needed > word_budget)
            throw budget_error("reach oracle: level tables exceed word budget", needed,
                               word_budget);
        o.levels_.assign(static_cast<size_t>(k - 1), std::vector<uint8_t>(h * h, 0));
    }

    // Edge lookup, open addressing over the key u*n+v.
    if (!graph.edges.empty()) {
        const uint64_t n_slots = next_pow2(2 * graph.edges.size());
        o.edge_slots_.assign(n_slots, kEmptySlot);
        o.edge_mask_ = n_slots - 1;
        for (const auto& [u, v] : graph.edges) {
            int64_t key = u * n + v;
            uint64_t i = mix(static_cast<uint64_t>(key)) & o.edge_mask_;
            while (o.edge_slots_[i] != kEmptySlot) i = (i + 1) & o.edge_mask_;
            o.edge_slots_[i] = key;
        }
    }

    // One truncated BFS per heavy vertex fills every level's row at once.
    if (k >= 2 && h > 0) {
        std::vector<int32_t> dist(static_cast<size_t>(n));
        std::deque<int64_t> queue;
        for (uint64_t r = 0; r < h; ++r) {
            const int64_t src = o.heavy_[r];
            std::fill(dist.begin(), dist.end(), -1);
            dist[static_cast<size_t>(src)] = 0;
            queue.clear();
            queue.push_back(src);
            while (!queue.empty()) {
                int64_t u = queue.front();
                queue.pop_front();
                if (dist[static_cast<size_t>(u)] >= k) continue;
                for (int64_t w : graph.out_adj[static_cast<size_t>(u)]) {
                    if (dist[static_cast<size_t>(w)] < 0) {
                        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for (uint64_t c = 0; c < h; ++c) {
                const int64_t v = o.heavy_[c];
                const int32_t d = dist[static_cast<size_t>(v)];
                if (v == src || d < 0) continue;
                for (int level = 2; level <= k; ++level)
                    if (d <= level) o.levels_[static_cast<size_t>(level - 2)][r * h + c] = 1;
            }
        }
    }

    o.size_.add("level_tables", k >= 2 ? static_cast<uint64_t>(k - 1) * h * h : 0);
    o.size_.add("edge_lookup", o.edge_slots_.size());
    o.size_.add("heavy_rank", static_cast<uint64_t>(n));
    o.size_.add("heavy_ids", h);
    return o;
}

bool ReachOracle::edge(int64_t u, int64_t v) const {
    probe_count_.fetch_add(1, std::memory_order_relaxed);
    if (edge_slots_.empty()) return false;
    const int64_t key = u * graph_->n + v;
    uint64_t i = mix(static_cast<uint64_t>(key)) & edge_mask_;
    while (edge_slots_[i] != kEmptySlot) {
        if (edge_slots_[i] == key) return true;
        i = (i + 1) & edge_mask_;
    }
    return false;
}

bool ReachOracle::reach_level(int64_t u, int64_t v, int level) const {
    if (level <= 1) return edge(u, v);
    const int32_t ru = heavy_rank_[static_cast<size_t>(u)];
    const int32_t rv = heavy_rank_[static_cast<size_t>(v)];
    if (ru >= 0 && rv >= 0) {
        probe_count_.fetch_add(1, std::memory_order_relaxed);
        const uint64_t h = heavy_.size();
        return levels_[static_cast<size_t>(level - 2)][static_cast<uint64_t>(ru) * h +
                                                       static_cast<uint64_t>(rv)] != 0;
    }
    if (graph_->out_degree(u) <= alpha_) {
        for (int64_t w : graph_->out_adj[static_cast<size_t>(u)]) {
            probe_count_.fetch_add(1, std::memory_order_relaxed);
            if (w == v || reach_level(w, v, level - 1)) return true;
        }
        return false;
    }
    // u is heavy by out-degree, so v must be light here.
    for (int64_t w : graph_->in_adj[static_cast<size_t>(v)]) {
        probe_count_.fetch_add(1, std::memory_order_relaxed);
        if (w == u || reach_level(u, w, level - 1)) return true;
    }
    return false;
}

bool ReachOracle::query(int64_t u, int64_t v) const {
    if (u < 0 || u >= graph_->n || v < 0 || v >= graph_->n)
        throw validation_error("reach oracle: vertex out of range");
    if (u == v) throw validation_error("reach oracle: distinct vertices required");
    return reach_level(u, v, k_);
}

bool brute_reach(const Digraph& graph, int64_t u, int64_t v, int k) {
    if (u < 0 || u >= graph.n || v < 0 || v >= graph.n)
        throw validation_error("brute_reach: vertex out of range");
    if (u == v) return false;
    std::vector<int32_t> dist(static_cast<size_t>(graph.n), -1);
    std::deque<int64_t> queue;
    dist[static_cast<size_t>(u)] = 0;
    queue.push_back(u);
    while (!queue.empty()) {
        int64_t x = queue.front();
        queue.pop_front();
        if (dist[static_cast<size_t>(x)] >= k) continue;
        for (int64_t w : graph.out_adj[static_cast<size_t>(x)]) {
            if (dist[static_cast<size_t>(w)] < 0) {
                dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(x)] + 1;
                if (w == v) return true;
                queue.push_back(w);
            }
        }
    }
    return false;
}

}  // namespace sto
