#include "sto/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_set>

#include "json.hpp"
#include "sto/rng.hpp"

namespace sto {

using nlohmann::json;

// ---------------------------------------------------------------- SetFamily

SetFamily SetFamily::from_sets(std::vector<std::vector<int64_t>> in) {
    SetFamily f;
    f.sets = std::move(in);
    for (auto& s : f.sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    int64_t max_el = -1;
    int64_t total = 0;
    for (const auto& s : f.sets) {
        total += static_cast<int64_t>(s.size());
        if (!s.empty()) max_el = std::max(max_el, s.back());
    }
    f.total_size = total;
    f.universe_bound = max_el + 1 < 1 ? 1 : max_el + 1;
    f.validate();
    return f;
}

void SetFamily::validate() const {
    if (sets.empty()) throw validation_error("set family: m must be >= 1");
    int64_t total = 0;
    for (size_t i = 0; i < sets.size(); ++i) {
        const auto& s = sets[i];
        for (size_t j = 0; j < s.size(); ++j) {
            if (s[j] < 0)
                throw validation_error("set family: sets[" + std::to_string(i) + "][" +
                                       std::to_string(j) + "] is negative");
            if (s[j] >= universe_bound)
                throw validation_error("set family: sets[" + std::to_string(i) + "][" +
                                       std::to_string(j) + "] exceeds universe bound");
            if (j > 0 && s[j] <= s[j - 1])
                throw validation_error("set family: sets[" + std::to_string(i) + "][" +
                                       std::to_string(j) +
                                       "] breaks strictly ascending order (duplicate element?)");
        }
        total += static_cast<int64_t>(s.size());
    }
    if (total != total_size)
        throw validation_error("set family: total_size does not match sum of set sizes");
}

// -------------------------------------------------------------- SumInstance

SumInstance SumInstance::from_arrays(std::vector<std::vector<int64_t>> in) {
    SumInstance s;
    s.arrays = std::move(in);
    int64_t bound = 0;
    for (const auto& a : s.arrays)
        for (int64_t v : a) bound = std::max(bound, v < 0 ? -v : v);
    s.value_bound = bound;
    s.validate();
    return s;
}

void SumInstance::validate() const {
    if (arrays.size() < 2) throw validation_error("sum instance: k must be >= 2");
    const size_t len = arrays[0].size();
    for (size_t i = 0; i < arrays.size(); ++i) {
        if (arrays[i].size() != len)
            throw validation_error("sum instance: arrays[" + std::to_string(i) +
                                   "] length differs from arrays[0]");
        for (int64_t v : arrays[i]) {
            int64_t a = v < 0 ? -v : v;
            if (a > value_bound)
                throw validation_error("sum instance: value exceeds value_bound");
        }
    }
    // Full k-wise sums must stay inside a signed 64-bit word.
    if (value_bound > 0 &&
        static_cast<uint64_t>(value_bound) >
            (uint64_t{1} << 62) / static_cast<uint64_t>(arrays.size()))
        throw validation_error("sum instance: k*value_bound would overflow a 64-bit word");
}

// ------------------------------------------------------------------ Digraph

Digraph Digraph::from_edges(int64_t n, std::vector<std::pair<int64_t, int64_t>> edges) {
    Digraph g;
    g.n = n;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    g.out_adj.assign(static_cast<size_t>(n), {});
    g.in_adj.assign(static_cast<size_t>(n), {});
    for (const auto& [u, v] : g.edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw validation_error("digraph: edge endpoint out of range");
        if (u == v)
            throw validation_error("digraph: self-loop (" + std::to_string(u) + "," +
                                   std::to_string(v) + ")");
        g.out_adj[static_cast<size_t>(u)].push_back(v);
        g.in_adj[static_cast<size_t>(v)].push_back(u);
    }
    // Sorted edge order already yields sorted adjacency.
    g.validate();
    return g;
}

void Digraph::validate() const {
    if (n < 0) throw validation_error("digraph: negative vertex count");
    size_t out_total = 0, in_total = 0;
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw validation_error("digraph: edge endpoint out of range");
        if (u == v)
            throw validation_error("digraph: self-loop (" + std::to_string(u) + "," +
                                   std::to_string(v) + ")");
    }
    for (size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1]) throw validation_error("digraph: duplicate edge");
    if (out_adj.size() != static_cast<size_t>(n) || in_adj.size() != static_cast<size_t>(n))
        throw validation_error("digraph: adjacency size mismatch");
    for (const auto& a : out_adj) {
        out_total += a.size();
        if (!std::is_sorted(a.begin(), a.end()))
            throw validation_error("digraph: out adjacency not sorted");
    }
    for (const auto& a : in_adj) {
        in_total += a.size();
        if (!std::is_sorted(a.begin(), a.end()))
            throw validation_error("digraph: in adjacency not sorted");
    }
    if (out_total != edges.size() || in_total != edges.size())
        throw validation_error("digraph: adjacency inconsistent with edge list");
}

// --------------------------------------------------------------- generators

namespace {

// size_of_set[r] proportional to (r+1)^-skew, adjusted to sum exactly to
// target_n with every size in [1, universe].
std::vector<int64_t> plan_set_sizes(int64_t m, int64_t universe, int64_t target_n, double skew) {
    std::vector<double> weight(static_cast<size_t>(m));
    double total_weight = 0.0;
    for (int64_t r = 0; r < m; ++r) {
        weight[static_cast<size_t>(r)] = std::pow(static_cast<double>(r + 1), -skew);
        total_weight += weight[static_cast<size_t>(r)];
    }
    std::vector<int64_t> sizes(static_cast<size_t>(m));
    int64_t sum = 0;
    for (int64_t r = 0; r < m; ++r) {
        double share = static_cast<double>(target_n) * weight[static_cast<size_t>(r)] / total_weight;
        int64_t s = std::llround(share);
        s = std::clamp<int64_t>(s, 1, universe);
        sizes[static_cast<size_t>(r)] = s;
        sum += s;
    }
    // Round-robin fixup until the total is exact. Feasible because
    // m <= target_n <= m*universe.
    size_t cursor = 0;
    while (sum != target_n) {
        auto& s = sizes[cursor % sizes.size()];
        if (sum < target_n && s < universe) {
            ++s;
            ++sum;
        } else if (sum > target_n && s > 1) {
            --s;
            --sum;
        }
        ++cursor;
    }
    return sizes;
}

std::vector<int64_t> sample_distinct(int64_t universe, int64_t count, Rng& rng) {
    std::vector<int64_t> out;
    out.reserve(static_cast<size_t>(count));
    if (count * 3 >= universe) {
        // Dense: partial Fisher–Yates over the whole universe.
        std::vector<int64_t> pool(static_cast<size_t>(universe));
        for (int64_t i = 0; i < universe; ++i) pool[static_cast<size_t>(i)] = i;
        for (int64_t i = 0; i < count; ++i) {
            uint64_t j = i + rng.below(static_cast<uint64_t>(universe - i));
            std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
            out.push_back(pool[static_cast<size_t>(i)]);
        }
    } else {
        std::unordered_set<int64_t> seen;
        seen.reserve(static_cast<size_t>(count) * 2);
        while (static_cast<int64_t>(out.size()) < count) {
            int64_t x = static_cast<int64_t>(rng.below(static_cast<uint64_t>(universe)));
            if (seen.insert(x).second) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SetFamily gen_set_family(int64_t m, int64_t universe, int64_t target_n, double skew,
                         uint64_t seed) {
    if (m < 1) throw validation_error("gen_set_family: m must be >= 1");
    if (universe < 1) throw validation_error("gen_set_family: universe must be >= 1");
    if (target_n < m) throw validation_error("gen_set_family: target_N must be >= m");
    if (skew < 0.0 || skew > 1.0) throw validation_error("gen_set_family: skew must be in [0,1]");
    if (target_n > m * universe)
        throw validation_error("gen_set_family: target_N exceeds m*universe, sets cannot hold "
                               "enough distinct elements");

    Rng rng(seed);
    auto sizes = plan_set_sizes(m, universe, target_n, skew);
    std::vector<std::vector<int64_t>> sets;
    sets.reserve(static_cast<size_t>(m));
    for (int64_t i = 0; i < m; ++i)
        sets.push_back(sample_distinct(universe, sizes[static_cast<size_t>(i)], rng));

    SetFamily f;
    f.sets = std::move(sets);
    f.universe_bound = universe;
    f.total_size = target_n;
    f.validate();
    return f;
}

std::pair<SumInstance, std::vector<int64_t>> gen_sum_instance(int64_t k, int64_t n,
                                                              int64_t value_bound,
                                                              int64_t planted, uint64_t seed) {
    if (k < 2) throw validation_error("gen_sum_instance: k must be >= 2");
    if (n < 1) throw validation_error("gen_sum_instance: n must be >= 1");
    if (planted < 0 || planted > n)
        throw validation_error("gen_sum_instance: planted must be in [0, n]");
    if (value_bound < 0) throw validation_error("gen_sum_instance: negative value_bound");
    if (2 * value_bound + 1 < n)
        throw validation_error("gen_sum_instance: value_bound too small, duplicate values in an "
                               "array are forced");
    if (value_bound > 0 &&
        static_cast<uint64_t>(value_bound) > (uint64_t{1} << 62) / static_cast<uint64_t>(k))
        throw validation_error("gen_sum_instance: k*value_bound would overflow a 64-bit word");

    Rng rng(seed);
    std::vector<std::vector<int64_t>> arrays(static_cast<size_t>(k));
    for (auto& a : arrays) {
        a.reserve(static_cast<size_t>(n));
        for (int64_t i = 0; i < n; ++i) a.push_back(rng.range(-value_bound, value_bound));
    }
    std::vector<int64_t> targets;
    targets.reserve(static_cast<size_t>(planted));
    for (int64_t t = 0; t < planted; ++t) {
        int64_t z = 0;
        for (int64_t j = 0; j < k; ++j)
            z += arrays[static_cast<size_t>(j)][rng.below(static_cast<uint64_t>(n))];
        targets.push_back(z);
    }

    // from_arrays recomputes value_bound as the realized max |value|.
    return {SumInstance::from_arrays(std::move(arrays)), std::move(targets)};
}

Digraph gen_digraph(int64_t n, int64_t m_edges, uint64_t seed) {
    if (n < 1) throw validation_error("gen_digraph: n must be >= 1");
    const int64_t max_edges = n * (n - 1);
    if (m_edges < 0 || m_edges > max_edges)
        throw validation_error("gen_digraph: m_edges out of range [0, n*(n-1)]");

    Rng rng(seed);
    std::vector<std::pair<int64_t, int64_t>> edges;
    edges.reserve(static_cast<size_t>(m_edges));
    if (max_edges <= 1 << 22 && m_edges * 3 >= max_edges) {
        // Dense: shuffle-prefix over all ordered pairs.
        std::vector<std::pair<int64_t, int64_t>> pool;
        pool.reserve(static_cast<size_t>(max_edges));
        for (int64_t u = 0; u < n; ++u)
            for (int64_t v = 0; v < n; ++v)
                if (u != v) pool.emplace_back(u, v);
        for (int64_t i = 0; i < m_edges; ++i) {
            uint64_t j = i + rng.below(static_cast<uint64_t>(max_edges - i));
            std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
            edges.push_back(pool[static_cast<size_t>(i)]);
        }
    } else {
        std::unordered_set<int64_t> seen;
        seen.reserve(static_cast<size_t>(m_edges) * 2);
        while (static_cast<int64_t>(edges.size()) < m_edges) {
            int64_t u = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
            int64_t v = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
            if (u == v) continue;
            if (seen.insert(u * n + v).second) edges.emplace_back(u, v);
        }
    }
    return Digraph::from_edges(n, std::move(edges));
}

// ----------------------------------------------------------------- JSON I/O

namespace {

json family_to_document(const SetFamily& f) {
    return json{{"type", "set_family"}, {"universe", f.universe_bound}, {"sets", f.sets}};
}

json sum_to_document(const SumInstance& s) {
    return json{{"type", "sum_instance"}, {"arrays", s.arrays}};
}

json graph_to_document(const Digraph& g) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges) edges.push_back(json::array({u, v}));
    return json{{"type", "digraph"}, {"n", g.n}, {"edges", edges}};
}

const json& require_field(const json& doc, const char* name, const std::string& origin) {
    auto it = doc.find(name);
    if (it == doc.end())
        throw parse_error(origin + ": missing field \"" + name + "\"");
    return *it;
}

SetFamily family_from_document(const json& doc, const std::string& origin) {
    const json& universe = require_field(doc, "universe", origin);
    const json& sets = require_field(doc, "sets", origin);
    if (!universe.is_number_integer()) throw parse_error(origin + ": field \"universe\" must be an integer");
    if (!sets.is_array()) throw parse_error(origin + ": field \"sets\" must be an array");
    SetFamily f;
    f.universe_bound = universe.get<int64_t>();
    f.sets.reserve(sets.size());
    int64_t total = 0;
    for (size_t i = 0; i < sets.size(); ++i) {
        if (!sets[i].is_array())
            throw parse_error(origin + ": sets[" + std::to_string(i) + "] must be an array");
        std::vector<int64_t> s;
        s.reserve(sets[i].size());
        for (size_t j = 0; j < sets[i].size(); ++j) {
            if (!sets[i][j].is_number_integer())
                throw parse_error(origin + ": sets[" + std::to_string(i) + "][" +
                                  std::to_string(j) + "] must be an integer");
            s.push_back(sets[i][j].get<int64_t>());
        }
        total += static_cast<int64_t>(s.size());
        f.sets.push_back(std::move(s));
    }
    f.total_size = total;
    f.validate();
    return f;
}

SumInstance sum_from_document(const json& doc, const std::string& origin) {
    const json& arrays = require_field(doc, "arrays", origin);
    if (!arrays.is_array()) throw parse_error(origin + ": field \"arrays\" must be an array");
    std::vector<std::vector<int64_t>> data;
    data.reserve(arrays.size());
    for (size_t i = 0; i < arrays.size(); ++i) {
        if (!arrays[i].is_array())
            throw parse_error(origin + ": arrays[" + std::to_string(i) + "] must be an array");
        std::vector<int64_t> a;
        a.reserve(arrays[i].size());
        for (size_t j = 0; j < arrays[i].size(); ++j) {
            if (!arrays[i][j].is_number_integer())
                throw parse_error(origin + ": arrays[" + std::to_string(i) + "][" +
                                  std::to_string(j) + "] must be an integer");
            a.push_back(arrays[i][j].get<int64_t>());
        }
        data.push_back(std::move(a));
    }
    return SumInstance::from_arrays(std::move(data));
}

Digraph graph_from_document(const json& doc, const std::string& origin) {
    const json& n = require_field(doc, "n", origin);
    const json& edges = require_field(doc, "edges", origin);
    if (!n.is_number_integer()) throw parse_error(origin + ": field \"n\" must be an integer");
    if (!edges.is_array()) throw parse_error(origin + ": field \"edges\" must be an array");
    std::vector<std::pair<int64_t, int64_t>> e;
    e.reserve(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) {
        if (!edges[i].is_array() || edges[i].size() != 2 || !edges[i][0].is_number_integer() ||
            !edges[i][1].is_number_integer())
            throw parse_error(origin + ": edges[" + std::to_string(i) +
                              "] must be an integer pair");
        e.emplace_back(edges[i][0].get<int64_t>(), edges[i][1].get<int64_t>());
    }
    // from_edges sorts; a file with out-of-order edges still round-trips
    // because writing always emits sorted order.
    return Digraph::from_edges(n.get<int64_t>(), std::move(e));
}

AnyInstance dispatch_document(const json& doc, const std::string& origin) {
    if (!doc.is_object()) throw parse_error(origin + ": top-level value must be an object");
    const json& type = require_field(doc, "type", origin);
    if (!type.is_string()) throw parse_error(origin + ": field \"type\" must be a string");
    const std::string t = type.get<std::string>();
    if (t == "set_family") return family_from_document(doc, origin);
    if (t == "sum_instance") return sum_from_document(doc, origin);
    if (t == "digraph") return graph_from_document(doc, origin);
    throw parse_error(origin + ": unknown instance type \"" + t + "\"");
}

json parse_document(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(origin + ": " + e.what());
    }
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error(path.string() + ": cannot open for reading");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw parse_error(path.string() + ": cannot open for writing");
    out << text;
    if (!out) throw parse_error(path.string() + ": write failed");
}

}  // namespace

std::string instance_to_json(const SetFamily& f) { return family_to_document(f).dump(); }
std::string instance_to_json(const SumInstance& s) { return sum_to_document(s).dump(); }
std::string instance_to_json(const Digraph& g) { return graph_to_document(g).dump(); }

AnyInstance instance_from_json(const std::string& text, const std::string& origin) {
    return dispatch_document(parse_document(text, origin), origin);
}

void write_instance(const std::filesystem::path& path, const SetFamily& f) {
    spit(path, instance_to_json(f) + "\n");
}
void write_instance(const std::filesystem::path& path, const SumInstance& s) {
    spit(path, instance_to_json(s) + "\n");
}
void write_instance(const std::filesystem::path& path, const Digraph& g) {
    spit(path, instance_to_json(g) + "\n");
}

AnyInstance read_instance(const std::filesystem::path& path) {
    return instance_from_json(slurp(path), path.string());
}

SetFamily read_set_family(const std::filesystem::path& path) {
    auto any = read_instance(path);
    if (auto* f = std::get_if<SetFamily>(&any)) return std::move(*f);
    throw parse_error(path.string() + ": expected a set_family instance");
}

SumInstance read_sum_instance(const std::filesystem::path& path) {
    auto any = read_instance(path);
    if (auto* s = std::get_if<SumInstance>(&any)) return std::move(*s);
    throw parse_error(path.string() + ": expected a sum_instance");
}

Digraph read_digraph(const std::filesystem::path& path) {
    auto any = read_instance(path);
    if (auto* g = std::get_if<Digraph>(&any)) return std::move(*g);
    throw parse_error(path.string() + ": expected a digraph instance");
}

}  // namespace sto
