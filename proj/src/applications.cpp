#include "sto/applications.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "sto/rng.hpp"

namespace sto {

// --------------------------------------------------------------- triangles

UndirectedGraph UndirectedGraph::from_edges(int64_t n,
                                            std::vector<std::pair<int64_t, int64_t>> edges) {
    UndirectedGraph g;
    g.n = n;
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw validation_error("undirected graph: endpoint out of range");
        if (u == v) throw validation_error("undirected graph: self-loop");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    g.adj.assign(static_cast<size_t>(n), {});
    for (const auto& [u, v] : g.edges) {
        g.adj[static_cast<size_t>(u)].push_back(v);
        g.adj[static_cast<size_t>(v)].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

bool UndirectedGraph::has_edge(int64_t u, int64_t v) const {
    if (u < 0 || u >= n || v < 0 || v >= n) return false;
    const auto& a = adj[static_cast<size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
}

UndirectedGraph gen_undirected_graph(int64_t n, int64_t m_edges, uint64_t seed) {
    if (n < 1) throw validation_error("gen_undirected_graph: n must be >= 1");
    const int64_t max_edges = n * (n - 1) / 2;
    if (m_edges < 0 || m_edges > max_edges)
        throw validation_error("gen_undirected_graph: m_edges out of range");
    Rng rng(seed);
    std::vector<std::pair<int64_t, int64_t>> edges;
    std::unordered_set<int64_t> seen;
    seen.reserve(static_cast<size_t>(m_edges) * 2);
    while (static_cast<int64_t>(edges.size()) < m_edges) {
        int64_t u = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
        int64_t v = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (seen.insert(u * n + v).second) edges.emplace_back(u, v);
    }
    return UndirectedGraph::from_edges(n, std::move(edges));
}

SetFamily neighborhood_family(const UndirectedGraph& graph) {
    std::vector<std::vector<int64_t>> sets(graph.adj.begin(), graph.adj.end());
    if (sets.empty()) sets.push_back({});
    return SetFamily::from_sets(std::move(sets));
}

namespace {

void require_edge(const UndirectedGraph& graph, int64_t u, int64_t v) {
    if (!graph.has_edge(u, v))
        throw validation_error("triangle query: (" + std::to_string(u) + "," +
                               std::to_string(v) + ") is not an edge");
}

}  // namespace

bool triangle_detect(const UndirectedGraph& graph, int64_t u, int64_t v,
                     const SetOracle& oracle) {
    require_edge(graph, u, v);
    return !oracle.query_disjoint({static_cast<int32_t>(u), static_cast<int32_t>(v)});
}

std::vector<int64_t> triangle_report(const UndirectedGraph& graph, int64_t u, int64_t v,
                                     const SetOracle& oracle) {
    require_edge(graph, u, v);
    return oracle.enumerate_intersection(static_cast<int32_t>(u), static_cast<int32_t>(v));
}

// ---------------------------------------------------------- colored arrays

ColorArrayFamily build_color_arrays(const SetFamily& family, int64_t stretch) {
    if (stretch < 1) throw validation_error("build_color_arrays: stretch must be >= 1");
    ColorArrayFamily out;
    out.color_count = static_cast<int64_t>(family.size());
    out.stretch = stretch;

    // Gather, per distinct element, the sorted list of containing colors.
    std::vector<std::pair<int64_t, int32_t>> occurrences;  // (element, color)
    occurrences.reserve(static_cast<size_t>(family.total_size));
    for (size_t i = 0; i < family.size(); ++i)
        for (int64_t x : family.set(i))
            occurrences.emplace_back(x, static_cast<int32_t>(i));
    std::sort(occurrences.begin(), occurrences.end());

    const int32_t dummy = static_cast<int32_t>(out.color_count);
    size_t pos = 0;
    std::vector<std::vector<std::pair<int64_t, std::vector<int32_t>>>> by_class;
    while (pos < occurrences.size()) {
        size_t end = pos;
        std::vector<int32_t> colors;
        while (end < occurrences.size() && occurrences[end].first == occurrences[pos].first)
            colors.push_back(occurrences[end++].second);
        // class c holds elements with popularity in (2^{c-1}, 2^c]
        int cls = 0;
        while ((uint64_t{1} << cls) < colors.size()) ++cls;
        if (static_cast<size_t>(cls) >= by_class.size()) by_class.resize(cls + 1);
        by_class[static_cast<size_t>(cls)].emplace_back(occurrences[pos].first,
                                                        std::move(colors));
        pos = end;
    }

    // Classes with no elements stay as empty arrays so the class index is
    // also the position.
    for (size_t cls = 0; cls < by_class.size(); ++cls) {
        ColorArrayFamily::ClassArray arr;
        arr.class_index = static_cast<int>(cls);
        arr.threshold = stretch * (int64_t{1} << cls) + 1;
        bool first = true;
        for (const auto& [element, colors] : by_class[cls]) {
            (void)element;
            if (!first)
                arr.colors.insert(arr.colors.end(), static_cast<size_t>(arr.threshold), dummy);
            first = false;
            arr.colors.insert(arr.colors.end(), colors.begin(), colors.end());
        }
        arr.positions.assign(static_cast<size_t>(out.color_count) + 1, {});
        for (size_t p = 0; p < arr.colors.size(); ++p)
            arr.positions[static_cast<size_t>(arr.colors[p])].push_back(
                static_cast<int32_t>(p));
        out.classes.push_back(std::move(arr));
    }
    return out;
}

int64_t colored_distance(const ColorArrayFamily& arrays, int class_index, int32_t c1,
                         int32_t c2) {
    if (c1 < 0 || c1 > arrays.color_count || c2 < 0 || c2 > arrays.color_count)
        throw validation_error("colored_distance: unknown color");
    if (class_index < 0 || static_cast<size_t>(class_index) >= arrays.classes.size())
        throw validation_error("colored_distance: unknown class");
    const auto& arr = arrays.classes[static_cast<size_t>(class_index)];
    const auto& p1 = arr.positions[static_cast<size_t>(c1)];
    const auto& p2 = arr.positions[static_cast<size_t>(c2)];
    if (p1.empty() || p2.empty()) return kInfiniteDistance;
    int64_t best = kInfiniteDistance;
    size_t i = 0, j = 0;
    while (i < p1.size() && j < p2.size()) {
        best = std::min<int64_t>(best, std::abs(int64_t{p1[i]} - int64_t{p2[j]}));
        if (p1[i] < p2[j])
            ++i;
        else
            ++j;
    }
    return best;
}

bool sd_via_colored_distance(const ColorArrayFamily& arrays, int32_t i, int32_t j,
                             int64_t distance_scale) {
    if (i < 0 || i >= arrays.color_count || j < 0 || j >= arrays.color_count)
        throw validation_error("sd_via_colored_distance: unknown color");
    if (distance_scale < 1 || distance_scale > arrays.stretch)
        throw validation_error("sd_via_colored_distance: scale outside the built stretch");
    for (size_t cls = 0; cls < arrays.classes.size(); ++cls) {
        const int64_t d = colored_distance(arrays, static_cast<int>(cls), i, j);
        if (d == kInfiniteDistance) continue;
        if (d * distance_scale < arrays.classes[cls].threshold) return false;
    }
    return true;
}

// -------------------------------------------------------- document retrieval

DocCollection build_docs(const SetFamily& family) {
    DocCollection docs;
    docs.alphabet = static_cast<int32_t>(family.size());

    std::vector<std::pair<int64_t, int32_t>> occurrences;
    occurrences.reserve(static_cast<size_t>(family.total_size));
    for (size_t i = 0; i < family.size(); ++i)
        for (int64_t x : family.set(i))
            occurrences.emplace_back(x, static_cast<int32_t>(i));
    std::sort(occurrences.begin(), occurrences.end());

    docs.postings.assign(family.size(), {});
    size_t pos = 0;
    while (pos < occurrences.size()) {
        size_t end = pos;
        std::vector<int32_t> chars;
        while (end < occurrences.size() && occurrences[end].first == occurrences[pos].first)
            chars.push_back(occurrences[end++].second);
        const int32_t doc_id = static_cast<int32_t>(docs.documents.size());
        docs.doc_element.push_back(occurrences[pos].first);
        for (int32_t c : chars) docs.postings[static_cast<size_t>(c)].push_back(doc_id);
        docs.documents.push_back(std::move(chars));
        pos = end;
    }
    return docs;
}

std::vector<int32_t> two_pattern_query(const DocCollection& docs, int32_t a, int32_t b) {
    if (a < 0 || a >= docs.alphabet || b < 0 || b >= docs.alphabet)
        throw validation_error("two_pattern_query: unknown character");
    const auto& pa = docs.postings[static_cast<size_t>(a)];
    const auto& pb = docs.postings[static_cast<size_t>(b)];
    std::vector<int32_t> out;
    std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(),
                          std::back_inserter(out));
    return out;
}

// ------------------------------------------------- layered distance bridge

LayeredGraph build_layered_graph(const Digraph& graph, int k) {
    if (k < 1) throw validation_error("build_layered_graph: k must be >= 1");
    LayeredGraph out;
    out.base_n = graph.n;
    out.hops = k;
    std::vector<std::pair<int64_t, int64_t>> edges;
    edges.reserve(static_cast<size_t>(k) * graph.edges.size());
    for (int layer = 0; layer < k; ++layer)
        for (const auto& [x, y] : graph.edges)
            edges.emplace_back(out.vertex(layer, x), out.vertex(layer + 1, y));
    out.graph = UndirectedGraph::from_edges(static_cast<int64_t>(k + 1) * graph.n,
                                            std::move(edges));
    return out;
}

int64_t layered_distance(const LayeredGraph& layered, int64_t a, int64_t b) {
    if (a < 0 || b < 0 || a >= layered.graph.n || b >= layered.graph.n)
        throw validation_error("layered_distance: vertex out of range");
    if (a == b) return 0;
    std::vector<int64_t> dist(static_cast<size_t>(layered.graph.n), -1);
    std::deque<int64_t> queue;
    dist[static_cast<size_t>(a)] = 0;
    queue.push_back(a);
    while (!queue.empty()) {
        const int64_t x = queue.front();
        queue.pop_front();
        for (int64_t y : layered.graph.adj[static_cast<size_t>(x)]) {
            if (dist[static_cast<size_t>(y)] >= 0) continue;
            dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
            if (y == b) return dist[static_cast<size_t>(y)];
            queue.push_back(y);
        }
    }
    return kInfiniteDistance;
}

bool kreach_via_layered_distance(const LayeredGraph& layered, int64_t u, int64_t v,
                                 double distance_stretch) {
    if (u < 0 || v < 0 || u >= layered.base_n || v >= layered.base_n)
        throw validation_error("kreach_via_layered_distance: vertex out of range");
    if (u == v)
        throw validation_error("kreach_via_layered_distance: distinct vertices required");
    const int k = layered.hops;
    if (distance_stretch < 1.0 ||
        distance_stretch >= 1.0 + 2.0 / static_cast<double>(k))
        throw validation_error("kreach_via_layered_distance: stretch outside [1, 1 + 2/k)");
    // Both parities: a path of <= k edges shows up at layer k or k-1.
    for (int j = k; j >= std::max(1, k - 1); --j) {
        const int64_t d = layered_distance(layered, layered.vertex(0, u),
                                           layered.vertex(j, v));
        if (d == kInfiniteDistance) continue;
        if (static_cast<double>(d) * distance_stretch <
            static_cast<double>(j) + 2.0)
            return true;
    }
    return false;
}

// ------------------------------------------------------- s-t subconnectivity

SubConnGraph build_subconn(const SetFamily& family) {
    SubConnGraph g;
    g.set_count = static_cast<int64_t>(family.size());
    for (const auto& s : family.sets)
        g.element_values.insert(g.element_values.end(), s.begin(), s.end());
    std::sort(g.element_values.begin(), g.element_values.end());
    g.element_values.erase(std::unique(g.element_values.begin(), g.element_values.end()),
                           g.element_values.end());
    g.element_count = static_cast<int64_t>(g.element_values.size());

    g.adj.assign(static_cast<size_t>(g.vertex_count()), {});
    auto link = [&](int64_t a, int64_t b) {
        g.adj[static_cast<size_t>(a)].push_back(b);
        g.adj[static_cast<size_t>(b)].push_back(a);
    };
    for (int64_t i = 0; i < g.set_count; ++i) {
        link(g.s(), g.v(i));
        link(g.u(i), g.t());
        for (int64_t x : family.set(static_cast<size_t>(i))) {
            const int64_t j = std::lower_bound(g.element_values.begin(), g.element_values.end(),
                                               x) -
                              g.element_values.begin();
            link(g.v(i), g.w(j));
            link(g.u(i), g.w(j));
        }
    }

    g.active.assign(static_cast<size_t>(g.vertex_count()), 0);
    g.active[static_cast<size_t>(g.s())] = 1;
    g.active[static_cast<size_t>(g.t())] = 1;
    for (int64_t j = 0; j < g.element_count; ++j) g.active[static_cast<size_t>(g.w(j))] = 1;
    return g;
}

size_t SubConnGraph::edge_count() const {
    size_t degree_sum = 0;
    for (const auto& a : adj) degree_sum += a.size();
    return degree_sum / 2;
}

void subconn_toggle(SubConnGraph& graph, int64_t vertex) {
    if (vertex < 0 || vertex >= graph.vertex_count())
        throw validation_error("subconn_toggle: vertex out of range");
    if (vertex < 2 || vertex >= graph.w(0))
        throw validation_error("subconn_toggle: s, t and element vertices are permanently "
                               "active");
    graph.active[static_cast<size_t>(vertex)] ^= 1;
}

bool subconn_st_query(const SubConnGraph& graph) {
    std::vector<uint8_t> seen(static_cast<size_t>(graph.vertex_count()), 0);
    std::deque<int64_t> queue;
    queue.push_back(graph.s());
    seen[static_cast<size_t>(graph.s())] = 1;
    while (!queue.empty()) {
        int64_t x = queue.front();
        queue.pop_front();
        if (x == graph.t()) return true;
        for (int64_t y : graph.adj[static_cast<size_t>(x)]) {
            if (!graph.active[static_cast<size_t>(y)] || seen[static_cast<size_t>(y)]) continue;
            seen[static_cast<size_t>(y)] = 1;
            queue.push_back(y);
        }
    }
    return false;
}

bool sd_via_subconn(SubConnGraph& graph, int32_t i, int32_t j) {
    if (i < 0 || i >= graph.set_count || j < 0 || j >= graph.set_count)
        throw validation_error("sd_via_subconn: set index out of range");
    subconn_toggle(graph, graph.v(i));
    subconn_toggle(graph, graph.u(j));
    const bool connected = subconn_st_query(graph);
    subconn_toggle(graph, graph.v(i));
    subconn_toggle(graph, graph.u(j));
    return !connected;
}

}  // namespace sto
