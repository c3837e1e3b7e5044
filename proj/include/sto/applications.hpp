#pragma once

#include <cstdint>
#include <vector>

#include "sto/errors.hpp"
#include "sto/instances.hpp"
#include "sto/set_oracle.hpp"

namespace sto {

// Simple undirected graph; edges stored with u < v, adjacency sorted.
struct UndirectedGraph {
    int64_t n = 0;
    std::vector<std::pair<int64_t, int64_t>> edges;
    std::vector<std::vector<int64_t>> adj;

    static UndirectedGraph from_edges(int64_t n, std::vector<std::pair<int64_t, int64_t>> edges);
    bool has_edge(int64_t u, int64_t v) const;
};

UndirectedGraph gen_undirected_graph(int64_t n, int64_t m_edges, uint64_t seed);

// One set per vertex holding its neighbors; set id == vertex id.
SetFamily neighborhood_family(const UndirectedGraph& graph);

// Does the edge (u,v) close a triangle / which third vertices close one.
// The oracle must be built over neighborhood_family(graph) (intersection
// mode for reporting). Throws if (u,v) is not an edge.
bool triangle_detect(const UndirectedGraph& graph, int64_t u, int64_t v,
                     const SetOracle& oracle);
std::vector<int64_t> triangle_report(const UndirectedGraph& graph, int64_t u, int64_t v,
                                     const SetOracle& oracle);

// ---------------------------------------------------------------------------
// 1-D colored-distance encoding of a set family. Elements are grouped into
// classes by popularity (class i holds elements contained in (2^{i-1}, 2^i]
// sets); within a class each element lists the colors (set ids) containing
// it, and consecutive intervals are separated by stretch*2^i + 1 copies of a
// dummy color. Two colors then share an element in class i exactly when
// their positional distance there is below the class threshold, which
// survives any distance oracle with multiplicative stretch up to `stretch`.

inline constexpr int64_t kInfiniteDistance = INT64_MAX;

struct ColorArrayFamily {
    struct ClassArray {
        int class_index = 0;
        int64_t threshold = 0;   // stretch * 2^class_index + 1
        std::vector<int32_t> colors;
        // positions[c] = sorted positions of color c in this array
        std::vector<std::vector<int32_t>> positions;
    };
    std::vector<ClassArray> classes;
    int64_t color_count = 0;  // m real colors; the dummy color is id m
    int64_t stretch = 1;
};

ColorArrayFamily build_color_arrays(const SetFamily& family, int64_t stretch = 1);

// Minimal |pos(c1) - pos(c2)| within one class array; kInfiniteDistance when
// either color is absent there. Naive sorted-positions merge.
int64_t colored_distance(const ColorArrayFamily& arrays, int class_index, int32_t c1,
                         int32_t c2);

// Disjoint iff no class puts the two colors within its threshold.
// distance_scale models a stretch-alpha oracle returning scale*distance.
bool sd_via_colored_distance(const ColorArrayFamily& arrays, int32_t i, int32_t j,
                             int64_t distance_scale = 1);

// ---------------------------------------------------------------------------
// Two-pattern document retrieval over a set family: one document per
// occurring element, containing one character per set that holds it.

struct DocCollection {
    std::vector<std::vector<int32_t>> documents;  // doc -> sorted set ids
    std::vector<int64_t> doc_element;             // doc -> original element
    std::vector<std::vector<int32_t>> postings;   // set id -> sorted doc ids
    int32_t alphabet = 0;                         // number of set characters
};

DocCollection build_docs(const SetFamily& family);

// Documents containing both characters; inverted-index intersection.
std::vector<int32_t> two_pattern_query(const DocCollection& docs, int32_t a, int32_t b);

// ---------------------------------------------------------------------------
// Bounded-hop reachability through an undirected distance oracle. The
// directed graph is unrolled into k+1 layers; each directed edge (x, y)
// becomes an undirected edge between x in layer i and y in layer i+1. Every
// layer-0-to-layer-j walk of length j is strictly forward, so it is a
// directed path of exactly j edges, and any longer walk has the same parity
// but length >= j+2. A distance estimate below j+2 therefore decides
// reachability exactly, and survives any oracle stretch below 1 + 2/k.

struct LayeredGraph {
    int64_t base_n = 0;
    int hops = 0;                     // k
    UndirectedGraph graph;            // (k+1)*n vertices: layer * n + v
    int64_t vertex(int layer, int64_t v) const { return layer * base_n + v; }
};

LayeredGraph build_layered_graph(const Digraph& graph, int k);

// Exact undirected BFS distance; the reference stand-in for a distance
// oracle. kInfiniteDistance when unreachable.
int64_t layered_distance(const LayeredGraph& layered, int64_t a, int64_t b);

// Is there a directed path u -> v of at most k edges? distance_stretch
// models an approximate oracle returning stretch * distance; any value in
// [1, 1 + 2/k) preserves all answers.
bool kreach_via_layered_distance(const LayeredGraph& layered, int64_t u, int64_t v,
                                 double distance_stretch = 1.0);

// ---------------------------------------------------------------------------
// Dynamic s-t subgraph connectivity encoding. Vertices: s, t, a pair
// (v_i, u_i) per set, w_j per occurring element; edges s-v_i, u_i-t and
// v_i-w_j, u_i-w_j per containment. s, t and the w_j are permanently
// active; querying disjointness of (i, j) switches v_i and u_j on, asks
// whether s and t connect through active vertices only, and restores.

struct SubConnGraph {
    int64_t set_count = 0;
    int64_t element_count = 0;
    std::vector<std::vector<int64_t>> adj;
    std::vector<uint8_t> active;
    std::vector<int64_t> element_values;

    int64_t s() const { return 0; }
    int64_t t() const { return 1; }
    int64_t v(int64_t i) const { return 2 + i; }
    int64_t u(int64_t i) const { return 2 + set_count + i; }
    int64_t w(int64_t j) const { return 2 + 2 * set_count + j; }
    int64_t vertex_count() const { return 2 + 2 * set_count + element_count; }
    size_t edge_count() const;
};

SubConnGraph build_subconn(const SetFamily& family);

// Flips membership of a v_i/u_i vertex. Toggling s, t or a w_j is an error.
void subconn_toggle(SubConnGraph& graph, int64_t vertex);

// BFS through active vertices only.
bool subconn_st_query(const SubConnGraph& graph);

// Toggles v_i and u_j on, queries, restores. Connected iff not disjoint.
bool sd_via_subconn(SubConnGraph& graph, int32_t i, int32_t j);

}  // namespace sto
