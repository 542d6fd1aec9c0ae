// Shared graphs and small independent checks for the test binaries.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "jdm/core.hpp"
#include "jdm/rng.hpp"

namespace fixtures {

using jdm::Edge;
using jdm::LabeledGraph;
using jdm::Vertex;

inline LabeledGraph graph(std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    std::vector<Edge> edges;
    for (auto [u, v] : pairs) edges.push_back(Edge::of(u, v));
    return LabeledGraph::from_edges(edges);
}

inline LabeledGraph six_cycle() { return graph({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}}); }

inline LabeledGraph two_triangles() { return graph({{1, 2}, {2, 3}, {3, 1}, {4, 5}, {5, 6}, {6, 4}}); }

// JDM with J_13 = 3, J_33 = 6: vertex 4 holds two of the three pendant vertices.
inline LabeledGraph pendant_instance() {
    return graph({{1, 4}, {2, 4}, {4, 6}, {3, 5}, {5, 7}, {5, 8}, {6, 7}, {6, 8}, {7, 8}});
}

inline jdm::Jdm pendant_jdm() { return jdm::Jdm({{0, 0, 3}, {0, 0, 0}, {3, 0, 6}}); }

// JDM counted straight from an edge list, without the library's graph type.
inline std::vector<std::vector<jdm::Count>> count_jdm(const std::vector<Edge>& edges) {
    std::map<Vertex, int> deg;
    for (const auto& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    int k = 0;
    for (const auto& kv : deg) k = std::max(k, kv.second);
    std::vector<std::vector<jdm::Count>> m(k, std::vector<jdm::Count>(k, 0));
    for (const auto& e : edges) {
        const int a = deg[e.u] - 1, b = deg[e.v] - 1;
        ++m[a][b];
        if (a != b) ++m[b][a];
    }
    return m;
}

// G(n, p) on labels offset+1..offset+n with isolated vertices dropped.
inline std::optional<LabeledGraph> random_graph(jdm::Rng& rng, int n, double p, Vertex offset = 0) {
    std::vector<Edge> edges;
    for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y)
            if (rng.unit() < p) edges.push_back(Edge{offset + x, offset + y});
    if (edges.empty()) return std::nullopt;
    return LabeledGraph::from_edges(edges);
}

// A realization with at least one edge; retries until G(n, p) produces one.
inline LabeledGraph random_realization(jdm::Rng& rng, int n, double p) {
    for (;;)
        if (auto g = random_graph(rng, n, p)) return *g;
}

// Neighbor counts per class, counted directly.
inline std::vector<jdm::Count> spectrum_of(const LabeledGraph& g, Vertex v) {
    std::vector<jdm::Count> s(g.max_class(), 0);
    for (Vertex w : g.neighbors(v)) ++s[g.vertex_class(w) - 1];
    return s;
}

}  // namespace fixtures
