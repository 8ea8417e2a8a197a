#pragma once

// Small oracles written only for the tests: no Dijkstra, no shared code with
// the library beyond the Graph type.

#include <algorithm>
#include <deque>
#include <sstream>
#include <string>
#include <vector>

#include "congest/graph.hpp"

namespace testing_support {

using congest::Graph;
using congest::Vertex;
using congest::Weight;

// Plain Bellman-Ford over out-arcs, skipping arcs in `skip` (orientation
// ignored on undirected graphs). Unreached vertices get `inf`.
inline std::vector<Weight> bellman_ford(const Graph& g, Vertex s, Weight inf,
                                        const std::vector<std::pair<Vertex, Vertex>>& skip = {}) {
    auto skipped = [&](Vertex a, Vertex b) {
        for (auto [x, y] : skip) {
            if (x == a && y == b) return true;
            if (!g.directed() && x == b && y == a) return true;
        }
        return false;
    };
    std::vector<Weight> d(g.n(), inf);
    d[s] = 0;
    for (Vertex it = 0; it < g.n(); ++it) {
        bool changed = false;
        for (Vertex u = 0; u < g.n(); ++u) {
            if (d[u] >= inf) continue;
            for (auto a : g.out(u)) {
                if (skipped(u, a.to)) continue;
                if (d[u] + a.w < d[a.to]) {
                    d[a.to] = d[u] + a.w;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    return d;
}

// Hop distances over the communication graph (or out-arcs when `directed`).
inline std::vector<Weight> bfs(const Graph& g, Vertex s, bool follow_direction, Weight inf,
                               const std::vector<std::pair<Vertex, Vertex>>& skip = {}) {
    std::vector<Weight> d(g.n(), inf);
    std::deque<Vertex> q{s};
    d[s] = 0;
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop_front();
        auto visit = [&](Vertex v) {
            for (auto [x, y] : skip)
                if ((x == u && y == v) || (!g.directed() && x == v && y == u)) return;
            if (d[v] == inf) {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
        };
        if (follow_direction)
            for (auto a : g.out(u)) visit(a.to);
        else
            for (auto v : g.neighbors(u)) visit(v);
    }
    return d;
}

// Replacement weights by edge deletion plus Bellman-Ford.
inline std::vector<Weight> rpaths_by_deletion(const Graph& g, const congest::PathSpec& p) {
    std::vector<Weight> out;
    for (int j = 0; j < p.hops; ++j) {
        auto d = bellman_ford(g, p.s, g.infinity(), {{p.vertices[j], p.vertices[j + 1]}});
        out.push_back(d[p.t]);
    }
    return out;
}

// ANSC by deleting each incident edge and closing it with a shortest path.
inline std::vector<Weight> ansc_by_deletion(const Graph& g) {
    const Weight inf = g.infinity();
    std::vector<Weight> best(g.n(), inf);
    for (const auto& e : g.edges()) {
        if (g.directed()) {
            // cycle through e = (u,v): w + d(v,u); every vertex on it gets at most that
            auto d = bellman_ford(g, e.v, inf);
            if (d[e.u] >= inf) continue;
            Weight c = d[e.u] + e.w;
            best[e.u] = std::min(best[e.u], c);
            best[e.v] = std::min(best[e.v], c);
        } else {
            auto d = bellman_ford(g, e.v, inf, {{e.u, e.v}});
            if (d[e.u] >= inf) continue;
            Weight c = d[e.u] + e.w;
            best[e.u] = std::min(best[e.u], c);
            best[e.v] = std::min(best[e.v], c);
        }
    }
    // Per-edge closure only covers endpoints; every node on a cycle also lies on
    // an incident edge of that cycle, so the endpoint minimum is the ANSC.
    return best;
}

inline Graph parse(const std::string& text) {
    std::istringstream in(text);
    return congest::parse_graph(in);
}

inline Graph path_graph(Vertex n) {
    std::vector<congest::Edge> es;
    for (Vertex i = 0; i + 1 < n; ++i) es.push_back({i, i + 1, 1});
    return Graph::from_edges(n, false, false, es);
}

inline Graph cycle_graph(Vertex n, bool directed = false, bool weighted = false, Weight w = 1) {
    std::vector<congest::Edge> es;
    for (Vertex i = 0; i < n; ++i) es.push_back({i, (i + 1) % n, w});
    return Graph::from_edges(n, directed, weighted, es);
}

inline Graph complete_graph(Vertex n) {
    std::vector<congest::Edge> es;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) es.push_back({i, j, 1});
    return Graph::from_edges(n, false, false, es);
}

}  // namespace testing_support
