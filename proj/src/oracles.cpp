#include "congest/oracles.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace congest {

std::vector<Weight> oracle_rpaths(const Graph& g, const PathSpec& p) {
    std::vector<Weight> out;
    const Weight inf = g.infinity();
    for (int j = 0; j < p.hops; ++j) {
        std::pair<Vertex, Vertex> e{p.vertices[j], p.vertices[j + 1]};
        Graph h = g.without_edges(std::span(&e, 1));
        out.push_back(std::min(dijkstra_distances(h, p.s)[p.t], inf));
    }
    return out;
}

std::vector<Weight> oracle_rpaths_bellman_ford(const Graph& g, const PathSpec& p) {
    const Weight inf = g.infinity();
    std::vector<Weight> out;
    for (int j = 0; j < p.hops; ++j) {
        Vertex a = p.vertices[j], b = p.vertices[j + 1];
        std::vector<Weight> d(g.n(), inf);
        d[p.s] = 0;
        for (Vertex round = 0; round + 1 < g.n(); ++round) {
            bool changed = false;
            for (const Edge& e : g.edges()) {
                auto relax = [&](Vertex x, Vertex y) {
                    bool removed = (x == a && y == b) || (!g.directed() && x == b && y == a);
                    if (removed || d[x] >= inf) return;
                    if (d[x] + e.w < d[y]) {
                        d[y] = d[x] + e.w;
                        changed = true;
                    }
                };
                relax(e.u, e.v);
                if (!g.directed()) relax(e.v, e.u);
            }
            if (!changed) break;
        }
        out.push_back(d[p.t]);
    }
    return out;
}

CycleOracle oracle_mwc_ansc(const Graph& g) {
    const Weight inf = g.infinity();
    CycleOracle r{inf, std::vector<Weight>(g.n(), inf)};
    if (g.directed()) {
        for (Vertex x = 0; x < g.n(); ++x) {
            auto d = dijkstra_distances(g, x);
            for (const Arc& a : g.in(x)) {
                if (d[a.to] < inf) r.ansc[x] = std::min(r.ansc[x], d[a.to] + a.w);
            }
        }
    } else {
        for (const Edge& e : g.edges()) {
            std::pair<Vertex, Vertex> rm{e.u, e.v};
            auto d = dijkstra_distances(g.without_edges(std::span(&rm, 1)), e.v);
            if (d[e.u] >= inf) continue;
            // A minimum cycle through x uses some edge at x.
            Weight c = d[e.u] + e.w;
            r.ansc[e.u] = std::min(r.ansc[e.u], c);
            r.ansc[e.v] = std::min(r.ansc[e.v], c);
        }
    }
    for (Weight a : r.ansc) r.mwc = std::min(r.mwc, a);
    return r;
}

CycleOracle enumerate_cycles(const Graph& g) {
    const Weight inf = g.infinity();
    const Vertex n = g.n();
    if (n > 12) throw std::invalid_argument("enumerate_cycles is exponential; n <= 12 only");
    CycleOracle r{inf, std::vector<Weight>(n, inf)};
    std::vector<char> on(n, 0);
    std::vector<Vertex> stack;
    // Every simple cycle is visited from its smallest vertex.
    auto dfs = [&](auto&& self, Vertex start, Vertex x, Weight w) -> void {
        for (const Arc& a : g.out(x)) {
            if (a.to < start) continue;
            if (a.to == start) {
                bool ok = g.directed() ? true : stack.size() >= 3;
                if (ok) {
                    Weight c = w + a.w;
                    r.mwc = std::min(r.mwc, c);
                    for (Vertex v : stack) r.ansc[v] = std::min(r.ansc[v], c);
                }
                continue;
            }
            if (on[a.to]) continue;
            on[a.to] = 1;
            stack.push_back(a.to);
            self(self, start, a.to, w + a.w);
            stack.pop_back();
            on[a.to] = 0;
        }
    };
    for (Vertex s = 0; s < n; ++s) {
        on[s] = 1;
        stack = {s};
        dfs(dfs, s, s, 0);
        on[s] = 0;
    }
    return r;
}

Weight oracle_girth(const Graph& g) {
    if (g.directed()) throw std::invalid_argument("oracle_girth expects an undirected graph");
    const Weight inf = g.infinity();
    Weight best = inf;
    std::vector<Weight> d(g.n());
    std::vector<Vertex> parent(g.n());
    for (Vertex r = 0; r < g.n(); ++r) {
        std::fill(d.begin(), d.end(), -1);
        std::fill(parent.begin(), parent.end(), kNoVertex);
        std::queue<Vertex> q;
        d[r] = 0;
        q.push(r);
        while (!q.empty()) {
            Vertex x = q.front();
            q.pop();
            for (Vertex y : g.neighbors(x)) {
                if (d[y] < 0) {
                    d[y] = d[x] + 1;
                    parent[y] = x;
                    q.push(y);
                } else if (parent[x] != y) {
                    best = std::min(best, d[x] + d[y] + 1);
                }
            }
        }
    }
    return best;
}

std::vector<Weight> hop_limited_distances(const Graph& g, Vertex s, int h) {
    const Weight inf = g.infinity();
    std::vector<Weight> d(g.n(), inf);
    d[s] = 0;
    for (int i = 0; i < h; ++i) {
        auto next = d;
        for (Vertex x = 0; x < g.n(); ++x) {
            if (d[x] >= inf) continue;
            for (const Arc& a : g.out(x)) next[a.to] = std::min(next[a.to], d[x] + a.w);
        }
        if (next == d) break;
        d = std::move(next);
    }
    return d;
}

Weight walk_weight(const Graph& g, const std::vector<Vertex>& walk) {
    Weight total = 0;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        auto w = g.weight(walk[i], walk[i + 1]);
        if (!w) return g.infinity();
        total += *w;
    }
    return total;
}

bool is_simple_path(const std::vector<Vertex>& walk) {
    std::set<Vertex> seen(walk.begin(), walk.end());
    return seen.size() == walk.size();
}

bool walk_uses_edge(const Graph& g, const std::vector<Vertex>& walk, Vertex u, Vertex v) {
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        if (walk[i] == u && walk[i + 1] == v) return true;
        if (!g.directed() && walk[i] == v && walk[i + 1] == u) return true;
    }
    return false;
}

Weight lightest_cycle_in_walk(const Graph& g, const std::vector<Vertex>& walk) {
    const Weight inf = g.infinity();
    if (walk.size() < 2 || walk.front() != walk.back()) return inf;
    std::vector<Edge> edges;
    std::vector<Vertex> ids(walk.begin(), walk.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto local = [&](Vertex v) { return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin()); };
    std::set<std::pair<Vertex, Vertex>> seen;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        auto w = g.weight(walk[i], walk[i + 1]);
        if (!w) return inf;
        Vertex a = local(walk[i]), b = local(walk[i + 1]);
        if (a == b) continue;
        auto key = g.directed() ? std::pair{a, b} : std::pair{std::min(a, b), std::max(a, b)};
        if (seen.insert(key).second) edges.push_back({key.first, key.second, *w});
    }
    Graph sub = Graph::from_edges(static_cast<Vertex>(ids.size()), g.directed(), true, edges);
    auto r = sub.n() <= 12 ? enumerate_cycles(sub) : oracle_mwc_ansc(sub);
    return r.mwc >= sub.infinity() ? inf : r.mwc;
}

}  // namespace congest
