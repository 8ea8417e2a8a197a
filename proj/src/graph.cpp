#include "congest/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <queue>
#include <random>
#include <sstream>

namespace congest {

const char* to_string(GraphError::Kind kind) {
    switch (kind) {
        case GraphError::Kind::io: return "io";
        case GraphError::Kind::malformed_header: return "malformed header";
        case GraphError::Kind::malformed_edge: return "malformed edge";
        case GraphError::Kind::vertex_out_of_range: return "vertex id out of range";
        case GraphError::Kind::negative_weight: return "negative weight";
        case GraphError::Kind::self_loop: return "self-loop";
        case GraphError::Kind::duplicate_edge: return "duplicate edge";
        case GraphError::Kind::disconnected: return "disconnected underlying graph";
        case GraphError::Kind::overflow: return "weight overflow";
        case GraphError::Kind::invalid_argument: return "invalid argument";
    }
    return "unknown";
}

namespace {

[[noreturn]] void fail(GraphError::Kind kind, const std::string& detail) {
    throw GraphError(kind, std::string(to_string(kind)) + ": " + detail);
}

}  // namespace

Graph Graph::from_edges(Vertex n, bool directed, bool weighted, std::vector<Edge> edges) {
    if (n < 0) fail(GraphError::Kind::invalid_argument, "negative vertex count");
    Graph g;
    g.n_ = n;
    g.directed_ = directed;
    g.weighted_ = weighted;
    g.max_weight_ = weighted ? 0 : 1;
    for (auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
            fail(GraphError::Kind::vertex_out_of_range,
                 "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") with n=" + std::to_string(n));
        }
        if (e.u == e.v) fail(GraphError::Kind::self_loop, "vertex " + std::to_string(e.u));
        if (e.w < 0) fail(GraphError::Kind::negative_weight, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        if (!weighted) e.w = 1;
        if (!directed && e.u > e.v) std::swap(e.u, e.v);
        g.max_weight_ = std::max(g.max_weight_, e.w);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
            fail(GraphError::Kind::duplicate_edge,
                 "(" + std::to_string(edges[i].u) + "," + std::to_string(edges[i].v) + ")");
        }
    }
    if (g.max_weight_ > 0 && static_cast<double>(n) * static_cast<double>(g.max_weight_) > 4e18) {
        fail(GraphError::Kind::overflow, "n*W exceeds the sentinel range");
    }
    g.edges_ = std::move(edges);
    g.out_.assign(n, {});
    g.in_.assign(n, {});
    g.nbrs_.assign(n, {});
    for (const auto& e : g.edges_) {
        g.out_[e.u].push_back({e.v, e.w});
        g.in_[e.v].push_back({e.u, e.w});
        if (!directed) {
            g.out_[e.v].push_back({e.u, e.w});
            g.in_[e.u].push_back({e.v, e.w});
        }
        g.nbrs_[e.u].push_back(e.v);
        g.nbrs_[e.v].push_back(e.u);
    }
    auto by_to = [](const Arc& a, const Arc& b) { return a.to < b.to; };
    for (Vertex v = 0; v < n; ++v) {
        std::sort(g.out_[v].begin(), g.out_[v].end(), by_to);
        std::sort(g.in_[v].begin(), g.in_[v].end(), by_to);
        auto& nb = g.nbrs_[v];
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return g;
}

std::optional<Weight> Graph::weight(Vertex u, Vertex v) const {
    if (u < 0 || u >= n_) return std::nullopt;
    const auto& arcs = out_[u];
    auto it = std::lower_bound(arcs.begin(), arcs.end(), v, [](const Arc& a, Vertex x) { return a.to < x; });
    if (it == arcs.end() || it->to != v) return std::nullopt;
    return it->w;
}

bool Graph::connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    Vertex count = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex u : nbrs_[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == n_;
}

void Graph::require_connected() const {
    if (!connected()) fail(GraphError::Kind::disconnected, "n=" + std::to_string(n_));
}

Graph Graph::reversed() const {
    if (!directed_) return *this;
    std::vector<Edge> es;
    es.reserve(edges_.size());
    for (const auto& e : edges_) es.push_back({e.v, e.u, e.w});
    Graph r = from_edges(n_, directed_, weighted_, std::move(es));
    r.max_weight_ = max_weight_;
    return r;
}

Graph Graph::without_edges(std::span<const std::pair<Vertex, Vertex>> removed) const {
    auto matches = [&](const Edge& e) {
        for (const auto& [a, b] : removed) {
            if (e.u == a && e.v == b) return true;
            if (!directed_ && e.u == b && e.v == a) return true;
        }
        return false;
    };
    std::vector<Edge> es;
    for (const auto& e : edges_) {
        if (!matches(e)) es.push_back(e);
    }
    Graph r = from_edges(n_, directed_, weighted_, std::move(es));
    // Keep the sentinel of the parent graph so results stay comparable.
    r.max_weight_ = max_weight_;
    return r;
}

int PathSpec::index_of(Vertex v) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] == v) return static_cast<int>(i);
    }
    return -1;
}

PathSpec make_path(const Graph& g, std::vector<Vertex> vertices) {
    if (vertices.size() < 2) fail(GraphError::Kind::invalid_argument, "path needs at least two vertices");
    PathSpec p;
    p.s = vertices.front();
    p.t = vertices.back();
    p.hops = static_cast<int>(vertices.size()) - 1;
    std::vector<char> seen(g.n(), 0);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        Vertex v = vertices[i];
        if (v < 0 || v >= g.n()) fail(GraphError::Kind::vertex_out_of_range, "path vertex " + std::to_string(v));
        if (seen[v]) fail(GraphError::Kind::invalid_argument, "path repeats vertex " + std::to_string(v));
        seen[v] = 1;
        if (i + 1 < vertices.size()) {
            auto w = g.weight(v, vertices[i + 1]);
            if (!w) {
                fail(GraphError::Kind::invalid_argument,
                     "path edge (" + std::to_string(v) + "," + std::to_string(vertices[i + 1]) + ") missing");
            }
            p.weight += *w;
        }
    }
    p.vertices = std::move(vertices);
    if (dijkstra_distances(g, p.s)[p.t] != p.weight) {
        fail(GraphError::Kind::invalid_argument, "path is not a shortest s-t path");
    }
    return p;
}

Graph parse_graph(std::istream& in) {
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.push_back(line);
    }
    if (lines.empty()) fail(GraphError::Kind::malformed_header, "empty file");
    std::istringstream header(lines[0]);
    long long n = -1, m = -1;
    std::string dir, wt, extra;
    if (!(header >> n >> m >> dir >> wt) || (header >> extra) || n < 0 || m < 0 ||
        (dir != "directed" && dir != "undirected") || (wt != "weighted" && wt != "unweighted")) {
        fail(GraphError::Kind::malformed_header, "'" + lines[0] + "'");
    }
    bool directed = dir == "directed";
    bool weighted = wt == "weighted";
    if (static_cast<long long>(lines.size()) - 1 != m) {
        fail(GraphError::Kind::malformed_header,
             "declared " + std::to_string(m) + " edges, found " + std::to_string(lines.size() - 1));
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        long long u = 0, v = 0, w = 1;
        if (!(row >> u >> v)) fail(GraphError::Kind::malformed_edge, "'" + lines[i] + "'");
        if (weighted && !(row >> w)) fail(GraphError::Kind::malformed_edge, "missing weight in '" + lines[i] + "'");
        if (row >> extra) fail(GraphError::Kind::malformed_edge, "trailing data in '" + lines[i] + "'");
        if (u < 0 || v < 0 || u >= n || v >= n) {
            fail(GraphError::Kind::vertex_out_of_range, "edge '" + lines[i] + "' with n=" + std::to_string(n));
        }
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
    }
    Graph g = Graph::from_edges(static_cast<Vertex>(n), directed, weighted, std::move(edges));
    g.require_connected();
    return g;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(GraphError::Kind::io, "cannot open " + path);
    return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.n() << ' ' << g.m() << ' ' << (g.directed() ? "directed" : "undirected") << ' '
        << (g.weighted() ? "weighted" : "unweighted") << '\n';
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v;
        if (g.weighted()) out << ' ' << e.w;
        out << '\n';
    }
}

std::string graph_to_string(const Graph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

void save_graph(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) fail(GraphError::Kind::io, "cannot write " + path);
    write_graph(out, g);
}

std::vector<Vertex> parse_path(std::istream& in) {
    std::vector<Vertex> vs;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        long long v = 0;
        while (row >> v) vs.push_back(static_cast<Vertex>(v));
        if (!vs.empty()) break;
    }
    return vs;
}

std::vector<Vertex> load_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(GraphError::Kind::io, "cannot open " + path);
    return parse_path(in);
}

Graph random_graph(Vertex n, double p, bool weighted, bool directed, Weight max_w, std::uint64_t seed) {
    if (n <= 0) fail(GraphError::Kind::invalid_argument, "n must be positive");
    if (!(p > 0.0 && p <= 1.0)) fail(GraphError::Kind::invalid_argument, "p must lie in (0,1]");
    if (weighted && max_w < 1) fail(GraphError::Kind::invalid_argument, "W must be >= 1");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::uniform_int_distribution<Weight> wdist(1, weighted ? max_w : 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = directed ? 0 : u + 1; v < n; ++v) {
                if (u == v) continue;
                if (coin(rng)) edges.push_back({u, v, wdist(rng)});
            }
        }
        Graph g = Graph::from_edges(n, directed, weighted, std::move(edges));
        if (g.connected()) return g;
    }
    fail(GraphError::Kind::disconnected, "random_graph: no connected sample within 64 attempts");
}

Weight scaled_weight(Weight w, int level, double eps, double hop_param) {
    if (w == 0) return 0;
    long double num = 2.0L * hop_param * static_cast<long double>(w);
    long double den = static_cast<long double>(eps) * std::ldexp(1.0L, level);
    long double q = num / den;
    // Absorb floating error when q is mathematically an integer.
    long double c = std::ceil(q - 1e-9L * std::max(1.0L, q));
    if (c > 1e15L) fail(GraphError::Kind::overflow, "scaled weight beyond sentinel range");
    return static_cast<Weight>(c);
}

Graph scale_weights(const Graph& g, int level, double eps, double hop_param) {
    if (!g.weighted()) fail(GraphError::Kind::invalid_argument, "scale_weights needs a weighted graph");
    if (!(eps > 0) || hop_param < 1 || level < 1) fail(GraphError::Kind::invalid_argument, "scale_weights parameters");
    std::vector<Edge> es;
    es.reserve(g.m());
    for (const auto& e : g.edges()) es.push_back({e.u, e.v, scaled_weight(e.w, level, eps, hop_param)});
    return Graph::from_edges(g.n(), g.directed(), true, std::move(es));
}

namespace {

// Dijkstra keyed on (weight, hops) so that zero-weight ties still make progress.
struct DistHops {
    Weight d;
    int hops;
    auto operator<=>(const DistHops&) const = default;
};

std::vector<DistHops> dijkstra_dh(const Graph& g, Vertex s, bool reverse) {
    const Weight inf = g.infinity();
    std::vector<DistHops> dist(g.n(), {inf, 0});
    using Item = std::pair<DistHops, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = {0, 0};
    pq.push({dist[s], s});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d != dist[v]) continue;
        for (const Arc& a : reverse ? g.in(v) : g.out(v)) {
            DistHops nd{sat_add(d.d, a.w, inf), d.hops + 1};
            if (nd.d < inf && nd < dist[a.to]) {
                dist[a.to] = nd;
                pq.push({nd, a.to});
            }
        }
    }
    return dist;
}

}  // namespace

std::vector<Weight> dijkstra_distances(const Graph& g, Vertex s) {
    auto dh = dijkstra_dh(g, s, false);
    std::vector<Weight> d(dh.size());
    for (std::size_t i = 0; i < dh.size(); ++i) d[i] = dh[i].d;
    return d;
}

ShortestPath shortest_path_oracle(const Graph& g, Vertex s, Vertex t) {
    const Weight inf = g.infinity();
    auto to_t = dijkstra_dh(g, t, true);
    if (to_t[s].d >= inf) return {inf, {}};
    ShortestPath sp{to_t[s].d, {s}};
    Vertex cur = s;
    while (cur != t) {
        Vertex next = kNoVertex;
        for (const Arc& a : g.out(cur)) {  // sorted by id: first match is smallest
            if (to_t[a.to].d < inf && a.w + to_t[a.to].d == to_t[cur].d && to_t[a.to].hops + 1 == to_t[cur].hops) {
                next = a.to;
                break;
            }
        }
        cur = next;
        sp.vertices.push_back(cur);
    }
    return sp;
}

}  // namespace congest
