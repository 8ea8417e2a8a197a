#pragma once

// Graph representation shared by the simulator, the distributed algorithms
// and the sequential oracles.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace congest {

using Vertex = std::int32_t;
using Weight = std::int64_t;

constexpr Vertex kNoVertex = -1;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Weight w = 1;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Arc {
    Vertex to = 0;
    Weight w = 1;
};

class GraphError : public std::runtime_error {
  public:
    enum class Kind {
        io,
        malformed_header,
        malformed_edge,
        vertex_out_of_range,
        negative_weight,
        self_loop,
        duplicate_edge,
        disconnected,
        overflow,
        invalid_argument,
    };

    GraphError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

const char* to_string(GraphError::Kind kind);

// Saturating addition against a sentinel: anything reaching `inf` stays `inf`.
inline Weight sat_add(Weight a, Weight b, Weight inf) {
    if (a >= inf || b >= inf) return inf;
    Weight s = a + b;
    return s >= inf ? inf : s;
}

// Immutable adjacency structure. Vertex ids are 0..n-1. Undirected graphs store
// each edge once with u < v; adjacency lists hold both orientations.
class Graph {
  public:
    Graph() = default;

    // Validates ids, weights, self-loops and duplicates. Connectivity is a
    // separate check (see require_connected) because oracle-only gadgets may
    // legitimately be disconnected.
    static Graph from_edges(Vertex n, bool directed, bool weighted, std::vector<Edge> edges);

    Vertex n() const { return n_; }
    std::size_t m() const { return edges_.size(); }
    bool directed() const { return directed_; }
    bool weighted() const { return weighted_; }
    Weight max_weight() const { return max_weight_; }

    // Sentinel strictly greater than any simple-path weight: n*W + 1.
    Weight infinity() const { return static_cast<Weight>(n_) * max_weight_ + 1; }

    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Arc> out(Vertex v) const { return out_[v]; }
    std::span<const Arc> in(Vertex v) const { return in_[v]; }
    // Communication neighbours: underlying undirected adjacency, sorted.
    std::span<const Vertex> neighbors(Vertex v) const { return nbrs_[v]; }

    std::optional<Weight> weight(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const { return weight(u, v).has_value(); }

    bool connected() const;
    void require_connected() const;

    // Same vertex set with every arc flipped (identity on undirected graphs).
    Graph reversed() const;
    // Copy with the listed arcs removed (orientation ignored on undirected graphs).
    Graph without_edges(std::span<const std::pair<Vertex, Vertex>> removed) const;

  private:
    Vertex n_ = 0;
    bool directed_ = false;
    bool weighted_ = false;
    Weight max_weight_ = 1;
    std::vector<Edge> edges_;
    std::vector<std::vector<Arc>> out_;
    std::vector<std::vector<Arc>> in_;
    std::vector<std::vector<Vertex>> nbrs_;
};

// The fixed shortest s-t path the replacement-path algorithms work against.
struct PathSpec {
    Vertex s = 0;
    Vertex t = 0;
    std::vector<Vertex> vertices;
    int hops = 0;
    Weight weight = 0;

    // Index of v on the path or -1.
    int index_of(Vertex v) const;
};

// Builds a PathSpec and checks edges exist and the weight is optimal.
PathSpec make_path(const Graph& g, std::vector<Vertex> vertices);

// Edge-list text format.
Graph parse_graph(std::istream& in);
Graph load_graph(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
std::string graph_to_string(const Graph& g);
void save_graph(const std::string& path, const Graph& g);

std::vector<Vertex> parse_path(std::istream& in);
std::vector<Vertex> load_path(const std::string& path);

// Erdos-Renyi style generator; re-samples (up to 64 attempts) until the
// underlying graph is connected.
Graph random_graph(Vertex n, double p, bool weighted, bool directed, Weight max_w, std::uint64_t seed);

// w^i(x,y) = ceil(2h * w(x,y) / (eps * 2^i)).
Weight scaled_weight(Weight w, int level, double eps, double hop_param);
Graph scale_weights(const Graph& g, int level, double eps, double hop_param);

struct ShortestPath {
    Weight weight = 0;
    std::vector<Vertex> vertices;  // empty when unreachable
};

// Sequential Dijkstra over out-arcs. Ties prefer the lexicographically smallest
// next hop out of s. Unreachable targets report g.infinity().
ShortestPath shortest_path_oracle(const Graph& g, Vertex s, Vertex t);
std::vector<Weight> dijkstra_distances(const Graph& g, Vertex s);

}  // namespace congest
