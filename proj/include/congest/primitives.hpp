#pragma once

// Distributed building blocks. Every function here runs one or more
// NodePrograms under the simulator and returns both the per-node outputs and
// the SimReport of the execution.

#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "congest/graph.hpp"
#include "congest/sim.hpp"

namespace congest {

enum class Traversal {
    out_arcs,   // follow edge direction: distances from the sources
    in_arcs,    // against edge direction: distances to the sources
    underlying  // communication graph, unit weights
};

enum class QueueOrder {
    by_distance,  // (distance, source id): pipelined BFS / source detection
    by_source     // (source id): staggered weighted Bellman-Ford
};

using ArcList = std::vector<std::pair<Vertex, Vertex>>;

struct RelaxParams {
    std::vector<Vertex> sources;
    Traversal traversal = Traversal::out_arcs;
    bool unit_weights = false;
    // Crossing an arc of weight w takes max(w, 1) rounds (subdivided edges).
    bool delayed = false;
    // Candidates above this distance are dropped (hop limit under unit weights).
    Weight dist_limit = std::numeric_limits<Weight>::max();
    // Keep only the R best (distance, source) entries per node.
    std::size_t top_r = std::numeric_limits<std::size_t>::max();
    QueueOrder order = QueueOrder::by_distance;
    // Source i starts transmitting in round i + 1.
    bool stagger = false;
    // Arcs never relaxed (orientation ignored on undirected topologies).
    ArcList forbidden;
};

// Multi-source distances, one row per source. dist() reports `inf` for
// pairs that were never reached (or were evicted by top_r).
class MultiSourceResult {
  public:
    MultiSourceResult() = default;
    MultiSourceResult(std::vector<Vertex> sources, Vertex n, Weight inf);

    const std::vector<Vertex>& sources() const { return sources_; }
    Vertex n() const { return n_; }
    Weight inf() const { return inf_; }
    int slot(Vertex source) const { return slot_of_[source]; }

    Weight dist(Vertex source, Vertex v) const { return dist_[index(source, v)]; }
    // Predecessor of v on the chosen path from the source (kNoVertex at the source).
    Vertex parent(Vertex source, Vertex v) const { return parent_[index(source, v)]; }
    // First vertex after the source on the chosen path (kNoVertex at the source).
    Vertex first(Vertex source, Vertex v) const { return first_[index(source, v)]; }

    void set(Vertex source, Vertex v, Weight d, Vertex parent, Vertex first);

    SimReport report;

  private:
    std::size_t index(Vertex source, Vertex v) const {
        return static_cast<std::size_t>(slot_of_[source]) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
    }
    std::vector<Vertex> sources_;
    std::vector<int> slot_of_;
    Vertex n_ = 0;
    Weight inf_ = 0;
    std::vector<Weight> dist_;
    std::vector<Vertex> parent_;
    std::vector<Vertex> first_;
};

// Generic pipelined multi-source relaxation on an arbitrary hosted topology.
// Unreachable entries carry `inf`.
MultiSourceResult relax(const Network& net, const RelaxParams& params, Weight inf, const SimConfig& cfg);

struct TreeResult {
    std::vector<Weight> dist;
    std::vector<Vertex> parent;
    int eccentricity = 0;
    SimReport report;
};

// BFS over the communication graph; the root's eccentricity doubles as the
// diameter estimate used by later phases.
TreeResult bfs_tree(const Graph& g, Vertex root, const SimConfig& cfg);

MultiSourceResult hop_limited_bfs(const Graph& g, const std::vector<Vertex>& sources, int hops, bool respect_direction,
                                  const ArcList& forbidden, const SimConfig& cfg);

// BFS in the graph where every edge is subdivided into w(x,y) unit edges,
// truncated at `hop_limit` subdivided hops.
MultiSourceResult delayed_bfs(const Graph& scaled, const std::vector<Vertex>& sources, Weight hop_limit,
                              const SimConfig& cfg, std::size_t top_r = std::numeric_limits<std::size_t>::max());

// Distributed Bellman-Ford. `to_source` computes distances to the source
// (reverse arcs) instead of from it.
TreeResult sssp(const Graph& g, Vertex source, const ArcList& forbidden, const SimConfig& cfg, bool to_source = false);

struct ApspTable {
    MultiSourceResult rows;  // rows.dist(u, v) = delta_uv, rows.first(u, v) = First(u, v)

    Weight dist(Vertex u, Vertex v) const { return rows.dist(u, v); }
    Vertex first(Vertex u, Vertex v) const { return rows.first(u, v); }
    // Vertex sequence u..v obtained by chasing First pointers.
    std::vector<Vertex> path(Vertex u, Vertex v) const;
};

ApspTable apsp(const Graph& g, const SimConfig& cfg);
// APSP on a hosted topology (used for the replacement-path reduction graph).
ApspTable apsp(const Network& net, Weight inf, const SimConfig& cfg);

struct SourceEntry {
    Vertex source = 0;
    Weight dist = 0;
    Vertex parent = kNoVertex;
};

struct SourceDetectionTable {
    std::size_t r = 0;
    int h = 0;
    std::vector<std::vector<SourceEntry>> lists;  // per node, sorted by (dist, source)
    SimReport report;
};

SourceDetectionTable source_detection(const Graph& g, const std::vector<Vertex>& sources, std::size_t r, int h,
                                      const SimConfig& cfg);

struct ApproxDistances {
    std::vector<Vertex> sources;
    // estimate[slot][v]; +infinity when no path within the hop budget.
    std::vector<std::vector<double>> estimate;
    // Where each estimate came from: level 0 means an exact unit-weight hop
    // distance, otherwise the scaled distance at that level.
    std::vector<std::vector<int>> level;
    std::vector<std::vector<Weight>> scaled;
    std::vector<std::vector<Vertex>> parent;
    int levels = 0;
    int h = 0;
    double eps = 0;
    SimReport report;

    double at(Vertex source, Vertex v) const;
    // Rescales a (level, scaled distance) pair back to an estimate.
    double value(int lvl, Weight d) const;
};

// (1+eps)-approximate h-hop distances by weight scaling and delayed BFS.
ApproxDistances approx_msssp(const Graph& g, const std::vector<Vertex>& sources, int h, double eps,
                             const ArcList& forbidden, const SimConfig& cfg);

enum class Combine { min, sum };

struct AggregateResult {
    std::vector<Weight> values;  // identical at every node after the broadcast
    SimReport report;
};

// Pipelined convergecast of k slots over the tree followed by a pipelined
// broadcast from the root. values[v] has k entries per node.
AggregateResult broadcast_aggregate(const Graph& g, const TreeResult& tree, Vertex root,
                                    const std::vector<std::vector<Weight>>& values, Combine combine, Weight identity,
                                    const SimConfig& cfg);

struct GatherResult {
    std::vector<Word> items;  // every node ends up with this list
    SimReport report;
};

// Upcast of arbitrary per-node words to the root, then broadcast of the whole
// list to every node.
GatherResult broadcast_concat(const Graph& g, const TreeResult& tree, Vertex root,
                              const std::vector<std::vector<Word>>& items, const SimConfig& cfg);

// Every node streams its row of words to each neighbour (one word per edge
// per round). `deliver(at, from, word)` sees each word on arrival.
SimReport neighbour_exchange(const Graph& g, const std::vector<std::vector<Word>>& rows,
                             const std::function<void(Vertex, Vertex, const Word&)>& deliver, const SimConfig& cfg);

struct SampleResult {
    std::vector<char> member;
    std::vector<Vertex> set;
    SimReport report;  // includes the count announcement
};

SampleResult sample_vertices(const Graph& g, double prob, const TreeResult& tree, Vertex root, const SimConfig& cfg);

// min(1, 2 ln n / h).
double sampling_probability(Vertex n, double h);

}  // namespace congest
