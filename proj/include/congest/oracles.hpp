#pragma once

// Sequential ground truth. Nothing here touches the simulator.

#include <vector>

#include "congest/graph.hpp"

namespace congest {

// Per path edge j = (v_j, v_{j+1}): shortest s-t distance in G - e_j, or
// g.infinity() when t becomes unreachable.
std::vector<Weight> oracle_rpaths(const Graph& g, const PathSpec& p);
// Same quantity by hop-bounded Bellman-Ford, written separately as a cross-check.
std::vector<Weight> oracle_rpaths_bellman_ford(const Graph& g, const PathSpec& p);

struct CycleOracle {
    Weight mwc = 0;
    std::vector<Weight> ansc;  // g.infinity() for vertices on no cycle
};

CycleOracle oracle_mwc_ansc(const Graph& g);
// Exhaustive simple-cycle enumeration; only for tiny graphs (n <= 12).
CycleOracle enumerate_cycles(const Graph& g);

// Girth of an undirected unweighted graph via BFS from every vertex;
// g.infinity() for forests.
Weight oracle_girth(const Graph& g);

// Minimum weight over paths of at most h hops, per target; g.infinity() if none.
std::vector<Weight> hop_limited_distances(const Graph& g, Vertex s, int h);

// Walk checks shared by tests and the harness.
Weight walk_weight(const Graph& g, const std::vector<Vertex>& walk);  // infinity() if an edge is missing
bool is_simple_path(const std::vector<Vertex>& walk);
bool walk_uses_edge(const Graph& g, const std::vector<Vertex>& walk, Vertex u, Vertex v);
// Lightest simple cycle contained in a closed walk (first == last); infinity() if none.
Weight lightest_cycle_in_walk(const Graph& g, const std::vector<Vertex>& closed_walk);

}  // namespace congest
