#pragma once

// Turning computed weights into actual paths and cycles: routing tables
// derived from broadcast witnesses, and on-the-fly construction that keeps
// almost nothing at the nodes.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "congest/graph.hpp"
#include "congest/mwc.hpp"
#include "congest/rpaths.hpp"
#include "congest/sim.hpp"

namespace congest {

class TableCorruption : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RoutingTable {
    std::string algorithm;
    PathSpec path;
    Weight inf = 0;
    std::vector<Weight> weight;  // per path edge, as reported by the algorithm
    int h_rep = 0;
    // next[v][j]: where v forwards a message when path edge j has failed.
    // Absent when v is not on that replacement path.
    std::vector<std::map<int, Vertex>> next;
    SimReport report;  // witness broadcast

    std::size_t max_entries() const;
};

struct CycleTable {
    Weight inf = 0;
    std::vector<Weight> ansc;
    // next[x][u]: successor of x on the cycle stored for u.
    std::vector<std::map<Vertex, Vertex>> next;
    SimReport report;
};

struct RouteTrace {
    std::string mode;
    std::pair<Vertex, Vertex> failed{kNoVertex, kNoVertex};
    Vertex through = kNoVertex;  // cycles
    bool found = false;          // false: no replacement path / no cycle
    std::vector<Vertex> vertices;
    Weight weight = 0;
    Round rounds = 0;            // failure injection (or start) until arrival
    Round notify_rounds = 0;     // until s knows about the failure / setup done
    Round traversal_rounds = 0;  // message hops along the route
    std::size_t max_storage = 0; // persistent entries per node, s excluded
    SimReport report;
};

enum class CycleMode { table, onfly };

std::string to_string(CycleMode m);
CycleMode parse_cycle_mode(const std::string& s);

RoutingTable build_rpath_tables(const Graph& g, const RPathsResult& r, const SimConfig& cfg);
// `failed` must be an edge of P_st (either orientation when undirected).
RouteTrace route_failover(const Graph& g, const RoutingTable& tables, std::pair<Vertex, Vertex> failed,
                          const SimConfig& cfg);
// Undirected only; needs the trees recorded by rpaths_undirected.
RouteTrace onfly_construct_undirected(const Graph& g, const RPathsResult& r, std::pair<Vertex, Vertex> failed,
                                      const SimConfig& cfg);

CycleTable build_cycle_tables(const Graph& g, const CycleResult& r, const SimConfig& cfg);
// Exact results only (ApspTable retained).
RouteTrace construct_cycle(const Graph& g, const CycleResult& r, Vertex u, CycleMode mode, const SimConfig& cfg);

}  // namespace congest
