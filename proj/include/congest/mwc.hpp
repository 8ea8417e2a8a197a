#pragma once

// Minimum weight cycle, all-nodes shortest cycle, and their approximations.

#include <memory>
#include <string>
#include <vector>

#include "congest/graph.hpp"
#include "congest/primitives.hpp"
#include "congest/sim.hpp"

namespace congest {

// Directed exact: the cycle is edge (u, v) closed by the shortest v->u path,
// with u the vertex it is reported for.
// Undirected exact: u with the neighbour pair (v, v2) closing P_uv, (v, v2), P_{v2 u}.
// Approximate: non-tree edge (v, v2) seen from `source` at scaling `level`.
struct CycleWitness {
    Vertex u = kNoVertex;
    Vertex v = kNoVertex;
    Vertex v2 = kNoVertex;
    Vertex z = kNoVertex;  // girth refinement: outside vertex joining v and v2
    Vertex source = kNoVertex;
    int level = -1;  // 0 = unscaled
};

struct CycleResult {
    std::string algorithm;
    Weight inf = 0;
    Weight mwc = 0;         // ceiling of `estimate` for approximations
    double estimate = 0;    // +inf when acyclic
    bool approximate = false;
    double ratio_bound = 1;
    std::vector<Weight> ansc;                // exact algorithms only
    std::vector<CycleWitness> node_witness;  // per node, exact algorithms only
    CycleWitness witness;                    // for the global minimum
    std::vector<Vertex> cycle;               // closed walk for the global minimum
    int h_cyc = 0;
    Weight scaled_hops = -1;  // H^i of the winning candidate
    std::shared_ptr<const ApspTable> apsp;
    SimReport report;
};

CycleResult mwc_directed(const Graph& g, const SimConfig& cfg);
CycleResult mwc_undirected(const Graph& g, const SimConfig& cfg);
CycleResult ansc(const Graph& g, const SimConfig& cfg);
// `prob_override` >= 0 replaces the sampling probability.
CycleResult girth_approx(const Graph& g, const SimConfig& cfg, double prob_override = -1);
CycleResult mwc_undirw_approx(const Graph& g, double eps, const SimConfig& cfg);

// Closed walk through u for an exact result (first == last == u); empty when
// u lies on no cycle.
std::vector<Vertex> cycle_walk(const Graph& g, const CycleResult& r, Vertex u);

// ceil(x) clamped to [1, n].
int clamp_threshold(double x, Vertex n);

}  // namespace congest
