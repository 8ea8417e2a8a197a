#pragma once

// Distributed replacement paths and second simple shortest path.

#include <string>
#include <vector>

#include "congest/graph.hpp"
#include "congest/primitives.hpp"
#include "congest/sim.hpp"

namespace congest {

enum class WitnessKind {
    none,    // no replacement path
    detour,  // deviate at path vertex a, rejoin at path vertex b
    type1,   // P_s(s,u) then P_t(u,t)
    type2    // P_s(s,u), edge (u,v), P_t(v,t)
};

struct RPathWitness {
    WitnessKind kind = WitnessKind::none;
    Vertex a = kNoVertex;  // deviation vertex on P_st
    Vertex b = kNoVertex;  // merge vertex on P_st
    Vertex u = kNoVertex;
    Vertex v = kNoVertex;
};

struct RPathsResult {
    std::string algorithm;
    PathSpec path;
    Weight inf = 0;  // sentinel of the input graph
    // weight[j] is the replacement weight for edge (v_j, v_{j+1}).
    std::vector<Weight> weight;
    // Approximate variants only: the (1+eps) estimate; weight[] then holds its ceiling.
    std::vector<double> estimate;
    std::vector<RPathWitness> witness;
    // The replacement path each witness expands to (empty when none).
    std::vector<std::vector<Vertex>> routes;
    int h_rep = 0;
    Weight sisp2 = 0;
    // rp-undir only: parent pointers of the s- and t-rooted trees (both contain P_st).
    std::vector<Vertex> tree_s;
    std::vector<Vertex> tree_t;
    SimReport report;

    // Parameters used by the sampling variants.
    double h_param = 0;
    double p_param = 0;
    std::size_t sample_size = 0;
};

Weight sisp2(const RPathsResult& r);

// Exact, directed weighted: reduction graph plus APSP.
RPathsResult rpaths_dirw_apsp(const Graph& g, const PathSpec& p, const SimConfig& cfg);
// Exact, directed: one SSSP per path edge with that edge removed.
RPathsResult rpaths_iterated_sssp(const Graph& g, const PathSpec& p, const SimConfig& cfg);
// Directed unweighted, sampling with hop-limited BFS. Correct w.h.p.
// `prob_override` >= 0 replaces the sampling probability (used to provoke failures).
RPathsResult rpaths_dirunw_sampling(const Graph& g, const PathSpec& p, const SimConfig& cfg,
                                    double prob_override = -1);
// Directed weighted, (1+eps)-approximate.
RPathsResult rpaths_dirw_approx(const Graph& g, const PathSpec& p, double eps, const SimConfig& cfg,
                                double prob_override = -1);
// Undirected, weighted or unweighted, exact.
RPathsResult rpaths_undirected(const Graph& g, const PathSpec& p, const SimConfig& cfg);

// Sampling parameters: returns {h, p} with h = n / p.
std::pair<double, double> sampling_parameters(Vertex n, int h_st);

// Explicit reduction graph G' used by the APSP algorithm; exposed so tests can
// run a sequential oracle on it. Vertices n.. are z_{j_o} (n + 2j) and z_{j_i} (n + 2j + 1).
struct ReductionGraph {
    Graph graph;
    std::vector<Vertex> host;
    Vertex z_out(int j) const { return base_n + 2 * j; }
    Vertex z_in(int j) const { return base_n + 2 * j + 1; }
    Vertex base_n = 0;
};

ReductionGraph build_reduction_graph(const Graph& g, const PathSpec& p, const std::vector<Weight>& from_s,
                                     const std::vector<Weight>& to_t);

}  // namespace congest
