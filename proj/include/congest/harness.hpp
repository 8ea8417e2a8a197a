#pragma once

// Experiment plumbing behind the command line tool: instance specs, running an
// algorithm with optional oracle verification, scaling benchmarks and the
// registered corpora.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "congest/gadgets.hpp"
#include "congest/graph.hpp"
#include "congest/mwc.hpp"
#include "congest/reconstruct.hpp"
#include "congest/rpaths.hpp"
#include "congest/sim.hpp"

namespace congest {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;
inline constexpr const char* kBudgetEnv = "CONGEST_MAX_ROUNDS";

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitUsage = 2,
    kExitBudget = 3,
    kExitBandwidth = 4,
    kExitInput = 5,
    kExitInternal = 6,
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class AlgoKind { rpaths, cycle };

struct AlgoInfo {
    std::string id;
    AlgoKind kind;
    bool approximate;
    bool needs_directed;    // false: needs undirected (unless any_direction)
    bool any_direction;
    bool needs_unweighted;
};

const std::vector<AlgoInfo>& algorithms();
const AlgoInfo& algorithm(const std::string& id);  // UsageError when unknown

// Graph sources:
//   random:n=32,p=0.2,seed=7[,w=100][,dir=1]   (w=1 means unweighted; dir defaults per request)
//   dag:n=256,hst=8[,band=4][,seed=1]          (directed unweighted, banded, with a sink)
//   gadget:family=dirw-rpaths,k=3[,seed=1][,intersect=1][,q=4][,sink=1]
//   file:path/to/graph.txt
// rpaths algorithms also need P_st: taken from the gadget, from `path_file`,
// from s=/t= keys, or else the hop-longest shortest path out of vertex 0 (at
// most `max_hops` hops).
struct InstanceRequest {
    std::string graph;
    std::string path_file;
    std::optional<Vertex> s;
    std::optional<Vertex> t;
    int max_hops = 12;
    // Orientation of random: graphs that carry no dir= key.
    bool default_directed = false;
};

struct Instance {
    std::string spec;
    Graph graph;
    std::optional<PathSpec> path;
    std::optional<GadgetSpec> gadget;
};

Instance make_instance(const InstanceRequest& req, bool need_path);
// Shortest path from s to the vertex whose (tie-broken) shortest path has the
// most hops, capped at `max_hops`; nullopt if nothing is reachable.
std::optional<PathSpec> longest_hop_path(const Graph& g, Vertex s, int max_hops);

// Random instance generators used by corpora and acceptance checks.
Graph banded_dag(Vertex n, int hst, int band, std::uint64_t seed);

struct RunOptions {
    std::string algo;
    double eps = 0.25;
    bool verify = false;
    SimConfig cfg;
    double prob_override = -1;
};

struct RunOutcome {
    Json report;
    bool verified = false;
    bool pass = true;
    std::vector<std::string> failures;
    std::optional<RPathsResult> rpaths;
    std::optional<CycleResult> cycle;
};

RunOutcome run_algorithm(const Instance& inst, const RunOptions& opt);

// Oracle comparison on its own; returns failure descriptions (empty = pass).
std::vector<std::string> verify_rpaths(const Graph& g, const RPathsResult& r, double eps);
std::vector<std::string> verify_cycle(const Graph& g, const CycleResult& r, double eps);

struct RouteRequest {
    std::pair<Vertex, Vertex> failed;
    std::string mode = "table";
};
RunOutcome run_route(const Instance& inst, const RunOptions& opt, const RouteRequest& req);
RunOutcome run_cycle_construction(const Instance& inst, const RunOptions& opt, Vertex through, CycleMode mode);

struct BenchRow {
    Vertex n = 0;
    std::vector<Round> rounds;  // one per seed
    Round median = 0;
};

struct BenchResult {
    std::string algo;
    std::vector<BenchRow> rows;
    std::optional<double> slope;  // least squares on (log n, log median)
};

struct BenchOptions {
    std::string algo;
    std::vector<Vertex> sizes;
    int seeds = 5;
    int hst = 8;
    double eps = 0.25;
    SimConfig cfg;
};

BenchResult run_bench(const BenchOptions& opt);
std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& points);
Json to_json(const BenchResult& b);

struct SuiteResult {
    std::string corpus;
    int cases = 0;
    int passed = 0;
    std::vector<std::string> failures;
    Json summary;
};

const std::vector<std::string>& corpora();
// `scale` multiplies the per-family seed counts (1 = default size).
SuiteResult run_suite(const std::string& corpus, const SimConfig& cfg, int scale = 1);

// key: value lines for the scalar members, then the JSON block.
std::string render_report(const Json& report);

// Round budget: explicit value, else the environment variable, else the default.
Round resolve_budget(std::optional<Round> explicit_budget);

Json to_json(const SimReport& r);
Json to_json(const RouteTrace& t);

}  // namespace congest
