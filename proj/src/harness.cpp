#include "congest/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <sstream>

#include "congest/oracles.hpp"
#include "congest/primitives.hpp"

namespace congest {

namespace {

std::map<std::string, std::string> parse_keys(const std::string& body) {
    std::map<std::string, std::string> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("expected key=value, got '" + item + "'");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

template <class T>
T key_or(const std::map<std::string, std::string>& kv, const std::string& key, T fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    std::istringstream in(it->second);
    T v{};
    if (!(in >> v) || !in.eof()) throw UsageError("bad value for '" + key + "': " + it->second);
    return v;
}

template <class T>
T key_req(const std::map<std::string, std::string>& kv, const std::string& key, const std::string& what) {
    if (!kv.count(key)) throw UsageError(what + " needs '" + key + "='");
    return key_or<T>(kv, key, T{});
}

Json weight_json(Weight w, Weight inf) { return w >= inf ? Json("inf") : Json(w); }

Json real_json(double x) {
    if (!std::isfinite(x)) return "inf";
    return x;
}

Json vertices_json(const std::vector<Vertex>& vs) {
    Json a = Json::array();
    for (Vertex v : vs) a.push_back(v);
    return a;
}

const char* kind_name(WitnessKind k) {
    switch (k) {
        case WitnessKind::none: return "none";
        case WitnessKind::detour: return "detour";
        case WitnessKind::type1: return "type1";
        case WitnessKind::type2: return "type2";
    }
    return "?";
}

Json opt_vertex(Vertex v) { return v == kNoVertex ? Json(nullptr) : Json(v); }

Json rpaths_json(const RPathsResult& r) {
    Json j;
    j["path"] = {{"s", r.path.s},
                 {"t", r.path.t},
                 {"hops", r.path.hops},
                 {"weight", r.path.weight},
                 {"vertices", vertices_json(r.path.vertices)}};
    Json ws = Json::array();
    for (Weight w : r.weight) ws.push_back(weight_json(w, r.inf));
    j["replacement_weights"] = ws;
    if (!r.estimate.empty()) {
        Json es = Json::array();
        for (double e : r.estimate) es.push_back(real_json(e));
        j["estimates"] = es;
    }
    j["sisp2"] = weight_json(r.sisp2, r.inf);
    j["h_rep"] = r.h_rep;
    if (r.h_param > 0) {
        j["h_param"] = r.h_param;
        j["p_param"] = r.p_param;
        j["sample_size"] = r.sample_size;
    }
    Json wit = Json::array();
    for (const auto& w : r.witness) {
        wit.push_back({{"kind", kind_name(w.kind)},
                       {"a", opt_vertex(w.a)},
                       {"b", opt_vertex(w.b)},
                       {"u", opt_vertex(w.u)},
                       {"v", opt_vertex(w.v)}});
    }
    j["witnesses"] = wit;
    return j;
}

Json cycle_json(const CycleResult& r) {
    Json j;
    j["mwc"] = weight_json(r.mwc, r.inf);
    j["estimate"] = real_json(r.estimate);
    j["approximate"] = r.approximate;
    j["ratio_bound"] = r.ratio_bound;
    if (!r.ansc.empty()) {
        Json a = Json::array();
        for (Weight w : r.ansc) a.push_back(weight_json(w, r.inf));
        j["ansc"] = a;
    }
    const CycleWitness& w = r.witness;
    j["witness"] = {{"u", opt_vertex(w.u)},   {"v", opt_vertex(w.v)},           {"v2", opt_vertex(w.v2)},
                    {"z", opt_vertex(w.z)},   {"source", opt_vertex(w.source)}, {"level", w.level}};
    j["cycle"] = vertices_json(r.cycle);
    j["h_cyc"] = r.h_cyc;
    if (r.scaled_hops >= 0) j["scaled_hops"] = r.scaled_hops;
    return j;
}

Json graph_json(const Instance& inst) {
    const Graph& g = inst.graph;
    return {{"spec", inst.spec},      {"n", g.n()},
            {"m", g.m()},             {"directed", g.directed()},
            {"weighted", g.weighted()}, {"max_weight", g.max_weight()}};
}

Json config_json(const RunOptions& opt, const AlgoInfo& info) {
    Json c;
    c["algorithm"] = opt.algo;
    c["seed"] = opt.cfg.seed;
    c["c_w"] = opt.cfg.c_w;
    c["budget"] = opt.cfg.max_rounds;
    c["charge"] = opt.cfg.charge.enabled;
    if (info.approximate) c["eps"] = opt.eps;
    if (opt.prob_override >= 0) c["prob"] = opt.prob_override;
    return c;
}

void check_class(const AlgoInfo& info, const Graph& g) {
    if (!info.any_direction) {
        if (info.needs_directed && !g.directed()) throw UsageError(info.id + " needs a directed graph");
        if (!info.needs_directed && g.directed()) throw UsageError(info.id + " needs an undirected graph");
    }
    if (info.needs_unweighted) {
        for (const Edge& e : g.edges()) {
            if (e.w != 1) throw UsageError(info.id + " needs an unweighted graph");
        }
    }
}

RPathsResult dispatch_rpaths(const Graph& g, const PathSpec& p, const RunOptions& opt) {
    const std::string& a = opt.algo;
    if (a == "rp-dirw-apsp") return rpaths_dirw_apsp(g, p, opt.cfg);
    if (a == "rp-iter-sssp") return rpaths_iterated_sssp(g, p, opt.cfg);
    if (a == "rp-dirunw-sample") return rpaths_dirunw_sampling(g, p, opt.cfg, opt.prob_override);
    if (a == "rp-dirw-approx") return rpaths_dirw_approx(g, p, opt.eps, opt.cfg, opt.prob_override);
    if (a == "rp-undir") return rpaths_undirected(g, p, opt.cfg);
    throw UsageError("unknown rpaths algorithm " + a);
}

CycleResult dispatch_cycle(const Graph& g, const RunOptions& opt) {
    const std::string& a = opt.algo;
    if (a == "mwc-dir") return mwc_directed(g, opt.cfg);
    if (a == "mwc-undir") return mwc_undirected(g, opt.cfg);
    if (a == "ansc") return ansc(g, opt.cfg);
    if (a == "girth-approx") return girth_approx(g, opt.cfg, opt.prob_override);
    if (a == "mwc-wapprox") return mwc_undirw_approx(g, opt.eps, opt.cfg);
    throw UsageError("unknown cycle algorithm " + a);
}

std::string edge_name(Vertex u, Vertex v) { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }

// Checks shared by run --verify and the reconstruction corpus.
std::vector<std::string> check_trace(const Graph& g, const RPathsResult& r, const RouteTrace& t, Weight expected,
                                     bool onfly) {
    std::vector<std::string> bad;
    const std::string tag = std::string(onfly ? "onfly" : "table") + " route for " +
                            edge_name(t.failed.first, t.failed.second) + ": ";
    if (expected >= g.infinity()) {
        if (t.found) bad.push_back(tag + "found a route where none exists");
        return bad;
    }
    if (!t.found) {
        bad.push_back(tag + "reported no replacement");
        return bad;
    }
    if (t.vertices.empty() || t.vertices.front() != r.path.s || t.vertices.back() != r.path.t) {
        bad.push_back(tag + "does not run from s to t");
    }
    if (!is_simple_path(t.vertices)) bad.push_back(tag + "not simple");
    if (walk_uses_edge(g, t.vertices, t.failed.first, t.failed.second)) bad.push_back(tag + "uses the failed edge");
    if (t.weight != expected) {
        bad.push_back(tag + "weight " + std::to_string(t.weight) + " != " + std::to_string(expected));
    }
    const Round bound = r.path.hops + (onfly ? 3 : 1) * static_cast<Round>(r.h_rep);
    if (t.rounds > bound) {
        bad.push_back(tag + "took " + std::to_string(t.rounds) + " rounds > " + std::to_string(bound));
    }
    if (onfly && t.max_storage > 3) bad.push_back(tag + "stores " + std::to_string(t.max_storage) + " entries");
    return bad;
}

std::vector<std::string> check_cycle_trace(const Graph& g, const RouteTrace& t, Weight expected) {
    std::vector<std::string> bad;
    const std::string tag = t.mode + " cycle through " + std::to_string(t.through) + ": ";
    if (expected >= g.infinity()) {
        if (t.found) bad.push_back(tag + "found a cycle where none exists");
        return bad;
    }
    if (!t.found || t.vertices.size() < 3) {
        bad.push_back(tag + "missing");
        return bad;
    }
    if (t.vertices.front() != t.through || t.vertices.back() != t.through) bad.push_back(tag + "not closed at u");
    std::vector<Vertex> open(t.vertices.begin(), t.vertices.end() - 1);
    if (!is_simple_path(open)) bad.push_back(tag + "not simple");
    if (t.weight != expected) {
        bad.push_back(tag + "weight " + std::to_string(t.weight) + " != " + std::to_string(expected));
    }
    if (t.traversal_rounds != static_cast<Round>(open.size())) {
        bad.push_back(tag + "traversal took " + std::to_string(t.traversal_rounds) + " rounds for " +
                      std::to_string(open.size()) + " hops");
    }
    return bad;
}

}  // namespace

const std::vector<AlgoInfo>& algorithms() {
    static const std::vector<AlgoInfo> list = {
        {"rp-dirw-apsp", AlgoKind::rpaths, false, true, false, false},
        {"rp-iter-sssp", AlgoKind::rpaths, false, true, false, false},
        {"rp-dirunw-sample", AlgoKind::rpaths, false, true, false, true},
        {"rp-dirw-approx", AlgoKind::rpaths, true, true, false, false},
        {"rp-undir", AlgoKind::rpaths, false, false, false, false},
        {"mwc-dir", AlgoKind::cycle, false, true, false, false},
        {"mwc-undir", AlgoKind::cycle, false, false, false, false},
        {"ansc", AlgoKind::cycle, false, false, true, false},
        {"girth-approx", AlgoKind::cycle, true, false, false, true},
        {"mwc-wapprox", AlgoKind::cycle, true, false, false, false},
    };
    return list;
}

const AlgoInfo& algorithm(const std::string& id) {
    for (const auto& a : algorithms()) {
        if (a.id == id) return a;
    }
    std::string known;
    for (const auto& a : algorithms()) known += (known.empty() ? "" : ", ") + a.id;
    throw UsageError("unknown algorithm '" + id + "' (known: " + known + ")");
}

Graph banded_dag(Vertex n, int hst, int band, std::uint64_t seed) {
    if (n < 3 || band < 1) throw UsageError("dag needs n >= 3 and band >= 1");
    (void)hst;
    std::mt19937_64 rng(mix_seed(seed, 0xda9));
    std::bernoulli_distribution coin(0.5);
    const Vertex sink = n - 1;
    std::vector<Edge> edges;
    for (Vertex i = 0; i + 1 < sink; ++i) {
        edges.push_back({i, i + 1, 1});
        for (Vertex j = i + 2; j <= std::min<Vertex>(i + band, sink - 1); ++j) {
            if (coin(rng)) edges.push_back({i, j, 1});
        }
    }
    for (Vertex i = 0; i < sink; ++i) edges.push_back({i, sink, 1});
    return Graph::from_edges(n, true, false, std::move(edges));
}

std::optional<PathSpec> longest_hop_path(const Graph& g, Vertex s, int max_hops) {
    // Lexicographic (distance, hops) Dijkstra gives the fewest hops among
    // shortest paths; the oracle path is then confirmed against the cap.
    const Weight inf = g.infinity();
    std::vector<Weight> dist(g.n(), inf);
    std::vector<int> hops(g.n(), 0);
    using Item = std::tuple<Weight, int, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0;
    pq.emplace(0, 0, s);
    while (!pq.empty()) {
        auto [d, h, v] = pq.top();
        pq.pop();
        if (d != dist[v] || h != hops[v]) continue;
        for (const Arc& a : g.out(v)) {
            Weight nd = d + a.w;
            if (nd < dist[a.to] || (nd == dist[a.to] && h + 1 < hops[a.to])) {
                dist[a.to] = nd;
                hops[a.to] = h + 1;
                pq.emplace(nd, h + 1, a.to);
            }
        }
    }
    std::vector<Vertex> order;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (v != s && dist[v] < inf && hops[v] <= max_hops) order.push_back(v);
    }
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return hops[a] > hops[b]; });
    for (Vertex t : order) {
        auto sp = shortest_path_oracle(g, s, t);
        if (sp.vertices.size() >= 2 && static_cast<int>(sp.vertices.size()) - 1 <= max_hops) {
            return make_path(g, sp.vertices);
        }
    }
    return std::nullopt;
}

Instance make_instance(const InstanceRequest& req, bool need_path) {
    Instance inst;
    inst.spec = req.graph;
    auto colon = req.graph.find(':');
    if (colon == std::string::npos) throw UsageError("graph spec must look like kind:args, got '" + req.graph + "'");
    const std::string kind = req.graph.substr(0, colon);
    const std::string body = req.graph.substr(colon + 1);
    std::optional<Vertex> s = req.s, t = req.t;
    int max_hops = req.max_hops;
    if (kind == "file") {
        inst.graph = load_graph(body);
    } else {
        auto kv = parse_keys(body);
        if (kv.count("s")) s = key_or<Vertex>(kv, "s", 0);
        if (kv.count("t")) t = key_or<Vertex>(kv, "t", 0);
        if (kind == "random") {
            auto n = key_req<Vertex>(kv, "n", "random");
            auto p = key_req<double>(kv, "p", "random");
            auto w = key_or<Weight>(kv, "w", 1);
            auto dir = key_or<int>(kv, "dir", req.default_directed ? 1 : 0);
            auto seed = key_or<std::uint64_t>(kv, "seed", 1);
            max_hops = key_or<int>(kv, "hmax", max_hops);
            inst.graph = random_graph(n, p, w > 1, dir != 0, std::max<Weight>(w, 1), seed);
        } else if (kind == "dag") {
            auto n = key_req<Vertex>(kv, "n", "dag");
            auto hst = key_or<int>(kv, "hst", 8);
            auto band = key_or<int>(kv, "band", 4);
            auto seed = key_or<std::uint64_t>(kv, "seed", 1);
            inst.graph = banded_dag(n, hst, band, seed);
            max_hops = hst;
        } else if (kind == "gadget") {
            auto fam = parse_family(key_req<std::string>(kv, "family", "gadget"));
            if (!fam) throw UsageError("unknown gadget family '" + kv["family"] + "'");
            auto k = key_req<int>(kv, "k", "gadget");
            auto seed = key_or<std::uint64_t>(kv, "seed", 1);
            auto inter = key_or<int>(kv, "intersect", 1);
            auto q = key_or<int>(kv, "q", 4);
            auto sink = key_or<int>(kv, "sink", 1);
            inst.gadget = random_gadget_spec(*fam, k, seed, inter != 0, q, sink != 0);
            Gadget gd = gen_gadget(*inst.gadget);
            inst.graph = std::move(gd.graph);
            inst.path = std::move(gd.path);
        } else {
            throw UsageError("unknown graph kind '" + kind + "' (random, dag, gadget, file)");
        }
    }
    if (!need_path) return inst;
    if (!req.path_file.empty()) {
        inst.path = make_path(inst.graph, load_path(req.path_file));
    } else if (t) {
        auto sp = shortest_path_oracle(inst.graph, s.value_or(0), *t);
        if (sp.vertices.size() < 2) throw UsageError("t is unreachable from s");
        inst.path = make_path(inst.graph, sp.vertices);
    } else if (!inst.path) {
        inst.path = longest_hop_path(inst.graph, s.value_or(0), max_hops);
        if (!inst.path) throw UsageError("no vertex reachable from s for P_st");
    }
    return inst;
}

Json to_json(const SimReport& r) {
    Json j;
    j["rounds"] = r.rounds;
    if (r.charged_rounds) j["charged_rounds"] = *r.charged_rounds;
    j["words_sent"] = r.words_sent;
    j["max_edge_load"] = r.max_edge_load;
    j["word_bits"] = r.word_bits;
    j["c_w"] = r.c_w;
    Json ph = Json::array();
    for (const auto& p : r.phases) {
        Json e = {{"name", p.name}, {"rounds", p.rounds}};
        if (r.charged_rounds) e["charged"] = p.charged;
        ph.push_back(e);
    }
    j["phases"] = ph;
    return j;
}

Json to_json(const RouteTrace& t) {
    Json j;
    j["mode"] = t.mode;
    if (t.failed.first != kNoVertex) j["failed"] = {t.failed.first, t.failed.second};
    if (t.through != kNoVertex) j["through"] = t.through;
    j["found"] = t.found;
    j["vertices"] = vertices_json(t.vertices);
    j["weight"] = t.weight;
    j["rounds"] = t.rounds;
    j["notify_rounds"] = t.notify_rounds;
    j["traversal_rounds"] = t.traversal_rounds;
    j["max_storage"] = t.max_storage;
    return j;
}

std::vector<std::string> verify_rpaths(const Graph& g, const RPathsResult& r, double eps) {
    std::vector<std::string> bad;
    const bool approx = !r.estimate.empty();
    const auto oracle = oracle_rpaths(g, r.path);
    const Weight inf = g.infinity();
    Weight best = inf;
    for (int j = 0; j < r.path.hops; ++j) {
        const std::string e = "edge " + edge_name(r.path.vertices[j], r.path.vertices[j + 1]) + ": ";
        const Weight o = oracle[j];
        best = std::min(best, o);
        if (o >= inf) {
            if (r.weight[j] < r.inf) bad.push_back(e + "reported " + std::to_string(r.weight[j]) + ", oracle inf");
            continue;
        }
        if (!approx && r.weight[j] != o) {
            bad.push_back(e + "reported " + (r.weight[j] >= r.inf ? std::string("inf") : std::to_string(r.weight[j])) +
                          ", oracle " + std::to_string(o));
        }
        if (approx) {
            double est = r.estimate[j];
            if (!(est >= static_cast<double>(o) - 1e-9) || est > (1 + eps) * static_cast<double>(o) + 1e-9) {
                bad.push_back(e + "estimate " + std::to_string(est) + " outside [" + std::to_string(o) + ", (1+eps)*" +
                              std::to_string(o) + "]");
            }
        }
        const auto& route = r.routes[j];
        if (route.empty()) {
            bad.push_back(e + "no route");
            continue;
        }
        Weight rw = walk_weight(g, route);
        if (route.front() != r.path.s || route.back() != r.path.t || !is_simple_path(route) ||
            walk_uses_edge(g, route, r.path.vertices[j], r.path.vertices[j + 1])) {
            bad.push_back(e + "route is not a simple s-t path avoiding the edge");
        } else if (approx ? (rw < o || static_cast<double>(rw) > r.estimate[j] + 1e-9) : rw != o) {
            bad.push_back(e + "route weight " + std::to_string(rw) + " does not match");
        }
    }
    if (!approx && r.sisp2 != best && !(best >= inf && r.sisp2 >= r.inf)) bad.push_back("2-SiSP mismatch");
    return bad;
}

std::vector<std::string> verify_cycle(const Graph& g, const CycleResult& r, double eps) {
    std::vector<std::string> bad;
    const Weight inf = g.infinity();
    auto check_walk = [&](double limit) {
        if (r.cycle.empty()) {
            bad.push_back("no cycle walk reported");
            return;
        }
        if (r.cycle.front() != r.cycle.back()) bad.push_back("cycle walk is not closed");
        Weight lc = lightest_cycle_in_walk(g, r.cycle);
        if (lc >= inf || static_cast<double>(lc) > limit + 1e-9) {
            bad.push_back("cycle walk holds no simple cycle of weight <= " + std::to_string(limit));
        }
    };
    if (r.algorithm == "girth-approx") {
        Weight gi = oracle_girth(g);
        if (gi >= inf) {
            if (r.mwc < r.inf) bad.push_back("reported a cycle in a forest");
            return bad;
        }
        if (r.mwc < gi || r.mwc > 2 * gi - 1) {
            bad.push_back("girth estimate " + std::to_string(r.mwc) + " outside [" + std::to_string(gi) + ", " +
                          std::to_string(2 * gi - 1) + "]");
        }
        check_walk(static_cast<double>(r.mwc));
        return bad;
    }
    const CycleOracle o = oracle_mwc_ansc(g);
    if (r.algorithm == "mwc-wapprox") {
        if (o.mwc >= inf) {
            if (std::isfinite(r.estimate)) bad.push_back("reported a cycle in an acyclic graph");
            return bad;
        }
        const double lo = static_cast<double>(o.mwc), hi = (2 + 2 * eps) * lo;
        if (r.estimate < lo - 1e-9 || r.estimate > hi + 1e-9) {
            bad.push_back("estimate " + std::to_string(r.estimate) + " outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
        }
        check_walk(r.estimate);
        return bad;
    }
    if (r.mwc != o.mwc && !(r.mwc >= r.inf && o.mwc >= inf)) {
        bad.push_back("mwc " + std::to_string(r.mwc) + " != oracle " + std::to_string(o.mwc));
    }
    for (Vertex v = 0; v < g.n(); ++v) {
        Weight a = r.ansc[v] >= r.inf ? inf : r.ansc[v];
        if (a != o.ansc[v]) {
            bad.push_back("ansc(" + std::to_string(v) + ") " + std::to_string(a) + " != oracle " +
                          std::to_string(o.ansc[v]));
        }
    }
    if (o.mwc < inf) {
        check_walk(static_cast<double>(o.mwc));
        if (walk_weight(g, r.cycle) != o.mwc) bad.push_back("cycle walk weight differs from mwc");
    }
    return bad;
}

RunOutcome run_algorithm(const Instance& inst, const RunOptions& opt) {
    const AlgoInfo& info = algorithm(opt.algo);
    check_class(info, inst.graph);
    RunOutcome out;
    Json& rep = out.report;
    rep["schema"] = kReportSchema;
    rep["command"] = "run";
    rep["config"] = config_json(opt, info);
    rep["graph"] = graph_json(inst);
    if (info.kind == AlgoKind::rpaths) {
        if (!inst.path) throw UsageError(opt.algo + " needs P_st");
        out.rpaths = dispatch_rpaths(inst.graph, *inst.path, opt);
        rep["result"] = rpaths_json(*out.rpaths);
        rep["sim"] = to_json(out.rpaths->report);
        if (opt.verify) out.failures = verify_rpaths(inst.graph, *out.rpaths, opt.eps);
    } else {
        out.cycle = dispatch_cycle(inst.graph, opt);
        rep["result"] = cycle_json(*out.cycle);
        rep["sim"] = to_json(out.cycle->report);
        if (opt.verify) out.failures = verify_cycle(inst.graph, *out.cycle, opt.eps);
    }
    if (opt.verify) {
        out.verified = true;
        out.pass = out.failures.empty();
        rep["verdict"] = out.pass ? "pass" : "fail";
        if (!out.pass) rep["failures"] = out.failures;
    }
    return out;
}

RunOutcome run_route(const Instance& inst, const RunOptions& opt, const RouteRequest& req) {
    const AlgoInfo& info = algorithm(opt.algo);
    if (info.kind != AlgoKind::rpaths) throw UsageError("route needs a replacement-path algorithm");
    RunOptions inner = opt;
    inner.verify = false;
    RunOutcome out = run_algorithm(inst, inner);
    out.report["command"] = "route";
    const RPathsResult& r = *out.rpaths;
    RouteTrace t;
    if (req.mode == "table") {
        auto tables = build_rpath_tables(inst.graph, r, opt.cfg);
        out.report["tables"] = {{"max_entries", tables.max_entries()}, {"sim", to_json(tables.report)}};
        t = route_failover(inst.graph, tables, req.failed, opt.cfg);
    } else if (req.mode == "onfly") {
        if (opt.algo != "rp-undir") throw UsageError("onfly routing is only available for rp-undir");
        t = onfly_construct_undirected(inst.graph, r, req.failed, opt.cfg);
    } else {
        throw UsageError("unknown mode '" + req.mode + "' (table|onfly)");
    }
    out.report["trace"] = to_json(t);
    if (opt.verify) {
        auto oracle = oracle_rpaths(inst.graph, r.path);
        int j = -1;
        for (int i = 0; i < r.path.hops; ++i) {
            auto a = r.path.vertices[i], b = r.path.vertices[i + 1];
            if ((a == req.failed.first && b == req.failed.second) ||
                (!inst.graph.directed() && b == req.failed.first && a == req.failed.second)) {
                j = i;
            }
        }
        Weight expected = oracle[j];
        if (info.approximate && expected < inst.graph.infinity()) expected = walk_weight(inst.graph, r.routes[j]);
        out.failures = check_trace(inst.graph, r, t, expected, req.mode == "onfly");
        out.verified = true;
        out.pass = out.failures.empty();
        out.report["verdict"] = out.pass ? "pass" : "fail";
        if (!out.pass) out.report["failures"] = out.failures;
    }
    return out;
}

RunOutcome run_cycle_construction(const Instance& inst, const RunOptions& opt, Vertex through, CycleMode mode) {
    if (opt.algo != "mwc-dir" && opt.algo != "mwc-undir" && opt.algo != "ansc") {
        throw UsageError("cycle construction needs an exact algorithm (mwc-dir, mwc-undir, ansc)");
    }
    if (through < 0 || through >= inst.graph.n()) throw UsageError("--through is out of range");
    RunOptions inner = opt;
    inner.verify = false;
    RunOutcome out = run_algorithm(inst, inner);
    out.report["command"] = "cycle";
    RouteTrace t = construct_cycle(inst.graph, *out.cycle, through, mode, opt.cfg);
    out.report["trace"] = to_json(t);
    out.report["trace_sim"] = to_json(t.report);
    if (opt.verify) {
        auto o = oracle_mwc_ansc(inst.graph);
        out.failures = check_cycle_trace(inst.graph, t, o.ansc[through]);
        out.verified = true;
        out.pass = out.failures.empty();
        out.report["verdict"] = out.pass ? "pass" : "fail";
        if (!out.pass) out.report["failures"] = out.failures;
    }
    return out;
}

std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : points) {
        double lx = std::log(x), ly = std::log(std::max(y, 1.0));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double k = static_cast<double>(points.size());
    double den = k * sxx - sx * sx;
    if (std::abs(den) < 1e-12) return std::nullopt;
    return (k * sxy - sx * sy) / den;
}

namespace {

// Instance family used when benchmarking each algorithm.
std::string bench_spec(const std::string& algo, Vertex n, int hst, int seed) {
    const std::string sn = std::to_string(n), ss = std::to_string(seed);
    const double ln = std::log(static_cast<double>(n));
    const std::string p = std::to_string(std::min(1.0, 3.0 * ln / n));
    if (algo == "rp-dirunw-sample") return "dag:n=" + sn + ",hst=" + std::to_string(hst) + ",seed=" + ss;
    if (algo == "rp-dirw-apsp" || algo == "rp-iter-sssp" || algo == "rp-dirw-approx" || algo == "mwc-dir") {
        return "random:n=" + sn + ",p=" + p + ",w=16,dir=1,seed=" + ss + ",hmax=" + std::to_string(hst);
    }
    if (algo == "girth-approx") return "random:n=" + sn + ",p=" + p + ",seed=" + ss;
    if (algo == "mwc-undir" || algo == "ansc") return "random:n=" + sn + ",p=" + p + ",seed=" + ss;
    return "random:n=" + sn + ",p=" + p + ",w=16,seed=" + ss + ",hmax=" + std::to_string(hst);
}

}  // namespace

BenchResult run_bench(const BenchOptions& opt) {
    const AlgoInfo& info = algorithm(opt.algo);
    if (opt.sizes.empty()) throw UsageError("bench needs at least one size");
    if (!std::is_sorted(opt.sizes.begin(), opt.sizes.end())) throw UsageError("bench sizes must be ascending");
    if (opt.seeds < 1) throw UsageError("bench needs at least one seed");
    BenchResult b;
    b.algo = opt.algo;
    std::vector<std::pair<double, double>> pts;
    for (Vertex n : opt.sizes) {
        BenchRow row;
        row.n = n;
        for (int seed = 1; seed <= opt.seeds; ++seed) {
            InstanceRequest req;
            req.graph = bench_spec(opt.algo, n, opt.hst, seed);
            req.max_hops = opt.hst;
            Instance inst = make_instance(req, info.kind == AlgoKind::rpaths);
            RunOptions ro;
            ro.algo = opt.algo;
            ro.eps = opt.eps;
            ro.cfg = opt.cfg;
            ro.cfg.seed = mix_seed(opt.cfg.seed, static_cast<std::uint64_t>(seed));
            auto out = run_algorithm(inst, ro);
            const SimReport& sr = out.rpaths ? out.rpaths->report : out.cycle->report;
            row.rounds.push_back(sr.charged_rounds.value_or(sr.rounds));
        }
        std::vector<Round> sorted = row.rounds;
        std::sort(sorted.begin(), sorted.end());
        row.median = sorted[sorted.size() / 2];
        pts.emplace_back(static_cast<double>(n), static_cast<double>(row.median));
        b.rows.push_back(row);
    }
    b.slope = loglog_slope(pts);
    return b;
}

Json to_json(const BenchResult& b) {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = "bench";
    j["algorithm"] = b.algo;
    Json rows = Json::array();
    for (const auto& r : b.rows) rows.push_back({{"n", r.n}, {"median_rounds", r.median}, {"rounds", r.rounds}});
    j["rows"] = rows;
    j["slope"] = b.slope ? Json(*b.slope) : Json(nullptr);
    return j;
}

const std::vector<std::string>& corpora() {
    static const std::vector<std::string> list = {"exact-corpus", "approx-corpus", "gadget-corpus", "recon-corpus"};
    return list;
}

namespace {

struct Case {
    std::string label;
    // Fills `detail` with rounds and outputs so repeated suites can be diffed.
    std::function<std::vector<std::string>(int& max_load, Json& detail)> run;
};

std::string random_spec(Vertex n, double p, Weight w, bool dir, int seed, int hmax = 12) {
    std::ostringstream ss;
    ss << "random:n=" << n << ",p=" << p << ",w=" << w << ",dir=" << (dir ? 1 : 0) << ",seed=" << seed
       << ",hmax=" << hmax;
    return ss.str();
}

Case algo_case(const std::string& algo, const std::string& spec, const SimConfig& cfg, double eps = 0.25) {
    return {algo + " on " + spec, [=](int& load, Json& detail) {
                const AlgoInfo& info = algorithm(algo);
                InstanceRequest req;
                req.graph = spec;
                Instance inst = make_instance(req, info.kind == AlgoKind::rpaths);
                RunOptions ro;
                ro.algo = algo;
                ro.eps = eps;
                ro.verify = true;
                ro.cfg = cfg;
                auto out = run_algorithm(inst, ro);
                const SimReport& sr = out.rpaths ? out.rpaths->report : out.cycle->report;
                load = std::max(load, sr.max_edge_load);
                detail["rounds"] = sr.rounds;
                detail["words_sent"] = sr.words_sent;
                if (out.rpaths) {
                    detail["weights"] = out.rpaths->weight;
                } else {
                    detail["mwc"] = out.cycle->mwc;
                }
                return out.failures;
            }};
}

std::vector<Case> exact_cases(const SimConfig& cfg, int scale) {
    std::vector<Case> cs;
    for (int seed = 1; seed <= 4 * scale; ++seed) {
        Vertex n = 10 + (seed * 7) % 30;
        cs.push_back(algo_case("rp-dirw-apsp", random_spec(n, 0.25, 100, true, seed), cfg));
        cs.push_back(algo_case("rp-iter-sssp", random_spec(n, 0.25, 100, true, seed + 100), cfg));
        cs.push_back(algo_case("rp-iter-sssp", random_spec(n, 0.25, 1, true, seed + 200), cfg));
        cs.push_back(algo_case("rp-undir", random_spec(n, 0.2, 100, false, seed + 300), cfg));
        cs.push_back(algo_case("rp-undir", random_spec(n, 0.2, 1, false, seed + 400), cfg));
        cs.push_back(algo_case("rp-dirunw-sample", random_spec(n, 0.25, 1, true, seed + 500), cfg));
        cs.push_back(algo_case("mwc-dir", random_spec(n, 0.2, 100, true, seed + 600), cfg));
        cs.push_back(algo_case("mwc-dir", random_spec(n, 0.2, 1, true, seed + 700), cfg));
        cs.push_back(algo_case("mwc-undir", random_spec(n, 0.2, 100, false, seed + 800), cfg));
        cs.push_back(algo_case("mwc-undir", random_spec(n, 0.2, 1, false, seed + 900), cfg));
        cs.push_back(algo_case("ansc", random_spec(n, 0.2, 100, (seed & 1) != 0, seed + 1000), cfg));
        cs.push_back(algo_case("ansc", random_spec(n, 0.2, 1, (seed & 1) == 0, seed + 1100), cfg));
    }
    return cs;
}

std::vector<Case> approx_cases(const SimConfig& cfg, int scale) {
    std::vector<Case> cs;
    for (int seed = 1; seed <= 3 * scale; ++seed) {
        Vertex n = 16 + (seed * 11) % 40;
        cs.push_back(algo_case("girth-approx", random_spec(n, 4.0 / n, 1, false, seed), cfg));
        cs.push_back(algo_case("mwc-wapprox", random_spec(std::min<Vertex>(n, 32), 0.15, 32, false, seed + 50), cfg));
        cs.push_back(algo_case("rp-dirw-approx", random_spec(n, 0.2, 100, true, seed + 100), cfg));
    }
    return cs;
}

std::vector<Case> gadget_cases(int scale) {
    std::vector<Case> cs;
    const GadgetFamily fams[] = {GadgetFamily::dirw_rpaths, GadgetFamily::dirunw_rpaths, GadgetFamily::undir_rpaths,
                                 GadgetFamily::dir_mwc,     GadgetFamily::undirw_mwc,    GadgetFamily::qcycle};
    for (GadgetFamily f : fams) {
        for (int k : {2, 3, 4}) {
            for (int seed = 1; seed <= 3 * scale; ++seed) {
                for (int inter : {0, 1}) {
                    int q = 4 + seed % 3;
                    std::string label = std::string(to_string(f)) + " k=" + std::to_string(k) +
                                        " seed=" + std::to_string(seed) + " intersect=" + std::to_string(inter);
                    cs.push_back({label, [=](int&, Json& detail) {
                                      auto spec = random_gadget_spec(f, k, seed, inter != 0, q, true);
                                      auto gd = gen_gadget(spec);
                                      auto v = check_dichotomy(spec, gd);
                                      detail["measured"] = v.measured;
                                      std::vector<std::string> bad;
                                      if (!v.holds) {
                                          bad.push_back("measured " + std::to_string(v.measured) + ", expected " +
                                                        v.predicted);
                                      }
                                      return bad;
                                  }});
                }
            }
        }
    }
    return cs;
}

std::vector<Case> recon_cases(const SimConfig& cfg, int scale) {
    std::vector<Case> cs;
    auto rp_case = [&](const std::string& algo, const std::string& spec) {
        cs.push_back({"routes " + algo + " on " + spec, [=](int& load, Json& detail) {
                          InstanceRequest req;
                          req.graph = spec;
                          Instance inst = make_instance(req, true);
                          RunOptions ro;
                          ro.algo = algo;
                          ro.cfg = cfg;
                          auto out = run_algorithm(inst, ro);
                          const RPathsResult& r = *out.rpaths;
                          const Graph& g = inst.graph;
                          auto oracle = oracle_rpaths(g, r.path);
                          auto tables = build_rpath_tables(g, r, cfg);
                          load = std::max({load, r.report.max_edge_load, tables.report.max_edge_load});
                          std::vector<std::string> bad;
                          for (int j = 0; j < r.path.hops; ++j) {
                              std::pair<Vertex, Vertex> e{r.path.vertices[j], r.path.vertices[j + 1]};
                              auto t = route_failover(g, tables, e, cfg);
                              load = std::max(load, t.report.max_edge_load);
                              detail["table_rounds"].push_back(t.rounds);
                              auto b = check_trace(g, r, t, oracle[j], false);
                              bad.insert(bad.end(), b.begin(), b.end());
                              if (algo == "rp-undir") {
                                  auto o = onfly_construct_undirected(g, r, e, cfg);
                                  load = std::max(load, o.report.max_edge_load);
                                  detail["onfly_rounds"].push_back(o.rounds);
                                  auto b2 = check_trace(g, r, o, oracle[j], true);
                                  bad.insert(bad.end(), b2.begin(), b2.end());
                              }
                          }
                          return bad;
                      }});
    };
    auto cyc_case = [&](const std::string& algo, const std::string& spec) {
        cs.push_back({"cycles " + algo + " on " + spec, [=](int& load, Json& detail) {
                          InstanceRequest req;
                          req.graph = spec;
                          Instance inst = make_instance(req, false);
                          RunOptions ro;
                          ro.algo = algo;
                          ro.cfg = cfg;
                          auto out = run_algorithm(inst, ro);
                          const Graph& g = inst.graph;
                          auto o = oracle_mwc_ansc(g);
                          std::vector<std::string> bad;
                          for (Vertex u = 0; u < g.n(); ++u) {
                              for (CycleMode m : {CycleMode::table, CycleMode::onfly}) {
                                  auto t = construct_cycle(g, *out.cycle, u, m, cfg);
                                  load = std::max(load, t.report.max_edge_load);
                                  detail["trace_rounds"].push_back(t.rounds);
                                  auto b = check_cycle_trace(g, t, o.ansc[u]);
                                  bad.insert(bad.end(), b.begin(), b.end());
                              }
                          }
                          return bad;
                      }});
    };
    for (int seed = 1; seed <= 2 * scale; ++seed) {
        Vertex n = 12 + (seed * 5) % 20;
        rp_case("rp-dirw-apsp", random_spec(n, 0.25, 50, true, seed));
        rp_case("rp-iter-sssp", random_spec(n, 0.25, 1, true, seed + 10));
        rp_case("rp-dirunw-sample", random_spec(n, 0.25, 1, true, seed + 20));
        rp_case("rp-undir", random_spec(n, 0.2, 50, false, seed + 30));
        rp_case("rp-undir", random_spec(n, 0.2, 1, false, seed + 40));
        cyc_case("mwc-dir", random_spec(n, 0.2, 50, true, seed + 50));
        cyc_case("mwc-undir", random_spec(n, 0.2, 50, false, seed + 60));
        cyc_case("ansc", random_spec(n, 0.2, 1, false, seed + 70));
    }
    return cs;
}

}  // namespace

SuiteResult run_suite(const std::string& corpus, const SimConfig& cfg, int scale) {
    std::string id = corpus;
    if (id.find("-corpus") == std::string::npos) id += "-corpus";
    std::vector<Case> cases;
    if (id == "exact-corpus") {
        cases = exact_cases(cfg, scale);
    } else if (id == "approx-corpus") {
        cases = approx_cases(cfg, scale);
    } else if (id == "gadget-corpus") {
        cases = gadget_cases(scale);
    } else if (id == "recon-corpus") {
        cases = recon_cases(cfg, scale);
    } else {
        std::string known;
        for (const auto& c : corpora()) known += (known.empty() ? "" : ", ") + c;
        throw UsageError("unknown corpus '" + corpus + "' (known: " + known + ")");
    }
    SuiteResult s;
    s.corpus = id;
    int max_load = 0;
    Json rows = Json::array();
    for (auto& c : cases) {
        ++s.cases;
        std::vector<std::string> bad;
        Json detail = Json::object();
        try {
            bad = c.run(max_load, detail);
        } catch (const std::exception& e) {
            bad.push_back(std::string("error: ") + e.what());
        }
        if (bad.empty()) ++s.passed;
        for (const auto& b : bad) s.failures.push_back(c.label + ": " + b);
        Json row = {{"case", c.label}, {"pass", bad.empty()}};
        for (auto& [k, v] : detail.items()) row[k] = v;
        rows.push_back(row);
    }
    s.summary["schema"] = kReportSchema;
    s.summary["command"] = "suite";
    s.summary["corpus"] = id;
    s.summary["seed"] = cfg.seed;
    s.summary["cases"] = s.cases;
    s.summary["passed"] = s.passed;
    s.summary["max_edge_load"] = max_load;
    s.summary["verdict"] = s.failures.empty() ? "pass" : "fail";
    s.summary["failures"] = s.failures;
    s.summary["results"] = rows;
    return s;
}

std::string render_report(const Json& report) {
    std::ostringstream out;
    std::function<void(const std::string&, const Json&)> walk = [&](const std::string& prefix, const Json& j) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
            const Json& v = it.value();
            if (v.is_object()) {
                walk(key, v);
            } else if (v.is_array()) {
                if (std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); })) {
                    out << key << ":";
                    for (const auto& x : v) out << ' ' << (x.is_string() ? x.get<std::string>() : x.dump());
                    out << '\n';
                }
            } else {
                out << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
            }
        }
    };
    walk("", report);
    out << "--- json ---\n" << report.dump(2) << '\n';
    return out.str();
}

Round resolve_budget(std::optional<Round> explicit_budget) {
    if (explicit_budget) {
        if (*explicit_budget <= 0) throw UsageError("budget must be positive");
        return *explicit_budget;
    }
    if (const char* env = std::getenv(kBudgetEnv)) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0) {
            throw UsageError(std::string(kBudgetEnv) + " must be a positive integer, got '" + env + "'");
        }
        return v;
    }
    return SimConfig{}.max_rounds;
}

}  // namespace congest
