// Acceptance checks. Prints one PASS/FAIL line per criterion and exits 1 if any failed.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "congest/gadgets.hpp"
#include "congest/harness.hpp"
#include "congest/mwc.hpp"
#include "congest/oracles.hpp"
#include "congest/primitives.hpp"
#include "congest/reconstruct.hpp"
#include "congest/rpaths.hpp"
#include "congest/sim.hpp"
#include "support.hpp"

using namespace congest;
namespace ts = testing_support;

namespace {

int g_max_load = 0;

void note_load(const SimReport& r) { g_max_load = std::max(g_max_load, r.max_edge_load); }

struct Check {
    std::vector<std::string> problems;
    int checked = 0;

    void fail(const std::string& what) {
        if (problems.size() < 8) problems.push_back(what);
        else if (problems.size() == 8) problems.push_back("...");
    }
    bool ok() const { return problems.empty(); }
};

std::string tag(const std::string& algo, std::uint64_t seed) { return algo + " seed " + std::to_string(seed); }

// Route must be a simple s-t path avoiding edge j with the reported weight.
void check_routes(const Graph& g, const RPathsResult& r, const std::string& what, Check& c) {
    for (int j = 0; j < r.path.hops; ++j) {
        if (r.weight[j] >= r.inf) continue;
        const auto& route = r.routes[j];
        const Vertex a = r.path.vertices[j], b = r.path.vertices[j + 1];
        if (route.empty() || route.front() != r.path.s || route.back() != r.path.t || !is_simple_path(route) ||
            walk_uses_edge(g, route, a, b) || walk_weight(g, route) > r.weight[j]) {
            c.fail(what + ": bad route for edge " + std::to_string(j));
        }
    }
}

// Random instance with a path of roughly `hst` hops (at least 2).
std::optional<PathSpec> pick_path(const Graph& g, int hst) {
    for (Vertex s = 0; s < std::min<Vertex>(g.n(), 8); ++s) {
        auto p = longest_hop_path(g, s, hst);
        if (p && p->hops >= 2) return p;
    }
    return std::nullopt;
}

// --- 1: exact rpaths ---------------------------------------------------------

bool exact_rpaths(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    Check c;
    struct Variant {
        std::string algo;
        bool directed;
        std::function<RPathsResult(const Graph&, const PathSpec&, const SimConfig&)> run;
    };
    std::vector<Variant> variants{
        {"rp-dirw-apsp", true, rpaths_dirw_apsp},
        {"rp-iter-sssp", true, rpaths_iterated_sssp},
        {"rp-undir", false, rpaths_undirected},
    };
    for (const auto& v : variants) {
        int done = 0;
        for (std::uint64_t seed = 1; done < 200 && seed < 2000; ++seed) {
            std::mt19937_64 rng(seed * 7919 + v.directed);
            const Vertex n = std::uniform_int_distribution<Vertex>(12, 64)(rng);
            const int hst = std::uniform_int_distribution<int>(2, 12)(rng);
            const bool weighted = v.directed || seed % 2 == 0;
            const Weight w = weighted ? std::uniform_int_distribution<Weight>(1, 100)(rng) : 1;
            Graph g = random_graph(n, 3.5 / n, weighted, v.directed, w, seed);
            auto p = pick_path(g, hst);
            if (!p) continue;
            SimConfig cfg;
            cfg.seed = seed;
            auto r = v.run(g, *p, cfg);
            note_load(r.report);
            if (r.weight != ts::rpaths_by_deletion(g, *p)) c.fail(tag(v.algo, seed) + ": weights differ");
            check_routes(g, r, tag(v.algo, seed), c);
            ++done;
            ++c.checked;
        }
        if (done < 200) c.fail(v.algo + ": only " + std::to_string(done) + " instances");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 300) c.fail("took " + std::to_string(secs) + "s");
    std::ostringstream os;
    os << c.checked << " instances in " << std::lround(secs) << "s";
    for (auto& p : c.problems) os << "; " << p;
    detail = os.str();
    return c.ok();
}

// --- 2: sampling rpaths ---------------------------------------------------------

Graph bidirected_cycle(Vertex n) {
    std::vector<Edge> es;
    for (Vertex i = 0; i < n; ++i) {
        es.push_back({i, (i + 1) % n, 1});
        es.push_back({(i + 1) % n, i, 1});
    }
    return Graph::from_edges(n, true, false, es);
}

bool sampling_rpaths(std::string& detail) {
    Check c;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed);
        const int hst = std::uniform_int_distribution<int>(4, 12)(rng);
        Graph g = seed % 2 ? banded_dag(128, hst, 4, seed)
                           : random_graph(std::uniform_int_distribution<Vertex>(48, 128)(rng), 0.04, false, true, 1, seed);
        auto p = pick_path(g, hst);
        if (!p) {
            c.fail(tag("rp-dirunw-sample", seed) + ": no path");
            continue;
        }
        SimConfig cfg;
        cfg.seed = seed;
        auto r = rpaths_dirunw_sampling(g, *p, cfg);
        note_load(r.report);
        if (r.weight != ts::rpaths_by_deletion(g, *p)) c.fail(tag("rp-dirunw-sample", seed) + ": weights differ");
        check_routes(g, r, tag("rp-dirunw-sample", seed), c);
        ++c.checked;
    }
    // the only detour is 62 hops, with nothing sampled it cannot be found
    Graph cyc = bidirected_cycle(64);
    auto p = make_path(cyc, {0, 1, 2});
    auto want = ts::rpaths_by_deletion(cyc, p);
    auto bad = rpaths_dirunw_sampling(cyc, p, SimConfig{}, 0.0);
    note_load(bad.report);
    if (bad.weight == want) c.fail("adversarial cycle solved with an empty sample");
    bool recovered = false;
    for (std::uint64_t seed = 1; seed <= 5 && !recovered; ++seed) {
        SimConfig cfg;
        cfg.seed = seed;
        auto r = rpaths_dirunw_sampling(cyc, p, cfg);
        note_load(r.report);
        recovered = r.weight == want;
    }
    if (!recovered) c.fail("adversarial cycle not recovered by reseeding");
    std::ostringstream os;
    os << c.checked << " instances, adversarial " << (bad.weight == want ? "not failing" : "fails then recovers");
    for (auto& q : c.problems) os << "; " << q;
    detail = os.str();
    return c.ok();
}

// --- 3: exact cycles ----------------------------------------------------------

bool exact_cycles(std::string& detail) {
    Check c;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const bool directed = seed % 2 == 0, weighted = seed % 4 >= 2;
        const Vertex n = 10 + static_cast<Vertex>(seed % 31);
        Graph g = random_graph(n, 4.0 / n, weighted, directed, weighted ? 100 : 1, seed);
        auto want = ts::ansc_by_deletion(g);
        const Weight mwc = *std::min_element(want.begin(), want.end());
        SimConfig cfg;
        cfg.seed = seed;
        auto m = directed ? mwc_directed(g, cfg) : mwc_undirected(g, cfg);
        auto a = ansc(g, cfg);
        note_load(m.report);
        note_load(a.report);
        const std::string what = std::string(directed ? "dir" : "undir") + (weighted ? "-w" : "-unw") + " seed " +
                                 std::to_string(seed);
        if (m.mwc != mwc) c.fail(what + ": mwc " + std::to_string(m.mwc) + " want " + std::to_string(mwc));
        if (a.ansc != want) c.fail(what + ": ansc differs");
        if (mwc < g.infinity() && (m.cycle.empty() || walk_weight(g, m.cycle) != mwc)) c.fail(what + ": cycle walk");
        for (Vertex u = 0; u < g.n(); ++u) {
            if (want[u] >= g.infinity()) continue;
            auto walk = cycle_walk(g, a, u);
            if (walk.empty() || walk.front() != u || walk.back() != u || walk_weight(g, walk) != want[u]) {
                c.fail(what + ": witness walk at " + std::to_string(u));
                break;
            }
        }
        ++c.checked;
    }
    std::ostringstream os;
    os << c.checked << " instances";
    for (auto& q : c.problems) os << "; " << q;
    detail = os.str();
    return c.ok();
}

// --- 4: gadgets -----------------------------------------------------------------

Weight min_of(const std::vector<Weight>& v) { return *std::min_element(v.begin(), v.end()); }

bool gadgets(std::string& detail) {
    Check c;
    for (auto fam : {GadgetFamily::dir_mwc, GadgetFamily::undirw_mwc, GadgetFamily::dirw_rpaths,
                     GadgetFamily::dirunw_rpaths, GadgetFamily::undir_rpaths}) {
        for (int k : {2, 3, 4, 8}) {
            for (std::uint64_t seed = 1; seed <= 100; ++seed) {
                for (bool intersect : {true, false}) {
                    auto spec = random_gadget_spec(fam, k, seed, intersect);
                    auto gd = gen_gadget(spec);
                    const std::string what = std::string(to_string(fam)) + " k " + std::to_string(k) + " seed " +
                                             std::to_string(seed) + (intersect ? " int" : " dis");
                    const Graph& g = gd.graph;
                    Weight got = gd.path ? min_of(ts::rpaths_by_deletion(g, *gd.path)) : min_of(ts::ansc_by_deletion(g));
                    bool side = false;
                    switch (fam) {
                        case GadgetFamily::dir_mwc:
                            side = intersect ? got <= 4 : got >= 8;
                            break;
                        case GadgetFamily::undirw_mwc:
                            side = intersect ? got <= 6 : got >= 8;
                            break;
                        case GadgetFamily::dirw_rpaths:
                            side = intersect ? got <= 4 * k * k + 9 * k - 1 : got >= 4 * k * k + 12 * k;
                            break;
                        case GadgetFamily::dirunw_rpaths: {
                            bool conn = ts::bfs(*spec.sub, spec.s, false, spec.sub->infinity())[spec.t] <
                                        spec.sub->infinity();
                            side = (got < g.infinity()) == conn;
                            break;
                        }
                        case GadgetFamily::undir_rpaths: {
                            Weight d = ts::bellman_ford(*spec.base, spec.s, spec.base->infinity())[spec.t];
                            side = got == (d >= spec.base->infinity() ? g.infinity() : 2 + d);
                            break;
                        }
                        default:
                            break;
                    }
                    if (!side) c.fail(what + ": measured " + std::to_string(got));
                    auto v = check_dichotomy(spec, gd);
                    if (!v.holds || v.intersecting != spec.intersecting()) c.fail(what + ": dichotomy check");
                    ++c.checked;
                }
            }
        }
    }
    for (int q : {4, 5, 6}) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            for (bool intersect : {true, false}) {
                auto spec = random_gadget_spec(GadgetFamily::qcycle, 3, seed, intersect, q, false);
                auto gd = gen_gadget(spec);
                Weight girth = min_of(ts::ansc_by_deletion(gd.graph));
                if (intersect ? girth != q : girth < 2 * q)
                    c.fail("qcycle q " + std::to_string(q) + " seed " + std::to_string(seed) + ": girth " +
                           std::to_string(girth));
                ++c.checked;
            }
        }
    }
    // distributed algorithms land on the same side on small gadgets
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        for (bool intersect : {true, false}) {
            auto spec = random_gadget_spec(GadgetFamily::dirw_rpaths, 3, seed, intersect);
            auto gd = gen_gadget(spec);
            auto r = rpaths_dirw_apsp(gd.graph, *gd.path, SimConfig{});
            note_load(r.report);
            if (r.weight != ts::rpaths_by_deletion(gd.graph, *gd.path)) c.fail("dirw-rpaths gadget run differs");
            auto ds = random_gadget_spec(GadgetFamily::dir_mwc, 3, seed, intersect);
            auto dg = gen_gadget(ds);
            auto m = mwc_directed(dg.graph, SimConfig{});
            note_load(m.report);
            if (m.mwc != min_of(ts::ansc_by_deletion(dg.graph))) c.fail("dir-mwc gadget run differs");
        }
    }
    std::ostringstream os;
    os << c.checked << " gadgets";
    for (auto& q : c.problems) os << "; " << q;
    detail = os.str();
    return c.ok();
}

// --- 5: approximation ratios ---------------------------------------------------

Weight girth_by_deletion(const Graph& g) {
    Weight best = g.infinity();
    for (const auto& e : g.edges()) {
        Weight d = ts::bfs(g, e.u, false, g.infinity(), {{e.u, e.v}})[e.v];
        if (d < g.infinity()) best = std::min(best, d + 1);
    }
    return best;
}

bool approximations(std::string& detail) {
    Check c;
    int under = 0;
    double worst_girth = 0, worst_w = 0, worst_rp = 0;
    for (Vertex n : {64, 256}) {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            Graph g = random_graph(n, 5.0 / n, false, false, 1, seed);
            const Weight girth = girth_by_deletion(g);
            if (girth >= g.infinity()) continue;
            SimConfig cfg;
            cfg.seed = seed;
            auto r = girth_approx(g, cfg);
            note_load(r.report);
            if (r.mwc < girth) ++under;
            if (r.mwc > 2 * girth - 1) c.fail("girth n " + std::to_string(n) + " seed " + std::to_string(seed));
            worst_girth = std::max(worst_girth, double(r.mwc) / girth);
            ++c.checked;
        }
    }
    const double eps = 0.25;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        Graph g = random_graph(64, 4.0 / 64, true, false, 32, seed);
        const Weight mwc = min_of(ts::ansc_by_deletion(g));
        if (mwc >= g.infinity()) continue;
        SimConfig cfg;
        cfg.seed = seed;
        auto r = mwc_undirw_approx(g, eps, cfg);
        note_load(r.report);
        if (r.estimate < mwc - 1e-9 || lightest_cycle_in_walk(g, r.cycle) < mwc) ++under;
        if (r.estimate > 2.5 * mwc + 1e-9) c.fail("wapprox seed " + std::to_string(seed));
        worst_w = std::max(worst_w, r.estimate / mwc);
        ++c.checked;
    }
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Graph g = random_graph(40, 3.5 / 40, true, true, 100, seed);
        auto p = pick_path(g, 10);
        if (!p) continue;
        SimConfig cfg;
        cfg.seed = seed;
        auto r = rpaths_dirw_approx(g, *p, eps, cfg);
        note_load(r.report);
        auto want = ts::rpaths_by_deletion(g, *p);
        for (int j = 0; j < p->hops; ++j) {
            if (want[j] >= g.infinity()) {
                if (r.weight[j] < g.infinity()) ++under;
                continue;
            }
            if (r.estimate[j] < want[j] - 1e-9) ++under;
            if (r.estimate[j] > (1 + eps) * want[j] + 1e-9) c.fail("rp-dirw-approx seed " + std::to_string(seed));
            worst_rp = std::max(worst_rp, r.estimate[j] / want[j]);
        }
        check_routes(g, r, tag("rp-dirw-approx", seed), c);
        ++c.checked;
    }
    if (under) c.fail(std::to_string(under) + " underestimates");
    std::ostringstream os;
    os.precision(3);
    os << c.checked << " instances, worst ratios girth " << worst_girth << " wapprox " << worst_w << " rpaths "
       << worst_rp;
    for (auto& q : c.problems) os << "; " << q;
    detail = os.str();
    return c.ok();
}

// --- 6: bandwidth -----------------------------------------------------------------

struct Oversend : NodeProgram {
    void init(NodeContext& ctx) override {
        if (ctx.id() != 0) return;
        ctx.send(1, Word{1});
        ctx.send(1, Word{2});
    }
    void on_round(NodeContext&, std::span<const Message>) override {}
    bool idle() const override { return true; }
};

std::vector<SuiteResult> g_suites;

bool bandwidth(std::string& detail) {
    bool caught = false;
    Graph g = ts::path_graph(3);
    std::vector<Oversend> progs(3);
    try {
        Simulator::run(Network::identity(g), progs, SimConfig{});
    } catch (const BandwidthViolation& e) {
        caught = e.round == 1 && e.node == 0 && e.neighbor == 1;
    }
    int corpus_load = 0;
    for (const auto& s : g_suites) corpus_load = std::max(corpus_load, s.summary.value("max_edge_load", 99));
    std::ostringstream os;
    os << "oversend " << (caught ? "rejected" : "NOT rejected") << ", max edge load in runs " << g_max_load
       << ", in corpora " << corpus_load;
    detail = os.str();
    return caught && g_max_load <= 1 && corpus_load <= 1;
}

// --- 7: round scaling -----------------------------------------------------------

bool scaling(std::string& detail) {
    bool ok = true;
    std::ostringstream os;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Graph g = random_graph(96, 0.05, false, false, 1, seed);
        std::mt19937_64 rng(seed);
        std::vector<Vertex> sources;
        for (Vertex v = 0; v < g.n(); ++v)
            if (rng() % 6 == 0) sources.push_back(v);
        const std::size_t r = 1 + seed % 5;
        const int h = 2 + static_cast<int>(seed % 9);
        auto t = source_detection(g, sources, r, h, SimConfig{});
        note_load(t.report);
        if (t.report.rounds > static_cast<Round>(r) + h + 4) {
            ok = false;
            os << "source detection seed " << seed << " took " << t.report.rounds << "; ";
        }
    }
    BenchOptions sample;
    sample.algo = "rp-dirunw-sample";
    sample.sizes = {256, 512, 1024, 2048};
    sample.hst = 8;
    auto a = run_bench(sample);
    BenchOptions undir;
    undir.algo = "mwc-undir";
    undir.sizes = {32, 64, 128, 256};
    auto b = run_bench(undir);
    os.precision(3);
    os << "slopes rp-dirunw-sample " << a.slope.value_or(NAN) << " mwc-undir " << b.slope.value_or(NAN);
    ok = ok && a.slope && *a.slope <= 0.85 && b.slope && *b.slope >= 0.9;
    detail = os.str();
    return ok;
}

// --- 8: reconstruction ---------------------------------------------------------

bool reconstruction(std::string& detail) {
    Check c;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const bool directed = seed % 2 == 0;
        Graph g = random_graph(32, 3.5 / 32, true, directed, 50, seed);
        auto p = pick_path(g, 10);
        if (!p) continue;
        auto r = directed ? rpaths_dirw_apsp(g, *p, SimConfig{}) : rpaths_undirected(g, *p, SimConfig{});
        auto want = ts::rpaths_by_deletion(g, *p);
        auto tables = build_rpath_tables(g, r, SimConfig{});
        note_load(tables.report);
        if (tables.max_entries() > static_cast<std::size_t>(p->hops)) c.fail("table too large");
        for (int j = 0; j < p->hops; ++j) {
            std::pair<Vertex, Vertex> e{p->vertices[j], p->vertices[j + 1]};
            std::vector<RouteTrace> traces{route_failover(g, tables, e, SimConfig{})};
            if (!directed) traces.push_back(onfly_construct_undirected(g, r, e, SimConfig{}));
            for (std::size_t i = 0; i < traces.size(); ++i) {
                const auto& t = traces[i];
                note_load(t.report);
                const std::string what = "recon seed " + std::to_string(seed) + " edge " + std::to_string(j);
                if (want[j] >= g.infinity()) {
                    if (t.found) c.fail(what + ": phantom route");
                    continue;
                }
                const Round bound = p->hops + (i ? 3 : 1) * r.h_rep;
                if (!t.found || !is_simple_path(t.vertices) || walk_weight(g, t.vertices) != want[j] ||
                    walk_uses_edge(g, t.vertices, e.first, e.second) || t.rounds > bound)
                    c.fail(what + (i ? " onfly" : " table"));
            }
            ++c.checked;
        }
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Graph g = random_graph(24, 3.0 / 24, seed % 3 == 0, seed % 2 == 0, 30, seed);
        auto a = ansc(g, SimConfig{});
        auto want = ts::ansc_by_deletion(g);
        for (auto mode : {CycleMode::table, CycleMode::onfly}) {
            for (Vertex u = 0; u < g.n(); ++u) {
                auto t = construct_cycle(g, a, u, mode, SimConfig{});
                note_load(t.report);
                if (want[u] >= g.infinity() ? t.found
                                            : !t.found || t.vertices.front() != u || t.vertices.back() != u ||
                                                  walk_weight(g, t.vertices) != want[u])
                    c.fail("cycle seed " + std::to_string(seed) + " at " + std::to_string(u));
                ++c.checked;
            }
        }
    }
    for (const auto& s : g_suites) {
        if (s.corpus == "recon-corpus" && s.passed != s.cases) c.fail("recon-corpus failures");
    }
    std::ostringstream os;
    os << c.checked << " traces";
    for (auto& q : c.problems) os << "; " << q;
    detail = os.str();
    return c.ok();
}

// --- 9: determinism ---------------------------------------------------------------

bool determinism(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    for (const auto& s : g_suites) {
        auto again = run_suite(s.corpus, SimConfig{});
        const bool same = render_report(again.summary) == render_report(s.summary);
        ok = ok && same && s.passed == s.cases;
        os << s.corpus << " " << s.passed << "/" << s.cases << (same ? " identical" : " DIFFERS") << "; ";
    }
    detail = os.str();
    return ok;
}

}  // namespace

int main() {
    for (const auto& name : corpora()) g_suites.push_back(run_suite(name, SimConfig{}));

    struct Criterion {
        int id;
        std::string name;
        std::function<bool(std::string&)> run;
    };
    std::vector<Criterion> all{
        {1, "exact replacement paths match the oracle", exact_rpaths},
        {2, "sampling replacement paths", sampling_rpaths},
        {3, "exact minimum weight cycles and ansc", exact_cycles},
        {4, "lower bound gadgets", gadgets},
        {5, "approximation ratios", approximations},
        {6, "bandwidth enforcement", bandwidth},
        {7, "round scaling", scaling},
        {8, "path and cycle reconstruction", reconstruction},
        {9, "byte-identical repeated suites", determinism},
    };
    // bandwidth last among the run-heavy ones so it sees every load
    std::stable_partition(all.begin(), all.end(), [](const Criterion& c) { return c.id != 6; });

    int failed = 0;
    for (auto& c : all) {
        std::string detail;
        bool pass = false;
        auto start = std::chrono::steady_clock::now();
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !pass;
        std::printf("%s criterion %d %s: %s (%.1fs)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), detail.c_str(),
                    secs);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
