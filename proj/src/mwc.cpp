#include "congest/mwc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace congest {

int clamp_threshold(double x, Vertex n) {
    int v = static_cast<int>(std::ceil(x - 1e-9));
    return std::clamp(v, 1, std::max<Vertex>(n, 1));
}

namespace {

std::vector<Vertex> tree_path(const MultiSourceResult& r, Vertex source, Vertex x) {
    std::vector<Vertex> rev{x};
    while (x != source) {
        x = r.parent(source, x);
        if (x == kNoVertex || static_cast<Vertex>(rev.size()) > r.n()) return {};
        rev.push_back(x);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

// The smallest node id holding `target` in slot `slot`; every node learns it.
Vertex elect_owner(const Graph& g, const TreeResult& tree, Vertex root, const std::vector<Weight>& local,
                   Weight target, SimReport& report, const SimConfig& cfg) {
    const Weight none = g.n();
    std::vector<std::vector<Weight>> ids(g.n(), std::vector<Weight>{none});
    for (Vertex v = 0; v < g.n(); ++v) {
        if (local[v] == target) ids[v][0] = v;
    }
    auto agg = broadcast_aggregate(g, tree, root, ids, Combine::min, none, cfg);
    report.add_phase("elect-witness-owner", agg.report, PhaseKind::plain, cfg.charge, g.n(), tree.eccentricity);
    return agg.values[0] == none ? kNoVertex : static_cast<Vertex>(agg.values[0]);
}

void finish_exact(CycleResult& r, const Graph& g) {
    r.estimate = r.mwc >= r.inf ? std::numeric_limits<double>::infinity() : static_cast<double>(r.mwc);
    if (r.witness.u != kNoVertex) {
        r.cycle = cycle_walk(g, r, r.witness.u);
        r.h_cyc = static_cast<int>(r.cycle.size()) - 1;
    }
}

}  // namespace

std::vector<Vertex> cycle_walk(const Graph& g, const CycleResult& r, Vertex u) {
    if (!r.apsp || r.node_witness.empty()) return {};
    const CycleWitness& w = r.node_witness[u];
    if (w.u == kNoVertex) return {};
    const ApspTable& t = *r.apsp;
    std::vector<Vertex> walk;
    if (g.directed()) {
        walk = {u};
        auto back = t.path(w.v, u);
        if (back.empty()) return {};
        walk.insert(walk.end(), back.begin(), back.end());
    } else {
        // Both legs are paths of u's own tree, so they only share u.
        walk = tree_path(t.rows, u, w.v);
        auto other = tree_path(t.rows, u, w.v2);
        if (walk.empty() || other.empty()) return {};
        walk.insert(walk.end(), other.rbegin(), other.rend());
    }
    return walk;
}

CycleResult mwc_directed(const Graph& g, const SimConfig& cfg) {
    if (!g.directed()) throw std::invalid_argument("mwc-dir expects a directed graph");
    CycleResult r;
    r.algorithm = "mwc-dir";
    r.inf = g.infinity();
    const Vertex n = g.n();
    auto tree = bfs_tree(g, 0, cfg);
    r.report.add_phase("bfs-tree", tree.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    auto table = std::make_shared<ApspTable>(apsp(g, cfg));
    r.report.add_phase("apsp", table->rows.report, PhaseKind::apsp, cfg.charge, n, tree.eccentricity);

    // Node v closes every out-edge (v, u) with the u -> v distance it holds.
    r.ansc.assign(n, r.inf);
    r.node_witness.assign(n, {});
    for (Vertex v = 0; v < n; ++v) {
        for (const Arc& a : g.out(v)) {
            Weight d = table->dist(a.to, v);
            if (d >= table->rows.inf()) continue;
            if (a.w + d < r.ansc[v]) {
                r.ansc[v] = a.w + d;
                r.node_witness[v] = {v, a.to};
            }
        }
    }
    std::vector<std::vector<Weight>> vals(n);
    for (Vertex v = 0; v < n; ++v) vals[v] = {r.ansc[v]};
    auto agg = broadcast_aggregate(g, tree, 0, vals, Combine::min, r.inf, cfg);
    r.report.add_phase("global-min", agg.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    r.mwc = agg.values[0];
    r.apsp = table;
    if (r.mwc < r.inf) {
        Vertex owner = elect_owner(g, tree, 0, r.ansc, r.mwc, r.report, cfg);
        r.witness = r.node_witness[owner];
    }
    finish_exact(r, g);
    return r;
}

CycleResult mwc_undirected(const Graph& g, const SimConfig& cfg) {
    if (g.directed()) throw std::invalid_argument("mwc-undir expects an undirected graph");
    CycleResult r;
    r.algorithm = "mwc-undir";
    r.inf = g.infinity();
    const Vertex n = g.n();
    auto tree = bfs_tree(g, 0, cfg);
    r.report.add_phase("bfs-tree", tree.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    auto table = std::make_shared<ApspTable>(apsp(g, cfg));
    r.report.add_phase("apsp", table->rows.report, PhaseKind::apsp, cfg.charge, n, tree.eccentricity);
    const Weight tinf = table->rows.inf();

    // Every node ships its n (distance, First) entries to all neighbours.
    std::vector<std::vector<Word>> rows(n);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex u = 0; u < n; ++u) {
            Weight d = table->dist(u, v);
            if (d >= tinf) continue;
            rows[v].push_back(Word{u, d, u == v ? n : table->first(u, v)});
        }
    }
    std::vector<std::vector<Weight>> best(n, std::vector<Weight>(n, r.inf));
    std::vector<std::vector<Vertex>> via(n, std::vector<Vertex>(n, kNoVertex));
    auto deliver = [&](Vertex at, Vertex from, const Word& w) {
        Vertex u = static_cast<Vertex>(w[0]);
        Weight mine = table->dist(u, at);
        if (mine >= tinf) return;
        // An edge at u itself only counts when it is not u's own tree edge.
        if (u == at) {
            if (w[2] == from) return;
        } else if (u == from) {
            if (table->first(u, at) == at) return;
        } else if (table->first(u, at) == static_cast<Vertex>(w[2])) {
            return;
        }
        Weight c = w[1] + mine + *g.weight(from, at);
        if (c < best[at][u] || (c == best[at][u] && from < via[at][u])) {
            best[at][u] = c;
            via[at][u] = from;
        }
    };
    r.report.add_phase("row-exchange", neighbour_exchange(g, rows, deliver, cfg), PhaseKind::plain, cfg.charge, n,
                       tree.eccentricity);

    auto agg = broadcast_aggregate(g, tree, 0, best, Combine::min, r.inf, cfg);
    r.report.add_phase("ansc-minima", agg.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    // Owner of each u's minimum: smallest holder id, per slot.
    const Weight none = n;
    std::vector<std::vector<Weight>> holders(n, std::vector<Weight>(n, none));
    for (Vertex at = 0; at < n; ++at) {
        for (Vertex u = 0; u < n; ++u) {
            if (agg.values[u] < r.inf && best[at][u] == agg.values[u]) holders[at][u] = at;
        }
    }
    auto own = broadcast_aggregate(g, tree, 0, holders, Combine::min, none, cfg);
    r.report.add_phase("ansc-witness", own.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);

    r.ansc = agg.values;
    r.node_witness.assign(n, {});
    r.mwc = r.inf;
    for (Vertex u = 0; u < n; ++u) {
        if (r.ansc[u] >= r.inf) continue;
        Vertex at = static_cast<Vertex>(own.values[u]);
        r.node_witness[u] = {u, via[at][u], at};
        if (r.ansc[u] < r.mwc) {
            r.mwc = r.ansc[u];
            r.witness = r.node_witness[u];
        }
    }
    r.apsp = table;
    finish_exact(r, g);
    return r;
}

CycleResult ansc(const Graph& g, const SimConfig& cfg) {
    CycleResult r = g.directed() ? mwc_directed(g, cfg) : mwc_undirected(g, cfg);
    r.algorithm = "ansc";
    return r;
}

namespace {

// Non-tree edge candidates shared by the approximation algorithms.
// Each slot collects min candidates per node plus the witness that produced them.
struct CandidateSlots {
    CandidateSlots(Vertex n, int slots, Weight inf)
        : inf(inf), value(n, std::vector<Weight>(slots, inf)), witness(n, std::vector<CycleWitness>(slots)),
          bank(n, std::vector<int>(slots, -1)) {}

    void offer(Vertex at, int slot, Weight c, const CycleWitness& w, int tree_index) {
        if (c < value[at][slot] && c < inf) {
            value[at][slot] = c;
            witness[at][slot] = w;
            bank[at][slot] = tree_index;
        }
    }

    Weight inf;
    std::vector<std::vector<Weight>> value;
    std::vector<std::vector<CycleWitness>> witness;
    std::vector<std::vector<int>> bank;
};

// Candidates from one shortest path forest: x sends (source, dist, parent) for
// every source it holds; an edge that is a tree edge for neither endpoint
// closes a walk of weight d_x + w(x,y) + d_y. With `refine`, a vertex that
// does not hold a source but hears it from two neighbours closes a walk too.
void forest_candidates(const Graph& g, const Graph& weights, const MultiSourceResult& forest, int slot, int level,
                       int tree_index, bool refine, CandidateSlots& out, SimReport& report, const std::string& name,
                       const SimConfig& cfg) {
    const Vertex n = g.n();
    const Weight finf = forest.inf();
    std::vector<std::vector<Word>> rows(n);
    for (Vertex x = 0; x < n; ++x) {
        for (Vertex s : forest.sources()) {
            Weight d = forest.dist(s, x);
            if (d >= finf) continue;
            Vertex p = forest.parent(s, x);
            rows[x].push_back(Word{s, d, p == kNoVertex ? n : p});
        }
    }
    struct Near {
        Weight d1 = std::numeric_limits<Weight>::max(), d2 = std::numeric_limits<Weight>::max();
        Vertex x1 = kNoVertex, x2 = kNoVertex;
    };
    std::vector<std::map<Vertex, Near>> heard(refine ? n : 0);
    auto deliver = [&](Vertex y, Vertex x, const Word& w) {
        Vertex s = static_cast<Vertex>(w[0]);
        Weight dx = w[1];
        Vertex px = w[2] == n ? kNoVertex : static_cast<Vertex>(w[2]);
        Weight dy = forest.dist(s, y);
        if (dy < finf) {
            if (forest.parent(s, y) == x || px == y) return;
            out.offer(y, slot, dx + dy + *weights.weight(x, y), {kNoVertex, x, y, kNoVertex, s, level}, tree_index);
        } else if (refine) {
            Near& nb = heard[y][s];
            if (dx < nb.d1) {
                nb.d2 = nb.d1;
                nb.x2 = nb.x1;
                nb.d1 = dx;
                nb.x1 = x;
            } else if (dx < nb.d2) {
                nb.d2 = dx;
                nb.x2 = x;
            }
        }
    };
    report.add_phase(name, neighbour_exchange(g, rows, deliver, cfg), PhaseKind::plain, cfg.charge, n, 0);
    if (!refine) return;
    for (Vertex z = 0; z < n; ++z) {
        for (const auto& [s, nb] : heard[z]) {
            if (nb.x2 == kNoVertex) continue;
            out.offer(z, slot, nb.d1 + nb.d2 + 2, {kNoVertex, nb.x1, nb.x2, z, s, level}, tree_index);
        }
    }
}

std::vector<Vertex> candidate_walk(const MultiSourceResult& forest, const CycleWitness& w) {
    auto a = tree_path(forest, w.source, w.v);
    auto b = tree_path(forest, w.source, w.v2);
    if (a.empty() || b.empty()) return {};
    if (w.z != kNoVertex) a.push_back(w.z);
    a.insert(a.end(), b.rbegin(), b.rend());
    return a;
}

}  // namespace

CycleResult girth_approx(const Graph& g, const SimConfig& cfg, double prob_override) {
    if (g.directed()) throw std::invalid_argument("girth-approx expects an undirected graph");
    if (g.weighted() && std::any_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.w != 1; })) {
        throw std::invalid_argument("girth-approx expects an unweighted graph");
    }
    CycleResult r;
    r.algorithm = "girth-approx";
    r.approximate = true;
    r.inf = g.infinity();
    const Vertex n = g.n();
    auto tree = bfs_tree(g, 0, cfg);
    r.report.add_phase("bfs-tree", tree.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);

    std::deque<MultiSourceResult> forests;
    CandidateSlots slots(n, 2, r.inf);

    // Line 1: sqrt(n) closest vertices of every vertex, within D hops.
    const int big_r = clamp_threshold(std::sqrt(static_cast<double>(n)), n);
    const int hops = std::max(1, 2 * tree.eccentricity);
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    {
        RelaxParams p;
        p.sources = all;
        p.traversal = Traversal::underlying;
        p.unit_weights = true;
        p.dist_limit = hops;
        p.top_r = static_cast<std::size_t>(big_r);
        auto net = Network::identity(g);
        forests.push_back(relax(net, p, n + 1, cfg));
        r.report.add_phase("source-detection", forests.back().report, PhaseKind::plain, cfg.charge, n,
                           tree.eccentricity);
        forest_candidates(g, g, forests.back(), 0, 0, 0, true, slots, r.report, "neighbourhood-exchange", cfg);
    }
    // Line 2: BFS from the sampled set.
    const double prob =
        prob_override >= 0 ? prob_override : std::min(1.0, 2.0 * std::log(std::max<double>(n, 2)) / std::sqrt(n));
    auto sample = sample_vertices(g, prob, tree, 0, cfg);
    r.report.add_phase("sample", sample.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    if (!sample.set.empty()) {
        forests.push_back(hop_limited_bfs(g, sample.set, n, false, {}, cfg));
        r.report.add_phase("sampled-bfs", forests.back().report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
        forest_candidates(g, g, forests.back(), 1, 0, 1, false, slots, r.report, "sampled-exchange", cfg);
    }

    auto agg = broadcast_aggregate(g, tree, 0, slots.value, Combine::min, r.inf, cfg);
    r.report.add_phase("global-min", agg.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    int win = agg.values[0] <= agg.values[1] ? 0 : 1;
    r.mwc = agg.values[win];
    r.ratio_bound = r.mwc < r.inf ? 2.0 : 1.0;
    if (r.mwc < r.inf) {
        std::vector<Weight> local(n);
        for (Vertex v = 0; v < n; ++v) local[v] = slots.value[v][win];
        Vertex owner = elect_owner(g, tree, 0, local, r.mwc, r.report, cfg);
        r.witness = slots.witness[owner][win];
        r.cycle = candidate_walk(forests[slots.bank[owner][win]], r.witness);
        r.h_cyc = static_cast<int>(r.cycle.size()) - 1;
        r.scaled_hops = r.mwc;
        r.estimate = static_cast<double>(r.mwc);
    } else {
        r.estimate = std::numeric_limits<double>::infinity();
    }
    return r;
}

CycleResult mwc_undirw_approx(const Graph& g, double eps, const SimConfig& cfg) {
    if (g.directed()) throw std::invalid_argument("mwc-wapprox expects an undirected graph");
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    CycleResult r;
    r.algorithm = "mwc-wapprox";
    r.approximate = true;
    r.ratio_bound = 2.0 + 2.0 * eps;
    r.inf = g.infinity();
    const Vertex n = g.n();
    const Weight big_w = std::max<Weight>(g.max_weight(), 1);
    auto tree = bfs_tree(g, 0, cfg);
    r.report.add_phase("bfs-tree", tree.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);

    const int n34 = clamp_threshold(std::pow(static_cast<double>(n), 0.75), n);
    const double h = (1.0 + 2.0 / eps) * n34;
    const Weight hop_budget = static_cast<Weight>(std::ceil(h - 1e-9));
    const int levels = std::max(1, static_cast<int>(std::ceil(std::log(h * big_w) / std::log1p(eps) - 1e-9)));
    const int big_r = clamp_threshold(std::sqrt(static_cast<double>(n)), n);

    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    const double ln_n = std::log(std::max<double>(n, 2));
    auto inner = sample_vertices(g, std::min(1.0, 2.0 * ln_n / std::sqrt(n)), tree, 0, cfg);
    r.report.add_phase("sample-inner", inner.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    SimConfig outer_cfg = cfg;
    outer_cfg.seed = mix_seed(cfg.seed, 0x5eed);
    auto outer = sample_vertices(g, std::min(1.0, 2.0 * ln_n / n34), tree, 0, outer_cfg);
    r.report.add_phase("sample-outer", outer.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);

    std::deque<MultiSourceResult> forests;
    std::vector<int> forest_level;
    // Slots 0..levels-1 hold H^i, slot `levels` holds exact weights from line 2.
    // Scaled candidates past three hop budgets never win, so they share the sentinel.
    CandidateSlots slots(n, levels + 1, std::max<Weight>(3 * hop_budget + 1, g.infinity()));
    for (int i = 1; i <= levels; ++i) {
        Graph gi = scale_weights(g, i, eps, h);
        const std::string tag = "level-" + std::to_string(i);
        forests.push_back(delayed_bfs(gi, all, hop_budget, cfg, static_cast<std::size_t>(big_r)));
        r.report.add_phase(tag + "-source-detection", forests.back().report, PhaseKind::plain, cfg.charge, n,
                           tree.eccentricity);
        forest_candidates(g, gi, forests.back(), i - 1, i, static_cast<int>(forests.size()) - 1, false, slots,
                          r.report, tag + "-exchange", cfg);
        if (!inner.set.empty()) {
            forests.push_back(delayed_bfs(gi, inner.set, hop_budget, cfg));
            r.report.add_phase(tag + "-sampled-bfs", forests.back().report, PhaseKind::plain, cfg.charge, n,
                               tree.eccentricity);
            forest_candidates(g, gi, forests.back(), i - 1, i, static_cast<int>(forests.size()) - 1, false, slots,
                              r.report, tag + "-sampled-exchange", cfg);
        }
    }
    for (Vertex w : outer.set) {
        auto t = sssp(g, w, {}, cfg);
        r.report.add_phase("sssp-from-" + std::to_string(w), t.report, PhaseKind::sssp, cfg.charge, n,
                           tree.eccentricity);
        MultiSourceResult f({w}, n, g.infinity());
        for (Vertex x = 0; x < n; ++x) {
            if (t.dist[x] < g.infinity()) f.set(w, x, t.dist[x], t.parent[x], kNoVertex);
        }
        forests.push_back(std::move(f));
        forest_candidates(g, g, forests.back(), levels, 0, static_cast<int>(forests.size()) - 1, false, slots,
                          r.report, "sssp-exchange-" + std::to_string(w), cfg);
    }

    auto agg = broadcast_aggregate(g, tree, 0, slots.value, Combine::min, slots.inf, cfg);
    r.report.add_phase("global-min", agg.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    auto rescale = [&](int slot, Weight v) {
        if (slot == levels) return static_cast<double>(v);
        return eps * std::ldexp(1.0, slot + 1) / (2.0 * h) * static_cast<double>(v);
    };
    r.estimate = std::numeric_limits<double>::infinity();
    int win = -1;
    for (int sl = 0; sl <= levels; ++sl) {
        if (agg.values[sl] >= slots.inf) continue;
        double e = rescale(sl, agg.values[sl]);
        if (e < r.estimate) {
            r.estimate = e;
            win = sl;
        }
    }
    if (win < 0) {
        r.mwc = r.inf;
        return r;
    }
    r.mwc = static_cast<Weight>(std::ceil(r.estimate - 1e-9));
    std::vector<Weight> local(n);
    for (Vertex v = 0; v < n; ++v) local[v] = slots.value[v][win];
    Vertex owner = elect_owner(g, tree, 0, local, agg.values[win], r.report, cfg);
    r.witness = slots.witness[owner][win];
    r.scaled_hops = win == levels ? -1 : agg.values[win];
    r.cycle = candidate_walk(forests[slots.bank[owner][win]], r.witness);
    r.h_cyc = static_cast<int>(r.cycle.size()) - 1;
    return r;
}

}  // namespace congest
