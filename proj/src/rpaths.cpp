#include "congest/rpaths.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

namespace congest {

namespace {

// Every node adopts the label of its tree parent unless it carries its own;
// labels flow down the tree one hop per round.
class TreeLabelProgram final : public NodeProgram {
  public:
    TreeLabelProgram(Vertex parent, Vertex own) : parent_(parent), label_(own) {}

    void init(NodeContext& ctx) override {
        if (label_ != kNoVertex && parent_ == kNoVertex) announce(ctx);
    }
    void on_round(NodeContext& ctx, std::span<const Message> inbox) override {
        for (const Message& m : inbox) {
            if (m.from == parent_ && !sent_) {
                if (label_ == kNoVertex) label_ = static_cast<Vertex>(m.word[0]);
                announce(ctx);
            }
        }
    }
    bool idle() const override { return true; }
    Vertex label() const { return label_; }

  private:
    void announce(NodeContext& ctx) {
        sent_ = true;
        for (Vertex u : ctx.neighbors()) ctx.send(u, Word{label_});
    }
    Vertex parent_;
    Vertex label_;
    bool sent_ = false;
};

// One word to every neighbour, once.
class ExchangeProgram final : public NodeProgram {
  public:
    explicit ExchangeProgram(Word w) : word_(w) {}
    void init(NodeContext& ctx) override {
        for (Vertex u : ctx.neighbors()) ctx.send(u, word_);
    }
    void on_round(NodeContext&, std::span<const Message> inbox) override {
        for (const Message& m : inbox) heard_[m.from] = m.word;
    }
    bool idle() const override { return true; }
    const std::map<Vertex, Word>& heard() const { return heard_; }

  private:
    Word word_;
    std::map<Vertex, Word> heard_;
};

ArcList path_arcs(const PathSpec& p) {
    ArcList arcs;
    for (int j = 0; j < p.hops; ++j) arcs.emplace_back(p.vertices[j], p.vertices[j + 1]);
    return arcs;
}

// Removes closed sub-walks so every vertex appears once.
std::vector<Vertex> loop_erase(const std::vector<Vertex>& walk) {
    std::vector<Vertex> out;
    std::map<Vertex, std::size_t> pos;
    for (Vertex v : walk) {
        auto it = pos.find(v);
        if (it != pos.end()) {
            for (std::size_t i = it->second + 1; i < out.size(); ++i) pos.erase(out[i]);
            out.resize(it->second + 1);
            continue;
        }
        pos[v] = out.size();
        out.push_back(v);
    }
    return out;
}

std::vector<Vertex> chase_parents(const std::vector<Vertex>& parent, Vertex root, Vertex v) {
    std::vector<Vertex> rev{v};
    while (v != root) {
        v = parent[v];
        if (v == kNoVertex || rev.size() > parent.size()) return {};
        rev.push_back(v);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

// prefix of P up to v_a, the detour, then the suffix of P from v_b.
std::vector<Vertex> splice(const PathSpec& p, int a, const std::vector<Vertex>& detour, int b) {
    std::vector<Vertex> walk(p.vertices.begin(), p.vertices.begin() + a);
    walk.insert(walk.end(), detour.begin(), detour.end());
    walk.insert(walk.end(), p.vertices.begin() + b + 1, p.vertices.end());
    return loop_erase(walk);
}

RPathWitness detour_witness(const PathSpec& p, const std::vector<Vertex>& route) {
    RPathWitness w;
    if (route.empty()) return w;
    w.kind = WitnessKind::detour;
    std::size_t i = 0;
    while (i + 1 < route.size() && i + 1 < p.vertices.size() && route[i + 1] == p.vertices[i + 1]) ++i;
    w.a = route[i];
    std::size_t back = 0;
    while (back + 1 < route.size() && back + 1 < p.vertices.size() &&
           route[route.size() - 2 - back] == p.vertices[p.vertices.size() - 2 - back]) {
        ++back;
    }
    w.b = route[route.size() - 1 - back];
    return w;
}

void finish(RPathsResult& r) {
    r.h_rep = 0;
    for (std::size_t j = 0; j < r.weight.size(); ++j) {
        if (r.weight[j] < r.inf && !r.routes[j].empty()) {
            r.h_rep = std::max(r.h_rep, static_cast<int>(r.routes[j].size()) - 1);
        }
    }
    r.sisp2 = sisp2(r);
}

RPathsResult make_result(const std::string& algo, const Graph& g, const PathSpec& p) {
    if (p.hops < 1) throw std::invalid_argument("path needs at least one edge");
    RPathsResult r;
    r.algorithm = algo;
    r.path = p;
    r.inf = g.infinity();
    r.weight.assign(p.hops, r.inf);
    r.witness.assign(p.hops, {});
    r.routes.assign(p.hops, {});
    return r;
}

// Each path vertex learns its prefix and suffix weight by one sweep each way
// along the path; both sweeps run concurrently.
void path_sweep(RPathsResult& r, const SimConfig& cfg) { r.report.add_rounds("path-sweep", r.path.hops, cfg.charge); }

std::vector<Weight> prefix_weights(const Graph& g, const PathSpec& p) {
    std::vector<Weight> pre(p.vertices.size(), 0);
    for (int j = 0; j < p.hops; ++j) pre[j + 1] = pre[j] + *g.weight(p.vertices[j], p.vertices[j + 1]);
    return pre;
}

}  // namespace

Weight sisp2(const RPathsResult& r) {
    Weight best = r.inf;
    for (Weight w : r.weight) best = std::min(best, w);
    return best;
}

std::pair<double, double> sampling_parameters(Vertex n, int h_st) {
    const double nn = std::max<Vertex>(n, 1);
    const double cbrt = std::cbrt(nn);
    if (h_st < cbrt) return {nn / cbrt, cbrt};
    return {std::sqrt(nn * h_st), std::sqrt(nn / h_st)};
}

ReductionGraph build_reduction_graph(const Graph& g, const PathSpec& p, const std::vector<Weight>& from_s,
                                     const std::vector<Weight>& to_t) {
    ReductionGraph rg;
    rg.base_n = g.n();
    const Vertex n2 = g.n() + 2 * p.hops;
    std::set<std::pair<Vertex, Vertex>> on_path;
    for (int j = 0; j < p.hops; ++j) on_path.insert({p.vertices[j], p.vertices[j + 1]});
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (!on_path.count({e.u, e.v})) edges.push_back(e);
    }
    rg.host.resize(n2);
    for (Vertex v = 0; v < g.n(); ++v) rg.host[v] = v;
    for (int j = 0; j < p.hops; ++j) {
        Vertex vj = p.vertices[j], vj1 = p.vertices[j + 1];
        rg.host[rg.z_out(j)] = vj;
        rg.host[rg.z_in(j)] = vj1;
        edges.push_back({rg.z_out(j), vj, from_s[vj]});
        edges.push_back({vj1, rg.z_in(j), to_t[vj1]});
        edges.push_back({rg.z_in(j), rg.z_out(j), 0});
        if (j + 1 < p.hops) edges.push_back({rg.z_out(j + 1), rg.z_in(j), 0});
    }
    rg.graph = Graph::from_edges(n2, true, true, edges);
    return rg;
}

RPathsResult rpaths_dirw_apsp(const Graph& g, const PathSpec& p, const SimConfig& cfg) {
    if (!g.directed()) throw std::invalid_argument("rp-dirw-apsp expects a directed graph");
    RPathsResult r = make_result("rp-dirw-apsp", g, p);
    auto tree = bfs_tree(g, p.s, cfg);
    r.report.add_phase("bfs-tree", tree.report, PhaseKind::plain, cfg.charge, g.n(), tree.eccentricity);
    auto from_s = sssp(g, p.s, {}, cfg);
    r.report.add_phase("sssp-from-s", from_s.report, PhaseKind::sssp, cfg.charge, g.n(), tree.eccentricity);
    auto to_t = sssp(g, p.t, {}, cfg, true);
    r.report.add_phase("sssp-to-t", to_t.report, PhaseKind::sssp, cfg.charge, g.n(), tree.eccentricity);

    ReductionGraph rg = build_reduction_graph(g, p, from_s.dist, to_t.dist);
    Network net{&g, &rg.graph, rg.host};
    ApspTable table = apsp(net, rg.graph.infinity(), cfg);
    r.report.add_phase("apsp-reduction", table.rows.report, PhaseKind::apsp, cfg.charge, rg.graph.n(),
                       tree.eccentricity);

    for (int j = 0; j < p.hops; ++j) {
        Weight d = table.dist(rg.z_out(j), rg.z_in(j));
        if (d >= table.rows.inf()) continue;
        r.weight[j] = d;
        std::vector<Vertex> detour;
        for (Vertex x : table.path(rg.z_out(j), rg.z_in(j))) {
            if (x < g.n()) detour.push_back(x);
        }
        int a = p.index_of(detour.front()), b = p.index_of(detour.back());
        r.routes[j] = splice(p, a, detour, b);
        r.witness[j] = detour_witness(p, r.routes[j]);
    }
    finish(r);
    return r;
}

RPathsResult rpaths_iterated_sssp(const Graph& g, const PathSpec& p, const SimConfig& cfg) {
    RPathsResult r = make_result("rp-iter-sssp", g, p);
    auto tree = bfs_tree(g, p.s, cfg);
    r.report.add_phase("bfs-tree", tree.report, PhaseKind::plain, cfg.charge, g.n(), tree.eccentricity);
    for (int j = 0; j < p.hops; ++j) {
        ArcList forbid{{p.vertices[j], p.vertices[j + 1]}};
        auto run = sssp(g, p.s, forbid, cfg);
        r.report.add_phase("sssp-without-edge-" + std::to_string(j), run.report, PhaseKind::sssp, cfg.charge, g.n(),
                           tree.eccentricity);
        if (run.dist[p.t] >= r.inf) continue;
        r.weight[j] = run.dist[p.t];
        r.routes[j] = loop_erase(chase_parents(run.parent, p.s, p.t));
        r.witness[j] = detour_witness(p, r.routes[j]);
    }
    finish(r);
    return r;
}

namespace {

// Shared body of the sampling algorithms. `approx` switches the hop-limited
// BFS for the scaled (1+eps) multi-source computation.
RPathsResult sampling_rpaths(const Graph& g, const PathSpec& p, const SimConfig& cfg, bool approx, double eps,
                             double prob_override) {
    if (!g.directed()) throw std::invalid_argument("sampling replacement paths expect a directed graph");
    RPathsResult r = make_result(approx ? "rp-dirw-approx" : "rp-dirunw-sample", g, p);
    const Vertex n = g.n();
    const int hst = p.hops;

    auto tree = bfs_tree(g, p.s, cfg);
    r.report.add_phase("bfs-tree", tree.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    path_sweep(r, cfg);
    const std::vector<Weight> pre = prefix_weights(g, p);

    auto [h_real, p_real] = sampling_parameters(n, hst);
    const int h = std::max(1, static_cast<int>(std::ceil(h_real - 1e-9)));
    r.h_param = h_real;
    r.p_param = p_real;
    double prob = prob_override >= 0 ? prob_override : sampling_probability(n, h_real);
    auto sample = sample_vertices(g, prob, tree, p.s, cfg);
    r.report.add_phase("sample", sample.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    r.sample_size = sample.set.size();

    // Sources: the path vertices, then sampled vertices off the path.
    std::vector<Vertex> sources = p.vertices;
    std::vector<Vertex> sampled;
    for (Vertex v : sample.set) {
        sampled.push_back(v);
        if (p.index_of(v) < 0) sources.push_back(v);
    }
    const ArcList forbid = path_arcs(p);

    // Distance d'(x, y) in G - P_st as (level, scaled value); level 0 is exact.
    ApproxDistances ad;
    if (approx) {
        ad = approx_msssp(g, sources, h, eps, forbid, cfg);
        r.report.add_phase("approx-hop-distances", ad.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    } else {
        auto bfs = hop_limited_bfs(g, sources, h, true, forbid, cfg);
        r.report.add_phase("hop-limited-bfs", bfs.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
        ad.sources = sources;
        ad.h = h;
        ad.estimate.assign(sources.size(), std::vector<double>(n, std::numeric_limits<double>::infinity()));
        ad.level.assign(sources.size(), std::vector<int>(n, -1));
        ad.scaled.assign(sources.size(), std::vector<Weight>(n, 0));
        ad.parent.assign(sources.size(), std::vector<Vertex>(n, kNoVertex));
        for (std::size_t s = 0; s < sources.size(); ++s) {
            for (Vertex v = 0; v < n; ++v) {
                Weight d = bfs.dist(sources[s], v);
                if (d >= bfs.inf()) continue;
                ad.estimate[s][v] = static_cast<double>(d);
                ad.level[s][v] = 0;
                ad.scaled[s][v] = d;
                ad.parent[s][v] = bfs.parent(sources[s], v);
            }
        }
    }
    std::map<Vertex, int> slot;
    for (std::size_t i = 0; i < sources.size(); ++i) slot[sources[i]] = static_cast<int>(i);
    auto dprime = [&](Vertex x, Vertex y) { return ad.estimate[slot.at(x)][y]; };

    // Sampled vertices publish every finite d'(x, y) they hold for sources x.
    std::vector<std::vector<Word>> items(n);
    for (Vertex y : sampled) {
        for (Vertex x : sources) {
            int sl = slot.at(x);
            if (x == y || ad.level[sl][y] < 0) continue;
            items[y].push_back(Word{x, y, ad.level[sl][y], ad.scaled[sl][y]});
        }
    }
    auto gathered = broadcast_concat(g, tree, p.s, items, cfg);
    r.report.add_phase("broadcast-sample-distances", gathered.report, PhaseKind::plain, cfg.charge, n,
                       tree.eccentricity);
    std::map<std::pair<Vertex, Vertex>, double> published;
    for (const Word& w : gathered.items) {
        published[{static_cast<Vertex>(w[0]), static_cast<Vertex>(w[1])}] = ad.value(static_cast<int>(w[2]), w[3]);
    }
    auto pub = [&](Vertex x, Vertex y) {
        if (x == y) return 0.0;
        auto it = published.find({x, y});
        return it == published.end() ? std::numeric_limits<double>::infinity() : it->second;
    };

    // Long detours chain several sampled vertices, so every node closes the
    // published table over the sample (same data everywhere, no extra rounds).
    const double dinf = std::numeric_limits<double>::infinity();
    const std::size_t ns = sampled.size();
    std::vector<std::vector<double>> close(ns, std::vector<double>(ns, dinf));
    std::vector<std::vector<int>> hop(ns, std::vector<int>(ns, -1));
    for (std::size_t x = 0; x < ns; ++x) {
        for (std::size_t y = 0; y < ns; ++y) {
            close[x][y] = pub(sampled[x], sampled[y]);
            if (close[x][y] < dinf) hop[x][y] = static_cast<int>(y);
        }
    }
    for (std::size_t m = 0; m < ns; ++m) {
        for (std::size_t x = 0; x < ns; ++x) {
            if (close[x][m] >= dinf) continue;
            for (std::size_t y = 0; y < ns; ++y) {
                double d = close[x][m] + close[m][y];
                if (d < close[x][y]) {
                    close[x][y] = d;
                    hop[x][y] = hop[x][m];
                }
            }
        }
    }

    // Via[a][u] = min over sampled v of d'(v_a, v) + closure(v, u), with the argmin.
    struct Via {
        double d = std::numeric_limits<double>::infinity();
        int v = -1;
    };
    std::vector<std::vector<Via>> via(hst + 1, std::vector<Via>(ns));
    for (int a = 0; a <= hst; ++a) {
        Vertex va = p.vertices[a];
        for (std::size_t vi = 0; vi < ns; ++vi) {
            double first = pub(va, sampled[vi]);
            if (first >= dinf) continue;
            for (std::size_t ui = 0; ui < ns; ++ui) {
                double d = first + close[vi][ui];
                if (d < via[a][ui].d) via[a][ui] = {d, static_cast<int>(vi)};
            }
        }
    }

    // Every path vertex v_b evaluates D(v_a, v_b) for a < b and its best
    // candidate for each edge j in [a, b).
    struct Choice {
        double value = std::numeric_limits<double>::infinity();
        int a = -1;
        Vertex v = kNoVertex;
        Vertex u = kNoVertex;
    };
    std::vector<std::vector<Choice>> local(hst + 1, std::vector<Choice>(hst));
    for (int b = 1; b <= hst; ++b) {
        Vertex vb = p.vertices[b];
        for (int a = 0; a < b; ++a) {
            Choice best;
            best.a = a;
            double direct = dprime(p.vertices[a], vb);
            best.value = direct;
            for (std::size_t ui = 0; ui < sampled.size(); ++ui) {
                double d = via[a][ui].d + dprime(sampled[ui], vb);
                if (d < best.value) {
                    best.value = d;
                    best.v = sampled[via[a][ui].v];
                    best.u = sampled[ui];
                }
            }
            if (best.value >= dinf) continue;
            best.value += static_cast<double>(pre[a] + (pre[hst] - pre[b]));
            for (int j = a; j < b; ++j) {
                if (best.value < local[b][j].value) local[b][j] = best;
            }
        }
    }

    // Global per-edge minimum over the path vertices. Estimates travel as
    // fixed-point values rounded up, scaled to fit the word.
    const int bits = word_bits(n, g.max_weight(), cfg.c_w);
    const double max_val = 3.0 * (1.0 + eps) * static_cast<double>(r.inf) + 1.0;
    const int value_bits = static_cast<int>(std::ceil(std::log2(max_val)));
    const int slot_bits = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(hst))));
    const int frac_bits = approx ? std::clamp(bits - 2 - slot_bits - value_bits, 0, 20) : 0;
    const double scale = std::ldexp(1.0, frac_bits);
    const Weight qinf = static_cast<Weight>(std::ldexp(static_cast<double>(r.inf), frac_bits));
    auto quantize = [&](double v) -> Weight {
        if (v >= dinf) return qinf;
        return std::min(qinf, static_cast<Weight>(std::ceil(v * scale - 1e-9)));
    };
    std::vector<std::vector<Weight>> values(n, std::vector<Weight>(hst, qinf));
    for (int b = 1; b <= hst; ++b) {
        for (int j = 0; j < hst; ++j) values[p.vertices[b]][j] = quantize(local[b][j].value);
    }
    auto agg = broadcast_aggregate(g, tree, p.s, values, Combine::min, qinf, cfg);
    r.report.add_phase("aggregate-minima", agg.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);

    // Second pass picks the smallest path index b among the minimisers.
    std::vector<std::vector<Weight>> owners(n, std::vector<Weight>(hst, hst + 1));
    for (int b = 1; b <= hst; ++b) {
        for (int j = 0; j < hst; ++j) {
            if (agg.values[j] < qinf && values[p.vertices[b]][j] == agg.values[j]) owners[p.vertices[b]][j] = b;
        }
    }
    auto own = broadcast_aggregate(g, tree, p.s, owners, Combine::min, hst + 1, cfg);
    r.report.add_phase("aggregate-witness", own.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);

    auto segment = [&](Vertex x, Vertex y) {
        return chase_parents(ad.parent[slot.at(x)], x, y);
    };
    if (approx) r.estimate.assign(hst, dinf);
    for (int j = 0; j < hst; ++j) {
        if (agg.values[j] >= qinf) continue;
        const double value = static_cast<double>(agg.values[j]) / scale;
        if (approx) {
            r.estimate[j] = value;
            r.weight[j] = static_cast<Weight>(std::ceil(value - 1e-9));
        } else {
            r.weight[j] = agg.values[j];
        }
        int b = static_cast<int>(own.values[j]);
        const Choice& c = local[b][j];
        Vertex va = p.vertices[c.a], vb = p.vertices[b];
        std::vector<Vertex> detour;
        if (c.u == kNoVertex) {
            detour = segment(va, vb);
        } else {
            // v_a -> v, then sample to sample along the closure, then u -> v_b;
            // each leg start holds the parent pointers for it.
            auto append = [&](const std::vector<Vertex>& leg) {
                if (!leg.empty()) detour.insert(detour.end(), leg.begin() + (detour.empty() ? 0 : 1), leg.end());
            };
            append(segment(va, c.v));
            std::size_t x = std::find(sampled.begin(), sampled.end(), c.v) - sampled.begin();
            const std::size_t u = std::find(sampled.begin(), sampled.end(), c.u) - sampled.begin();
            while (x != u) {
                auto y = static_cast<std::size_t>(hop[x][u]);
                append(segment(sampled[x], sampled[y]));
                x = y;
            }
            append(segment(c.u, vb));
        }
        r.routes[j] = splice(p, c.a, detour, b);
        r.witness[j] = detour_witness(p, r.routes[j]);
        r.witness[j].a = va;
        r.witness[j].b = vb;
        r.witness[j].u = c.u;
        r.witness[j].v = c.v;
    }
    finish(r);
    return r;
}

}  // namespace

RPathsResult rpaths_dirunw_sampling(const Graph& g, const PathSpec& p, const SimConfig& cfg, double prob_override) {
    if (g.weighted() && std::any_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.w != 1; })) {
        throw std::invalid_argument("rp-dirunw-sample expects an unweighted graph");
    }
    return sampling_rpaths(g, p, cfg, false, 0, prob_override);
}

RPathsResult rpaths_dirw_approx(const Graph& g, const PathSpec& p, double eps, const SimConfig& cfg,
                                double prob_override) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    return sampling_rpaths(g, p, cfg, true, eps, prob_override);
}

RPathsResult rpaths_undirected(const Graph& g, const PathSpec& p, const SimConfig& cfg) {
    if (g.directed()) throw std::invalid_argument("rp-undir expects an undirected graph");
    RPathsResult r = make_result("rp-undir", g, p);
    const Vertex n = g.n();
    const int hst = p.hops;

    auto tree = bfs_tree(g, p.s, cfg);
    r.report.add_phase("bfs-tree", tree.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    auto from_s = sssp(g, p.s, {}, cfg);
    r.report.add_phase("sssp-from-s", from_s.report, PhaseKind::sssp, cfg.charge, n, tree.eccentricity);
    auto from_t = sssp(g, p.t, {}, cfg);
    r.report.add_phase("sssp-from-t", from_t.report, PhaseKind::sssp, cfg.charge, n, tree.eccentricity);

    // Both trees are made to contain P_st: a path vertex takes its path
    // neighbour as parent (legal because P_st is a shortest path).
    std::vector<Vertex> ps = from_s.parent, pt = from_t.parent;
    for (int j = 0; j < hst; ++j) {
        ps[p.vertices[j + 1]] = p.vertices[j];
        pt[p.vertices[j]] = p.vertices[j + 1];
    }
    auto labels = [&](const std::vector<Vertex>& parent, const char* name) {
        std::vector<TreeLabelProgram> prog;
        prog.reserve(n);
        for (Vertex v = 0; v < n; ++v) prog.emplace_back(parent[v], p.index_of(v) >= 0 ? v : kNoVertex);
        auto net = Network::identity(g);
        auto rep = Simulator::run(net, prog, cfg);
        r.report.add_phase(name, rep, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
        std::vector<int> idx(n, -1);
        for (Vertex v = 0; v < n; ++v) {
            if (prog[v].label() != kNoVertex) idx[v] = p.index_of(prog[v].label());
        }
        return idx;
    };
    r.tree_s = ps;
    r.tree_t = pt;
    const std::vector<int> alpha = labels(ps, "alpha-labels");
    const std::vector<int> beta = labels(pt, "beta-labels");

    std::vector<ExchangeProgram> ex;
    ex.reserve(n);
    for (Vertex v = 0; v < n; ++v) ex.emplace_back(Word{beta[v] < 0 ? hst + 1 : beta[v], from_t.dist[v]});
    auto net = Network::identity(g);
    r.report.add_phase("neighbour-exchange", Simulator::run(net, ex, cfg), PhaseKind::plain, cfg.charge, n,
                       tree.eccentricity);

    std::set<std::pair<Vertex, Vertex>> on_path;
    for (int j = 0; j < hst; ++j) {
        on_path.insert({p.vertices[j], p.vertices[j + 1]});
        on_path.insert({p.vertices[j + 1], p.vertices[j]});
    }
    const Weight inf = r.inf;
    std::vector<std::vector<Weight>> best(n, std::vector<Weight>(hst, inf));
    std::vector<std::vector<Weight>> code(n, std::vector<Weight>(hst, 0));
    for (Vertex u = 0; u < n; ++u) {
        if (alpha[u] < 0 || from_s.dist[u] >= inf) continue;
        auto offer = [&](int from, int to, Weight c, Weight cd) {
            for (int j = std::max(from, 0); j < std::min(to, hst); ++j) {
                if (c < best[u][j] || (c == best[u][j] && cd < code[u][j])) {
                    best[u][j] = c;
                    code[u][j] = cd;
                }
            }
        };
        if (beta[u] >= 0 && from_t.dist[u] < inf) {
            offer(alpha[u], beta[u], from_s.dist[u] + from_t.dist[u], static_cast<Weight>(u) * (n + 1) + n);
        }
        for (const auto& [v, w] : ex[u].heard()) {
            if (on_path.count({u, v}) || w[1] >= inf) continue;
            Weight c = from_s.dist[u] + *g.weight(u, v) + w[1];
            offer(alpha[u], static_cast<int>(w[0]), c, static_cast<Weight>(u) * (n + 1) + v);
        }
    }
    auto agg = broadcast_aggregate(g, tree, p.s, best, Combine::min, inf, cfg);
    r.report.add_phase("aggregate-minima", agg.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    const Weight no_code = static_cast<Weight>(n) * (n + 1) + n + 1;
    std::vector<std::vector<Weight>> codes(n, std::vector<Weight>(hst, no_code));
    for (Vertex u = 0; u < n; ++u) {
        for (int j = 0; j < hst; ++j) {
            if (agg.values[j] < inf && best[u][j] == agg.values[j]) codes[u][j] = code[u][j];
        }
    }
    auto wit = broadcast_aggregate(g, tree, p.s, codes, Combine::min, no_code, cfg);
    r.report.add_phase("aggregate-witness", wit.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);

    for (int j = 0; j < hst; ++j) {
        if (agg.values[j] >= inf) continue;
        r.weight[j] = agg.values[j];
        Vertex u = static_cast<Vertex>(wit.values[j] / (n + 1));
        Vertex v = static_cast<Vertex>(wit.values[j] % (n + 1));
        RPathWitness w;
        w.u = u;
        std::vector<Vertex> walk = chase_parents(ps, p.s, u);
        if (v == n) {
            w.kind = WitnessKind::type1;
            auto down = chase_parents(pt, p.t, u);
            walk.insert(walk.end(), down.rbegin() + 1, down.rend());
        } else {
            w.kind = WitnessKind::type2;
            w.v = v;
            auto down = chase_parents(pt, p.t, v);
            walk.insert(walk.end(), down.rbegin(), down.rend());
        }
        r.routes[j] = loop_erase(walk);
        auto d = detour_witness(p, r.routes[j]);
        w.a = d.a;
        w.b = d.b;
        r.witness[j] = w;
    }
    finish(r);
    return r;
}

}  // namespace congest
