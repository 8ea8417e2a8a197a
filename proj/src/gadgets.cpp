#include "congest/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "congest/oracles.hpp"

namespace congest {

const char* to_string(GadgetFamily f) {
    switch (f) {
        case GadgetFamily::dirw_rpaths: return "dirw-rpaths";
        case GadgetFamily::dirunw_rpaths: return "dirunw-rpaths";
        case GadgetFamily::undir_rpaths: return "undir-rpaths";
        case GadgetFamily::dir_mwc: return "dir-mwc";
        case GadgetFamily::undirw_mwc: return "undirw-mwc";
        case GadgetFamily::qcycle: return "qcycle";
    }
    return "?";
}

std::optional<GadgetFamily> parse_family(const std::string& name) {
    for (auto f : {GadgetFamily::dirw_rpaths, GadgetFamily::dirunw_rpaths, GadgetFamily::undir_rpaths,
                   GadgetFamily::dir_mwc, GadgetFamily::undirw_mwc, GadgetFamily::qcycle}) {
        if (name == to_string(f)) return f;
    }
    return std::nullopt;
}

namespace {

bool uses_strings(GadgetFamily f) { return f != GadgetFamily::dirunw_rpaths && f != GadgetFamily::undir_rpaths; }

bool reachable(const Graph& g, Vertex s, Vertex t) {
    std::vector<char> seen(g.n(), 0);
    std::queue<Vertex> q;
    seen[s] = 1;
    q.push(s);
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop();
        for (const Arc& a : g.out(x)) {
            if (!seen[a.to]) {
                seen[a.to] = 1;
                q.push(a.to);
            }
        }
    }
    return seen[t] != 0;
}

void add_sink(std::vector<Edge>& edges, Vertex sink) {
    for (Vertex v = 0; v < sink; ++v) edges.push_back({v, sink, 1});
}

}  // namespace

bool GadgetSpec::intersecting() const {
    if (family == GadgetFamily::dirunw_rpaths) return base && sub && reachable(*sub, s, t);
    if (!uses_strings(family)) return false;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa[i] && sb[i]) return true;
    }
    return false;
}

void GadgetSpec::validate() const {
    if (k < 1) throw std::invalid_argument("gadget needs k >= 1");
    if (uses_strings(family)) {
        std::size_t bits = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
        if (sa.size() != bits || sb.size() != bits) throw std::invalid_argument("S_a and S_b need k^2 bits each");
    }
    if (family == GadgetFamily::qcycle && q < 4) throw std::invalid_argument("qcycle needs q >= 4");
    if (family == GadgetFamily::dirunw_rpaths) {
        if (!base || !sub) throw std::invalid_argument("dirunw-rpaths needs a base graph and a subgraph");
        if (base->n() != sub->n() || base->directed() || sub->directed()) {
            throw std::invalid_argument("base and subgraph must be undirected on the same vertex set");
        }
        for (const Edge& e : sub->edges()) {
            if (!base->has_edge(e.u, e.v)) throw std::invalid_argument("H must be a subgraph of G");
        }
    }
    if (family == GadgetFamily::undir_rpaths && (!base || base->directed())) {
        throw std::invalid_argument("undir-rpaths needs an undirected base graph");
    }
    if ((family == GadgetFamily::dirunw_rpaths || family == GadgetFamily::undir_rpaths) &&
        (s < 0 || t < 0 || s >= base->n() || t >= base->n() || s == t)) {
        throw std::invalid_argument("s and t must be distinct base vertices");
    }
}

Gadget gen_gadget(const GadgetSpec& spec) {
    spec.validate();
    const int k = spec.k;
    std::vector<Edge> edges;
    Gadget out;
    switch (spec.family) {
        case GadgetFamily::dirw_rpaths: {
            auto l = [&](int i) { return i - 1; };
            auto lp = [&](int i) { return k + i - 1; };
            auto r = [&](int i) { return 2 * k + i - 1; };
            auto rp = [&](int i) { return 3 * k + i - 1; };
            auto lbar = [&](int i) { return 4 * k + i - 1; };
            auto p = [&](int i) { return 5 * k + i; };
            const Weight wk = k;
            for (int i = 1; i <= k; ++i) {
                edges.push_back({l(i), r(i), wk});
                edges.push_back({rp(i), lp(i), wk});
                for (int j = 1; j <= k; ++j) {
                    if (spec.bit_a(i, j)) edges.push_back({lp(j), lbar(i), wk});
                    if (spec.bit_b(i, j)) edges.push_back({r(i), rp(j), wk});
                }
                edges.push_back({p(i - 1), p(i), 1});
                edges.push_back({p(i - 1), l(i), 4 * wk * (k - i + 1)});
                edges.push_back({lbar(i), p(i), 4 * wk * i});
            }
            Vertex n = 6 * k + 1;
            if (spec.sink) add_sink(edges, n++);
            out.graph = Graph::from_edges(n, true, true, edges);
            std::vector<Vertex> path;
            for (int i = 0; i <= k; ++i) path.push_back(p(i));
            out.path = make_path(out.graph, path);
            break;
        }
        case GadgetFamily::dirunw_rpaths: {
            const Graph& g = *spec.base;
            const Graph& h = *spec.sub;
            const Vertex kk = g.n();
            for (const Edge& e : g.edges()) {
                edges.push_back({e.u, e.v, 1});
                edges.push_back({e.v, e.u, 1});
            }
            for (const Edge& e : h.edges()) {
                edges.push_back({kk + e.u, kk + e.v, 1});
                edges.push_back({kk + e.v, kk + e.u, 1});
            }
            for (Vertex v = 0; v < kk; ++v) edges.push_back({v, kk + v, 1});
            const Vertex sp = 2 * kk, tp = 2 * kk + 1;
            edges.push_back({sp, kk + spec.s, 1});
            edges.push_back({kk + spec.t, tp, 1});
            edges.push_back({sp, tp, 1});
            out.graph = Graph::from_edges(2 * kk + 2, true, false, edges);
            out.path = make_path(out.graph, {sp, tp});
            break;
        }
        case GadgetFamily::undir_rpaths: {
            const Graph& g = *spec.base;
            edges = g.edges();
            const Vertex sp = g.n(), tp = g.n() + 1;
            edges.push_back({sp, spec.s, 1});
            edges.push_back({spec.t, tp, 1});
            edges.push_back({sp, tp, 1});
            out.graph = Graph::from_edges(g.n() + 2, false, g.weighted(), edges);
            out.path = make_path(out.graph, {sp, tp});
            break;
        }
        case GadgetFamily::dir_mwc:
        case GadgetFamily::qcycle: {
            // Each l_i becomes a directed chain of q-3 vertices (a single vertex when q = 4).
            const int chain = spec.family == GadgetFamily::qcycle ? spec.q - 3 : 1;
            auto l_in = [&](int i) { return (i - 1) * chain; };
            auto l_out = [&](int i) { return (i - 1) * chain + chain - 1; };
            const Vertex base = k * chain;
            auto r = [&](int i) { return base + i - 1; };
            auto lp = [&](int i) { return base + k + i - 1; };
            auto rp = [&](int i) { return base + 2 * k + i - 1; };
            for (int i = 1; i <= k; ++i) {
                for (int c = 0; c + 1 < chain; ++c) edges.push_back({l_in(i) + c, l_in(i) + c + 1, 1});
                edges.push_back({l_out(i), r(i), 1});
                edges.push_back({rp(i), lp(i), 1});
                for (int j = 1; j <= k; ++j) {
                    if (spec.bit_a(i, j)) edges.push_back({lp(j), l_in(i), 1});
                    if (spec.bit_b(i, j)) edges.push_back({r(i), rp(j), 1});
                }
            }
            Vertex n = base + 3 * k;
            if (spec.sink) add_sink(edges, n++);
            out.graph = Graph::from_edges(n, true, false, edges);
            break;
        }
        case GadgetFamily::undirw_mwc: {
            auto l = [&](int i) { return i - 1; };
            auto r = [&](int i) { return k + i - 1; };
            auto lp = [&](int i) { return 2 * k + i - 1; };
            auto rp = [&](int i) { return 3 * k + i - 1; };
            for (int i = 1; i <= k; ++i) {
                edges.push_back({l(i), r(i), 1});
                edges.push_back({lp(i), rp(i), 1});
                for (int j = 1; j <= k; ++j) {
                    if (spec.bit_a(i, j)) edges.push_back({l(i), lp(j), 2});
                    if (spec.bit_b(i, j)) edges.push_back({r(i), rp(j), 2});
                }
            }
            out.graph = Graph::from_edges(4 * k, false, true, edges);
            break;
        }
    }
    return out;
}

GadgetSpec random_gadget_spec(GadgetFamily family, int k, std::uint64_t seed, bool intersect, int q, bool sink) {
    GadgetSpec spec;
    spec.family = family;
    spec.k = k;
    spec.q = q;
    spec.sink = sink;
    std::mt19937_64 rng(seed);
    if (uses_strings(family)) {
        const std::size_t bits = static_cast<std::size_t>(k) * k;
        spec.sa.assign(bits, 0);
        spec.sb.assign(bits, 0);
        std::uniform_int_distribution<int> side(0, 2);
        for (std::size_t i = 0; i < bits; ++i) {
            int c = side(rng);
            if (c == 0) spec.sa[i] = 1;
            if (c == 1) spec.sb[i] = 1;
        }
        if (intersect) {
            std::uniform_int_distribution<std::size_t> pos(0, bits - 1);
            std::size_t i = pos(rng);
            spec.sa[i] = spec.sb[i] = 1;
        }
        return spec;
    }
    const Vertex n = std::max(k, 2);
    const double p = std::min(1.0, std::max(3.0, 2.0 * std::log(static_cast<double>(n))) / n);
    if (family == GadgetFamily::undir_rpaths) {
        spec.base = random_graph(n, p, true, false, 20, rng());
        spec.s = 0;
        spec.t = n - 1;
        return spec;
    }
    Graph g = random_graph(n, p, false, false, 1, rng());
    spec.s = 0;
    spec.t = n - 1;
    std::bernoulli_distribution keep(0.5);
    std::vector<Edge> h;
    for (const Edge& e : g.edges()) {
        bool at_t = e.u == spec.t || e.v == spec.t;
        if (!intersect && at_t) continue;
        if (keep(rng)) h.push_back(e);
    }
    if (intersect) {
        auto sp = shortest_path_oracle(g, spec.s, spec.t);
        for (std::size_t i = 0; i + 1 < sp.vertices.size(); ++i) {
            Vertex a = std::min(sp.vertices[i], sp.vertices[i + 1]), b = std::max(sp.vertices[i], sp.vertices[i + 1]);
            if (std::find_if(h.begin(), h.end(), [&](const Edge& e) { return e.u == a && e.v == b; }) == h.end()) {
                h.push_back({a, b, 1});
            }
        }
    }
    spec.base = g;
    spec.sub = Graph::from_edges(n, false, false, h);
    return spec;
}

DichotomyVerdict check_dichotomy(const GadgetSpec& spec, const Gadget& g) {
    DichotomyVerdict v;
    v.intersecting = spec.intersecting();
    const int k = spec.k;
    const Weight inf = g.graph.infinity();
    auto sisp2 = [&] {
        auto w = oracle_rpaths(g.graph, *g.path);
        return *std::min_element(w.begin(), w.end());
    };
    auto side = [&](Weight low_if_intersect, Weight high_if_disjoint) {
        if (v.intersecting) {
            v.predicted = "<= " + std::to_string(low_if_intersect);
            v.holds = v.measured <= low_if_intersect;
        } else {
            v.predicted = ">= " + std::to_string(high_if_disjoint);
            v.holds = v.measured >= high_if_disjoint;
        }
    };
    switch (spec.family) {
        case GadgetFamily::dirw_rpaths:
            v.measured = sisp2();
            side(4LL * k * k + 9LL * k - 1, 4LL * k * k + 12LL * k);
            break;
        case GadgetFamily::dirunw_rpaths:
            v.measured = sisp2();
            v.predicted = v.intersecting ? "finite" : "infinite";
            v.holds = (v.measured < inf) == v.intersecting;
            break;
        case GadgetFamily::undir_rpaths: {
            v.measured = sisp2();
            Weight d = dijkstra_distances(*spec.base, spec.s)[spec.t];
            Weight expect = d >= spec.base->infinity() ? inf : 2 + d;
            v.predicted = "== " + std::to_string(expect);
            v.holds = v.measured == expect;
            break;
        }
        case GadgetFamily::dir_mwc:
            v.measured = oracle_mwc_ansc(g.graph).mwc;
            side(4, 8);
            break;
        case GadgetFamily::qcycle:
            v.measured = oracle_mwc_ansc(g.graph).mwc;
            side(spec.q, 2LL * spec.q);
            break;
        case GadgetFamily::undirw_mwc:
            v.measured = oracle_mwc_ansc(g.graph).mwc;
            side(6, 8);
            break;
    }
    return v;
}

}  // namespace congest
