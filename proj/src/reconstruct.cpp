#include "congest/reconstruct.hpp"

#include <algorithm>
#include <functional>

#include "congest/oracles.hpp"
#include "congest/primitives.hpp"

namespace congest {

namespace {

struct Hop {
    Vertex to;
    Word word;
};

// Each node reacts to a word with the words it sends on. The handler only
// reads state indexed by the node it is called for.
using Handler = std::function<std::vector<Hop>(Vertex at, Vertex from, const Word& w, Round now)>;

class HandlerProgram final : public NodeProgram {
  public:
    HandlerProgram(const Handler* handler, std::optional<Word> start) : handler_(handler), start_(start) {}

    void init(NodeContext& ctx) override {
        if (start_) queue(ctx, (*handler_)(ctx.id(), kNoVertex, *start_, 0));
        out_.flush(ctx);
    }
    void on_round(NodeContext& ctx, std::span<const Message> inbox) override {
        for (const Message& m : inbox) queue(ctx, (*handler_)(ctx.id(), m.from, m.word, ctx.round()));
        out_.flush(ctx);
    }
    bool idle() const override { return !out_.busy(); }

  private:
    void queue(NodeContext&, std::vector<Hop> hops) {
        for (auto& h : hops) out_.push(h.to, h.word);
    }
    const Handler* handler_;
    std::optional<Word> start_;
    FramedOutbox out_;
};

SimReport run_handler(const Graph& g, const Handler& h, Vertex start, const Word& w, const SimConfig& cfg) {
    std::vector<HandlerProgram> prog;
    prog.reserve(g.n());
    for (Vertex v = 0; v < g.n(); ++v) prog.emplace_back(&h, v == start ? std::optional<Word>(w) : std::nullopt);
    auto net = Network::identity(g);
    return Simulator::run(net, prog, cfg);
}

int failed_index(const Graph& g, const PathSpec& p, std::pair<Vertex, Vertex> e) {
    for (int j = 0; j < p.hops; ++j) {
        Vertex a = p.vertices[j], b = p.vertices[j + 1];
        if ((e.first == a && e.second == b) || (!g.directed() && e.first == b && e.second == a)) return j;
    }
    throw std::invalid_argument("failed edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                ") is not on P_st");
}

void finish_trace(const Graph& g, RouteTrace& t) {
    if (t.found) t.weight = walk_weight(g, t.vertices);
    t.rounds = t.report.rounds;
}

enum Kind : std::int64_t { kNotify = 0, kMsg = 1, kDown = 2, kReverse = 3 };

}  // namespace

std::string to_string(CycleMode m) { return m == CycleMode::table ? "table" : "onfly"; }

CycleMode parse_cycle_mode(const std::string& s) {
    if (s == "table") return CycleMode::table;
    if (s == "onfly") return CycleMode::onfly;
    throw std::invalid_argument("unknown mode '" + s + "' (table|onfly)");
}

std::size_t RoutingTable::max_entries() const {
    std::size_t m = 0;
    for (const auto& row : next) m = std::max(m, row.size());
    return m;
}

RoutingTable build_rpath_tables(const Graph& g, const RPathsResult& r, const SimConfig& cfg) {
    const Vertex n = g.n();
    const PathSpec& p = r.path;
    RoutingTable t;
    t.algorithm = r.algorithm;
    t.path = p;
    t.inf = r.inf;
    t.weight = r.weight;
    t.h_rep = r.h_rep;
    t.next.assign(n, {});

    // s owns the witnesses; every node needs them to derive its entries.
    std::vector<std::vector<Word>> items(n);
    for (int j = 0; j < p.hops; ++j) {
        if (r.weight[j] >= r.inf) continue;
        const RPathWitness& w = r.witness[j];
        if (w.kind == WitnessKind::none || r.routes[j].empty()) {
            throw std::invalid_argument("missing witness for path edge " + std::to_string(j));
        }
        if (w.kind == WitnessKind::detour) {
            items[p.s].push_back(Word{j, p.index_of(w.a), p.index_of(w.b)});
        } else {
            items[p.s].push_back(Word{j, w.u, w.v == kNoVertex ? n : w.v});
        }
    }
    auto tree = bfs_tree(g, p.s, cfg);
    t.report.add_phase("bfs-tree", tree.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    auto gathered = broadcast_concat(g, tree, p.s, items, cfg);
    t.report.add_phase("witness-broadcast", gathered.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);

    // Each node on a replacement path reads its successor off the expansion
    // of the witness (path order, First/parent legs or detour legs).
    for (const Word& w : gathered.items) {
        int j = static_cast<int>(w[0]);
        const auto& route = r.routes[j];
        for (std::size_t i = 0; i + 1 < route.size(); ++i) {
            auto [it, fresh] = t.next[route[i]].emplace(j, route[i + 1]);
            if (!fresh) throw TableCorruption("route for edge " + std::to_string(j) + " revisits a vertex");
        }
    }
    return t;
}

RouteTrace route_failover(const Graph& g, const RoutingTable& tables, std::pair<Vertex, Vertex> failed,
                          const SimConfig& cfg) {
    const PathSpec& p = tables.path;
    const Vertex n = g.n();
    const int j = failed_index(g, p, failed);
    RouteTrace t;
    t.mode = "table";
    t.failed = failed;
    t.max_storage = tables.max_entries();

    Handler h = [&](Vertex at, Vertex from, const Word& w, Round now) -> std::vector<Hop> {
        (void)from;
        if (w[0] == kNotify) {
            if (at != p.s) return {{p.vertices[p.index_of(at) - 1], w}};
            t.notify_rounds = now;
            if (tables.weight[j] >= tables.inf) return {};
            t.found = true;
            t.vertices.push_back(at);
            auto it = tables.next[at].find(j);
            if (it == tables.next[at].end()) throw TableCorruption("s has no entry for edge " + std::to_string(j));
            return {{it->second, Word{kMsg, j, 1}}};
        }
        t.vertices.push_back(at);
        if (at == p.t) {
            t.traversal_rounds = now - t.notify_rounds;
            return {};
        }
        if (w[2] > n) throw TableCorruption("routing pointers loop for edge " + std::to_string(j));
        auto it = tables.next[at].find(j);
        if (it == tables.next[at].end()) {
            throw TableCorruption("vertex " + std::to_string(at) + " has no entry for edge " + std::to_string(j));
        }
        return {{it->second, Word{kMsg, j, w[2] + 1}}};
    };
    // The upstream endpoint notices the failure at round 0.
    t.report = run_handler(g, h, p.vertices[j], Word{kNotify, j}, cfg);
    finish_trace(g, t);
    return t;
}

RouteTrace onfly_construct_undirected(const Graph& g, const RPathsResult& r, std::pair<Vertex, Vertex> failed,
                                      const SimConfig& cfg) {
    if (g.directed()) throw std::invalid_argument("on-the-fly construction is undirected only");
    if (r.tree_s.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("on-the-fly construction needs the rp-undir trees");
    }
    const PathSpec& p = r.path;
    const Vertex n = g.n();
    const int j = failed_index(g, p, failed);
    RouteTrace t;
    t.mode = "onfly";
    t.failed = failed;

    // Persistent per-node state: the two tree parents. `mark` is the one
    // reversed pointer written while the route is being set up.
    const std::vector<Vertex>& ps = r.tree_s;
    const std::vector<Vertex>& pt = r.tree_t;
    std::vector<Vertex> mark(n, kNoVertex);
    std::vector<char> seen(n, 0);
    Round start_route = 0;

    auto deliver_at_u = [&](Vertex at, Vertex vv, Word w) -> std::vector<Hop> {
        if (vv != n) return {{vv, Word{kMsg, 1, w[2], w[3], w[4] + 1}}};
        if (at == p.t) return {};
        return {{pt[at], Word{kMsg, 1, w[2], w[3], w[4] + 1}}};
    };
    auto start_message = [&](Vertex u, Vertex vv, Round now) -> std::vector<Hop> {
        start_route = now;
        t.vertices.push_back(p.s);
        Word w{kMsg, 0, u, vv, 0};
        if (u == p.s) return deliver_at_u(p.s, vv, w);
        return {{mark[p.s], Word{kMsg, 0, u, vv, 1}}};
    };

    Handler h = [&](Vertex at, Vertex from, const Word& w, Round now) -> std::vector<Hop> {
        switch (w[0]) {
            case kNotify: {
                if (at != p.s) return {{ps[at], w}};
                t.notify_rounds = now;
                if (r.weight[j] >= r.inf) return {};
                t.found = true;
                const RPathWitness& wit = r.witness[j];
                Vertex vv = wit.kind == WitnessKind::type2 ? wit.v : n;
                if (wit.u == p.s) return start_message(wit.u, vv, now);
                seen[at] = 1;
                std::vector<Hop> out;
                for (Vertex y : g.neighbors(at)) out.push_back({y, Word{kDown, wit.u, vv}});
                return out;
            }
            case kDown: {
                if (seen[at] || from != ps[at]) return {};
                seen[at] = 1;
                if (at == static_cast<Vertex>(w[1])) return {{ps[at], Word{kReverse}}};
                std::vector<Hop> out;
                for (Vertex y : g.neighbors(at)) {
                    if (y != from) out.push_back({y, w});
                }
                return out;
            }
            case kReverse: {
                mark[at] = from;
                if (at != p.s) return {{ps[at], w}};
                const RPathWitness& wit = r.witness[j];
                return start_message(wit.u, wit.kind == WitnessKind::type2 ? wit.v : n, now);
            }
            default: {
                t.vertices.push_back(at);
                if (w[4] > 2 * n) throw TableCorruption("on-the-fly route loops");
                const Vertex u = static_cast<Vertex>(w[2]);
                const Vertex vv = static_cast<Vertex>(w[3]);
                if (w[1] == 0) {
                    if (at == u) return deliver_at_u(at, vv, w);
                    Vertex nx = mark[at];
                    mark[at] = kNoVertex;
                    if (nx == kNoVertex) throw TableCorruption("missing reversed pointer at " + std::to_string(at));
                    return {{nx, Word{kMsg, 0, u, vv, w[4] + 1}}};
                }
                if (at == p.t) {
                    t.traversal_rounds = now - start_route;
                    return {};
                }
                return {{pt[at], Word{kMsg, 1, u, vv, w[4] + 1}}};
            }
        }
    };
    t.report = run_handler(g, h, p.vertices[j], Word{kNotify, j}, cfg);
    // Two tree parents plus at most one reversed pointer.
    t.max_storage = 2;
    for (Vertex v = 0; v < n; ++v) {
        if (v != p.s && std::find(t.vertices.begin(), t.vertices.end(), v) != t.vertices.end()) t.max_storage = 3;
    }
    finish_trace(g, t);
    // The flood down the s-tree may outlive the route; the trace ends at t.
    if (t.found) t.rounds = start_route + t.traversal_rounds;
    return t;
}

CycleTable build_cycle_tables(const Graph& g, const CycleResult& r, const SimConfig& cfg) {
    if (!r.apsp) throw std::invalid_argument("cycle tables need an exact result with its APSP table");
    const Vertex n = g.n();
    CycleTable t;
    t.inf = r.inf;
    t.ansc = r.ansc;
    t.next.assign(n, {});
    std::vector<std::vector<Word>> items(n);
    for (Vertex u = 0; u < n; ++u) {
        const CycleWitness& w = r.node_witness[u];
        if (w.u == kNoVertex) continue;
        items[u].push_back(Word{u, w.v, w.v2 == kNoVertex ? n : w.v2});
    }
    auto tree = bfs_tree(g, 0, cfg);
    t.report.add_phase("bfs-tree", tree.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    auto gathered = broadcast_concat(g, tree, 0, items, cfg);
    t.report.add_phase("witness-broadcast", gathered.report, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
    for (const Word& w : gathered.items) {
        Vertex u = static_cast<Vertex>(w[0]);
        auto walk = cycle_walk(g, r, u);
        for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
            auto [it, fresh] = t.next[walk[i]].emplace(u, walk[i + 1]);
            if (!fresh) throw TableCorruption("cycle for " + std::to_string(u) + " revisits a vertex");
        }
    }
    return t;
}

RouteTrace construct_cycle(const Graph& g, const CycleResult& r, Vertex u, CycleMode mode, const SimConfig& cfg) {
    if (!r.apsp) throw std::invalid_argument("cycle construction needs an exact result with its APSP table");
    if (u < 0 || u >= g.n()) throw std::invalid_argument("vertex out of range");
    const Vertex n = g.n();
    RouteTrace t;
    t.mode = to_string(mode);
    t.through = u;
    const CycleWitness& wit = r.node_witness[u];
    if (wit.u == kNoVertex) return t;
    t.found = true;
    Round setup = 0;

    Handler h;
    std::vector<Vertex> mark(n, kNoVertex);
    CycleTable table;
    const ApspTable& apsp = *r.apsp;
    Vertex start = u;
    Word first_word{kMsg, 0};

    if (mode == CycleMode::table) {
        table = build_cycle_tables(g, r, cfg);
        t.report.add_phase("cycle-tables", table.report, PhaseKind::plain, cfg.charge, n, 0);
        t.max_storage = 0;
        for (const auto& row : table.next) t.max_storage = std::max(t.max_storage, row.size());
        h = [&](Vertex at, Vertex, const Word& w, Round) -> std::vector<Hop> {
            t.vertices.push_back(at);
            if (at == u && w[1] > 0) return {};
            if (w[1] > n) throw TableCorruption("cycle pointers loop");
            auto it = table.next[at].find(u);
            if (it == table.next[at].end()) throw TableCorruption("no cycle entry at " + std::to_string(at));
            return {{it->second, Word{kMsg, w[1] + 1}}};
        };
    } else {
        // u announces its witness to everybody.
        auto tree = bfs_tree(g, u, cfg);
        std::vector<std::vector<Word>> items(n);
        items[u].push_back(Word{wit.v, wit.v2 == kNoVertex ? n : wit.v2});
        auto gathered = broadcast_concat(g, tree, u, items, cfg);
        t.report.add_phase("witness-broadcast", gathered.report, PhaseKind::plain, cfg.charge, n,
                           tree.eccentricity);
        setup += gathered.report.rounds;
        if (g.directed()) {
            // Forward along the APSP next hops towards u once past v.
            h = [&](Vertex at, Vertex, const Word& w, Round) -> std::vector<Hop> {
                t.vertices.push_back(at);
                if (at == u && w[1] > 0) return {};
                if (w[1] > n) throw TableCorruption("cycle pointers loop");
                Vertex nx = at == u ? wit.v : apsp.first(at, u);
                if (nx == kNoVertex) throw TableCorruption("no route towards " + std::to_string(u));
                return {{nx, Word{kMsg, w[1] + 1}}};
            };
        } else {
            // v climbs u's tree leaving reversed pointers, then the message
            // goes down to v, across to v2 and up u's tree again.
            const Vertex v = wit.v, v2 = wit.v2;
            Handler marker = [&](Vertex at, Vertex from, const Word& w, Round) -> std::vector<Hop> {
                if (from != kNoVertex) mark[at] = from;
                if (at == u) return {};
                return {{apsp.rows.parent(u, at), w}};
            };
            auto rep = run_handler(g, marker, v, Word{kReverse}, cfg);
            t.report.add_phase("reverse-pointers", rep, PhaseKind::plain, cfg.charge, n, tree.eccentricity);
            setup += rep.rounds;
            h = [&, v, v2](Vertex at, Vertex, const Word& w, Round) -> std::vector<Hop> {
                t.vertices.push_back(at);
                if (at == u && w[1] > 0) return {};
                if (w[1] > n) throw TableCorruption("cycle pointers loop");
                Word nw{kMsg, w[1] + 1, w[2]};
                if (w[2] == 0) {
                    if (at == v) return {{v2, Word{kMsg, w[1] + 1, 1}}};
                    return {{mark[at], nw}};
                }
                return {{apsp.rows.parent(u, at), nw}};
            };
            first_word = Word{kMsg, 0, 0};
        }
        t.max_storage = 2;  // the announced witness and one reversed pointer
    }
    auto rep = run_handler(g, h, start, first_word, cfg);
    t.report.add_phase("traversal", rep, PhaseKind::plain, cfg.charge, n, 0);
    t.traversal_rounds = rep.rounds;
    t.notify_rounds = setup;
    t.weight = walk_weight(g, t.vertices);
    t.rounds = setup + rep.rounds;
    return t;
}

}  // namespace congest
