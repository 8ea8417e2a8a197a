#include "congest/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <unordered_set>

namespace congest {

MultiSourceResult::MultiSourceResult(std::vector<Vertex> sources, Vertex n, Weight inf)
    : sources_(std::move(sources)), slot_of_(n, -1), n_(n), inf_(inf) {
    for (std::size_t i = 0; i < sources_.size(); ++i) slot_of_[sources_[i]] = static_cast<int>(i);
    std::size_t cells = sources_.size() * static_cast<std::size_t>(n);
    dist_.assign(cells, inf);
    parent_.assign(cells, kNoVertex);
    first_.assign(cells, kNoVertex);
}

void MultiSourceResult::set(Vertex source, Vertex v, Weight d, Vertex parent, Vertex first) {
    auto i = index(source, v);
    dist_[i] = d;
    parent_[i] = parent;
    first_[i] = first;
}

namespace {

std::uint64_t arc_key(Vertex u, Vertex v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

struct RelaxShared {
    const RelaxParams* params = nullptr;
    Vertex n = 0;
    Weight inf = 0;
    std::vector<int> slot_of;
    std::unordered_set<std::uint64_t> forbidden;
    bool undirected = false;

    bool is_forbidden(Vertex u, Vertex v) const {
        if (forbidden.empty()) return false;
        if (forbidden.count(arc_key(u, v))) return true;
        return undirected && forbidden.count(arc_key(v, u));
    }
};

// One node of the pipelined multi-source relaxation. Each neighbour gets a
// priority queue of improved entries; one entry crosses each arc per round.
class RelaxProgram final : public NodeProgram {
  public:
    explicit RelaxProgram(const RelaxShared* shared) : sh_(shared) {}

    void init(NodeContext& ctx) override {
        const auto& p = *sh_->params;
        const std::size_t k = p.sources.size();
        me_ = ctx.id();
        dist_.assign(k, sh_->inf);
        parent_.assign(k, kNoVertex);
        first_.assign(k, kNoVertex);
        listed_.assign(k, 0);

        auto add_target = [&](Vertex to, Weight w) {
            if (p.traversal == Traversal::in_arcs ? sh_->is_forbidden(to, me_) : sh_->is_forbidden(me_, to)) return;
            targets_.push_back({to, p.unit_weights ? 1 : w, {}, {}, {}});
        };
        auto add_source_arc = [&](Vertex from, Weight w) {
            if (p.traversal == Traversal::in_arcs ? sh_->is_forbidden(me_, from) : sh_->is_forbidden(from, me_)) return;
            incoming_[from] = p.unit_weights ? 1 : w;
        };
        switch (p.traversal) {
            case Traversal::out_arcs:
                for (const Arc& a : ctx.out()) add_target(a.to, a.w);
                for (const Arc& a : ctx.in()) add_source_arc(a.to, a.w);
                break;
            case Traversal::in_arcs:
                for (const Arc& a : ctx.in()) add_target(a.to, a.w);
                for (const Arc& a : ctx.out()) add_source_arc(a.to, a.w);
                break;
            case Traversal::underlying:
                for (Vertex u : ctx.neighbors()) {
                    add_target(u, 1);
                    add_source_arc(u, 1);
                }
                break;
        }

        int slot = sh_->slot_of[me_];
        if (slot >= 0) {
            dist_[slot] = 0;
            list(slot);
            schedule(slot, kNoVertex, 0, p.stagger ? slot : 0);
        }
        flush(ctx);
    }

    void on_round(NodeContext& ctx, std::span<const Message> inbox) override {
        const auto& p = *sh_->params;
        for (const Message& m : inbox) {
            auto it = incoming_.find(m.from);
            if (it == incoming_.end()) continue;
            Vertex source = static_cast<Vertex>(m.word[0]);
            int slot = sh_->slot_of[source];
            Weight cand = sat_add(m.word[1], it->second, sh_->inf);
            if (cand >= sh_->inf || cand > p.dist_limit || cand >= dist_[slot]) continue;
            if (!listed_[slot] && listed_keys_.size() >= p.top_r) {
                if (std::pair{cand, source} >= *listed_keys_.rbegin()) continue;
            }
            if (listed_[slot]) listed_keys_.erase({dist_[slot], source});
            dist_[slot] = cand;
            parent_[slot] = m.from;
            first_[slot] = m.word[2] == sh_->n ? me_ : static_cast<Vertex>(m.word[2]);
            list(slot);
            schedule(slot, m.from, ctx.round(), 0);
        }
        flush(ctx);
    }

    bool idle() const override { return !busy_; }

    void collect(MultiSourceResult& out) const {
        const auto& p = *sh_->params;
        for (std::size_t s = 0; s < p.sources.size(); ++s) {
            if (listed_[s] && dist_[s] < sh_->inf) out.set(p.sources[s], me_, dist_[s], parent_[s], first_[s]);
        }
    }

  private:
    using Key = std::tuple<Weight, Weight, int>;

    struct Pending {
        Key key;
        Round ready;
        bool due;  // moved from `waiting` into `queue`
    };
    // Entries wait by ready round, then compete by key once due.
    struct Target {
        Vertex to;
        Weight w;
        std::set<Key> queue;
        std::set<std::pair<Round, int>> waiting;
        std::map<int, Pending> pending;

        void drop(std::map<int, Pending>::iterator it) {
            if (it->second.due) {
                queue.erase(it->second.key);
            } else {
                waiting.erase({it->second.ready, it->first});
            }
            pending.erase(it);
        }
    };

    void list(int slot) {
        const auto& p = *sh_->params;
        Vertex source = p.sources[slot];
        listed_keys_.insert({dist_[slot], source});
        listed_[slot] = 1;
        if (listed_keys_.size() > p.top_r) {
            auto worst = *listed_keys_.rbegin();
            listed_keys_.erase(worst);
            int evicted = sh_->slot_of[worst.second];
            listed_[evicted] = 0;
            for (auto& t : targets_) {
                auto pit = t.pending.find(evicted);
                if (pit != t.pending.end()) t.drop(pit);
            }
        }
    }

    void schedule(int slot, Vertex skip, Round now, Round extra_delay) {
        if (!listed_[slot]) return;
        const auto& p = *sh_->params;
        Vertex source = p.sources[slot];
        Key key = p.order == QueueOrder::by_distance ? Key{dist_[slot], source, slot} : Key{source, dist_[slot], slot};
        for (auto& t : targets_) {
            if (t.to == skip) continue;
            Round delay = p.delayed ? std::max<Weight>(t.w, 1) : 1;
            auto pit = t.pending.find(slot);
            if (pit != t.pending.end()) t.drop(pit);
            Round ready = now + delay + extra_delay;
            t.pending.emplace(slot, Pending{key, ready, false});
            t.waiting.insert({ready, slot});
        }
    }

    void flush(NodeContext& ctx) {
        const Round tx = ctx.round() + 1;
        Round earliest = std::numeric_limits<Round>::max();
        for (auto& t : targets_) {
            while (!t.waiting.empty() && t.waiting.begin()->first <= tx) {
                int slot = t.waiting.begin()->second;
                t.waiting.erase(t.waiting.begin());
                Pending& pe = t.pending.at(slot);
                pe.due = true;
                t.queue.insert(pe.key);
            }
            if (!t.queue.empty()) {
                int slot = std::get<2>(*t.queue.begin());
                Weight fenc = first_[slot] == kNoVertex ? sh_->n : first_[slot];
                ctx.send(t.to, Word{sh_->params->sources[slot], dist_[slot], fenc});
                t.queue.erase(t.queue.begin());
                t.pending.erase(slot);
            }
            if (!t.queue.empty()) earliest = std::min(earliest, tx + 1);
            if (!t.waiting.empty()) earliest = std::min(earliest, t.waiting.begin()->first);
        }
        busy_ = earliest <= tx + 1;
        if (earliest != std::numeric_limits<Round>::max() && !busy_) ctx.wake_at(earliest - 1);
    }

    const RelaxShared* sh_;
    Vertex me_ = 0;
    std::vector<Weight> dist_;
    std::vector<Vertex> parent_;
    std::vector<Vertex> first_;
    std::vector<char> listed_;
    std::set<std::pair<Weight, Vertex>> listed_keys_;
    std::vector<Target> targets_;
    std::map<Vertex, Weight> incoming_;
    bool busy_ = false;
};

}  // namespace

MultiSourceResult relax(const Network& net, const RelaxParams& params, Weight inf, const SimConfig& cfg) {
    const Graph& topo = *net.topology;
    RelaxShared shared;
    shared.params = &params;
    shared.n = topo.n();
    shared.inf = inf;
    shared.undirected = !topo.directed();
    shared.slot_of.assign(topo.n(), -1);
    for (std::size_t i = 0; i < params.sources.size(); ++i) {
        Vertex s = params.sources[i];
        if (s < 0 || s >= topo.n() || shared.slot_of[s] >= 0) throw std::invalid_argument("bad or repeated source");
        shared.slot_of[s] = static_cast<int>(i);
    }
    for (const auto& [u, v] : params.forbidden) shared.forbidden.insert(arc_key(u, v));

    std::vector<RelaxProgram> nodes;
    nodes.reserve(topo.n());
    for (Vertex v = 0; v < topo.n(); ++v) nodes.emplace_back(&shared);
    SimReport rep = Simulator::run(net, nodes, cfg);

    MultiSourceResult result(params.sources, topo.n(), inf);
    for (const auto& node : nodes) node.collect(result);
    result.report = rep;
    return result;
}

namespace {

TreeResult tree_from(const MultiSourceResult& r, Vertex root) {
    TreeResult t;
    t.dist.resize(r.n());
    t.parent.resize(r.n());
    for (Vertex v = 0; v < r.n(); ++v) {
        t.dist[v] = r.dist(root, v);
        t.parent[v] = r.parent(root, v);
        if (t.dist[v] < r.inf()) t.eccentricity = std::max<int>(t.eccentricity, static_cast<int>(t.dist[v]));
    }
    t.report = r.report;
    return t;
}

}  // namespace

TreeResult bfs_tree(const Graph& g, Vertex root, const SimConfig& cfg) {
    RelaxParams p;
    p.sources = {root};
    p.traversal = Traversal::underlying;
    p.unit_weights = true;
    auto net = Network::identity(g);
    return tree_from(relax(net, p, g.n() + 1, cfg), root);
}

MultiSourceResult hop_limited_bfs(const Graph& g, const std::vector<Vertex>& sources, int hops, bool respect_direction,
                                  const ArcList& forbidden, const SimConfig& cfg) {
    RelaxParams p;
    p.sources = sources;
    p.traversal = respect_direction ? Traversal::out_arcs : Traversal::underlying;
    p.unit_weights = true;
    p.dist_limit = hops;
    p.forbidden = forbidden;
    auto net = Network::identity(g);
    return relax(net, p, g.n() + 1, cfg);
}

MultiSourceResult delayed_bfs(const Graph& scaled, const std::vector<Vertex>& sources, Weight hop_limit,
                              const SimConfig& cfg, std::size_t top_r) {
    RelaxParams p;
    p.sources = sources;
    p.traversal = Traversal::out_arcs;
    p.delayed = true;
    p.dist_limit = hop_limit;
    p.top_r = top_r;
    auto net = Network::identity(scaled);
    return relax(net, p, scaled.infinity(), cfg);
}

TreeResult sssp(const Graph& g, Vertex source, const ArcList& forbidden, const SimConfig& cfg, bool to_source) {
    RelaxParams p;
    p.sources = {source};
    p.traversal = to_source ? Traversal::in_arcs : Traversal::out_arcs;
    p.forbidden = forbidden;
    auto net = Network::identity(g);
    return tree_from(relax(net, p, g.infinity(), cfg), source);
}

std::vector<Vertex> ApspTable::path(Vertex u, Vertex v) const {
    if (dist(u, v) >= rows.inf()) return {};
    std::vector<Vertex> p{u};
    Vertex x = u;
    while (x != v) {
        x = first(x, v);
        if (x == kNoVertex || static_cast<Vertex>(p.size()) > rows.n()) return {};
        p.push_back(x);
    }
    return p;
}

ApspTable apsp(const Network& net, Weight inf, const SimConfig& cfg) {
    const Graph& topo = *net.topology;
    RelaxParams p;
    p.sources.resize(topo.n());
    for (Vertex v = 0; v < topo.n(); ++v) p.sources[v] = v;
    p.traversal = Traversal::out_arcs;
    if (topo.weighted()) {
        p.stagger = true;
        p.order = QueueOrder::by_source;
    }
    return ApspTable{relax(net, p, inf, cfg)};
}

ApspTable apsp(const Graph& g, const SimConfig& cfg) {
    auto net = Network::identity(g);
    return apsp(net, g.infinity(), cfg);
}

SourceDetectionTable source_detection(const Graph& g, const std::vector<Vertex>& sources, std::size_t r, int h,
                                      const SimConfig& cfg) {
    if (r < 1 || h < 0) throw std::invalid_argument("source_detection needs R >= 1 and h >= 0");
    RelaxParams p;
    p.sources = sources;
    p.traversal = Traversal::out_arcs;
    p.unit_weights = true;
    p.dist_limit = h;
    p.top_r = r;
    auto net = Network::identity(g);
    auto res = relax(net, p, g.n() + 1, cfg);
    SourceDetectionTable table;
    table.r = r;
    table.h = h;
    table.lists.resize(g.n());
    for (Vertex v = 0; v < g.n(); ++v) {
        for (Vertex s : sources) {
            if (res.dist(s, v) < res.inf()) table.lists[v].push_back({s, res.dist(s, v), res.parent(s, v)});
        }
        std::sort(table.lists[v].begin(), table.lists[v].end(),
                  [](const SourceEntry& a, const SourceEntry& b) { return std::tie(a.dist, a.source) < std::tie(b.dist, b.source); });
    }
    table.report = res.report;
    return table;
}

double ApproxDistances::at(Vertex source, Vertex v) const {
    auto it = std::find(sources.begin(), sources.end(), source);
    return estimate[it - sources.begin()][v];
}

double ApproxDistances::value(int lvl, Weight d) const {
    if (lvl == 0) return static_cast<double>(d);
    return eps * std::ldexp(1.0, lvl) / (2.0 * h) * static_cast<double>(d);
}

ApproxDistances approx_msssp(const Graph& g, const std::vector<Vertex>& sources, int h, double eps,
                             const ArcList& forbidden, const SimConfig& cfg) {
    if (!(eps > 0) || h < 1) throw std::invalid_argument("approx_msssp needs eps > 0 and h >= 1");
    ApproxDistances out;
    out.sources = sources;
    const double unreachable = std::numeric_limits<double>::infinity();
    out.estimate.assign(sources.size(), std::vector<double>(g.n(), unreachable));
    out.level.assign(sources.size(), std::vector<int>(g.n(), -1));
    out.scaled.assign(sources.size(), std::vector<Weight>(g.n(), 0));
    out.parent.assign(sources.size(), std::vector<Vertex>(g.n(), kNoVertex));
    out.h = h;
    out.eps = eps;

    bool unit = !g.weighted() || std::all_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.w == 1; });
    if (unit) {
        // Scaling degenerates: hop distance is the weighted distance.
        auto r = hop_limited_bfs(g, sources, h, true, forbidden, cfg);
        for (std::size_t s = 0; s < sources.size(); ++s) {
            for (Vertex v = 0; v < g.n(); ++v) {
                Weight d = r.dist(sources[s], v);
                if (d >= r.inf()) continue;
                out.estimate[s][v] = static_cast<double>(d);
                out.level[s][v] = 0;
                out.scaled[s][v] = d;
                out.parent[s][v] = r.parent(sources[s], v);
            }
        }
        out.levels = 0;
        out.report.add_phase("hop-bfs", r.report, PhaseKind::plain, cfg.charge, g.n(), 0);
        return out;
    }

    Graph base = g.without_edges(forbidden);
    const double hw = static_cast<double>(h) * static_cast<double>(std::max<Weight>(g.max_weight(), 1));
    out.levels = std::max(1, static_cast<int>(std::ceil(std::log2(hw) - 1e-12)));
    const Weight limit = static_cast<Weight>(std::ceil((1.0 + 2.0 / eps) * h - 1e-9));
    for (int i = 1; i <= out.levels; ++i) {
        Graph gi = scale_weights(base, i, eps, h);
        auto r = delayed_bfs(gi, sources, limit, cfg);
        for (std::size_t s = 0; s < sources.size(); ++s) {
            for (Vertex v = 0; v < g.n(); ++v) {
                Weight d = r.dist(sources[s], v);
                if (d >= r.inf()) continue;
                double est = out.value(i, d);
                if (est < out.estimate[s][v]) {
                    out.estimate[s][v] = est;
                    out.level[s][v] = i;
                    out.scaled[s][v] = d;
                    out.parent[s][v] = r.parent(sources[s], v);
                }
            }
        }
        out.report.add_phase("scale-level-" + std::to_string(i), r.report, PhaseKind::plain, cfg.charge, g.n(), 0);
    }
    return out;
}

namespace {

std::vector<std::vector<Vertex>> children_of(const TreeResult& tree) {
    std::vector<std::vector<Vertex>> ch(tree.parent.size());
    for (std::size_t v = 0; v < tree.parent.size(); ++v) {
        if (tree.parent[v] != kNoVertex) ch[tree.parent[v]].push_back(static_cast<Vertex>(v));
    }
    return ch;
}

// Pipelined convergecast of k slots then pipelined broadcast, in one program.
class AggregateProgram final : public NodeProgram {
  public:
    AggregateProgram(Vertex parent, std::vector<Vertex> children, std::vector<Weight> own, Combine combine)
        : parent_(parent), children_(std::move(children)), acc_(std::move(own)), combine_(combine) {}

    void init(NodeContext& ctx) override {
        received_.assign(children_.size(), 0);
        result_.assign(acc_.size(), 0);
        step(ctx);
    }

    void on_round(NodeContext& ctx, std::span<const Message> inbox) override {
        for (const Message& m : inbox) {
            std::size_t slot = static_cast<std::size_t>(m.word[1]);
            if (m.word[0] == 0) {
                auto c = std::find(children_.begin(), children_.end(), m.from) - children_.begin();
                fold(acc_[slot], m.word[2]);
                ++received_[c];
            } else {
                result_[slot] = m.word[2];
                for (Vertex c : children_) down_.push(c, Word{1, m.word[1], m.word[2]});
            }
        }
        step(ctx);
    }

    bool idle() const override { return !can_up() && !root_ready() && !down_.busy(); }

    const std::vector<Weight>& result() const { return result_; }

  private:
    void fold(Weight& a, Weight b) const { a = combine_ == Combine::min ? std::min(a, b) : a + b; }

    bool children_done(std::size_t slot) const {
        return std::all_of(received_.begin(), received_.end(), [&](int r) { return r > static_cast<int>(slot); });
    }
    bool can_up() const { return parent_ != kNoVertex && next_ < acc_.size() && children_done(next_); }
    bool root_ready() const { return parent_ == kNoVertex && next_ < acc_.size() && children_done(next_); }

    void step(NodeContext& ctx) {
        if (can_up()) {
            ctx.send(parent_, Word{0, static_cast<std::int64_t>(next_), acc_[next_]});
            ++next_;
        }
        while (root_ready()) {
            result_[next_] = acc_[next_];
            for (Vertex c : children_) down_.push(c, Word{1, static_cast<std::int64_t>(next_), acc_[next_]});
            ++next_;
        }
        down_.flush(ctx);
    }

    Vertex parent_;
    std::vector<Vertex> children_;
    std::vector<Weight> acc_;
    Combine combine_;
    std::vector<int> received_;
    std::vector<Weight> result_;
    std::size_t next_ = 0;
    FramedOutbox down_;
};

class UpcastProgram final : public NodeProgram {
  public:
    UpcastProgram(Vertex parent, std::vector<Word> own) : parent_(parent), own_(std::move(own)) {}

    void init(NodeContext& ctx) override {
        for (const Word& w : own_) accept(w);
        out_.flush(ctx);
    }
    void on_round(NodeContext& ctx, std::span<const Message> inbox) override {
        for (const Message& m : inbox) accept(m.word);
        out_.flush(ctx);
    }
    bool idle() const override { return !out_.busy(); }
    const std::vector<Word>& collected() const { return collected_; }

  private:
    void accept(const Word& w) {
        if (parent_ == kNoVertex) {
            collected_.push_back(w);
        } else {
            out_.push(parent_, w);
        }
    }
    Vertex parent_;
    std::vector<Word> own_;
    std::vector<Word> collected_;
    FramedOutbox out_;
};

class DowncastProgram final : public NodeProgram {
  public:
    DowncastProgram(std::vector<Vertex> children, std::vector<Word> initial)
        : children_(std::move(children)), initial_(std::move(initial)) {}

    void init(NodeContext& ctx) override {
        for (const Word& w : initial_) accept(w);
        out_.flush(ctx);
    }
    void on_round(NodeContext& ctx, std::span<const Message> inbox) override {
        for (const Message& m : inbox) accept(m.word);
        out_.flush(ctx);
    }
    bool idle() const override { return !out_.busy(); }
    std::size_t received() const { return received_; }

  private:
    void accept(const Word& w) {
        ++received_;
        for (Vertex c : children_) out_.push(c, w);
    }
    std::vector<Vertex> children_;
    std::vector<Word> initial_;
    std::size_t received_ = 0;
    FramedOutbox out_;
};

class RowProgram final : public NodeProgram {
  public:
    using Deliver = std::function<void(Vertex, Vertex, const Word&)>;
    RowProgram(const std::vector<Word>* row, const Deliver* deliver) : row_(row), deliver_(deliver) {}

    void init(NodeContext& ctx) override {
        for (Vertex u : ctx.neighbors()) {
            for (const Word& w : *row_) out_.push(u, w);
        }
        out_.flush(ctx);
    }
    void on_round(NodeContext& ctx, std::span<const Message> inbox) override {
        for (const Message& m : inbox) (*deliver_)(ctx.id(), m.from, m.word);
        out_.flush(ctx);
    }
    bool idle() const override { return !out_.busy(); }

  private:
    const std::vector<Word>* row_;
    const Deliver* deliver_;
    FramedOutbox out_;
};

class SampleProgram final : public NodeProgram {
  public:
    explicit SampleProgram(double prob) : prob_(prob) {}
    void init(NodeContext& ctx) override {
        std::bernoulli_distribution coin(prob_);
        member_ = coin(ctx.rng());
    }
    void on_round(NodeContext&, std::span<const Message>) override {}
    bool idle() const override { return true; }
    bool member() const { return member_; }

  private:
    double prob_;
    bool member_ = false;
};

}  // namespace

AggregateResult broadcast_aggregate(const Graph& g, const TreeResult& tree, Vertex root,
                                    const std::vector<std::vector<Weight>>& values, Combine combine, Weight identity,
                                    const SimConfig& cfg) {
    (void)identity;
    auto children = children_of(tree);
    std::vector<AggregateProgram> nodes;
    nodes.reserve(g.n());
    for (Vertex v = 0; v < g.n(); ++v) {
        nodes.emplace_back(v == root ? kNoVertex : tree.parent[v], children[v], values[v], combine);
    }
    auto net = Network::identity(g);
    AggregateResult out;
    out.report = Simulator::run(net, nodes, cfg);
    out.values = nodes[root].result();
    for (Vertex v = 0; v < g.n(); ++v) {
        if (nodes[v].result() != out.values) throw std::logic_error("aggregate broadcast did not reach every node");
    }
    return out;
}

GatherResult broadcast_concat(const Graph& g, const TreeResult& tree, Vertex root,
                              const std::vector<std::vector<Word>>& items, const SimConfig& cfg) {
    auto children = children_of(tree);
    auto net = Network::identity(g);
    std::vector<UpcastProgram> up;
    up.reserve(g.n());
    for (Vertex v = 0; v < g.n(); ++v) up.emplace_back(v == root ? kNoVertex : tree.parent[v], items[v]);
    GatherResult out;
    SimReport up_rep = Simulator::run(net, up, cfg);
    out.items = up[root].collected();

    std::vector<DowncastProgram> down;
    down.reserve(g.n());
    for (Vertex v = 0; v < g.n(); ++v) down.emplace_back(children[v], v == root ? out.items : std::vector<Word>{});
    SimReport down_rep = Simulator::run(net, down, cfg);
    for (Vertex v = 0; v < g.n(); ++v) {
        if (down[v].received() != out.items.size()) throw std::logic_error("broadcast did not reach every node");
    }
    out.report.add_phase("upcast", up_rep, PhaseKind::plain, cfg.charge, g.n(), 0);
    out.report.add_phase("downcast", down_rep, PhaseKind::plain, cfg.charge, g.n(), 0);
    return out;
}

SimReport neighbour_exchange(const Graph& g, const std::vector<std::vector<Word>>& rows,
                             const std::function<void(Vertex, Vertex, const Word&)>& deliver, const SimConfig& cfg) {
    std::vector<RowProgram> nodes;
    nodes.reserve(g.n());
    for (Vertex v = 0; v < g.n(); ++v) nodes.emplace_back(&rows[v], &deliver);
    auto net = Network::identity(g);
    return Simulator::run(net, nodes, cfg);
}

SampleResult sample_vertices(const Graph& g, double prob, const TreeResult& tree, Vertex root, const SimConfig& cfg) {
    if (prob < 0 || prob > 1) throw std::invalid_argument("sampling probability must lie in [0,1]");
    std::vector<SampleProgram> nodes(g.n(), SampleProgram(prob));
    auto net = Network::identity(g);
    SampleResult out;
    SimReport draw = Simulator::run(net, nodes, cfg);
    out.member.resize(g.n());
    std::vector<std::vector<Weight>> counts(g.n());
    for (Vertex v = 0; v < g.n(); ++v) {
        out.member[v] = nodes[v].member();
        if (out.member[v]) out.set.push_back(v);
        counts[v] = {out.member[v] ? 1 : 0};
    }
    auto announce = broadcast_aggregate(g, tree, root, counts, Combine::sum, 0, cfg);
    out.report.add_phase("sample", draw, PhaseKind::plain, cfg.charge, g.n(), 0);
    out.report.add_phase("announce-count", announce.report, PhaseKind::plain, cfg.charge, g.n(), 0);
    return out;
}

double sampling_probability(Vertex n, double h) {
    if (n <= 1) return 1.0;
    return std::min(1.0, 2.0 * std::log(static_cast<double>(n)) / std::max(h, 1.0));
}

}  // namespace congest
