#include "congest/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace congest {

Word::Word(std::initializer_list<std::int64_t> fields) {
    for (auto f : fields) push(f);
}

void Word::push(std::int64_t field) {
    if (size_ == kMaxFields) throw std::length_error("Word holds at most 6 fields");
    fields_[size_++] = field;
}

int Word::bits() const {
    int total = 0;
    for (std::size_t i = 0; i < size_; ++i) {
        if (fields_[i] < 0) {
            total += 64;
        } else {
            total += std::max(1, static_cast<int>(std::bit_width(static_cast<std::uint64_t>(fields_[i]))));
        }
    }
    return total;
}

Round ChargeModel::sssp(Vertex n, int diameter) const {
    double d = std::max(1, diameter);
    return static_cast<Round>(std::ceil(sssp_const * (std::sqrt(static_cast<double>(n)) * std::pow(d, 0.25) + d)));
}

Round ChargeModel::apsp(Vertex n) const {
    double nn = std::max<Vertex>(2, n);
    return static_cast<Round>(std::ceil(apsp_const * nn * std::log2(nn)));
}

void SimReport::add_phase(const std::string& name, const SimReport& sub, PhaseKind kind, const ChargeModel& charge,
                          Vertex n, int diameter) {
    Round charged = sub.rounds;
    if (kind == PhaseKind::sssp) charged = charge.sssp(n, diameter);
    if (kind == PhaseKind::apsp) charged = charge.apsp(n);
    rounds += sub.rounds;
    words_sent += sub.words_sent;
    max_edge_load = std::max(max_edge_load, sub.max_edge_load);
    word_bits = std::max(word_bits, sub.word_bits);
    c_w = sub.c_w;
    phases.push_back({name, sub.rounds, charged});
    if (charge.enabled) charged_rounds = charged_rounds.value_or(0) + charged;
}

void SimReport::add_rounds(const std::string& name, Round r, const ChargeModel& charge) {
    rounds += r;
    phases.push_back({name, r, r});
    if (charge.enabled) charged_rounds = charged_rounds.value_or(0) + r;
}

int word_bits(Vertex n, Weight max_w, int c_w) {
    long double span = static_cast<long double>(std::max<Vertex>(n, 1)) * static_cast<long double>(max_w + 1);
    int lg = static_cast<int>(std::ceil(std::log2(std::max<long double>(span, 2.0L)) - 1e-12L));
    return c_w * std::max(lg, 1);
}

Network Network::identity(const Graph& g) {
    Network net;
    net.network = &g;
    net.topology = &g;
    net.host.resize(g.n());
    for (Vertex v = 0; v < g.n(); ++v) net.host[v] = v;
    return net;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void NodeContext::send(Vertex neighbor, const Word& word) {
    const Round tx = round_ + 1;
    auto nb = neighbors();
    if (!std::binary_search(nb.begin(), nb.end(), neighbor)) {
        throw BandwidthViolation(id_, neighbor, tx,
                                 "node " + std::to_string(id_) + " sent to non-neighbour " + std::to_string(neighbor) +
                                     " in round " + std::to_string(tx));
    }
    for (const auto& [to, w] : *outbox_) {
        if (to == neighbor) {
            throw BandwidthViolation(id_, neighbor, tx,
                                     "bandwidth violation: node " + std::to_string(id_) + " sent more than one word on edge (" +
                                         std::to_string(id_) + "," + std::to_string(neighbor) + ") in round " +
                                         std::to_string(tx));
        }
    }
    if (word.bits() > word_bits_) {
        throw BandwidthViolation(id_, neighbor, tx,
                                 "bandwidth violation: node " + std::to_string(id_) + " sent a " +
                                     std::to_string(word.bits()) + "-bit word (limit " + std::to_string(word_bits_) +
                                     ") on edge (" + std::to_string(id_) + "," + std::to_string(neighbor) +
                                     ") in round " + std::to_string(tx));
    }
    outbox_->emplace_back(neighbor, word);
}

void NodeContext::wake_at(Round r) { timers_->push_back(std::max(r, round_ + 1)); }

SimReport Simulator::run(const Network& net, std::span<NodeProgram* const> nodes, const SimConfig& cfg) {
    const Graph& topo = *net.topology;
    const Graph& network = *net.network;
    const Vertex n = topo.n();
    if (static_cast<Vertex>(nodes.size()) != n) throw std::invalid_argument("one program per topology vertex");
    if (cfg.max_rounds <= 0) throw std::invalid_argument("round budget must be positive");

    if (static_cast<Vertex>(net.host.size()) != n) throw std::invalid_argument("host map size mismatch");
    for (const auto& e : topo.edges()) {
        Vertex a = net.host[e.u], b = net.host[e.v];
        auto nb = network.neighbors(a);
        if (a != b && !std::binary_search(nb.begin(), nb.end(), b)) {
            throw std::invalid_argument("topology edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                        ") is not backed by a network link");
        }
    }

    SimReport report;
    report.c_w = cfg.c_w;
    report.word_bits = word_bits(n, topo.max_weight(), cfg.c_w);

    std::vector<std::mt19937_64> rngs;
    rngs.reserve(n);
    for (Vertex v = 0; v < n; ++v) rngs.emplace_back(mix_seed(cfg.seed, static_cast<std::uint64_t>(v)));

    std::vector<std::vector<std::pair<Vertex, Word>>> outbox(n);
    std::vector<std::vector<Round>> timers(n);
    std::vector<std::vector<Message>> inbox(n);

    NodeContext ctx;
    ctx.net_ = &net;
    ctx.word_bits_ = report.word_bits;
    auto bind = [&](Vertex v, Round r) {
        ctx.id_ = v;
        ctx.round_ = r;
        ctx.rng_ = &rngs[v];
        ctx.outbox_ = &outbox[v];
        ctx.timers_ = &timers[v];
    };

    for (Vertex v = 0; v < n; ++v) {
        bind(v, 0);
        nodes[v]->init(ctx);
    }

    // Load per directed network link within one topology round.
    std::map<std::pair<Vertex, Vertex>, int> link_load;
    Round round = 0;
    Round network_rounds = 0;
    Round last_tx = 0;

    while (true) {
        bool any_out = false;
        for (Vertex v = 0; v < n && !any_out; ++v) any_out = !outbox[v].empty();
        if (!any_out) {
            bool all_idle = true;
            for (Vertex v = 0; v < n && all_idle; ++v) all_idle = nodes[v]->idle();
            if (all_idle) {
                Round next = std::numeric_limits<Round>::max();
                for (auto& ts : timers) {
                    for (Round t : ts) next = std::min(next, t);
                }
                if (next == std::numeric_limits<Round>::max()) break;
                if (cfg.virtual_time && next > round + 1) {
                    // Silent rounds still elapse; they cost one network round each.
                    network_rounds += next - 1 - round;
                    round = next - 1;
                }
            }
        }
        ++round;
        if (round > cfg.max_rounds) throw BudgetExhausted(cfg.max_rounds);

        link_load.clear();
        int max_load = 0;
        for (Vertex v = 0; v < n; ++v) {
            for (auto& [to, w] : outbox[v]) {
                Vertex a = net.host[v], b = net.host[to];
                if (a != b) {
                    max_load = std::max(max_load, ++link_load[{a, b}]);
                    ++report.words_sent;
                }
                inbox[to].push_back({v, w});
            }
            outbox[v].clear();
        }
        network_rounds += std::max(1, max_load);
        if (any_out) {
            last_tx = network_rounds;
            report.max_edge_load = 1;
        }
        if (network_rounds > cfg.max_rounds) throw BudgetExhausted(cfg.max_rounds);

        for (Vertex v = 0; v < n; ++v) {
            auto& ts = timers[v];
            bool due = std::find_if(ts.begin(), ts.end(), [&](Round t) { return t <= round; }) != ts.end();
            if (due) std::erase_if(ts, [&](Round t) { return t <= round; });
            if (!due && inbox[v].empty() && nodes[v]->idle()) continue;
            bind(v, round);
            std::sort(inbox[v].begin(), inbox[v].end(), [](const Message& a, const Message& b) { return a.from < b.from; });
            nodes[v]->on_round(ctx, inbox[v]);
            inbox[v].clear();
        }
    }
    report.rounds = last_tx;
    return report;
}

void FramedOutbox::push(Vertex neighbor, const Word& word, Round ready) {
    queues_[neighbor].push_back({word, ready});
    ++pending_;
    if (ready > 0) ++delayed_;
}

void FramedOutbox::flush(NodeContext& ctx) {
    const Round tx = ctx.round() + 1;
    Round earliest = std::numeric_limits<Round>::max();
    for (auto qit = queues_.begin(); qit != queues_.end();) {
        auto& q = qit->second;
        auto it = q.begin();
        if (it != q.end() && it->ready > tx) {
            it = std::find_if(q.begin(), q.end(), [&](const Item& i) { return i.ready <= tx; });
        }
        if (it != q.end()) {
            ctx.send(qit->first, it->word);
            if (it->ready > 0) --delayed_;
            q.erase(it);
            --pending_;
        }
        if (q.empty()) {
            qit = queues_.erase(qit);
            continue;
        }
        if (delayed_ == 0) {
            earliest = std::min(earliest, q.front().ready);
        } else {
            for (const auto& item : q) earliest = std::min(earliest, item.ready);
        }
        ++qit;
    }
    busy_ = earliest <= tx + 1;
    if (earliest != std::numeric_limits<Round>::max()) ctx.wake_at(std::max(earliest - 1, ctx.round() + 1));
}

}  // namespace congest
