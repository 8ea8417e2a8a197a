#pragma once

// Synchronous round simulator for the CONGEST model.
//
// Round r (r >= 1): every node transmits the words it queued during the
// previous step, then every node with mail, a due timer or pending work runs
// its handler and queues words for round r + 1. init() queues words for round 1.
// A run ends once no word is queued, every node is idle and no timer is pending.

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "congest/graph.hpp"

namespace congest {

using Round = std::int64_t;

// One CONGEST word: a handful of non-negative integer fields whose encoded
// size must stay within the configured bit budget.
class Word {
  public:
    static constexpr std::size_t kMaxFields = 6;

    Word() = default;
    Word(std::initializer_list<std::int64_t> fields);

    void push(std::int64_t field);
    std::int64_t operator[](std::size_t i) const { return fields_[i]; }
    std::size_t size() const { return size_; }
    // Sum of per-field bit widths (minimum 1 bit each). Negative fields are
    // not encodable and count as 64 bits.
    int bits() const;

  private:
    std::array<std::int64_t, kMaxFields> fields_{};
    std::uint8_t size_ = 0;
};

struct Message {
    Vertex from = 0;
    Word word;
};

// Rounds an asymptotic subroutine bound would take, used for the optional charged
// accounting. Constants are configurable.
struct ChargeModel {
    bool enabled = false;
    double sssp_const = 1.0;  // c * (sqrt(n) * D^{1/4} + D)
    double apsp_const = 1.0;  // c * n * log2(n)

    Round sssp(Vertex n, int diameter) const;
    Round apsp(Vertex n) const;
};

struct SimConfig {
    std::uint64_t seed = 1;
    int c_w = 4;
    Round max_rounds = 50'000'000;
    bool virtual_time = true;
    ChargeModel charge;
};

class BandwidthViolation : public std::runtime_error {
  public:
    BandwidthViolation(Vertex node, Vertex neighbor, Round round, const std::string& what)
        : std::runtime_error(what), node(node), neighbor(neighbor), round(round) {}
    Vertex node;
    Vertex neighbor;
    Round round;
};

class BudgetExhausted : public std::runtime_error {
  public:
    explicit BudgetExhausted(Round budget)
        : std::runtime_error("round budget of " + std::to_string(budget) + " exhausted"), budget(budget) {}
    Round budget;
};

enum class PhaseKind { plain, sssp, apsp };

struct PhaseRecord {
    std::string name;
    Round rounds = 0;
    Round charged = 0;
};

struct SimReport {
    Round rounds = 0;
    std::int64_t words_sent = 0;
    int max_edge_load = 0;
    int word_bits = 0;
    int c_w = 0;
    std::optional<Round> charged_rounds;
    std::vector<PhaseRecord> phases;

    // Appends a finished sub-execution. Charged accounting replaces the
    // measured rounds of sssp/apsp phases with the asymptotic formula.
    void add_phase(const std::string& name, const SimReport& sub, PhaseKind kind, const ChargeModel& charge,
                   Vertex n, int diameter);
    // Rounds spent outside the simulator proper (e.g. quiescence detection).
    void add_rounds(const std::string& name, Round rounds, const ChargeModel& charge);
};

// Word size B = c_w * ceil(log2(n * (W + 1))).
int word_bits(Vertex n, Weight max_w, int c_w);

// Execution topology. `topology` is the graph the program runs on; each of its
// vertices is hosted by a node of `network`. Every topology edge must map to a
// network link or be node-local. When several topology edges share a link,
// one topology round costs as many network rounds as the busiest link needs.
struct Network {
    const Graph* network = nullptr;
    const Graph* topology = nullptr;
    std::vector<Vertex> host;

    static Network identity(const Graph& g);
};

class NodeContext;

class NodeProgram {
  public:
    virtual ~NodeProgram() = default;
    virtual void init(NodeContext& ctx) = 0;
    virtual void on_round(NodeContext& ctx, std::span<const Message> inbox) = 0;
    // Halt vote: nothing left to transmit right now. Incoming mail or a timer
    // wakes the node again.
    virtual bool idle() const = 0;
};

class NodeContext {
  public:
    Vertex id() const { return id_; }
    Round round() const { return round_; }
    const Graph& topology() const { return *net_->topology; }
    Vertex n() const { return net_->topology->n(); }
    std::span<const Arc> out() const { return net_->topology->out(id_); }
    std::span<const Arc> in() const { return net_->topology->in(id_); }
    std::span<const Vertex> neighbors() const { return net_->topology->neighbors(id_); }
    std::mt19937_64& rng() { return *rng_; }

    // Queue one word for transmission in the next round. Exactly one word per
    // neighbour per round; anything more is a bandwidth violation.
    void send(Vertex neighbor, const Word& word);
    // Run the handler again at `round` even without mail.
    void wake_at(Round round);

  private:
    friend class Simulator;
    Vertex id_ = 0;
    Round round_ = 0;
    const Network* net_ = nullptr;
    std::mt19937_64* rng_ = nullptr;
    std::vector<std::pair<Vertex, Word>>* outbox_ = nullptr;
    std::vector<Round>* timers_ = nullptr;
    int word_bits_ = 0;
};

class Simulator {
  public:
    static SimReport run(const Network& net, std::span<NodeProgram* const> nodes, const SimConfig& cfg);

    template <class P>
    static SimReport run(const Network& net, std::vector<P>& programs, const SimConfig& cfg) {
        std::vector<NodeProgram*> ptrs;
        ptrs.reserve(programs.size());
        for (auto& p : programs) ptrs.push_back(&p);
        return run(net, std::span<NodeProgram* const>(ptrs), cfg);
    }
};

// splitmix64 mix of (seed, salt); used for per-node and per-phase streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// Framing helper: per-neighbour FIFO of words with an earliest transmit round.
// Programs keep one as state and flush it every round; long logical messages
// thereby spread over as many rounds as they need.
class FramedOutbox {
  public:
    void push(Vertex neighbor, const Word& word, Round ready = 0);
    // Sends at most one due word per neighbour for the next round, and sets a
    // timer for the earliest word that is not due yet.
    void flush(NodeContext& ctx);
    bool empty() const { return pending_ == 0; }
    // Some word is due for the round after the last flush.
    bool busy() const { return busy_; }

  private:
    struct Item {
        Word word;
        Round ready;
    };
    std::map<Vertex, std::deque<Item>> queues_;
    std::size_t pending_ = 0;
    std::size_t delayed_ = 0;  // items pushed with a ready round
    bool busy_ = false;
};

}  // namespace congest
