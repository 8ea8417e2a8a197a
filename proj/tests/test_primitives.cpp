#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "congest/primitives.hpp"
#include "support.hpp"

using namespace congest;
namespace ts = testing_support;

namespace {

Graph star(Vertex leaves) {
    std::vector<Edge> es;
    for (Vertex v = 1; v <= leaves; ++v) es.push_back({0, v, 1});
    return Graph::from_edges(leaves + 1, false, false, es);
}

// At most h arcs, plain dynamic programming.
std::vector<Weight> hop_bf(const Graph& g, Vertex s, int h, Weight inf) {
    std::vector<Weight> d(g.n(), inf);
    d[s] = 0;
    for (int i = 0; i < h; ++i) {
        auto next = d;
        for (Vertex u = 0; u < g.n(); ++u) {
            if (d[u] >= inf) continue;
            for (auto a : g.out(u)) next[a.to] = std::min(next[a.to], d[u] + a.w);
        }
        d = next;
    }
    return d;
}

}  // namespace

TEST(BfsTree, StarFromCenter) {
    Graph g = star(7);
    auto t = bfs_tree(g, 0, SimConfig{});
    for (Vertex v = 1; v <= 7; ++v) {
        EXPECT_EQ(t.dist[v], 1);
        EXPECT_EQ(t.parent[v], 0);
    }
    EXPECT_EQ(t.eccentricity, 1);
    EXPECT_LE(t.report.rounds, 2);
}

TEST(BfsTree, PathFromEnd) {
    auto t = bfs_tree(ts::path_graph(6), 0, SimConfig{});
    for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(t.dist[v], v);
    EXPECT_EQ(t.eccentricity, 5);
}

TEST(BfsTree, MatchesSequentialBfs) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Graph g = random_graph(40, 0.08, false, false, 1, seed);
        auto t = bfs_tree(g, 3, SimConfig{});
        auto want = ts::bfs(g, 3, false, g.infinity());
        EXPECT_EQ(t.dist, want);
        for (Vertex v = 0; v < g.n(); ++v) {
            if (v == 3) continue;
            EXPECT_EQ(t.dist[t.parent[v]] + 1, t.dist[v]);
        }
    }
}

TEST(HopLimitedBfs, ZeroHops) {
    Graph g = random_graph(16, 0.3, false, false, 1, 2);
    auto r = hop_limited_bfs(g, {1, 5}, 0, false, {}, SimConfig{});
    for (Vertex s : {1, 5}) {
        for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(r.dist(s, v) < r.inf(), v == s);
    }
}

TEST(HopLimitedBfs, CycleTwoHops) {
    auto r = hop_limited_bfs(ts::cycle_graph(6), {0}, 2, false, {}, SimConfig{});
    std::vector<int> count(4, 0);
    for (Vertex v = 0; v < 6; ++v) {
        Weight d = r.dist(0, v);
        count[d < r.inf() ? d : 3]++;
    }
    EXPECT_EQ(count, (std::vector<int>{1, 2, 2, 1}));
}

TEST(HopLimitedBfs, ForbiddenEdgesMatchDeletedGraph) {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        Graph g = random_graph(30, 0.1, false, true, 1, seed);
        // forbid the arcs of some BFS path out of 0
        auto d0 = ts::bfs(g, 0, true, g.infinity());
        Vertex far = static_cast<Vertex>(std::max_element(d0.begin(), d0.end(), [&](Weight a, Weight b) {
                                              return (a >= g.infinity() ? -1 : a) < (b >= g.infinity() ? -1 : b);
                                          }) - d0.begin());
        auto sp = shortest_path_oracle(g, 0, far);
        ArcList forbidden;
        for (std::size_t i = 0; i + 1 < sp.vertices.size(); ++i) forbidden.push_back({sp.vertices[i], sp.vertices[i + 1]});
        const int h = 6;
        auto r = hop_limited_bfs(g, {0, 7}, h, true, forbidden, SimConfig{});
        for (Vertex s : {0, 7}) {
            auto want = ts::bfs(g, s, true, g.infinity(), forbidden);
            for (Vertex v = 0; v < g.n(); ++v) {
                Weight got = r.dist(s, v) < r.inf() ? r.dist(s, v) : -1;
                Weight exp = want[v] <= h ? want[v] : -1;
                EXPECT_EQ(got, exp) << "seed " << seed << " source " << s << " v " << v;
            }
        }
    }
}

TEST(DelayedBfs, SingleEdge) {
    Graph g = Graph::from_edges(2, false, true, {{0, 1, 5}});
    auto r = delayed_bfs(g, {0}, 100, SimConfig{});
    EXPECT_EQ(r.dist(0, 1), 5);
    EXPECT_GE(r.report.rounds, 5);
}

TEST(DelayedBfs, UnitDelaysMatchHopLimitedBfs) {
    Graph g = random_graph(30, 0.12, false, true, 1, 4);
    Graph unit = Graph::from_edges(g.n(), true, true, g.edges());
    auto a = delayed_bfs(unit, {0, 2}, 5, SimConfig{});
    auto b = hop_limited_bfs(g, {0, 2}, 5, true, {}, SimConfig{});
    for (Vertex s : {0, 2}) {
        for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(a.dist(s, v) < a.inf(), b.dist(s, v) < b.inf());
        for (Vertex v = 0; v < g.n(); ++v) {
            if (b.dist(s, v) < b.inf()) EXPECT_EQ(a.dist(s, v), b.dist(s, v));
        }
    }
}

TEST(DelayedBfs, MatchesCappedShortestPaths) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Graph g = random_graph(24, 0.15, true, seed % 2 == 0, 12, seed);
        const Weight limit = 20;
        auto r = delayed_bfs(g, {0, 1, 2}, limit, SimConfig{});
        for (Vertex s : {0, 1, 2}) {
            auto want = ts::bellman_ford(g, s, g.infinity());
            for (Vertex v = 0; v < g.n(); ++v) {
                Weight exp = want[v] <= limit ? want[v] : r.inf();
                EXPECT_EQ(r.dist(s, v), exp);
            }
        }
    }
}

TEST(Sssp, UnweightedMatchesBfs) {
    Graph g = random_graph(30, 0.1, false, false, 1, 5);
    auto a = sssp(g, 0, {}, SimConfig{});
    auto b = bfs_tree(g, 0, SimConfig{});
    EXPECT_EQ(a.dist, b.dist);
}

TEST(Sssp, ForbiddenBridgeDisconnects) {
    auto t = sssp(ts::path_graph(3), 0, {{1, 2}}, SimConfig{});
    EXPECT_EQ(t.dist[1], 1);
    EXPECT_EQ(t.dist[2], ts::path_graph(3).infinity());
}

TEST(Sssp, MatchesBellmanFordBothWays) {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        Graph g = random_graph(28, 0.12, true, true, 100, seed);
        auto from = sssp(g, 0, {}, SimConfig{});
        EXPECT_EQ(from.dist, ts::bellman_ford(g, 0, g.infinity()));
        auto to = sssp(g, 0, {}, SimConfig{}, true);
        EXPECT_EQ(to.dist, ts::bellman_ford(g.reversed(), 0, g.infinity()));
    }
}

TEST(Apsp, Triangle) {
    Graph dir = ts::parse("3 3 directed weighted\n0 1 2\n1 2 3\n2 0 4\n");
    auto a = apsp(dir, SimConfig{});
    EXPECT_EQ(a.dist(0, 2), 5);
    EXPECT_EQ(a.dist(2, 1), 6);
    EXPECT_EQ(a.dist(1, 0), 7);
    Graph und = ts::parse("3 3 undirected weighted\n0 1 2\n1 2 3\n2 0 4\n");
    auto b = apsp(und, SimConfig{});
    EXPECT_EQ(b.dist(0, 2), 4);
    EXPECT_EQ(b.dist(2, 0), 4);
    EXPECT_EQ(b.path(0, 2), (std::vector<Vertex>{0, 2}));
}

TEST(Apsp, UnreachableIsSentinel) {
    Graph g = ts::parse("3 2 directed weighted\n0 1 1\n1 2 1\n");
    auto a = apsp(g, SimConfig{});
    EXPECT_EQ(a.dist(0, 2), 2);
    EXPECT_EQ(a.dist(2, 0), a.rows.inf());
    EXPECT_EQ(a.dist(1, 0), a.rows.inf());
}

TEST(Apsp, FirstPointerInvariants) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Graph g = random_graph(24, 0.15, true, seed % 2 == 1, 50, seed);
        auto a = apsp(g, SimConfig{});
        for (Vertex u = 0; u < g.n(); ++u) {
            auto want = ts::bellman_ford(g, u, g.infinity());
            EXPECT_EQ(a.dist(u, u), 0);
            for (Vertex v = 0; v < g.n(); ++v) {
                ASSERT_EQ(a.dist(u, v), want[v]) << u << "->" << v;
                if (u == v || want[v] >= g.infinity()) continue;
                Vertex f = a.first(u, v);
                auto w = g.weight(u, f);
                ASSERT_TRUE(w.has_value());
                EXPECT_EQ(a.dist(u, v), *w + a.dist(f, v));
            }
        }
    }
}

TEST(SourceDetection, NearestSourceLabels) {
    Graph g = random_graph(40, 0.08, false, false, 1, 9);
    std::vector<Vertex> sources{2, 11, 23, 30};
    auto t = source_detection(g, sources, 1, 40, SimConfig{});
    for (Vertex v = 0; v < g.n(); ++v) {
        Weight best = g.infinity();
        Vertex who = kNoVertex;
        for (Vertex s : sources) {
            Weight d = ts::bfs(g, s, false, g.infinity())[v];
            if (d < best) best = d, who = s;
        }
        ASSERT_EQ(t.lists[v].size(), 1u);
        EXPECT_EQ(t.lists[v][0].source, who);
        EXPECT_EQ(t.lists[v][0].dist, best);
    }
    EXPECT_LE(t.report.rounds, 1 + 40 + 4);
}

TEST(SourceDetection, ZeroHopsListsOnlySelf) {
    Graph g = random_graph(20, 0.2, false, false, 1, 3);
    std::vector<Vertex> all(g.n());
    for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
    auto t = source_detection(g, all, 5, 0, SimConfig{});
    for (Vertex v = 0; v < g.n(); ++v) {
        ASSERT_EQ(t.lists[v].size(), 1u);
        EXPECT_EQ(t.lists[v][0].source, v);
    }
}

TEST(SourceDetection, FullRowsWhenUnbounded) {
    Graph g = random_graph(30, 0.1, false, false, 1, 6);
    std::vector<Vertex> all(g.n());
    for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
    auto t = source_detection(g, all, g.n(), g.n(), SimConfig{});
    for (Vertex v = 0; v < g.n(); ++v) {
        ASSERT_EQ(t.lists[v].size(), static_cast<std::size_t>(g.n()));
        for (const auto& e : t.lists[v]) EXPECT_EQ(e.dist, ts::bfs(g, e.source, false, g.infinity())[v]);
    }
    EXPECT_LE(t.report.rounds, static_cast<Round>(g.n()) + g.n() + 4);
}

TEST(SourceDetection, RoundBound) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Graph g = random_graph(48, 0.08, false, false, 1, seed);
        std::mt19937_64 rng(seed);
        std::vector<Vertex> sources;
        for (Vertex v = 0; v < g.n(); ++v)
            if (rng() % 3 == 0) sources.push_back(v);
        for (std::size_t r : {1, 3, 8}) {
            for (int h : {2, 5, 9}) {
                auto t = source_detection(g, sources, r, h, SimConfig{});
                EXPECT_LE(t.report.rounds, static_cast<Round>(r) + h + 4);
            }
        }
    }
}

TEST(ApproxMsssp, UnitWeightsAreExact) {
    Graph g = random_graph(24, 0.12, false, true, 1, 8);
    auto a = approx_msssp(g, {0, 4}, 6, 0.25, {}, SimConfig{});
    for (std::size_t i = 0; i < 2; ++i) {
        Vertex s = a.sources[i];
        auto want = hop_bf(g, s, 6, g.infinity());
        for (Vertex v = 0; v < g.n(); ++v) {
            if (want[v] >= g.infinity())
                EXPECT_TRUE(std::isinf(a.at(s, v)));
            else
                EXPECT_EQ(a.at(s, v), static_cast<double>(want[v]));
        }
    }
}

TEST(ApproxMsssp, RatioAndNoUnderestimate) {
    const double eps = 0.25;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Graph g = random_graph(20, 0.15, true, true, 64, seed);
        const int h = 5;
        auto a = approx_msssp(g, {0, 1}, h, eps, {}, SimConfig{});
        for (Vertex s : {0, 1}) {
            auto dh = hop_bf(g, s, h, g.infinity());
            auto d = ts::bellman_ford(g, s, g.infinity());
            for (Vertex v = 0; v < g.n(); ++v) {
                double est = a.at(s, v);
                if (dh[v] < g.infinity()) {
                    ASSERT_LE(est, (1 + eps) * static_cast<double>(dh[v]) + 1e-9) << "seed " << seed;
                }
                if (!std::isinf(est)) ASSERT_GE(est, static_cast<double>(d[v]) - 1e-9) << "seed " << seed;
            }
        }
    }
}

TEST(BroadcastAggregate, GlobalMin) {
    Graph g = random_graph(30, 0.1, false, false, 1, 2);
    auto tree = bfs_tree(g, 0, SimConfig{});
    std::vector<std::vector<Weight>> vals(g.n());
    for (Vertex v = 0; v < g.n(); ++v) vals[v] = {100 - v};
    auto r = broadcast_aggregate(g, tree, 0, vals, Combine::min, 1000, SimConfig{});
    EXPECT_EQ(r.values, (std::vector<Weight>{71}));
}

TEST(BroadcastAggregate, PerSlotMinimaAndPipelining) {
    const Vertex n = 20;
    const int k = 12;
    Graph g = ts::path_graph(n);
    auto tree = bfs_tree(g, 0, SimConfig{});
    std::mt19937_64 rng(5);
    std::vector<std::vector<Weight>> vals(n, std::vector<Weight>(k));
    std::vector<Weight> want(k, 1 << 20);
    for (Vertex v = 0; v < n; ++v) {
        for (int j = 0; j < k; ++j) {
            vals[v][j] = static_cast<Weight>(rng() % 1000);
            want[j] = std::min(want[j], vals[v][j]);
        }
    }
    auto r = broadcast_aggregate(g, tree, 0, vals, Combine::min, 1 << 20, SimConfig{});
    EXPECT_EQ(r.values, want);
    EXPECT_LE(r.report.rounds, k + 2 * (n - 1) + 4);
}

TEST(BroadcastConcat, EveryoneGetsEveryItem) {
    Graph g = random_graph(16, 0.25, false, false, 1, 1);
    auto tree = bfs_tree(g, 0, SimConfig{});
    std::vector<std::vector<Word>> items(g.n());
    for (Vertex v = 0; v < g.n(); v += 3) items[v] = {Word{v, 7}};
    auto r = broadcast_concat(g, tree, 0, items, SimConfig{});
    std::vector<Vertex> got;
    for (const auto& w : r.items) got.push_back(static_cast<Vertex>(w[0]));
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, (std::vector<Vertex>{0, 3, 6, 9, 12, 15}));
}

TEST(SampleVertices, ExtremeProbabilities) {
    Graph g = random_graph(20, 0.2, false, false, 1, 1);
    auto tree = bfs_tree(g, 0, SimConfig{});
    EXPECT_EQ(sample_vertices(g, 1.0, tree, 0, SimConfig{}).set.size(), 20u);
    EXPECT_TRUE(sample_vertices(g, 0.0, tree, 0, SimConfig{}).set.empty());
}

TEST(SampleVertices, HitsEveryLongPath) {
    // every window of h+1 consecutive vertices on a long path is an h-hop path
    const Vertex n = 128;
    const int h = 16;
    Graph g = ts::path_graph(n);
    auto tree = bfs_tree(g, 0, SimConfig{});
    const double prob = sampling_probability(n, h);
    EXPECT_NEAR(prob, 2 * std::log(128.0) / 16, 1e-12);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        SimConfig cfg;
        cfg.seed = seed;
        auto s = sample_vertices(g, prob, tree, 0, cfg);
        for (Vertex a = 0; a + h < n; ++a) {
            bool hit = false;
            for (Vertex v = a; v <= a + h; ++v) hit = hit || s.member[v];
            ASSERT_TRUE(hit) << "seed " << seed << " window " << a;
        }
    }
}
