#include <gtest/gtest.h>

#include <algorithm>

#include "congest/gadgets.hpp"
#include "congest/oracles.hpp"
#include "support.hpp"

using namespace congest;
namespace ts = testing_support;

namespace {

GadgetSpec strings(GadgetFamily f, int k, std::vector<int> a_bits, std::vector<int> b_bits, bool sink = false) {
    GadgetSpec s;
    s.family = f;
    s.k = k;
    s.sa.assign(k * k, 0);
    s.sb.assign(k * k, 0);
    for (int i : a_bits) s.sa[i] = 1;
    for (int i : b_bits) s.sb[i] = 1;
    s.sink = sink;
    return s;
}

Weight min_of(const std::vector<Weight>& v) { return *std::min_element(v.begin(), v.end()); }

Graph petersen() {
    std::vector<Edge> es;
    for (Vertex i = 0; i < 5; ++i) {
        es.push_back({i, (i + 1) % 5, 1});
        es.push_back({i, i + 5, 1});
        es.push_back({5 + i, 5 + (i + 2) % 5, 1});
    }
    return Graph::from_edges(10, false, false, es);
}

}  // namespace

TEST(Gadgets, VertexCounts) {
    EXPECT_EQ(gen_gadget(strings(GadgetFamily::dir_mwc, 2, {0}, {0})).graph.n(), 8);
    auto dirw = gen_gadget(strings(GadgetFamily::dirw_rpaths, 3, {0}, {1}));
    EXPECT_EQ(dirw.graph.n(), 19);
    ASSERT_TRUE(dirw.path.has_value());
    EXPECT_EQ(dirw.path->hops, 3);
    auto q = strings(GadgetFamily::qcycle, 2, {1}, {1});
    q.q = 6;
    EXPECT_EQ(gen_gadget(q).graph.n(), (6 - 3) * 2 + 3 * 2);
    EXPECT_EQ(gen_gadget(strings(GadgetFamily::dirw_rpaths, 3, {0}, {1}, true)).graph.n(), 20);
}

TEST(Gadgets, InvalidSpecs) {
    auto s = strings(GadgetFamily::dir_mwc, 3, {}, {});
    s.sa.pop_back();
    EXPECT_ANY_THROW(gen_gadget(s));
    auto q = strings(GadgetFamily::qcycle, 2, {}, {});
    q.q = 3;
    EXPECT_ANY_THROW(gen_gadget(q));
}

TEST(Gadgets, DirectedMwcIntersectingBit) {
    const int k = 4;
    int bit = (2 - 1) * k + 3 - 1;
    auto spec = strings(GadgetFamily::dir_mwc, k, {bit, 0}, {bit, 5});
    auto g = gen_gadget(spec);
    EXPECT_EQ(min_of(ts::ansc_by_deletion(g.graph)), 4);
    auto v = check_dichotomy(spec, g);
    EXPECT_TRUE(v.intersecting);
    EXPECT_EQ(v.measured, 4);
    EXPECT_TRUE(v.holds);
}

TEST(Gadgets, WeightedMwcDisjoint) {
    const int k = 4;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto spec = random_gadget_spec(GadgetFamily::undirw_mwc, k, seed, false);
        ASSERT_FALSE(spec.intersecting());
        auto g = gen_gadget(spec);
        EXPECT_GE(min_of(ts::ansc_by_deletion(g.graph)), 8);
        EXPECT_TRUE(check_dichotomy(spec, g).holds);
    }
}

TEST(Gadgets, DirwRpathsEverySingleBitIntersection) {
    for (int k : {2, 3, 4}) {
        for (int bit = 0; bit < k * k; ++bit) {
            auto spec = strings(GadgetFamily::dirw_rpaths, k, {bit}, {bit});
            auto g = gen_gadget(spec);
            Weight s2 = min_of(ts::rpaths_by_deletion(g.graph, *g.path));
            EXPECT_LE(s2, 4 * k * k + 9 * k - 1) << "k " << k << " bit " << bit;
            auto v = check_dichotomy(spec, g);
            EXPECT_EQ(v.measured, s2);
            EXPECT_TRUE(v.holds);
        }
    }
}

TEST(Gadgets, DirwRpathsDisjointLowerBound) {
    for (int k : {2, 3, 4}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto spec = random_gadget_spec(GadgetFamily::dirw_rpaths, k, seed, false, 4, false);
            auto g = gen_gadget(spec);
            EXPECT_GE(min_of(ts::rpaths_by_deletion(g.graph, *g.path)), 4 * k * k + 12 * k);
        }
    }
}

TEST(Gadgets, UnweightedRpathsFiniteIffConnectedInSubgraph) {
    int finite = 0, infinite = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto spec = random_gadget_spec(GadgetFamily::dirunw_rpaths, 6, seed, seed % 2 == 0);
        auto g = gen_gadget(spec);
        Weight s2 = min_of(ts::rpaths_by_deletion(g.graph, *g.path));
        bool connected = ts::bfs(*spec.sub, spec.s, false, spec.sub->infinity())[spec.t] < spec.sub->infinity();
        EXPECT_EQ(s2 < g.graph.infinity(), connected) << "seed " << seed;
        (connected ? finite : infinite)++;
        EXPECT_TRUE(check_dichotomy(spec, g).holds);
    }
    EXPECT_GT(finite, 0);
    EXPECT_GT(infinite, 0);
}

TEST(Gadgets, QCycleGirth) {
    for (int q : {4, 5, 6}) {
        for (bool intersect : {true, false}) {
            auto spec = random_gadget_spec(GadgetFamily::qcycle, 3, 7, intersect, q, false);
            auto g = gen_gadget(spec);
            Weight girth = min_of(ts::ansc_by_deletion(g.graph));
            if (intersect)
                EXPECT_EQ(girth, q);
            else
                EXPECT_GE(girth, 2 * q);
        }
    }
}

TEST(Gadgets, RandomSpecsAreDeterministic) {
    auto a = random_gadget_spec(GadgetFamily::dir_mwc, 4, 9, true);
    auto b = random_gadget_spec(GadgetFamily::dir_mwc, 4, 9, true);
    EXPECT_EQ(a.sa, b.sa);
    EXPECT_EQ(a.sb, b.sb);
    int common = 0;
    for (int i = 0; i < 16; ++i) common += a.sa[i] && a.sb[i];
    EXPECT_EQ(common, 1);
}

TEST(OracleRpaths, NoDetourIsSentinel) {
    Graph g = ts::parse("3 2 undirected unweighted\n0 1\n1 2\n");
    auto w = oracle_rpaths(g, make_path(g, {0, 1, 2}));
    EXPECT_EQ(w, (std::vector<Weight>{g.infinity(), g.infinity()}));
}

TEST(OracleRpaths, FourCycleComplement) {
    Graph g = ts::cycle_graph(4, false, true, 5);
    auto w = oracle_rpaths(g, make_path(g, {0, 1, 2}));
    EXPECT_EQ(w, (std::vector<Weight>{10, 10}));
}

TEST(OracleRpaths, AgreesWithBellmanFordVersions) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Graph g = random_graph(16, 0.2, true, seed % 2 == 0, 20, seed);
        auto sp = shortest_path_oracle(g, 0, g.n() - 1);
        if (sp.vertices.size() < 2) continue;
        auto p = make_path(g, sp.vertices);
        auto a = oracle_rpaths(g, p);
        EXPECT_EQ(a, oracle_rpaths_bellman_ford(g, p)) << "seed " << seed;
        EXPECT_EQ(a, ts::rpaths_by_deletion(g, p)) << "seed " << seed;
    }
}

TEST(OracleCycles, SmallCases) {
    auto k4 = oracle_mwc_ansc(ts::complete_graph(4));
    EXPECT_EQ(k4.ansc, (std::vector<Weight>(4, 3)));
    Graph dag = ts::parse("4 4 directed unweighted\n0 1\n1 2\n0 2\n2 3\n");
    auto d = oracle_mwc_ansc(dag);
    EXPECT_EQ(d.mwc, dag.infinity());
    EXPECT_EQ(d.ansc, (std::vector<Weight>(4, dag.infinity())));
}

TEST(OracleGirth, KnownGraphs) {
    Graph tree = ts::path_graph(6);
    EXPECT_EQ(oracle_girth(tree), tree.infinity());
    EXPECT_EQ(oracle_girth(ts::cycle_graph(7)), 7);
    Graph p = petersen();
    EXPECT_EQ(oracle_girth(p), 5);
    EXPECT_EQ(enumerate_cycles(p).mwc, 5);
}

TEST(OracleWalks, LightestCycleInWalk) {
    Graph g = ts::complete_graph(5);
    // 0-1-2-0 then 0-3-4-0 glued at 0
    std::vector<Vertex> walk{0, 1, 2, 0, 3, 4, 0};
    EXPECT_EQ(lightest_cycle_in_walk(g, walk), 3);
    EXPECT_EQ(walk_weight(g, walk), 6);
    EXPECT_FALSE(is_simple_path(walk));
    EXPECT_TRUE(walk_uses_edge(g, walk, 2, 1));
    EXPECT_FALSE(walk_uses_edge(g, walk, 1, 3));
}
