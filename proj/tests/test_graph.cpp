#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "pathlaw/error.hpp"
#include "pathlaw/graph.hpp"

using namespace pathlaw;

TEST(Graph, DropsLoopsAndDuplicates) {
    Graph g(4, {{1, 0}, {0, 1}, {2, 2}, {3, 2}});
    EXPECT_EQ(g.node_count(), 4u);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
    EXPECT_EQ(g.edges()[1], (Edge{2, 3}));
    EXPECT_EQ(g.degree(2), 1u);
    ASSERT_EQ(g.neighbors(0).size(), 1u);
    EXPECT_EQ(g.neighbors(0)[0], 1u);
}

TEST(Graph, DirectedKeepsOrientation) {
    Graph g(3, {{0, 1}, {1, 0}, {1, 2}}, true);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_EQ(g.neighbors(2).size(), 0u);
    EXPECT_EQ(g.neighbors(1).size(), 2u);
}

TEST(Graph, RejectsOutOfRangeEndpoint) {
    EXPECT_THROW(Graph(2, {{0, 2}}), IndexError);
}

TEST(Generate, CompleteGraphAtPiOne) {
    const Graph g = generate({ErdosRenyi{1.0}, 100, 9});
    EXPECT_EQ(g.edge_count(), 4950u);
}

TEST(Generate, ErdosRenyiEdgeCountWithinThreeSigma) {
    const double n = 10000, pi = 0.005;
    const double pairs = n * (n - 1) / 2;
    const double mean = pairs * pi;
    const double sd = std::sqrt(pairs * pi * (1 - pi));
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Graph g = generate({ErdosRenyi{pi}, 10000, seed});
        EXPECT_NEAR(static_cast<double>(g.edge_count()), mean, 3 * sd) << "seed " << seed;
    }
}

TEST(Generate, ErdosRenyiPairsAreUniform) {
    // Each of the 6 pairs of a 4-node graph should appear with probability pi.
    const double pi = 0.3;
    std::vector<int> hits(16);
    const int reps = 20000;
    for (int s = 0; s < reps; ++s) {
        const Graph g = generate({ErdosRenyi{pi}, 4, static_cast<std::uint64_t>(s)});
        for (const auto& e : g.edges())
            ++hits[e.u * 4 + e.v];
    }
    const double sd = std::sqrt(reps * pi * (1 - pi));
    for (NodeId v = 1; v < 4; ++v)
        for (NodeId w = 0; w < v; ++w)
            EXPECT_NEAR(hits[w * 4 + v], reps * pi, 4 * sd);
}

TEST(Generate, BarabasiAlbertEdgeAccounting) {
    const std::size_t n = 1000, m = 2;
    const Graph g = generate({BarabasiAlbert{m}, n, 5});
    const std::size_t core = m + 1;
    EXPECT_EQ(g.edge_count(), m * (n - core) + core * (core - 1) / 2);
    std::vector<std::size_t> back_edges(n);
    for (const auto& e : g.edges())
        ++back_edges[std::max(e.u, e.v)];
    for (std::size_t v = core; v < n; ++v)
        ASSERT_EQ(back_edges[v], m) << v;
    EXPECT_TRUE(is_connected(g));
}

TEST(Generate, DeterministicInSeed) {
    for (const GraphModelSpec& s : {GraphModelSpec{ErdosRenyi{0.01}, 500, 11}, GraphModelSpec{BarabasiAlbert{3}, 500, 11},
                                    GraphModelSpec{PowerLaw{2.5}, 500, 11}, GraphModelSpec{LogNormalDegrees{1.0, 0.5}, 500, 11}}) {
        EXPECT_EQ(generate(s), generate(s)) << model_name(s);
        GraphModelSpec other = s;
        other.seed = 12;
        EXPECT_FALSE(generate(s) == generate(other)) << model_name(s);
    }
}

TEST(Generate, DegreeSequencesAreGraphical) {
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        for (const auto& d : {power_law_degrees(300, 2.1, rng), log_normal_degrees(300, 2.0, 1.5, rng)}) {
            EXPECT_EQ(std::accumulate(d.begin(), d.end(), std::size_t{0}) % 2, 0u);
            for (auto x : d) {
                EXPECT_GE(x, 1u);
                EXPECT_LE(x, 299u);
            }
        }
    }
}

TEST(Generate, PowerLawTailFrequency) {
    // P(d >= k) = k^-(gamma - 1) before capping; check k = 2 and k = 4.
    Rng rng(8);
    const auto d = power_law_degrees(200000, 2.5, rng);
    double ge2 = 0, ge4 = 0;
    for (auto x : d) {
        ge2 += x >= 2;
        ge4 += x >= 4;
    }
    EXPECT_NEAR(ge2 / d.size(), std::pow(2.0, -1.5), 0.005);
    EXPECT_NEAR(ge4 / d.size(), std::pow(4.0, -1.5), 0.005);
}

TEST(Generate, ConfigurationModelRespectsDegreeBounds) {
    Rng rng(4);
    const std::vector<std::size_t> deg{3, 3, 2, 2, 1, 1};
    const Graph g = configuration_model(deg, rng);
    for (NodeId v = 0; v < deg.size(); ++v)
        EXPECT_LE(g.degree(v), deg[v]);
    EXPECT_THROW(configuration_model(std::vector<std::size_t>{1, 2}, rng), ParameterError);
}

TEST(Generate, ValidatesParameters) {
    EXPECT_THROW(generate({ErdosRenyi{0.0}, 10, 1}), ParameterError);
    EXPECT_THROW(generate({ErdosRenyi{1.5}, 10, 1}), ParameterError);
    EXPECT_THROW(generate({BarabasiAlbert{0}, 10, 1}), ParameterError);
    EXPECT_THROW(generate({BarabasiAlbert{10}, 10, 1}), ParameterError);
    EXPECT_THROW(generate({PowerLaw{2.0}, 10, 1}), ParameterError);
    EXPECT_THROW(generate({LogNormalDegrees{1.0, 0.0}, 10, 1}), ParameterError);
    EXPECT_THROW(generate({ErdosRenyi{0.5}, 1, 1}), ParameterError);
}

TEST(EdgeList, ReadsPairs) {
    std::istringstream in("0 1\n1 2\n");
    const auto r = load_edge_list(in);
    EXPECT_EQ(r.graph.node_count(), 3u);
    EXPECT_EQ(r.graph.edge_count(), 2u);
}

TEST(EdgeList, DropsDuplicatesAndLoops) {
    std::istringstream in("% comment\n5 9\n9 5\n5 5\n");
    const auto r = load_edge_list(in);
    EXPECT_EQ(r.graph.node_count(), 2u);
    EXPECT_EQ(r.graph.edge_count(), 1u);
    EXPECT_EQ(r.duplicates_dropped, 1u);
    EXPECT_EQ(r.self_loops_dropped, 1u);
    EXPECT_EQ(r.comment_lines, 1u);
    ASSERT_EQ(r.graph.original_ids().size(), 2u);
    EXPECT_EQ(r.graph.original_ids()[0], 5);
    EXPECT_EQ(r.graph.original_ids()[1], 9);
}

TEST(EdgeList, ParseErrorCarriesLine) {
    std::istringstream in("a b\n");
    try {
        load_edge_list(in);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
    }
    std::istringstream in2("# c\n1 2\n3\n");
    try {
        load_edge_list(in2);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(EdgeList, KonectStyleExtraColumnsAndBlankLines) {
    std::istringstream in("% asym unweighted\n% 3 3 3\n\n1 2 1 1200000\n2 3 1 1200001\n3 1\n");
    const auto r = load_edge_list(in);
    EXPECT_EQ(r.graph.node_count(), 3u);
    EXPECT_EQ(r.graph.edge_count(), 3u);
    EXPECT_FALSE(r.graph.directed());
}

TEST(EdgeList, EmptyInput) {
    std::istringstream in("% only a comment\n");
    EXPECT_THROW(load_edge_list(in), EmptyInputError);
}

TEST(EdgeList, RoundTrip) {
    Rng rng(5);
    const Graph g = oracle::random_connected_graph(40, 0.1, rng);
    std::stringstream s;
    write_edge_list(s, g);
    const auto back = load_edge_list(s);
    EXPECT_EQ(back.graph, g);
}

TEST(Components, ConnectedPathIsItself) {
    const Graph p3 = oracle::path_graph(3);
    EXPECT_TRUE(is_connected(p3));
    EXPECT_EQ(largest_connected_component(p3), p3);
}

TEST(Components, PicksLargest) {
    const Graph g(5, {{0, 1}, {2, 3}, {3, 4}});
    const Graph lcc = largest_connected_component(g);
    EXPECT_EQ(lcc.node_count(), 3u);
    EXPECT_EQ(lcc.edge_count(), 2u);
    ASSERT_EQ(lcc.original_ids().size(), 3u);
    EXPECT_EQ(lcc.original_ids()[0], 2);
    EXPECT_FALSE(is_connected(g));
    const auto labels = component_labels(g);
    EXPECT_EQ(labels[0], labels[1]);
    EXPECT_NE(labels[1], labels[2]);
}

TEST(Components, TieGoesToSmallestId) {
    const Graph g(4, {{2, 3}, {0, 1}});
    const Graph lcc = largest_connected_component(g);
    EXPECT_EQ(lcc.node_count(), 2u);
    EXPECT_EQ(lcc.original_ids()[0], 0);
    EXPECT_EQ(lcc.original_ids()[1], 1);
}

TEST(Components, KeepsExternalIds) {
    std::istringstream in("10 20\n30 40\n40 50\n");
    const auto r = load_edge_list(in);
    const Graph lcc = largest_connected_component(r.graph);
    ASSERT_EQ(lcc.original_ids().size(), 3u);
    EXPECT_EQ(lcc.original_ids()[0], 30);
    EXPECT_EQ(lcc.original_ids()[2], 50);
}
