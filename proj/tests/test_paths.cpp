#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "pathlaw/error.hpp"
#include "pathlaw/paths.hpp"

using namespace pathlaw;

namespace {

DistanceHistogram hist(std::vector<std::uint64_t> counts, std::uint64_t sources = 1) {
    return DistanceHistogram(std::move(counts), sources);
}

} // namespace

TEST(Bfs, PathFromEnd) {
    EXPECT_EQ(bfs_histogram_from(oracle::path_graph(3), 0), hist({0, 1, 1}));
}

TEST(Bfs, CompleteGraph) {
    for (NodeId s = 0; s < 4; ++s)
        EXPECT_EQ(bfs_histogram_from(oracle::complete_graph(4), s), hist({0, 3}));
}

TEST(Bfs, StarFromLeaf) {
    EXPECT_EQ(bfs_histogram_from(oracle::star_graph(3), 1), hist({0, 1, 2}));
}

TEST(Bfs, IncludeSelfAndUnreachable) {
    const Graph g(4, {{0, 1}});
    const auto d = bfs_distances(g, 0);
    EXPECT_EQ(d, (std::vector<std::int32_t>{0, 1, -1, -1}));
    EXPECT_EQ(bfs_histogram_from(g, 0, true), hist({1, 1}));
    EXPECT_EQ(bfs_histogram_from(g, 2), hist({}));
    EXPECT_THROW(bfs_histogram_from(g, 4), IndexError);
}

TEST(Bfs, MatchesFloydWarshall) {
    Rng rng(17);
    for (int rep = 0; rep < 2000; ++rep) {
        const std::size_t n = 1 + rng.below(12);
        const Graph g = oracle::random_connected_graph(n, rng.uniform01() * 0.5, rng);
        const auto fw = oracle::floyd_warshall(g);
        for (NodeId s = 0; s < n; ++s) {
            const auto d = bfs_distances(g, s);
            for (std::size_t t = 0; t < n; ++t)
                ASSERT_EQ(d[t], fw[s][t]) << "rep " << rep;
        }
    }
}

TEST(Aggregate, PathAllSources) {
    const auto h = aggregate_histogram(oracle::path_graph(3), AllSources{});
    EXPECT_EQ(h.counts(), (std::vector<std::uint64_t>{0, 4, 2}));
    EXPECT_EQ(h.sources(), 3u);
    EXPECT_EQ(h.reachable_pairs(), 6u);
}

TEST(Aggregate, CompleteGraph) {
    EXPECT_EQ(aggregate_histogram(oracle::complete_graph(4), AllSources{}).counts(),
              (std::vector<std::uint64_t>{0, 12}));
}

TEST(Aggregate, ExhaustiveSampleEqualsAll) {
    Rng rng(2);
    const Graph g = oracle::random_connected_graph(60, 0.05, rng);
    EXPECT_EQ(aggregate_histogram(g, SampleSources{60, 99}), aggregate_histogram(g, AllSources{}));
}

TEST(Aggregate, SumOfPerSourceHistograms) {
    Rng rng(3);
    const Graph g = oracle::random_connected_graph(50, 0.08, rng);
    DistanceHistogram total;
    for (NodeId s = 0; s < 50; ++s)
        total += bfs_histogram_from(g, s);
    EXPECT_EQ(total, aggregate_histogram(g, AllSources{}));
}

TEST(Aggregate, ThreadCountDoesNotChangeResult) {
    const Graph g = generate({BarabasiAlbert{2}, 400, 4});
    const auto one = aggregate_histogram(g, AllSources{}, {.threads = 1});
    EXPECT_EQ(one, aggregate_histogram(g, AllSources{}, {.threads = 3}));
    EXPECT_EQ(one, aggregate_histogram(g, AllSources{}, {.threads = 0}));
}

TEST(Aggregate, UndirectedHistogramIsSymmetricPairs) {
    // Every unordered pair is counted once from each end.
    Rng rng(5);
    const Graph g = oracle::random_connected_graph(30, 0.1, rng);
    const auto h = aggregate_histogram(g, AllSources{});
    EXPECT_EQ(h.reachable_pairs(), 30u * 29u);
    for (auto c : h.counts())
        EXPECT_EQ(c % 2, 0u);
}

TEST(Sample, DistinctSortedAndSeeded) {
    const auto s = sample_sources(100, {30, 7});
    EXPECT_EQ(s.size(), 30u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::set<NodeId>(s.begin(), s.end()).size(), 30u);
    EXPECT_EQ(s, sample_sources(100, {30, 7}));
    EXPECT_NE(s, sample_sources(100, {30, 8}));
    EXPECT_THROW(sample_sources(10, {11, 1}), ParameterError);
}

TEST(Sample, EachSourceEquallyLikely) {
    std::vector<int> hits(10);
    const int reps = 20000;
    for (int r = 0; r < reps; ++r)
        for (auto v : sample_sources(10, {3, static_cast<std::uint64_t>(r)}))
            ++hits[v];
    for (int h : hits)
        EXPECT_NEAR(h, reps * 0.3, 4 * std::sqrt(reps * 0.3 * 0.7));
}

TEST(Stats, Examples) {
    auto s = histogram_stats(hist({0, 4, 2}));
    EXPECT_DOUBLE_EQ(s.mean, 4.0 / 3.0);
    EXPECT_EQ(s.diameter, 2u);
    s = histogram_stats(hist({0, 12}));
    EXPECT_DOUBLE_EQ(s.mean, 1.0);
    EXPECT_EQ(s.diameter, 1u);
    s = histogram_stats(hist({0, 0, 0, 5}));
    EXPECT_DOUBLE_EQ(s.mean, 3.0);
    EXPECT_EQ(s.diameter, 3u);
    EXPECT_THROW(histogram_stats(hist({})), ParameterError);
}

TEST(Histogram, TrimsTrailingZeros) {
    const auto h = hist({0, 2, 0, 0});
    EXPECT_EQ(h.max_distance(), 1u);
    EXPECT_EQ(h.count(7), 0u);
    DistanceHistogram a = hist({0, 1}), b = hist({0, 0, 3}, 2);
    a += b;
    EXPECT_EQ(a, hist({0, 1, 3}, 3));
}
