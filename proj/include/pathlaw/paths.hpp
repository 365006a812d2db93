#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pathlaw/graph.hpp"

namespace pathlaw {

// Counts n_k of (source, target) pairs at shortest distance k.
//
// counts()[k] holds n_k; index 0 is the self-pair bin and stays zero unless
// self pairs were requested. The vector is trimmed so its last entry is the
// largest observed distance.
class DistanceHistogram {
public:
    DistanceHistogram() = default;
    DistanceHistogram(std::vector<std::uint64_t> counts, std::uint64_t sources);

    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t count(std::size_t k) const noexcept { return k < counts_.size() ? counts_[k] : 0; }
    std::uint64_t sources() const noexcept { return sources_; }
    std::uint64_t reachable_pairs() const noexcept;
    // Largest k with a nonzero count; 0 for an empty histogram.
    std::size_t max_distance() const noexcept { return counts_.empty() ? 0 : counts_.size() - 1; }
    bool empty() const noexcept { return reachable_pairs() == 0; }

    // Elementwise sum; sources add up.
    DistanceHistogram& operator+=(const DistanceHistogram& other);
    friend bool operator==(const DistanceHistogram&, const DistanceHistogram&) = default;

private:
    void trim();

    std::vector<std::uint64_t> counts_;
    std::uint64_t sources_ = 0;
};

// Unweighted shortest-path distances from `source`; unreachable nodes get -1.
std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source);

// Per-source histogram. Self pair (k = 0) only when include_self is set.
DistanceHistogram bfs_histogram_from(const Graph& g, NodeId source, bool include_self = false);

struct AllSources {};
struct SampleSources {
    std::size_t count;
    std::uint64_t seed;
};

struct AggregateOptions {
    bool include_self = false;
    // Worker threads for per-source BFS; 0 picks hardware concurrency.
    unsigned threads = 1;
};

// Sources drawn uniformly without replacement, sorted ascending.
std::vector<NodeId> sample_sources(std::size_t n, const SampleSources& sample);

DistanceHistogram aggregate_histogram(const Graph& g, AllSources, AggregateOptions opts = {});
DistanceHistogram aggregate_histogram(const Graph& g, const SampleSources& sample,
                                      AggregateOptions opts = {});
DistanceHistogram aggregate_histogram(const Graph& g, std::span<const NodeId> sources,
                                      AggregateOptions opts = {});

struct HistogramStats {
    double mean;
    std::size_t diameter;
};

// Throws ParameterError on an empty histogram.
HistogramStats histogram_stats(const DistanceHistogram& h);

} // namespace pathlaw
