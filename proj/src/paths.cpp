#include "pathlaw/paths.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "pathlaw/error.hpp"
#include "pathlaw/kernels.hpp"

namespace pathlaw {

DistanceHistogram::DistanceHistogram(std::vector<std::uint64_t> counts, std::uint64_t sources)
    : counts_(std::move(counts)), sources_(sources) {
    trim();
}

std::uint64_t DistanceHistogram::reachable_pairs() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

DistanceHistogram& DistanceHistogram::operator+=(const DistanceHistogram& other) {
    if (counts_.size() < other.counts_.size())
        counts_.resize(other.counts_.size(), 0);
    kernels::add_counts(std::span(counts_).first(other.counts_.size()), other.counts_);
    sources_ += other.sources_;
    trim();
    return *this;
}

void DistanceHistogram::trim() {
    while (!counts_.empty() && counts_.back() == 0)
        counts_.pop_back();
}

namespace {

// BFS with caller-owned scratch so repeated sources do not reallocate.
struct BfsWorkspace {
    std::vector<std::int32_t> dist;
    std::vector<NodeId> frontier;
    std::vector<NodeId> next;
    std::vector<NodeId> visited;

    explicit BfsWorkspace(std::size_t n) : dist(n, -1) {}

    // Appends the level sizes (level 0 = the source) to `levels`, then resets.
    void run(const Graph& g, NodeId source, std::vector<std::uint64_t>& levels) {
        levels.clear();
        frontier.assign(1, source);
        dist[source] = 0;
        visited.assign(1, source);
        std::int32_t depth = 0;
        while (!frontier.empty()) {
            levels.push_back(frontier.size());
            next.clear();
            ++depth;
            for (NodeId u : frontier)
                for (NodeId v : g.neighbors(u))
                    if (dist[v] < 0) {
                        dist[v] = depth;
                        next.push_back(v);
                        visited.push_back(v);
                    }
            frontier.swap(next);
        }
        for (NodeId v : visited)
            dist[v] = -1;
    }
};

void check_source(const Graph& g, NodeId source) {
    if (source >= g.node_count())
        throw IndexError("source node " + std::to_string(source) + " out of range");
}

} // namespace

std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source) {
    check_source(g, source);
    std::vector<std::int32_t> dist(g.node_count(), -1);
    std::vector<NodeId> queue{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        for (NodeId v : g.neighbors(u))
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

DistanceHistogram bfs_histogram_from(const Graph& g, NodeId source, bool include_self) {
    check_source(g, source);
    BfsWorkspace ws(g.node_count());
    std::vector<std::uint64_t> levels;
    ws.run(g, source, levels);
    if (!include_self)
        levels[0] = 0;
    return DistanceHistogram(std::move(levels), 1);
}

std::vector<NodeId> sample_sources(std::size_t n, const SampleSources& sample) {
    if (sample.count < 1 || sample.count > n)
        throw ParameterError("source sample size must lie in [1, n]");
    // Partial Fisher-Yates over the id range.
    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    Rng rng(sample.seed);
    for (std::size_t i = 0; i < sample.count; ++i)
        std::swap(ids[i], ids[i + rng.below(n - i)]);
    ids.resize(sample.count);
    std::sort(ids.begin(), ids.end());
    return ids;
}

DistanceHistogram aggregate_histogram(const Graph& g, std::span<const NodeId> sources,
                                      AggregateOptions opts) {
    if (sources.empty())
        throw ParameterError("aggregate_histogram: empty source set");
    for (NodeId s : sources)
        check_source(g, s);

    unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, sources.size()));

    // Each worker owns a contiguous block of sources; partial sums are merged
    // in block order, and integer addition makes the result schedule-free.
    std::vector<std::vector<std::uint64_t>> partial(threads);
    auto work = [&](unsigned block) {
        const std::size_t lo = sources.size() * block / threads;
        const std::size_t hi = sources.size() * (block + 1) / threads;
        BfsWorkspace ws(g.node_count());
        std::vector<std::uint64_t> levels;
        auto& acc = partial[block];
        for (std::size_t i = lo; i < hi; ++i) {
            ws.run(g, sources[i], levels);
            if (!opts.include_self)
                levels[0] = 0;
            if (acc.size() < levels.size())
                acc.resize(levels.size(), 0);
            kernels::add_counts(std::span(acc).first(levels.size()), levels);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned b = 0; b < threads; ++b)
            pool.emplace_back(work, b);
    }

    DistanceHistogram total({}, 0);
    for (auto& p : partial)
        total += DistanceHistogram(std::move(p), 0);
    return DistanceHistogram(total.counts(), sources.size());
}

DistanceHistogram aggregate_histogram(const Graph& g, AllSources, AggregateOptions opts) {
    std::vector<NodeId> all(g.node_count());
    std::iota(all.begin(), all.end(), NodeId{0});
    return aggregate_histogram(g, all, opts);
}

DistanceHistogram aggregate_histogram(const Graph& g, const SampleSources& sample,
                                      AggregateOptions opts) {
    const auto sources = sample_sources(g.node_count(), sample);
    return aggregate_histogram(g, sources, opts);
}

HistogramStats histogram_stats(const DistanceHistogram& h) {
    const auto total = h.reachable_pairs();
    if (total == 0)
        throw ParameterError("histogram_stats: empty histogram");
    long double weighted = 0;
    for (std::size_t k = 0; k < h.counts().size(); ++k)
        weighted += static_cast<long double>(k) * static_cast<long double>(h.counts()[k]);
    return {static_cast<double>(weighted / static_cast<long double>(total)), h.max_distance()};
}

} // namespace pathlaw
