#include "pathlaw/graph.hpp"

#include <algorithm>
#include <numeric>

#include "pathlaw/error.hpp"

namespace pathlaw {

Graph::Graph(std::size_t n, std::vector<Edge> edges, bool directed)
    : n_(n), directed_(directed), edges_(std::move(edges)) {
    for (auto& e : edges_) {
        if (e.u >= n_ || e.v >= n_)
            throw IndexError("edge endpoint out of range");
        if (!directed_ && e.u > e.v)
            std::swap(e.u, e.v);
    }
    std::erase_if(edges_, [](const Edge& e) { return e.u == e.v; });
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.u + 1];
        if (!directed_)
            ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    targets_.resize(offsets_[n_]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        targets_[cursor[e.u]++] = e.v;
        if (!directed_)
            targets_[cursor[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < n_; ++v)
        std::sort(targets_.begin() + offsets_[v], targets_.begin() + offsets_[v + 1]);
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> d(n_);
    for (std::size_t v = 0; v < n_; ++v)
        d[v] = degree(static_cast<NodeId>(v));
    return d;
}

void Graph::set_original_ids(std::vector<std::int64_t> ids) {
    if (!ids.empty() && ids.size() != n_)
        throw ParameterError("original id map size does not match node count");
    original_ids_ = std::move(ids);
}

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

std::vector<std::size_t> component_labels(const Graph& g) {
    const std::size_t n = g.node_count();
    DisjointSets sets(n);
    for (const auto& e : g.edges())
        sets.unite(e.u, e.v);

    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label_of_root(n, unset);
    std::vector<std::size_t> labels(n);
    std::size_t next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t root = sets.find(v);
        if (label_of_root[root] == unset)
            label_of_root[root] = next++;
        labels[v] = label_of_root[root];
    }
    return labels;
}

bool is_connected(const Graph& g) {
    const auto labels = component_labels(g);
    return std::all_of(labels.begin(), labels.end(), [](std::size_t l) { return l == 0; });
}

Graph largest_connected_component(const Graph& g) {
    if (g.empty())
        throw EmptyInputError("largest_connected_component: empty graph");

    const auto labels = component_labels(g);
    const std::size_t count = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<std::size_t> sizes(count, 0);
    for (auto l : labels)
        ++sizes[l];
    // Labels are assigned in order of smallest member, so the first maximum
    // is the component holding the smallest id.
    const std::size_t best =
        static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

    std::vector<NodeId> remap(g.node_count(), 0);
    std::vector<std::int64_t> ids;
    ids.reserve(sizes[best]);
    const auto parent_ids = g.original_ids();
    NodeId next = 0;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        if (labels[v] != best)
            continue;
        remap[v] = next++;
        ids.push_back(parent_ids.empty() ? static_cast<std::int64_t>(v) : parent_ids[v]);
    }

    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        if (labels[e.u] == best)
            edges.push_back({remap[e.u], remap[e.v]});

    Graph sub(sizes[best], std::move(edges), g.directed());
    sub.set_original_ids(std::move(ids));
    return sub;
}

} // namespace pathlaw
