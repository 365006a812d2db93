#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pathlaw/rng.hpp"

namespace pathlaw {

using NodeId = std::uint32_t;

struct Edge {
    NodeId u;
    NodeId v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple graph over dense ids 0..n-1 with CSR adjacency.
//
// Undirected edges are stored once with u < v; adjacency is symmetric.
// Self-loops and duplicate edges are dropped on construction.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t n, std::vector<Edge> edges, bool directed = false);

    std::size_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    bool directed() const noexcept { return directed_; }
    bool empty() const noexcept { return n_ == 0; }

    // Sorted canonical edge list.
    std::span<const Edge> edges() const noexcept { return edges_; }

    // Out-neighbors (all neighbors when undirected), ascending.
    std::span<const NodeId> neighbors(NodeId v) const noexcept {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    std::vector<std::size_t> degrees() const;

    // External ids for each dense id; empty when the graph was built directly.
    std::span<const std::int64_t> original_ids() const noexcept { return original_ids_; }
    void set_original_ids(std::vector<std::int64_t> ids);

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.directed_ == b.directed_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    bool directed_ = false;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> targets_;
    std::vector<std::int64_t> original_ids_;
};

// ---------------------------------------------------------------------------
// Synthetic ensembles

struct ErdosRenyi {
    double pi;
};
struct BarabasiAlbert {
    std::size_t m;
};
struct PowerLaw {
    double gamma;
};
struct LogNormalDegrees {
    double mu;
    double xi;
};

struct GraphModelSpec {
    std::variant<ErdosRenyi, BarabasiAlbert, PowerLaw, LogNormalDegrees> model;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

std::string model_name(const GraphModelSpec& spec);

// Throws ParameterError when the parameters are outside their ranges.
void validate(const GraphModelSpec& spec);

// Deterministic in (model, n, seed).
Graph generate(const GraphModelSpec& spec);

// Degree sequence the configuration-model ensembles draw from; even sum.
std::vector<std::size_t> power_law_degrees(std::size_t n, double gamma, Rng& rng);
std::vector<std::size_t> log_normal_degrees(std::size_t n, double mu, double xi, Rng& rng);

// Stub matching; self-loops and multi-edges are removed afterwards.
Graph configuration_model(std::span<const std::size_t> degrees, Rng& rng);

// ---------------------------------------------------------------------------
// Components

// Component label per node (undirected sense), labels ordered by smallest member.
std::vector<std::size_t> component_labels(const Graph& g);
bool is_connected(const Graph& g);

// Induced subgraph on the largest component, ids recompacted in ascending
// order. Ties go to the component holding the smallest original id.
Graph largest_connected_component(const Graph& g);

// ---------------------------------------------------------------------------
// Edge-list text format

struct EdgeListLoad {
    Graph graph;
    std::size_t duplicates_dropped = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t comment_lines = 0;
};

// Whitespace-separated integer pairs, one per line; '%' and '#' start comments.
// Ids are compacted to 0..n-1 in ascending order of the external id and the
// result is undirected.
EdgeListLoad load_edge_list(std::istream& in);
EdgeListLoad load_edge_list_file(const std::string& path);

// Canonical form: "u v\n" per edge, sorted, u < v for undirected graphs.
void write_edge_list(std::ostream& out, const Graph& g);

} // namespace pathlaw
