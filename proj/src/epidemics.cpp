#include "pathlaw/epidemics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pathlaw/error.hpp"

namespace pathlaw {

void validate(const SirParams& p) {
    if (!(p.infect >= 0.0 && p.infect <= 1.0))
        throw ParameterError("infection probability must lie in [0, 1]");
    if (!(p.recover > 0.0 && p.recover <= 1.0))
        throw ParameterError("recovery probability must lie in (0, 1]");
}

std::uint64_t OutbreakTrace::final_size() const noexcept {
    return std::accumulate(newly_infected.begin(), newly_infected.end(), std::uint64_t{0});
}

Outbreak simulate_sir(const Graph& g, NodeId source, const SirParams& p) {
    validate(p);
    if (source >= g.node_count())
        throw IndexError("outbreak source " + std::to_string(source) + " out of range");

    enum : std::uint8_t { susceptible, infected, recovered };
    std::vector<std::uint8_t> state(g.node_count(), susceptible);
    // Step in which a node was infected this round; distinguishes new cases
    // from nodes that were susceptible at the start of the step.
    std::vector<std::uint32_t> infected_at(g.node_count(), 0);
    Rng rng(p.seed);

    Outbreak out;
    out.trace.source = source;
    out.causal.n = g.node_count();
    out.causal.source = source;

    std::vector<NodeId> infectious{source};
    std::vector<NodeId> fresh;
    std::vector<NodeId> still;
    state[source] = infected;
    out.trace.newly_infected.push_back(1);

    for (std::uint32_t step = 1; !infectious.empty(); ++step) {
        fresh.clear();
        for (NodeId u : infectious) {
            for (NodeId v : g.neighbors(u)) {
                const bool open = state[v] == susceptible || (state[v] == infected && infected_at[v] == step);
                if (!open)
                    continue;
                if (!rng.bernoulli(p.infect))
                    continue;
                if (state[v] == susceptible) {
                    state[v] = infected;
                    infected_at[v] = step;
                    fresh.push_back(v);
                }
                out.causal.edges.push_back({u, v});
            }
        }
        still.clear();
        for (NodeId u : infectious) {
            if (rng.bernoulli(p.recover))
                state[u] = recovered;
            else
                still.push_back(u);
        }
        out.trace.newly_infected.push_back(fresh.size());
        infectious.swap(still);
        infectious.insert(infectious.end(), fresh.begin(), fresh.end());
    }

    auto& trace = out.trace.newly_infected;
    while (trace.size() > 1 && trace.back() == 0)
        trace.pop_back();
    std::sort(out.causal.edges.begin(), out.causal.edges.end());
    return out;
}

namespace {

struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<NodeId> targets;
};

Csr out_adjacency(const CausalGraph& c) {
    Csr a;
    a.offsets.assign(c.n + 1, 0);
    for (const auto& e : c.edges) {
        if (e.u >= c.n || e.v >= c.n)
            throw StructuralError("causal edge endpoint out of range");
        ++a.offsets[e.u + 1];
    }
    std::partial_sum(a.offsets.begin(), a.offsets.end(), a.offsets.begin());
    a.targets.resize(c.edges.size());
    std::vector<std::size_t> cursor(a.offsets.begin(), a.offsets.end() - 1);
    for (const auto& e : c.edges)
        a.targets[cursor[e.u]++] = e.v;
    return a;
}

// Kahn order; throws on a cycle.
std::vector<NodeId> topological_order(const CausalGraph& c, const Csr& a) {
    std::vector<std::size_t> indegree(c.n, 0);
    for (const auto& e : c.edges)
        ++indegree[e.v];
    std::vector<NodeId> order;
    order.reserve(c.n);
    for (NodeId v = 0; v < c.n; ++v)
        if (indegree[v] == 0)
            order.push_back(v);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const NodeId u = order[head];
        for (std::size_t i = a.offsets[u]; i < a.offsets[u + 1]; ++i)
            if (--indegree[a.targets[i]] == 0)
                order.push_back(a.targets[i]);
    }
    if (order.size() != c.n)
        throw StructuralError("causal graph contains a cycle");
    return order;
}

} // namespace

std::vector<double> causal_path_counts(const CausalGraph& c, std::size_t k_max) {
    if (k_max < 1)
        throw ParameterError("causal_path_counts: k_max must be >= 1");
    const Csr a = out_adjacency(c);
    std::vector<double> q(k_max, 0.0);
    if (c.source >= c.n)
        return q;

    // ways[v] = (A^k)_{s v}; advance one power per level.
    std::vector<double> ways(c.n, 0.0);
    std::vector<double> next(c.n, 0.0);
    std::vector<NodeId> active{c.source};
    std::vector<NodeId> touched;
    ways[c.source] = 1.0;
    for (std::size_t k = 1; k <= k_max && !active.empty(); ++k) {
        touched.clear();
        for (NodeId u : active)
            for (std::size_t i = a.offsets[u]; i < a.offsets[u + 1]; ++i) {
                const NodeId v = a.targets[i];
                if (next[v] == 0.0)
                    touched.push_back(v);
                next[v] += ways[u];
            }
        double total = 0.0;
        for (NodeId u : active)
            ways[u] = 0.0;
        std::sort(touched.begin(), touched.end());
        for (NodeId v : touched) {
            ways[v] = next[v];
            next[v] = 0.0;
            total += ways[v];
        }
        q[k - 1] = total;
        active.swap(touched);
    }
    return q;
}

std::size_t nilpotency_index(const CausalGraph& c) {
    const Csr a = out_adjacency(c);
    const auto order = topological_order(c, a);
    std::vector<std::size_t> longest(c.n, 0);
    std::size_t best = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const NodeId u = *it;
        for (std::size_t i = a.offsets[u]; i < a.offsets[u + 1]; ++i)
            longest[u] = std::max(longest[u], longest[a.targets[i]] + 1);
        best = std::max(best, longest[u]);
    }
    return best;
}

void validate_causal(const CausalGraph& c) {
    const Csr a = out_adjacency(c);
    topological_order(c, a);
    if (c.edges.empty())
        return;
    if (c.source >= c.n)
        throw StructuralError("causal source out of range");

    std::vector<char> has_in(c.n, 0);
    std::vector<char> involved(c.n, 0);
    for (const auto& e : c.edges) {
        has_in[e.v] = 1;
        involved[e.u] = involved[e.v] = 1;
    }
    if (has_in[c.source])
        throw StructuralError("causal source has an incoming edge");

    std::vector<char> reached(c.n, 0);
    std::vector<NodeId> stack{c.source};
    reached[c.source] = 1;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (std::size_t i = a.offsets[u]; i < a.offsets[u + 1]; ++i)
            if (!reached[a.targets[i]]) {
                reached[a.targets[i]] = 1;
                stack.push_back(a.targets[i]);
            }
    }
    for (std::size_t v = 0; v < c.n; ++v)
        if (involved[v] && !reached[v])
            throw StructuralError("causal node " + std::to_string(v) + " not reachable from the source");
}

std::vector<double> average_outbreak(std::span<const OutbreakTrace> traces) {
    if (traces.empty())
        throw ParameterError("average_outbreak: no traces");
    std::size_t length = 0;
    for (const auto& t : traces)
        length = std::max(length, t.newly_infected.size());
    std::vector<double> mean(length, 0.0);
    for (const auto& t : traces)
        for (std::size_t i = 0; i < t.newly_infected.size(); ++i)
            mean[i] += static_cast<double>(t.newly_infected[i]);
    for (auto& m : mean)
        m /= static_cast<double>(traces.size());
    return mean;
}

} // namespace pathlaw
