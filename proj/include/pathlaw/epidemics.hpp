#pragma once

#include <cstdint>
#include <vector>

#include "pathlaw/graph.hpp"

namespace pathlaw {

struct SirParams {
    double infect = 1.0;  // per susceptible neighbor, per step, in [0, 1]
    double recover = 1.0; // per infected node, per step, in (0, 1]
    std::uint64_t seed = 0;
};

void validate(const SirParams& p);

struct OutbreakTrace {
    // newly_infected[t] for t = 0, 1, ...; entry 0 is the source.
    std::vector<std::uint64_t> newly_infected;
    NodeId source = 0;

    std::uint64_t final_size() const noexcept;
    friend bool operator==(const OutbreakTrace&, const OutbreakTrace&) = default;
};

// Who-infected-whom. Edges are sorted (infector, infectee) pairs.
struct CausalGraph {
    std::size_t n = 0;
    std::vector<Edge> edges;
    NodeId source = 0;
};

struct Outbreak {
    OutbreakTrace trace;
    CausalGraph causal;
};

// Synchronous discrete-time SIR cascade run to extinction.
//
// Per step: every infectious node tries each neighbor that was susceptible at
// the start of the step with probability `infect`; then every node that was
// infectious at the start of the step recovers with probability `recover`.
// Newly infected nodes become infectious next step. An infectee gets a causal
// in-edge from every infector that succeeded in that step. Trailing steps in
// which nobody was newly infected are not recorded, so with infect = recover
// = 1 the trace after t = 0 equals the BFS level sizes of the source.
Outbreak simulate_sir(const Graph& g, NodeId source, const SirParams& p);

// q_k = sum_j (A^k)_{sj} for k = 1..k_max, counted by dynamic programming.
std::vector<double> causal_path_counts(const CausalGraph& c, std::size_t k_max);

// Smallest K with A^k = 0 for every k > K (longest path length).
// Throws StructuralError if the graph has a cycle.
std::size_t nilpotency_index(const CausalGraph& c);

// Throws StructuralError on a cycle, an out-of-range endpoint, an infected
// node unreachable from the source, or a non-source node without in-edges.
void validate_causal(const CausalGraph& c);

// Elementwise mean of the traces, shorter traces padded with zeros.
std::vector<double> average_outbreak(std::span<const OutbreakTrace> traces);

} // namespace pathlaw
