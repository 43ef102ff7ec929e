// Fixed-time samplers of the mass-rescaled continuous-time random multigraph
// and its coupled simple graph, plus component extraction.
//
// At rescaled time q every unordered vertex pair {i,j} carries an independent
// Poisson(q/n^{4/3}) number of edges and every vertex an independent
// Poisson(q/(2 n^{4/3})) number of self-loops.  The coupled simple graph keeps
// one edge per pair with at least one multigraph edge and drops loops.
#pragma once

#include <cstdint>
#include <vector>

#include "amc/core.hpp"
#include "amc/rng.hpp"

namespace amc::graphsim {

using core::AugmentedPartition;
using core::ScalingParams;

enum class GraphKind { multigraph, simple };

struct PairEdge {
    std::uint32_t u = 0;  // vertex indices in [1..n], u < v
    std::uint32_t v = 0;
    std::uint32_t multiplicity = 0;
};

struct LoopCount {
    std::uint32_t vertex = 0;
    std::uint32_t count = 0;
};

struct GraphSample {
    std::uint32_t n = 0;
    GraphKind kind = GraphKind::multigraph;
    std::vector<PairEdge> edges;  // sorted by (u, v), multiplicities merged
    std::vector<LoopCount> loops;  // sorted by vertex; empty for simple kind

    std::uint64_t total_edge_count() const;  // multiplicities plus loops
};

struct ComponentSummary {
    std::uint32_t size = 0;      // vertex count
    double mass = 0.0;           // size * n^{-2/3}
    std::uint64_t surplus = 0;   // edges within (incl. loops/multiplicities) - (size-1)
};

struct ComponentDecomposition {
    std::vector<ComponentSummary> components;  // size desc, surplus desc, min vertex asc
    std::vector<std::uint32_t> component_of;   // vertex (1-based) -> index into components
};

// Samples the multigraph at time params.q() by superposition: the total pair
// edge count is Poisson(C(n,2) q / n^{4/3}) with each edge a uniform distinct
// pair, and the total loop count Poisson(n q / (2 n^{4/3})) with a uniform
// vertex.  Distributionally identical to per-pair sampling.
GraphSample sample_multigraph(const ScalingParams& params, Rng& rng);

// Reference sampler: one Poisson draw per pair and per vertex, O(n^2).
// Kept as the independent oracle for the superposition sampler.
GraphSample sample_multigraph_perpair(const ScalingParams& params, Rng& rng);

// Keeps one edge per pair with multiplicity >= 1 and drops loops.
// Throws if the input is already simple.
GraphSample project_simple(const GraphSample& mg);

ComponentDecomposition decompose_components(const GraphSample& g);
std::vector<ComponentSummary> components(const GraphSample& g);

// (mass, surplus) pairs of the components in canonical order.
AugmentedPartition psi_embedding(const std::vector<ComponentSummary>& comps);

// One multigraph draw and its simple projection with components matched:
// `simple` is aligned index-by-index with `multigraph` (same vertex sets).
struct CoupledSample {
    std::vector<ComponentSummary> multigraph;
    std::vector<ComponentSummary> simple;
    // Sum over components of mass * (multigraph surplus - simple surplus).
    double gap_statistic = 0.0;
};

CoupledSample sample_coupled_pair(const ScalingParams& params, Rng& rng);

}  // namespace amc::graphsim
