#pragma once

#include <optional>
#include <vector>

#include "robusteq/rational.hpp"

namespace robusteq {

/// Directed edge carrying a d-dimensional integer weight vector.
struct Edge {
    int from = 0;
    int to = 0;
    std::vector<long long> w;
};

/// Finite directed multigraph with a distinguished start vertex.
struct WeightedDigraph {
    int vertex_count = 0;
    int dims = 1;
    int start = 0;
    std::vector<Edge> edges;

    void add_edge(int from, int to, std::vector<long long> weights);

    /// Edge indices grouped by source vertex.
    std::vector<std::vector<int>> out_edges() const;
};

struct SccPartition {
    /// Components in topological order (every edge stays inside a
    /// component or goes strictly forward in this order).
    std::vector<std::vector<int>> components;
    /// Vertex -> index into components.
    std::vector<int> component_of;
    /// True for singleton components without a self-loop.
    std::vector<bool> trivial;
};

SccPartition sccs(const WeightedDigraph& g);

enum class Sense { Min, Max };

struct MeanCycle {
    Rational value;
    /// Simple witness cycle: vertices[i] -> vertices[i+1 mod len] via edges[i].
    std::vector<int> vertices;
    std::vector<int> edges;
};

/// Exact optimal cycle mean in the given dimension among cycles reachable
/// from g.start, with a simple witness cycle. Returns nullopt when the
/// reachable region is acyclic.
std::optional<MeanCycle> extreme_mean_cycle(const WeightedDigraph& g, int dim, Sense sense);

/// Vertices reachable from `from` (including it).
std::vector<bool> reachable_set(const WeightedDigraph& g, int from);

}  // namespace robusteq
