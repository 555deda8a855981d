#pragma once

#include "concord/graph.hpp"

#include <cstdint>

namespace concord {

struct ERConfig {
    int n = 0;
    double lambda = 0.0; // expected degree; edge probability is lambda/(n-1)
    std::uint64_t seed = 1;
};

struct BAConfig {
    int n = 0;
    int m = 1; // edges formed by each arriving vertex
    std::uint64_t seed = 1;
    int seed_graph_size = 20;
    double seed_lambda = 1.0;
};

// Each unordered pair is an edge independently with probability lambda/(n-1).
Graph erdos_renyi(const ERConfig& cfg);

// Preferential attachment grown on an Erdos-Renyi seed graph: vertices
// arrive one at a time and attach to m distinct existing vertices chosen
// with probability proportional to degree at the arrival's start; when the
// remaining candidates all have degree zero the choice is uniform among
// them. Edge count is exactly |seed edges| + (n - seed_graph_size) * m.
Graph barabasi_albert(const BAConfig& cfg);

} // namespace concord
