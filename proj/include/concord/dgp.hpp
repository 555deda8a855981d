#pragma once

#include "concord/graph.hpp"
#include "concord/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace concord {

struct DgpConfig {
    double c = 0.0; // dependence strength, in [0, 1)
    std::uint64_t seed = 1;
};

struct TrueGcResult {
    double value = 0.0;     // gamma - gamma_c
    double std_error = 0.0; // batch-means standard error; NaN when reps < 4
    double gamma = 0.0;
    double gamma_c = 0.0;
    std::int64_t reps = 0;
};

// Latent i.i.d. N(0,1) outcomes, then one shared shock per edge in the
// graph's canonical order: (Y_i, Y_j) <- sqrt(1-c^2) (Y_i, Y_j) + c Z.
// Every update preserves unit variance, and only edge endpoints ever share
// a shock, so the graph is a dependency graph for the result.
std::vector<double> generate_outcomes(const Graph& g, const DgpConfig& cfg);

// Population concordance of the process above on this fixed graph,
// estimated by sample moments across `reps` independent outcome draws.
TrueGcResult true_gc_monte_carlo(const Graph& g, double c, std::int64_t reps, std::uint64_t seed,
                                 int threads = 0);

namespace detail {
// In-place draw from an already-positioned stream; shared by the public
// entry point and the per-replication substreams of the harnesses.
void fill_outcomes(const Graph& g, double c, SplitRng& rng, std::span<double> y);
} // namespace detail

} // namespace concord
