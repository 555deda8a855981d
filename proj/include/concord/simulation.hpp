#pragma once

#include "concord/graph.hpp"
#include "concord/random_graphs.hpp"

#include <cstdint>
#include <string>

namespace concord {

struct GraphSpec {
    enum class Kind { er, ba, file };
    Kind kind = Kind::er;
    ERConfig er{};    // seed field ignored; the harness derives it from master_seed
    BAConfig ba{};    // likewise
    std::string path; // edge-list file for Kind::file
};

struct SimulationConfig {
    GraphSpec graph{};
    double c = 0.0;
    std::int64_t mc_reps = 500;
    std::int64_t permutations = 300;
    double alpha = 0.05;
    std::int64_t true_gc_reps = 200000;
    std::uint64_t master_seed = 1;
    int threads = 0;
};

// Everything except wall_time_seconds is a pure function of the config.
struct SimulationReport {
    double true_gc = 0.0;
    double true_gc_se = 0.0;
    double coverage_perm = 0.0;      // permutation CI covering true_gc
    double coverage_asym = 0.0;      // normal-quantile CI covering true_gc
    double mean_ci_length = 0.0;     // permutation interval
    double mean_ci_length_asym = 0.0;
    double rejection_rate = 0.0;     // one-sided test of positive concordance
    std::int64_t completed_reps = 0;
    std::int64_t degenerate_count = 0; // replications dropped for degeneracy
    std::int64_t degenerate_draws = 0; // flagged draws inside completed reps
    double wall_time_seconds = 0.0;
    int graph_n = 0;
    std::int64_t graph_edges = 0;
    DegreeStats graph_degree_stats{};
    SimulationConfig config{};
};

// The graph is generated (or loaded) once and fixed; each replication draws
// fresh outcomes and builds both intervals plus the one-sided test.
// Degenerate replications are excluded from every rate and counted.
SimulationReport run_coverage_experiment(const SimulationConfig& cfg);

// The fixed graph a config resolves to, exposed for tests and the CLI.
Graph realize_graph(const SimulationConfig& cfg);

} // namespace concord
