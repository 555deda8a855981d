#include "concord/simulation.hpp"

#include "concord/concordance.hpp"
#include "concord/dgp.hpp"
#include "concord/errors.hpp"
#include "concord/io.hpp"
#include "concord/numeric.hpp"
#include "concord/parallel.hpp"
#include "concord/permutation.hpp"
#include "concord/rng.hpp"
#include "concord/variance.hpp"

#include <chrono>
#include <vector>

namespace concord {

namespace {

void validate(const SimulationConfig& cfg) {
    if (cfg.mc_reps < 1)
        throw ConfigError("mc_reps must be at least 1");
    if (cfg.permutations < 1)
        throw ConfigError("permutations must be at least 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw ConfigError("alpha must lie strictly between 0 and 1");
    if (!(cfg.c >= 0.0 && cfg.c < 1.0))
        throw ConfigError("dependence strength c must lie in [0, 1)");
    if (cfg.true_gc_reps < 2)
        throw ConfigError("true_gc_reps must be at least 2");
}

struct RepOutcome {
    bool ok = false;
    bool cover_perm = false;
    bool cover_asym = false;
    bool reject = false;
    double len_perm = 0.0;
    double len_asym = 0.0;
    std::int64_t degenerate_draws = 0;
};

} // namespace

Graph realize_graph(const SimulationConfig& cfg) {
    const std::uint64_t graph_seed =
        SplitRng(cfg.master_seed, streams::id(streams::kSimGraph, 0)).next_u64();
    switch (cfg.graph.kind) {
    case GraphSpec::Kind::er: {
        ERConfig ec = cfg.graph.er;
        ec.seed = graph_seed;
        return erdos_renyi(ec);
    }
    case GraphSpec::Kind::ba: {
        BAConfig bc = cfg.graph.ba;
        bc.seed = graph_seed;
        return barabasi_albert(bc);
    }
    case GraphSpec::Kind::file:
        return load_graph(cfg.graph.path);
    }
    throw ConfigError("unknown graph kind");
}

SimulationReport run_coverage_experiment(const SimulationConfig& cfg) {
    validate(cfg);
    const auto start = std::chrono::steady_clock::now();

    const Graph g = realize_graph(cfg);
    const int n = g.size();
    (void)g.two_neighborhood(0); // materialize the shared cache up front

    const TrueGcResult truth =
        true_gc_monte_carlo(g, cfg.c, cfg.true_gc_reps, cfg.master_seed, cfg.threads);

    // Replications run in parallel; each permutation pool inside stays
    // serial. Every replication gets its own outcome and permutation
    // substreams, so the report does not depend on scheduling.
    std::vector<RepOutcome> reps(static_cast<std::size_t>(cfg.mc_reps));
    parallel_for(
        static_cast<std::size_t>(cfg.mc_reps), cfg.threads,
        [&](std::size_t r) {
            RepOutcome& out = reps[r];
            SplitRng outcome_rng(cfg.master_seed, streams::id(streams::kSimOutcomes, r));
            std::vector<double> y(static_cast<std::size_t>(n));
            detail::fill_outcomes(g, cfg.c, outcome_rng, y);

            InferenceOptions opts;
            opts.alpha = cfg.alpha;
            opts.permutations = cfg.permutations;
            opts.seed = SplitRng(cfg.master_seed, streams::id(streams::kSimPerms, r)).next_u64();
            opts.threads = 1;
            try {
                const ConcordanceEstimate est = estimate_gc(g, y);
                const auto q = q_values(g, est);
                const auto q_bar = degree_class_means(g, q);
                const VarianceEstimate var = variance_estimate(g, q, q_bar);
                const auto draws = permutation_draws(g, est.residuals, opts);
                const InferenceResult perm = confidence_interval(est, var, draws, cfg.alpha, n);
                const InferenceResult asym = asymptotic_ci(est, var, cfg.alpha, n);

                out.ok = true;
                out.cover_perm = perm.ci_lower <= truth.value && truth.value <= perm.ci_upper;
                out.cover_asym = asym.ci_lower <= truth.value && truth.value <= asym.ci_upper;
                out.reject = perm.reject_positive;
                out.len_perm = perm.ci_upper - perm.ci_lower;
                out.len_asym = asym.ci_upper - asym.ci_lower;
                out.degenerate_draws = perm.degenerate_draws;
            } catch (const InferenceError&) {
                out.ok = false;
            }
        },
        1);

    SimulationReport report;
    report.config = cfg;
    report.true_gc = truth.value;
    report.true_gc_se = truth.std_error;
    report.graph_n = n;
    report.graph_edges = g.edge_count();
    report.graph_degree_stats = g.degree_stats();

    std::int64_t completed = 0, cover_perm = 0, cover_asym = 0, rejected = 0;
    KahanSum len_perm, len_asym;
    for (const RepOutcome& r : reps) {
        if (!r.ok) {
            ++report.degenerate_count;
            continue;
        }
        ++completed;
        cover_perm += r.cover_perm ? 1 : 0;
        cover_asym += r.cover_asym ? 1 : 0;
        rejected += r.reject ? 1 : 0;
        len_perm.add(r.len_perm);
        len_asym.add(r.len_asym);
        report.degenerate_draws += r.degenerate_draws;
    }
    if (completed == 0)
        throw InferenceError("every replication was degenerate; nothing to report");

    report.completed_reps = completed;
    const auto denom = static_cast<double>(completed);
    report.coverage_perm = static_cast<double>(cover_perm) / denom;
    report.coverage_asym = static_cast<double>(cover_asym) / denom;
    report.rejection_rate = static_cast<double>(rejected) / denom;
    report.mean_ci_length = len_perm.value() / denom;
    report.mean_ci_length_asym = len_asym.value() / denom;
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace concord
