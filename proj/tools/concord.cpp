#include "concord/concordance.hpp"
#include "concord/dgp.hpp"
#include "concord/errors.hpp"
#include "concord/graph.hpp"
#include "concord/io.hpp"
#include "concord/numeric.hpp"
#include "concord/permutation.hpp"
#include "concord/random_graphs.hpp"
#include "concord/report.hpp"
#include "concord/simulation.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace {

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
    } else {
        concord::write_text_file(path, text);
        std::cerr << "wrote " << path << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph concordance: estimation, permutation inference, and simulation"};
    app.require_subcommand(1);

    std::string graph_path, vertices_path, outcomes_path, types_path, type_label;
    std::string format = "json", output_path, csv_path, config_path, sidecar_path, family;
    double alpha = 0.05, c = 0.0, threshold = 1.0, lambda = 1.0, seed_lambda = 1.0;
    std::int64_t permutations = 1000, reps = 200000;
    std::uint64_t seed = 1;
    int threads = 0, n = 0, m = 1, seed_graph_size = 20;
    bool exact = false, zero_gamma_c = false;

    const auto add_graph_opts = [&](CLI::App* cmd) {
        cmd->add_option("--graph", graph_path, "edge-list file")->required();
        cmd->add_option("--vertices", vertices_path, "vertex-list file declaring isolated vertices");
    };
    const auto add_output_opts = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--output", output_path, "write the report here instead of stdout");
    };
    const auto add_inference_opts = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "significance level");
        cmd->add_option("--permutations", permutations, "number of permutation draws");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_flag("--exact", exact, "enumerate all n! relabelings (n <= 8)");
        cmd->add_flag("--zero-gamma-c", zero_gamma_c, "drop the non-neighbor term from the estimator");
        cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
    };

    auto* cmd_estimate = app.add_subcommand("estimate", "point estimate of graph concordance");
    add_graph_opts(cmd_estimate);
    cmd_estimate->add_option("--outcomes", outcomes_path, "outcome CSV")->required();
    cmd_estimate->add_flag("--zero-gamma-c", zero_gamma_c, "drop the non-neighbor term from the estimator");
    add_output_opts(cmd_estimate);

    auto* cmd_ci = app.add_subcommand("ci", "permutation confidence interval for the concordance");
    add_graph_opts(cmd_ci);
    cmd_ci->add_option("--outcomes", outcomes_path, "outcome CSV")->required();
    add_inference_opts(cmd_ci);
    add_output_opts(cmd_ci);

    auto* cmd_test = app.add_subcommand("test", "one-sided permutation test of positive concordance");
    add_graph_opts(cmd_test);
    cmd_test->add_option("--outcomes", outcomes_path, "outcome CSV")->required();
    add_inference_opts(cmd_test);
    add_output_opts(cmd_test);

    auto* cmd_homophily = app.add_subcommand("homophily", "inbreeding homophily of one type label");
    add_graph_opts(cmd_homophily);
    cmd_homophily->add_option("--types", types_path, "type CSV")->required();
    cmd_homophily->add_option("--type-label", type_label, "target type")->required();
    add_output_opts(cmd_homophily);

    auto* cmd_diagnose = app.add_subcommand("diagnose", "degree diagnostics with a denseness warning");
    add_graph_opts(cmd_diagnose);
    cmd_diagnose->add_option("--threshold", threshold,
                             "warn when max_two_degree^4 / n exceeds this heuristic bound");
    add_output_opts(cmd_diagnose);

    auto* cmd_gen_graph = app.add_subcommand("gen-graph", "draw a random graph and write its edge list");
    cmd_gen_graph->add_option("--family", family, "er or ba")
        ->required()
        ->check(CLI::IsMember({"er", "ba"}));
    cmd_gen_graph->add_option("--n", n, "vertex count")->required();
    cmd_gen_graph->add_option("--lambda", lambda, "expected degree (er)");
    cmd_gen_graph->add_option("--m", m, "edges per arriving vertex (ba)");
    cmd_gen_graph->add_option("--seed-graph-size", seed_graph_size, "ba seed-graph size");
    cmd_gen_graph->add_option("--seed-lambda", seed_lambda, "ba seed-graph expected degree");
    cmd_gen_graph->add_option("--seed", seed, "RNG seed");
    cmd_gen_graph
        ->add_option("--output", output_path,
                     "edge-list path; a vertex list goes to <path>.vertices and a JSON sidecar to "
                     "<path>.json")
        ->required();
    cmd_gen_graph->add_option("--sidecar", sidecar_path, "override the sidecar path");

    auto* cmd_gen_outcomes = app.add_subcommand("gen-outcomes", "draw outcomes on a graph, write the CSV");
    add_graph_opts(cmd_gen_outcomes);
    cmd_gen_outcomes->add_option("--c", c, "dependence strength in [0,1)");
    cmd_gen_outcomes->add_option("--seed", seed, "RNG seed");
    cmd_gen_outcomes->add_option("--output", output_path, "outcome CSV path");

    auto* cmd_true_gc = app.add_subcommand("true-gc", "population concordance of the outcome process");
    add_graph_opts(cmd_true_gc);
    cmd_true_gc->add_option("--c", c, "dependence strength in [0,1)");
    cmd_true_gc->add_option("--reps", reps, "Monte Carlo replications");
    cmd_true_gc->add_option("--seed", seed, "RNG seed");
    cmd_true_gc->add_option("--threads", threads, "worker threads (0 = all cores)");
    add_output_opts(cmd_true_gc);

    auto* cmd_simulate = app.add_subcommand("simulate", "coverage experiment from a JSON config");
    cmd_simulate->add_option("--config", config_path, "JSON config file")->required();
    cmd_simulate->add_option("--output", output_path, "JSON report path");
    cmd_simulate->add_option("--csv", csv_path, "also write a one-row CSV here");
    cmd_simulate->add_option("--threads", threads, "override the config's thread count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        using namespace concord;
        if (app.got_subcommand(cmd_estimate)) {
            const Dataset ds = load_dataset(graph_path, outcomes_path, {vertices_path});
            const ConcordanceEstimate est =
                estimate_gc(ds.graph, ds.outcomes, EstimatorOptions{zero_gamma_c});
            emit(format == "json" ? estimate_json(ds.graph, est) : estimate_csv(ds.graph, est),
                 output_path);
        } else if (app.got_subcommand(cmd_ci) || app.got_subcommand(cmd_test)) {
            const Dataset ds = load_dataset(graph_path, outcomes_path, {vertices_path});
            InferenceOptions opts;
            opts.alpha = alpha;
            opts.permutations = permutations;
            opts.seed = seed;
            opts.exact = exact;
            opts.zero_gamma_c = zero_gamma_c;
            opts.threads = threads;
            const InferenceResult res = run_inference(ds.graph, ds.outcomes, opts);
            emit(format == "json" ? inference_json(res) : inference_csv(res), output_path);
            if (app.got_subcommand(cmd_test))
                std::cerr << (res.reject_positive ? "reject" : "fail to reject")
                          << " positive concordance at alpha " << format_double(res.alpha)
                          << " (one-sided p = " << format_double(res.p_value) << ")\n";
        } else if (app.got_subcommand(cmd_homophily)) {
            const Dataset ds = load_dataset_with_types(graph_path, types_path, {vertices_path});
            const HomophilyEstimate h = inbreeding_homophily(ds.graph, ds.types, type_label);
            emit(format == "json" ? homophily_json(h, type_label, ds.graph.size())
                                  : homophily_csv(h, type_label, ds.graph.size()),
                 output_path);
        } else if (app.got_subcommand(cmd_diagnose)) {
            const Graph g = load_graph(graph_path, vertices_path);
            const DegreeStats s = g.degree_stats();
            if (s.denseness_ratio > threshold)
                std::cerr << "warning: denseness ratio " << format_double(s.denseness_ratio)
                          << " exceeds " << format_double(threshold)
                          << "; this is a heuristic, but large-sample approximations may be"
                          << " unreliable on a graph this dense\n";
            emit(format == "json" ? diagnostics_json(g, threshold) : diagnostics_csv(g, threshold),
                 output_path);
        } else if (app.got_subcommand(cmd_gen_graph)) {
            GraphSpec spec;
            Graph g = [&] {
                if (family == "er") {
                    spec.kind = GraphSpec::Kind::er;
                    spec.er = ERConfig{n, lambda, seed};
                    return erdos_renyi(spec.er);
                }
                spec.kind = GraphSpec::Kind::ba;
                spec.ba = BAConfig{n, m, seed, seed_graph_size, seed_lambda};
                return barabasi_albert(spec.ba);
            }();
            const std::string side_path = sidecar_path.empty() ? output_path + ".json" : sidecar_path;
            const std::string vertex_path = output_path + ".vertices";
            write_text_file(output_path, edge_list_text(g));
            write_text_file(vertex_path, vertex_list_text(g));
            write_text_file(side_path, graph_sidecar_json(g, spec, seed));
            std::cerr << "wrote " << output_path << ", " << vertex_path << " and " << side_path
                      << "\n";
        } else if (app.got_subcommand(cmd_gen_outcomes)) {
            const Graph g = load_graph(graph_path, vertices_path);
            const auto y = generate_outcomes(g, DgpConfig{c, seed});
            emit(outcomes_csv_text(g, y), output_path);
        } else if (app.got_subcommand(cmd_true_gc)) {
            const Graph g = load_graph(graph_path, vertices_path);
            const TrueGcResult r = true_gc_monte_carlo(g, c, reps, seed, threads);
            emit(format == "json" ? true_gc_json(r, c, seed) : true_gc_csv(r, c, seed), output_path);
        } else if (app.got_subcommand(cmd_simulate)) {
            SimulationConfig cfg = load_simulation_config(config_path);
            if (cmd_simulate->count("--threads") > 0)
                cfg.threads = threads;
            const SimulationReport report = run_coverage_experiment(cfg);
            emit(simulation_json(report), output_path);
            if (!csv_path.empty()) {
                write_text_file(csv_path, simulation_csv(report));
                std::cerr << "wrote " << csv_path << "\n";
            }
        }
        return 0;
    } catch (const concord::InferenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const concord::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
