#include "concord/report.hpp"

#include "concord/errors.hpp"
#include "concord/numeric.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <string>

namespace concord {

namespace {

using ojson = nlohmann::ordered_json;
using njson = nlohmann::json;

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string csv_table(std::initializer_list<std::pair<const char*, std::string>> cells) {
    std::string header, row;
    for (const auto& [name, value] : cells) {
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += name;
        row += value;
    }
    return header + "\n" + row + "\n";
}

std::string fmt(double x) { return format_double(x); }

ojson degree_stats_json(const DegreeStats& s) {
    return ojson{{"max_degree", s.d_mx},
                 {"avg_degree", s.d_av},
                 {"avg_inverse_degree", s.d_avi},
                 {"median_degree", s.d_med},
                 {"max_two_degree", s.d_mx2},
                 {"denseness_ratio", s.denseness_ratio}};
}

ojson graph_spec_json(const GraphSpec& spec) {
    switch (spec.kind) {
    case GraphSpec::Kind::er:
        return ojson{{"family", "er"}, {"n", spec.er.n}, {"lambda", spec.er.lambda}};
    case GraphSpec::Kind::ba:
        return ojson{{"family", "ba"},
                     {"n", spec.ba.n},
                     {"m", spec.ba.m},
                     {"seed_graph_size", spec.ba.seed_graph_size},
                     {"seed_lambda", spec.ba.seed_lambda}};
    case GraphSpec::Kind::file:
        return ojson{{"family", "file"}, {"path", spec.path}};
    }
    throw ConfigError("unknown graph kind");
}

} // namespace

std::string graph_spec_text(const GraphSpec& spec) {
    switch (spec.kind) {
    case GraphSpec::Kind::er:
        return "er(n=" + std::to_string(spec.er.n) + ",lambda=" + fmt(spec.er.lambda) + ")";
    case GraphSpec::Kind::ba:
        return "ba(n=" + std::to_string(spec.ba.n) + ",m=" + std::to_string(spec.ba.m) + ")";
    case GraphSpec::Kind::file:
        return "file(" + spec.path + ")";
    }
    throw ConfigError("unknown graph kind");
}

std::string inference_json(const InferenceResult& r) {
    ojson j{{"schema", "gc-inference/1"},
            {"method", r.method},
            {"n", r.n},
            {"alpha", r.alpha},
            {"c_hat", r.c_hat},
            {"sigma_plus", r.sigma_plus},
            {"t_obs", r.t_obs},
            {"ci_lower", r.ci_lower},
            {"ci_upper", r.ci_upper},
            {"critical_value", r.critical_value},
            {"critical_value_one_sided", r.critical_value_one_sided},
            {"p_value", r.p_value},
            {"reject_positive", r.reject_positive},
            {"permutations", r.n_permutations},
            {"degenerate_draws", r.degenerate_draws},
            {"seed", r.seed},
            {"exact", r.exact}};
    return dump(j);
}

std::string inference_csv(const InferenceResult& r) {
    return csv_table({{"c_hat", fmt(r.c_hat)},
                      {"ci_lower", fmt(r.ci_lower)},
                      {"ci_upper", fmt(r.ci_upper)},
                      {"p_value", fmt(r.p_value)},
                      {"alpha", fmt(r.alpha)},
                      {"permutations", std::to_string(r.n_permutations)},
                      {"seed", std::to_string(r.seed)}});
}

std::string estimate_json(const Graph& g, const ConcordanceEstimate& est) {
    ojson j{{"schema", "gc-estimate/1"},
            {"n", g.size()},
            {"edges", g.edge_count()},
            {"gamma_hat", est.gamma_hat},
            {"gamma_hat_c", est.gamma_hat_c},
            {"c_hat", est.c_hat},
            {"v_hat", est.v_hat}};
    return dump(j);
}

std::string estimate_csv(const Graph& g, const ConcordanceEstimate& est) {
    return csv_table({{"c_hat", fmt(est.c_hat)},
                      {"gamma_hat", fmt(est.gamma_hat)},
                      {"gamma_hat_c", fmt(est.gamma_hat_c)},
                      {"v_hat", fmt(est.v_hat)},
                      {"n", std::to_string(g.size())},
                      {"edges", std::to_string(g.edge_count())}});
}

std::string homophily_json(const HomophilyEstimate& h, const std::string& target, int n) {
    ojson j{{"schema", "gc-homophily/1"}, {"target", target}, {"n", n},
            {"ih", h.ih},               {"ih_prime", h.ih_prime},
            {"h", h.h},                 {"h_prime", h.h_prime},
            {"w", h.w}};
    return dump(j);
}

std::string homophily_csv(const HomophilyEstimate& h, const std::string& target, int n) {
    return csv_table({{"target", target},
                      {"ih", fmt(h.ih)},
                      {"ih_prime", fmt(h.ih_prime)},
                      {"h", fmt(h.h)},
                      {"h_prime", fmt(h.h_prime)},
                      {"w", fmt(h.w)},
                      {"n", std::to_string(n)}});
}

std::string diagnostics_json(const Graph& g, double warn_threshold) {
    const DegreeStats s = g.degree_stats();
    ojson j{{"schema", "gc-diagnostics/1"}, {"n", g.size()}, {"edges", g.edge_count()}};
    j.update(degree_stats_json(s));
    j["threshold"] = warn_threshold;
    j["dense_warning"] = s.denseness_ratio > warn_threshold;
    return dump(j);
}

std::string diagnostics_csv(const Graph& g, double warn_threshold) {
    const DegreeStats s = g.degree_stats();
    return csv_table({{"n", std::to_string(g.size())},
                      {"edges", std::to_string(g.edge_count())},
                      {"max_degree", std::to_string(s.d_mx)},
                      {"avg_degree", fmt(s.d_av)},
                      {"avg_inverse_degree", fmt(s.d_avi)},
                      {"median_degree", fmt(s.d_med)},
                      {"max_two_degree", std::to_string(s.d_mx2)},
                      {"denseness_ratio", fmt(s.denseness_ratio)},
                      {"dense_warning", s.denseness_ratio > warn_threshold ? "1" : "0"}});
}

std::string true_gc_json(const TrueGcResult& r, double c, std::uint64_t seed) {
    ojson j{{"schema", "gc-true/1"},
            {"c", c},
            {"reps", r.reps},
            {"seed", seed},
            {"value", r.value},
            {"std_error", r.std_error},
            {"gamma", r.gamma},
            {"gamma_c", r.gamma_c}};
    return dump(j);
}

std::string true_gc_csv(const TrueGcResult& r, double c, std::uint64_t seed) {
    return csv_table({{"value", fmt(r.value)},
                      {"std_error", fmt(r.std_error)},
                      {"gamma", fmt(r.gamma)},
                      {"gamma_c", fmt(r.gamma_c)},
                      {"c", fmt(c)},
                      {"reps", std::to_string(r.reps)},
                      {"seed", std::to_string(seed)}});
}

std::string simulation_json(const SimulationReport& r) {
    ojson config{{"graph", graph_spec_json(r.config.graph)},
                 {"c", r.config.c},
                 {"mc_reps", r.config.mc_reps},
                 {"permutations", r.config.permutations},
                 {"alpha", r.config.alpha},
                 {"true_gc_reps", r.config.true_gc_reps},
                 {"master_seed", r.config.master_seed},
                 {"threads", r.config.threads}};
    ojson graph{{"n", r.graph_n}, {"edges", r.graph_edges}};
    graph.update(degree_stats_json(r.graph_degree_stats));
    ojson j{{"schema", "gc-simulation/1"},
            {"config", config},
            {"graph", graph},
            {"true_gc", r.true_gc},
            {"true_gc_se", r.true_gc_se},
            {"coverage_perm", r.coverage_perm},
            {"coverage_asym", r.coverage_asym},
            {"mean_ci_length", r.mean_ci_length},
            {"mean_ci_length_asym", r.mean_ci_length_asym},
            {"rejection_rate", r.rejection_rate},
            {"completed_reps", r.completed_reps},
            {"degenerate_count", r.degenerate_count},
            {"degenerate_draws", r.degenerate_draws},
            {"wall_time_seconds", r.wall_time_seconds}};
    return dump(j);
}

std::string simulation_csv(const SimulationReport& r) {
    return csv_table({{"graph", graph_spec_text(r.config.graph)},
                      {"c", fmt(r.config.c)},
                      {"mc_reps", std::to_string(r.config.mc_reps)},
                      {"permutations", std::to_string(r.config.permutations)},
                      {"alpha", fmt(r.config.alpha)},
                      {"true_gc", fmt(r.true_gc)},
                      {"true_gc_se", fmt(r.true_gc_se)},
                      {"coverage_perm", fmt(r.coverage_perm)},
                      {"coverage_asym", fmt(r.coverage_asym)},
                      {"mean_ci_length", fmt(r.mean_ci_length)},
                      {"mean_ci_length_asym", fmt(r.mean_ci_length_asym)},
                      {"rejection_rate", fmt(r.rejection_rate)},
                      {"completed_reps", std::to_string(r.completed_reps)},
                      {"degenerate_count", std::to_string(r.degenerate_count)},
                      {"master_seed", std::to_string(r.config.master_seed)}});
}

std::string graph_sidecar_json(const Graph& g, const GraphSpec& spec, std::uint64_t seed) {
    ojson realized{{"n", g.size()}, {"edges", g.edge_count()}};
    realized.update(degree_stats_json(g.degree_stats()));
    ojson j{{"schema", "gc-graph/1"},
            {"config", graph_spec_json(spec)},
            {"seed", seed},
            {"realized", realized}};
    return dump(j);
}

std::string edge_list_text(const Graph& g) {
    std::string out = "# edge list: one edge per line\n";
    for (const auto& [i, j] : g.edges())
        out += g.label(i) + " " + g.label(j) + "\n";
    return out;
}

std::string vertex_list_text(const Graph& g) {
    std::string out = "# vertex list: one label per line\n";
    for (int i = 0; i < g.size(); ++i)
        out += g.label(i) + "\n";
    return out;
}

std::string outcomes_csv_text(const Graph& g, std::span<const double> y) {
    if (static_cast<int>(y.size()) != g.size())
        throw ConfigError("outcome vector length must match the number of vertices");
    std::string out = "node_label,value\n";
    for (int i = 0; i < g.size(); ++i)
        out += g.label(i) + "," + fmt(y[static_cast<std::size_t>(i)]) + "\n";
    return out;
}

namespace {

[[noreturn]] void bad_config(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const njson& j, std::initializer_list<const char*> allowed, const char* ctx) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok)
            bad_config(std::string(ctx) + ": unknown key '" + it.key() + "'");
    }
}

double req_number(const njson& j, const char* key, const char* ctx) {
    if (!j.contains(key) || !j.at(key).is_number())
        bad_config(std::string(ctx) + ": field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

std::int64_t opt_int(const njson& j, const char* key, std::int64_t fallback, const char* ctx) {
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number_integer())
        bad_config(std::string(ctx) + ": field '" + key + "' must be an integer");
    return j.at(key).get<std::int64_t>();
}

double opt_number(const njson& j, const char* key, double fallback, const char* ctx) {
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number())
        bad_config(std::string(ctx) + ": field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

std::uint64_t opt_uint(const njson& j, const char* key, std::uint64_t fallback, const char* ctx) {
    if (!j.contains(key))
        return fallback;
    const auto& v = j.at(key);
    if (v.is_number_unsigned())
        return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    bad_config(std::string(ctx) + ": field '" + key + "' must be a nonnegative integer");
}

GraphSpec parse_graph_spec(const njson& j) {
    if (!j.is_object())
        bad_config("graph: must be an object");
    if (!j.contains("family") || !j.at("family").is_string())
        bad_config("graph: field 'family' must be a string");
    const std::string family = j.at("family").get<std::string>();

    GraphSpec spec;
    if (family == "er") {
        check_keys(j, {"family", "n", "lambda"}, "graph");
        spec.kind = GraphSpec::Kind::er;
        spec.er.n = static_cast<int>(opt_int(j, "n", 0, "graph"));
        spec.er.lambda = req_number(j, "lambda", "graph");
        if (spec.er.n < 2)
            bad_config("graph: 'n' must be at least 2");
    } else if (family == "ba") {
        check_keys(j, {"family", "n", "m", "seed_graph_size", "seed_lambda"}, "graph");
        spec.kind = GraphSpec::Kind::ba;
        spec.ba.n = static_cast<int>(opt_int(j, "n", 0, "graph"));
        spec.ba.m = static_cast<int>(opt_int(j, "m", 0, "graph"));
        spec.ba.seed_graph_size = static_cast<int>(opt_int(j, "seed_graph_size", 20, "graph"));
        spec.ba.seed_lambda = opt_number(j, "seed_lambda", 1.0, "graph");
        if (spec.ba.n < 1 || spec.ba.m < 1)
            bad_config("graph: 'n' and 'm' are required positive integers");
    } else if (family == "file") {
        check_keys(j, {"family", "path"}, "graph");
        spec.kind = GraphSpec::Kind::file;
        if (!j.contains("path") || !j.at("path").is_string())
            bad_config("graph: field 'path' must be a string");
        spec.path = j.at("path").get<std::string>();
    } else {
        bad_config("graph: family must be one of \"er\", \"ba\", \"file\"");
    }
    return spec;
}

} // namespace

SimulationConfig load_simulation_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open config file");
    njson j;
    try {
        in >> j;
    } catch (const njson::exception& e) {
        throw ParseError(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_object())
        throw ConfigError(path + ": config must be a JSON object");
    check_keys(j,
               {"graph", "c", "mc_reps", "permutations", "alpha", "true_gc_reps", "master_seed",
                "threads"},
               "config");
    if (!j.contains("graph"))
        throw ConfigError(path + ": missing required field 'graph'");

    SimulationConfig cfg;
    cfg.graph = parse_graph_spec(j.at("graph"));
    cfg.c = opt_number(j, "c", 0.0, "config");
    cfg.mc_reps = opt_int(j, "mc_reps", cfg.mc_reps, "config");
    cfg.permutations = opt_int(j, "permutations", cfg.permutations, "config");
    cfg.alpha = opt_number(j, "alpha", cfg.alpha, "config");
    cfg.true_gc_reps = opt_int(j, "true_gc_reps", cfg.true_gc_reps, "config");
    cfg.master_seed = opt_uint(j, "master_seed", cfg.master_seed, "config");
    cfg.threads = static_cast<int>(opt_int(j, "threads", 0, "config"));
    return cfg;
}

} // namespace concord
