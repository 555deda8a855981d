#pragma once

#include "concord/concordance.hpp"
#include "concord/dgp.hpp"
#include "concord/graph.hpp"
#include "concord/permutation.hpp"
#include "concord/simulation.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace concord {

// Emitters produce byte-stable text for a given value: ordered keys,
// shortest round-trip number rendering, '\n' endings. Each JSON document
// carries a versioned "schema" tag.

std::string inference_json(const InferenceResult& r);
std::string inference_csv(const InferenceResult& r);

std::string estimate_json(const Graph& g, const ConcordanceEstimate& est);
std::string estimate_csv(const Graph& g, const ConcordanceEstimate& est);

std::string homophily_json(const HomophilyEstimate& h, const std::string& target, int n);
std::string homophily_csv(const HomophilyEstimate& h, const std::string& target, int n);

std::string diagnostics_json(const Graph& g, double warn_threshold);
std::string diagnostics_csv(const Graph& g, double warn_threshold);

std::string true_gc_json(const TrueGcResult& r, double c, std::uint64_t seed);
std::string true_gc_csv(const TrueGcResult& r, double c, std::uint64_t seed);

std::string simulation_json(const SimulationReport& r);
std::string simulation_csv(const SimulationReport& r);

// gen-graph sidecar: the generating config plus realized degree stats.
std::string graph_sidecar_json(const Graph& g, const GraphSpec& spec, std::uint64_t seed);

// The writable counterparts of the loaders in io.hpp. The vertex list
// names every vertex so isolated ones survive a round-trip and ids keep
// their order when the two files are loaded together.
std::string edge_list_text(const Graph& g);
std::string vertex_list_text(const Graph& g);
std::string outcomes_csv_text(const Graph& g, std::span<const double> y);

// Compact one-token description, e.g. "er(n=300,lambda=1)".
std::string graph_spec_text(const GraphSpec& spec);

// JSON config file for the simulate command. Unknown keys are rejected.
SimulationConfig load_simulation_config(const std::string& path);

} // namespace concord
