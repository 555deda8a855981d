#pragma once

#include "concord/graph.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace concord {

// A graph with per-vertex data aligned to its dense ids. Exactly one of
// `outcomes` and `types` is populated, depending on which loader built it;
// the external-label mapping lives on the graph itself.
struct Dataset {
    Graph graph;
    std::vector<double> outcomes;
    std::vector<std::string> types;
};

struct LoadOptions {
    std::string vertex_path; // optional vertex list declaring isolated vertices
};

// Edge-list file: one edge per line, two whitespace- or comma-separated
// tokens; lines whose first non-blank character is '#' are ignored.
std::vector<std::pair<std::string, std::string>> load_edge_list(const std::string& path);

// Vertex-list file: one label per line, same comment rule.
std::vector<std::string> load_vertex_list(const std::string& path);

Graph load_graph(const std::string& graph_path, const std::string& vertex_path = "");

// CSV with a header row, columns (node_label, value). Values must be finite.
std::vector<std::pair<std::string, double>> load_outcome_csv(const std::string& path);

// CSV with a header row, columns (node_label, type_label).
std::vector<std::pair<std::string, std::string>> load_type_csv(const std::string& path);

// Rows -> per-vertex vector in graph id order. Unknown labels, duplicate
// rows, and vertices without a row all raise AlignmentError listing the
// first ten offenders of each kind.
std::vector<double> align_outcomes(const Graph& g, std::span<const std::pair<std::string, double>> rows);
std::vector<std::string> align_types(const Graph& g,
                                     std::span<const std::pair<std::string, std::string>> rows);

Dataset load_dataset(const std::string& graph_path, const std::string& outcome_path,
                     const LoadOptions& opts = {});
Dataset load_dataset_with_types(const std::string& graph_path, const std::string& type_path,
                                const LoadOptions& opts = {});

// Atomically-ish write: to a temp file in the target directory, then rename.
void write_text_file(const std::string& path, const std::string& content);

} // namespace concord
