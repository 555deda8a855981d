#include "concord/io.hpp"

#include "concord/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

namespace concord {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::string s = line;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t)
        toks.push_back(t);
    return toks;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path + ": cannot open file");
    return in;
}

std::string where(const std::string& path, std::size_t line_no) {
    return path + ":" + std::to_string(line_no) + ": ";
}

// "a, b, c (+4 more)" with at most `cap` names spelled out.
std::string joined_sample(const std::vector<std::string>& names, std::size_t cap = 10) {
    std::string out;
    const std::size_t shown = std::min(cap, names.size());
    for (std::size_t i = 0; i < shown; ++i) {
        if (i)
            out += ", ";
        out += names[i];
    }
    if (names.size() > shown)
        out += " (+" + std::to_string(names.size() - shown) + " more)";
    return out;
}

} // namespace

std::vector<std::pair<std::string, std::string>> load_edge_list(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        const auto toks = split_tokens(t);
        if (toks.size() != 2)
            throw ParseError(where(path, line_no) + "expected two endpoint tokens, found " +
                             std::to_string(toks.size()));
        edges.emplace_back(toks[0], toks[1]);
    }
    return edges;
}

std::vector<std::string> load_vertex_list(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<std::string> vertices;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        const auto toks = split_tokens(t);
        if (toks.size() != 1)
            throw ParseError(where(path, line_no) + "expected one vertex label per line");
        vertices.push_back(toks[0]);
    }
    return vertices;
}

Graph load_graph(const std::string& graph_path, const std::string& vertex_path) {
    const auto edges = load_edge_list(graph_path);
    std::vector<std::string> vertices;
    if (!vertex_path.empty())
        vertices = load_vertex_list(vertex_path);
    return Graph::from_edges(edges, vertices);
}

std::vector<std::pair<std::string, double>> load_outcome_csv(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<std::pair<std::string, double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        const auto fields = split_csv(t);
        if (fields.size() != 2)
            throw ParseError(where(path, line_no) + "expected two comma-separated columns");
        if (!header_seen) {
            header_seen = true;
            double probe;
            if (parse_double(fields[1], probe))
                throw ParseError(where(path, line_no) +
                                 "first row must be a header, found a numeric value");
            continue;
        }
        if (fields[0].empty())
            throw ParseError(where(path, line_no) + "empty node label");
        double value;
        if (!parse_double(fields[1], value))
            throw ParseError(where(path, line_no) + "cannot parse value '" + fields[1] + "'");
        if (!std::isfinite(value))
            throw ParseError(where(path, line_no) + "value must be finite");
        rows.emplace_back(fields[0], value);
    }
    if (!header_seen)
        throw ParseError(path + ": no header row found");
    return rows;
}

std::vector<std::pair<std::string, std::string>> load_type_csv(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<std::pair<std::string, std::string>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        const auto fields = split_csv(t);
        if (fields.size() != 2)
            throw ParseError(where(path, line_no) + "expected two comma-separated columns");
        if (!header_seen) { // type labels are free-form, so the first row is always the header
            header_seen = true;
            continue;
        }
        if (fields[0].empty())
            throw ParseError(where(path, line_no) + "empty node label");
        if (fields[1].empty())
            throw ParseError(where(path, line_no) + "empty type label");
        rows.emplace_back(fields[0], fields[1]);
    }
    if (!header_seen)
        throw ParseError(path + ": no header row found");
    return rows;
}

namespace {

template <typename Value>
std::vector<Value> align_rows(const Graph& g, std::span<const std::pair<std::string, Value>> rows,
                              const char* what) {
    const int n = g.size();
    std::vector<Value> out(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::string> unknown, duplicate, missing;

    for (const auto& [label, value] : rows) {
        const int id = g.find_vertex(label);
        if (id < 0) {
            unknown.push_back(label);
            continue;
        }
        if (seen[static_cast<std::size_t>(id)]) {
            duplicate.push_back(label);
            continue;
        }
        seen[static_cast<std::size_t>(id)] = 1;
        out[static_cast<std::size_t>(id)] = value;
    }
    for (int i = 0; i < n; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            missing.push_back(g.label(i));

    if (!unknown.empty() || !duplicate.empty() || !missing.empty()) {
        std::string msg = std::string(what) + " rows do not match the graph:";
        if (!unknown.empty())
            msg += " unknown labels: " + joined_sample(unknown) + ";";
        if (!duplicate.empty())
            msg += " duplicate rows: " + joined_sample(duplicate) + ";";
        if (!missing.empty())
            msg += " vertices without a row: " + joined_sample(missing) + ";";
        msg.pop_back();
        throw AlignmentError(msg);
    }
    return out;
}

void log_summary(const Graph& g) {
    const DegreeStats stats = g.degree_stats();
    std::cerr << "loaded graph: n=" << g.size() << " edges=" << g.edge_count()
              << " max_degree=" << stats.d_mx << " avg_degree=" << stats.d_av << "\n";
}

} // namespace

std::vector<double> align_outcomes(const Graph& g, std::span<const std::pair<std::string, double>> rows) {
    return align_rows<double>(g, rows, "outcome");
}

std::vector<std::string> align_types(const Graph& g,
                                     std::span<const std::pair<std::string, std::string>> rows) {
    return align_rows<std::string>(g, rows, "type");
}

Dataset load_dataset(const std::string& graph_path, const std::string& outcome_path,
                     const LoadOptions& opts) {
    Dataset ds{load_graph(graph_path, opts.vertex_path), {}, {}};
    const auto rows = load_outcome_csv(outcome_path);
    ds.outcomes = align_outcomes(ds.graph, rows);
    log_summary(ds.graph);
    return ds;
}

Dataset load_dataset_with_types(const std::string& graph_path, const std::string& type_path,
                                const LoadOptions& opts) {
    Dataset ds{load_graph(graph_path, opts.vertex_path), {}, {}};
    const auto rows = load_type_csv(type_path);
    ds.types = align_types(ds.graph, rows);
    log_summary(ds.graph);
    return ds;
}

void write_text_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ParseError(tmp.string() + ": cannot open for writing");
        out << content;
        if (!out)
            throw ParseError(tmp.string() + ": write failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw ParseError(path + ": cannot replace file: " + ec.message());
}

} // namespace concord
