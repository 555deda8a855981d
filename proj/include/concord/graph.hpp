#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace concord {

// Summary of the degree structure, including the two diagnostics that
// gauge denseness: the average inverse degree and the maximum 2-degree.
struct DegreeStats {
    int d_mx = 0;                 // maximum degree
    double d_av = 0.0;            // average degree
    double d_avi = 0.0;           // (1/n) * sum over non-isolated i of 1/degree(i)
    double d_med = 0.0;           // median degree
    int d_mx2 = 0;                // maximum 2-degree: max_i |two_neighborhood(i)|
    double denseness_ratio = 0.0; // d_mx2^4 / n
};

namespace detail {
struct GraphData;
}

// Immutable undirected simple graph. Vertices are dense ids 0..n-1 with the
// original string labels retained for reporting. Construction rejects graphs
// the estimators cannot handle: self-loops, complete graphs, and vertices
// adjacent to every other vertex (the non-neighbor average divides by
// n - 1 - degree). Copies share state; safe to use from many threads.
class Graph {
public:
    // Builds from labeled edges. Labels get ids in first-appearance order,
    // vertex list first. Duplicate and reversed edges collapse silently
    // (the count is kept); a (a,a) pair throws SelfLoopError. Isolated
    // vertices exist only if declared through the vertex list.
    static Graph from_edges(std::span<const std::pair<std::string, std::string>> edges,
                            std::span<const std::string> vertices = {});

    // Builds from dense-id edges; labels default to the decimal ids.
    static Graph from_edge_ids(int n, std::span<const std::pair<int, int>> edges);

    int size() const;
    std::int64_t edge_count() const;
    std::size_t duplicate_edges_dropped() const;

    int degree(int i) const;
    std::span<const int> neighbors(int i) const;
    bool adjacent(int i, int j) const;

    // Vertices within two edges of i, excluding i itself (includes direct
    // neighbors). Computed once per graph on first use, then cached.
    std::span<const int> two_neighborhood(int i) const;

    // S_n(i): all vertices whose degree equals degree(i), including i.
    std::span<const int> degree_class(int i) const;
    int degree_class_id(int i) const;
    int degree_class_count() const;
    std::span<const int> degree_class_members(int class_id) const;

    // Unique edges (i, j) with i < j in lexicographic order.
    std::span<const std::pair<int, int>> edges() const;

    const std::string& label(int i) const;
    const std::vector<std::string>& labels() const;
    // Returns the vertex id for a label, or -1 if unknown.
    int find_vertex(const std::string& label) const;

    DegreeStats degree_stats() const;

private:
    explicit Graph(std::shared_ptr<const detail::GraphData> data) : data_(std::move(data)) {}
    std::shared_ptr<const detail::GraphData> data_;
};

} // namespace concord
