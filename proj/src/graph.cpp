#include "concord/graph.hpp"

#include "concord/errors.hpp"
#include "concord/numeric.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace concord {
namespace detail {

struct GraphData {
    int n = 0;
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> label_to_id;
    std::vector<std::pair<int, int>> edges; // unique, first < second, lex sorted
    std::size_t duplicates_dropped = 0;

    std::vector<std::int64_t> adj_offsets; // n + 1
    std::vector<int> adj;                  // sorted neighbor ids

    std::vector<int> class_of_vertex;       // vertex -> degree class id
    std::vector<std::int64_t> class_offsets; // class id -> [begin, end) into class_members
    std::vector<int> class_members;          // vertices grouped by degree

    mutable std::once_flag two_once;
    mutable std::vector<std::int64_t> two_offsets;
    mutable std::vector<int> two_nbr;

    int degree(int i) const { return static_cast<int>(adj_offsets[i + 1] - adj_offsets[i]); }

    void build_two_neighborhoods() const {
        two_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
        std::vector<int> stamp(static_cast<std::size_t>(n), -1);
        std::vector<int> scratch;
        std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            scratch.clear();
            for (std::int64_t a = adj_offsets[i]; a < adj_offsets[i + 1]; ++a) {
                const int j = adj[a];
                if (stamp[j] != i && j != i) {
                    stamp[j] = i;
                    scratch.push_back(j);
                }
                for (std::int64_t b = adj_offsets[j]; b < adj_offsets[j + 1]; ++b) {
                    const int k = adj[b];
                    if (stamp[k] != i && k != i) {
                        stamp[k] = i;
                        scratch.push_back(k);
                    }
                }
            }
            std::sort(scratch.begin(), scratch.end());
            rows[i] = scratch;
            two_offsets[i + 1] = two_offsets[i] + static_cast<std::int64_t>(scratch.size());
        }
        two_nbr.resize(static_cast<std::size_t>(two_offsets[n]));
        for (int i = 0; i < n; ++i)
            std::copy(rows[i].begin(), rows[i].end(), two_nbr.begin() + two_offsets[i]);
    }

    void ensure_two_neighborhoods() const {
        std::call_once(two_once, [this] { build_two_neighborhoods(); });
    }
};

namespace {

std::shared_ptr<const GraphData> finish_build(std::shared_ptr<GraphData> d,
                                              std::vector<std::pair<int, int>> raw_edges) {
    const int n = d->n;
    if (n == 0)
        throw EmptyGraphError("graph has no vertices: provide edges or an explicit vertex list");

    std::sort(raw_edges.begin(), raw_edges.end());
    const auto last = std::unique(raw_edges.begin(), raw_edges.end());
    d->duplicates_dropped += static_cast<std::size_t>(std::distance(last, raw_edges.end()));
    raw_edges.erase(last, raw_edges.end());
    d->edges = std::move(raw_edges);

    d->adj_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [a, b] : d->edges) {
        ++d->adj_offsets[a + 1];
        ++d->adj_offsets[b + 1];
    }
    for (int i = 0; i < n; ++i)
        d->adj_offsets[i + 1] += d->adj_offsets[i];
    d->adj.resize(static_cast<std::size_t>(d->adj_offsets[n]));
    std::vector<std::int64_t> cursor(d->adj_offsets.begin(), d->adj_offsets.end() - 1);
    for (const auto& [a, b] : d->edges) {
        d->adj[cursor[a]++] = b;
        d->adj[cursor[b]++] = a;
    }
    for (int i = 0; i < n; ++i)
        std::sort(d->adj.begin() + d->adj_offsets[i], d->adj.begin() + d->adj_offsets[i + 1]);

    const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
    if (static_cast<std::int64_t>(d->edges.size()) >= pairs)
        throw CompleteGraphError("graph is complete: estimators need at least one non-adjacent pair (n=" +
                                 std::to_string(n) + ")");
    for (int i = 0; i < n; ++i)
        if (d->degree(i) >= n - 1)
            throw SaturatedVertexError("vertex '" + d->labels[i] +
                                       "' is adjacent to every other vertex; the non-neighbor average is undefined");

    // Degree classes, keyed by ascending degree; members ascend within a class.
    std::vector<int> degs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        degs[i] = d->degree(i);
    std::vector<int> distinct(degs);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const int n_classes = static_cast<int>(distinct.size());

    d->class_of_vertex.resize(static_cast<std::size_t>(n));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n_classes), 0);
    for (int i = 0; i < n; ++i) {
        const int c = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), degs[i]) -
                                       distinct.begin());
        d->class_of_vertex[i] = c;
        ++counts[c];
    }
    d->class_offsets.assign(static_cast<std::size_t>(n_classes) + 1, 0);
    for (int c = 0; c < n_classes; ++c)
        d->class_offsets[c + 1] = d->class_offsets[c] + counts[c];
    d->class_members.resize(static_cast<std::size_t>(n));
    std::vector<std::int64_t> ccur(d->class_offsets.begin(), d->class_offsets.end() - 1);
    for (int i = 0; i < n; ++i)
        d->class_members[ccur[d->class_of_vertex[i]]++] = i;

    return d;
}

} // namespace
} // namespace detail

Graph Graph::from_edges(std::span<const std::pair<std::string, std::string>> edges,
                        std::span<const std::string> vertices) {
    auto d = std::make_shared<detail::GraphData>();
    auto intern = [&](const std::string& label) {
        auto [it, inserted] = d->label_to_id.emplace(label, static_cast<int>(d->labels.size()));
        if (inserted)
            d->labels.push_back(label);
        return it->second;
    };
    for (const auto& v : vertices)
        intern(v);
    std::vector<std::pair<int, int>> ids;
    ids.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a == b)
            throw SelfLoopError("self-loop on vertex '" + a + "' is not allowed");
        const int ia = intern(a);
        const int ib = intern(b);
        ids.emplace_back(std::min(ia, ib), std::max(ia, ib));
    }
    d->n = static_cast<int>(d->labels.size());
    return Graph(detail::finish_build(std::move(d), std::move(ids)));
}

Graph Graph::from_edge_ids(int n, std::span<const std::pair<int, int>> edges) {
    auto d = std::make_shared<detail::GraphData>();
    d->n = n;
    d->labels.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) {
        d->labels.push_back(std::to_string(i));
        d->label_to_id.emplace(d->labels.back(), i);
    }
    std::vector<std::pair<int, int>> ids;
    ids.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw IndexError("edge endpoint out of range: (" + std::to_string(a) + ", " + std::to_string(b) +
                             ") with n=" + std::to_string(n));
        if (a == b)
            throw SelfLoopError("self-loop on vertex " + std::to_string(a) + " is not allowed");
        ids.emplace_back(std::min(a, b), std::max(a, b));
    }
    return Graph(detail::finish_build(std::move(d), std::move(ids)));
}

int Graph::size() const { return data_->n; }

std::int64_t Graph::edge_count() const { return static_cast<std::int64_t>(data_->edges.size()); }

std::size_t Graph::duplicate_edges_dropped() const { return data_->duplicates_dropped; }

int Graph::degree(int i) const { return data_->degree(i); }

std::span<const int> Graph::neighbors(int i) const {
    const auto& d = *data_;
    return {d.adj.data() + d.adj_offsets[i], static_cast<std::size_t>(d.adj_offsets[i + 1] - d.adj_offsets[i])};
}

bool Graph::adjacent(int i, int j) const {
    const auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), j);
}

std::span<const int> Graph::two_neighborhood(int i) const {
    if (i < 0 || i >= data_->n)
        throw IndexError("vertex id " + std::to_string(i) + " out of range [0, " + std::to_string(data_->n) + ")");
    data_->ensure_two_neighborhoods();
    const auto& d = *data_;
    return {d.two_nbr.data() + d.two_offsets[i], static_cast<std::size_t>(d.two_offsets[i + 1] - d.two_offsets[i])};
}

std::span<const int> Graph::degree_class(int i) const { return degree_class_members(data_->class_of_vertex[i]); }

int Graph::degree_class_id(int i) const { return data_->class_of_vertex[i]; }

int Graph::degree_class_count() const { return static_cast<int>(data_->class_offsets.size()) - 1; }

std::span<const int> Graph::degree_class_members(int class_id) const {
    const auto& d = *data_;
    return {d.class_members.data() + d.class_offsets[class_id],
            static_cast<std::size_t>(d.class_offsets[class_id + 1] - d.class_offsets[class_id])};
}

std::span<const std::pair<int, int>> Graph::edges() const { return data_->edges; }

const std::string& Graph::label(int i) const { return data_->labels[i]; }

const std::vector<std::string>& Graph::labels() const { return data_->labels; }

int Graph::find_vertex(const std::string& label) const {
    const auto it = data_->label_to_id.find(label);
    return it == data_->label_to_id.end() ? -1 : it->second;
}

DegreeStats Graph::degree_stats() const {
    const int n = data_->n;
    DegreeStats s;
    std::vector<int> degs(static_cast<std::size_t>(n));
    KahanSum inv;
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
        const int d = degree(i);
        degs[i] = d;
        total += d;
        if (d >= 1)
            inv.add(1.0 / d);
        s.d_mx = std::max(s.d_mx, d);
    }
    s.d_av = static_cast<double>(total) / n;
    s.d_avi = inv.value() / n;
    std::sort(degs.begin(), degs.end());
    s.d_med = n % 2 == 1 ? degs[n / 2] : 0.5 * (degs[n / 2 - 1] + degs[n / 2]);
    data_->ensure_two_neighborhoods();
    for (int i = 0; i < n; ++i) {
        const auto len = static_cast<int>(data_->two_offsets[i + 1] - data_->two_offsets[i]);
        s.d_mx2 = std::max(s.d_mx2, len);
    }
    const double d2 = static_cast<double>(s.d_mx2);
    s.denseness_ratio = d2 * d2 * d2 * d2 / n;
    return s;
}

} // namespace concord
