#include "concord/random_graphs.hpp"

#include "concord/errors.hpp"
#include "concord/rng.hpp"

#include <cstddef>
#include <iostream>
#include <utility>
#include <vector>

namespace concord {

namespace {

// Draws that fail graph validation (complete graph, saturated vertex) are
// regenerated from a fresh substream. The probability is negligible at
// study sizes, so a run that exhausts the cap indicates a config whose
// draws are essentially always invalid; the last error is rethrown.
constexpr int kMaxAttempts = 64;

void sample_pair_edges(SplitRng& rng, int k, double p, std::vector<std::pair<int, int>>& out) {
    if (p <= 0.0)
        return;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (rng.next_double() < p)
                out.emplace_back(i, j);
}

} // namespace

Graph erdos_renyi(const ERConfig& cfg) {
    if (cfg.n < 2)
        throw ConfigError("Erdos-Renyi generation needs at least 2 vertices");
    if (cfg.lambda < 0.0)
        throw ConfigError("expected degree lambda must be nonnegative");
    if (cfg.lambda > static_cast<double>(cfg.n - 1))
        throw ConfigError("expected degree lambda cannot exceed n - 1");
    const double p = cfg.lambda / static_cast<double>(cfg.n - 1);

    for (int attempt = 0;; ++attempt) {
        SplitRng rng(cfg.seed, streams::id(streams::kErGraph, static_cast<std::uint64_t>(attempt)));
        std::vector<std::pair<int, int>> edges;
        edges.reserve(static_cast<std::size_t>(cfg.lambda * cfg.n / 2.0) + 16);
        sample_pair_edges(rng, cfg.n, p, edges);
        try {
            return Graph::from_edge_ids(cfg.n, edges);
        } catch (const GraphError& err) {
            if (attempt + 1 >= kMaxAttempts)
                throw;
            std::cerr << "erdos_renyi: rejected draw " << attempt << " (" << err.what() << ")\n";
        }
    }
}

Graph barabasi_albert(const BAConfig& cfg) {
    const int s = cfg.seed_graph_size;
    if (s < 2)
        throw ConfigError("the seed graph needs at least 2 vertices");
    if (cfg.n <= s)
        throw ConfigError("total size must exceed the seed graph size");
    if (cfg.m < 1 || cfg.m > s)
        throw ConfigError("attachment count m must lie in [1, seed_graph_size]");
    if (cfg.seed_lambda < 0.0 || cfg.seed_lambda > static_cast<double>(s - 1))
        throw ConfigError("seed-graph lambda must lie in [0, seed_graph_size - 1]");
    const double p = cfg.seed_lambda / static_cast<double>(s - 1);

    for (int attempt = 0;; ++attempt) {
        SplitRng rng(cfg.seed, streams::id(streams::kBaGraph, static_cast<std::uint64_t>(attempt)));
        std::vector<std::pair<int, int>> edges;
        edges.reserve(static_cast<std::size_t>(s) + static_cast<std::size_t>(cfg.n - s) * static_cast<std::size_t>(cfg.m));
        sample_pair_edges(rng, s, p, edges);

        std::vector<std::int64_t> deg(static_cast<std::size_t>(cfg.n), 0);
        for (const auto& [a, b] : edges) {
            ++deg[static_cast<std::size_t>(a)];
            ++deg[static_cast<std::size_t>(b)];
        }

        std::vector<int> picked;
        picked.reserve(static_cast<std::size_t>(cfg.m));
        std::vector<char> is_picked(static_cast<std::size_t>(cfg.n), 0);
        for (int v = s; v < cfg.n; ++v) {
            picked.clear();
            // Degrees are frozen at the arrival's start; the m targets are
            // distinct, so each pick removes its weight from the pool.
            std::int64_t weight = 0;
            for (int u = 0; u < v; ++u)
                weight += deg[static_cast<std::size_t>(u)];

            for (int k = 0; k < cfg.m; ++k) {
                int chosen = -1;
                if (weight > 0) {
                    std::uint64_t t = rng.next_below(static_cast<std::uint64_t>(weight));
                    for (int u = 0; u < v; ++u) {
                        if (is_picked[static_cast<std::size_t>(u)])
                            continue;
                        const auto w = static_cast<std::uint64_t>(deg[static_cast<std::size_t>(u)]);
                        if (t < w) {
                            chosen = u;
                            break;
                        }
                        t -= w;
                    }
                } else {
                    // Every remaining candidate has degree zero.
                    std::uint64_t t = rng.next_below(static_cast<std::uint64_t>(v - k));
                    for (int u = 0; u < v; ++u) {
                        if (is_picked[static_cast<std::size_t>(u)])
                            continue;
                        if (t == 0) {
                            chosen = u;
                            break;
                        }
                        --t;
                    }
                }
                is_picked[static_cast<std::size_t>(chosen)] = 1;
                picked.push_back(chosen);
                weight -= deg[static_cast<std::size_t>(chosen)];
            }

            for (const int u : picked) {
                edges.emplace_back(u, v);
                is_picked[static_cast<std::size_t>(u)] = 0;
            }
            for (const int u : picked)
                ++deg[static_cast<std::size_t>(u)];
            deg[static_cast<std::size_t>(v)] += cfg.m;
        }

        try {
            return Graph::from_edge_ids(cfg.n, edges);
        } catch (const GraphError& err) {
            if (attempt + 1 >= kMaxAttempts)
                throw;
            std::cerr << "barabasi_albert: rejected draw " << attempt << " (" << err.what() << ")\n";
        }
    }
}

} // namespace concord
