#include "concord/permutation.hpp"

#include "concord/errors.hpp"
#include "concord/numeric.hpp"
#include "concord/parallel.hpp"
#include "concord/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>

namespace concord {

namespace {

constexpr int kExactLimit = 8;
// Draws handed to a worker at a time; one scratch workspace per chunk.
constexpr std::size_t kDrawChunk = 64;

struct DrawWorkspace {
    std::vector<int> pi;
    std::vector<double> e_pi;
    std::vector<double> a_pi;
    std::vector<double> nbr_sum;
    std::vector<double> q;
    std::vector<double> q_bar;

    explicit DrawWorkspace(int n)
        : pi(static_cast<std::size_t>(n)), e_pi(static_cast<std::size_t>(n)),
          a_pi(static_cast<std::size_t>(n)), nbr_sum(static_cast<std::size_t>(n)),
          q(static_cast<std::size_t>(n)), q_bar(static_cast<std::size_t>(n)) {}
};

void fill_permutation(SplitRng& rng, std::span<int> pi) {
    std::iota(pi.begin(), pi.end(), 0);
    for (std::size_t i = pi.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(pi[i - 1], pi[j]);
    }
}

// The observed pipeline re-run on relabeled residuals. The graph quantities
// (neighborhoods, degree classes, two-neighborhoods) stay those of the
// original graph; only the residual attached to each vertex moves.
PermutationDraw evaluate_draw(const Graph& g, std::span<const double> e, std::span<const int> pi,
                              bool zero_gamma_c, DrawWorkspace& ws) {
    const int n = g.size();
    for (int i = 0; i < n; ++i)
        ws.e_pi[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])];

    KahanSum total_sum;
    for (int i = 0; i < n; ++i)
        total_sum.add(ws.e_pi[static_cast<std::size_t>(i)]);
    const double total = total_sum.value();

    KahanSum gamma_sum;
    for (int i = 0; i < n; ++i) {
        const auto nbrs = g.neighbors(i);
        double s = 0.0;
        for (const int j : nbrs)
            s += ws.e_pi[static_cast<std::size_t>(j)];
        ws.nbr_sum[static_cast<std::size_t>(i)] = s;
        ws.a_pi[static_cast<std::size_t>(i)] = nbrs.empty() ? 0.0 : s / static_cast<double>(nbrs.size());
        gamma_sum.add(ws.e_pi[static_cast<std::size_t>(i)] * ws.a_pi[static_cast<std::size_t>(i)]);
    }
    const double gamma_pi = gamma_sum.value() / static_cast<double>(n);

    double gamma_c_pi = 0.0;
    if (!zero_gamma_c) {
        KahanSum sum;
        for (int i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            const double rest = total - ws.e_pi[ui] - ws.nbr_sum[ui];
            sum.add(ws.e_pi[ui] * (rest / static_cast<double>(n - 1 - g.degree(i))));
        }
        gamma_c_pi = sum.value() / static_cast<double>(n);
    }

    PermutationDraw draw;
    draw.c_hat_pi = gamma_pi - gamma_c_pi;

    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        ws.q[ui] = ws.e_pi[ui] * (ws.a_pi[ui] - ws.e_pi[ui] * gamma_pi);
    }
    const int classes = g.degree_class_count();
    for (int c = 0; c < classes; ++c) {
        const auto members = g.degree_class_members(c);
        KahanSum sum;
        for (const int i : members)
            sum.add(ws.q[static_cast<std::size_t>(i)]);
        const double mean = sum.value() / static_cast<double>(members.size());
        for (const int i : members)
            ws.q_bar[static_cast<std::size_t>(i)] = mean;
    }

    const detail::SigmaPair sigma = detail::sigma_core(g, ws.q, ws.q_bar);
    const double plus = detail::select_sigma_plus2(sigma);
    if (plus > 0.0) {
        draw.sigma_plus_pi = std::sqrt(plus);
        draw.t_pi = std::sqrt(static_cast<double>(n)) * draw.c_hat_pi / draw.sigma_plus_pi;
    } else {
        draw.degenerate = true;
    }
    return draw;
}

std::vector<double> collect_stats(std::span<const PermutationDraw> draws) {
    std::vector<double> stats;
    stats.reserve(draws.size());
    for (const auto& d : draws)
        if (!d.degenerate)
            stats.push_back(d.t_pi);
    return stats;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("alpha must lie strictly between 0 and 1");
}

} // namespace

std::int64_t factorial(int n) {
    if (n < 0 || n > 20)
        throw ConfigError("factorial is only provided for 0 <= n <= 20");
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

std::vector<int> permutation_from_index(int n, std::uint64_t index) {
    if (n < 1 || n > 20)
        throw ConfigError("permutation unranking is only provided for 1 <= n <= 20");
    if (index >= static_cast<std::uint64_t>(factorial(n)))
        throw IndexError("permutation rank exceeds n! - 1");

    std::vector<std::uint64_t> fact(static_cast<std::size_t>(n), 1);
    for (int i = 1; i < n; ++i)
        fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(i);

    std::vector<int> avail(static_cast<std::size_t>(n));
    std::iota(avail.begin(), avail.end(), 0);
    std::vector<int> p;
    p.reserve(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        const std::uint64_t f = fact[static_cast<std::size_t>(i)];
        const auto d = static_cast<std::size_t>(index / f);
        index %= f;
        p.push_back(avail[d]);
        avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(d));
    }
    return p;
}

std::vector<int> permutation_for_draw(int n, std::uint64_t seed, std::int64_t draw_index) {
    if (n < 1)
        throw ConfigError("a permutation needs at least one element");
    if (draw_index < 0)
        throw ConfigError("draw index must be nonnegative");
    SplitRng rng(seed, streams::id(streams::kPermutation, static_cast<std::uint64_t>(draw_index)));
    std::vector<int> pi(static_cast<std::size_t>(n));
    fill_permutation(rng, pi);
    return pi;
}

std::vector<std::vector<int>> sample_permutations(int n, std::int64_t count, std::uint64_t seed) {
    if (count < 1)
        throw ConfigError("the number of permutations must be at least 1");
    std::vector<std::vector<int>> all;
    all.reserve(static_cast<std::size_t>(count));
    for (std::int64_t j = 0; j < count; ++j)
        all.push_back(permutation_for_draw(n, seed, j));
    return all;
}

PermutationDraw permutation_statistic(const Graph& g, std::span<const double> residuals,
                                      std::span<const int> pi, bool zero_gamma_c) {
    const int n = g.size();
    if (static_cast<int>(residuals.size()) != n || static_cast<int>(pi.size()) != n)
        throw ConfigError("residuals and permutation must both have one entry per vertex");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const int v : pi) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw ConfigError("index sequence is not a permutation of the vertex ids");
        seen[static_cast<std::size_t>(v)] = 1;
    }
    DrawWorkspace ws(n);
    return evaluate_draw(g, residuals, pi, zero_gamma_c, ws);
}

std::vector<PermutationDraw> permutation_draws(const Graph& g, std::span<const double> residuals,
                                               const InferenceOptions& opts) {
    const int n = g.size();
    if (static_cast<int>(residuals.size()) != n)
        throw ConfigError("residual vector length must match the number of vertices");

    std::int64_t count = 0;
    if (opts.exact) {
        if (n > kExactLimit)
            throw ConfigError("exact enumeration is limited to graphs with at most 8 vertices");
        count = factorial(n);
    } else {
        if (opts.permutations < 1)
            throw ConfigError("the number of permutations must be at least 1");
        count = opts.permutations;
    }

    // Materialize the shared two-neighborhood cache before fanning out.
    (void)g.two_neighborhood(0);

    std::vector<PermutationDraw> draws(static_cast<std::size_t>(count));
    const auto total = static_cast<std::size_t>(count);
    const std::size_t chunks = (total + kDrawChunk - 1) / kDrawChunk;
    parallel_for(
        chunks, opts.threads,
        [&](std::size_t chunk_idx) {
            DrawWorkspace ws(n);
            const std::size_t begin = chunk_idx * kDrawChunk;
            const std::size_t end = std::min(begin + kDrawChunk, total);
            for (std::size_t j = begin; j < end; ++j) {
                if (opts.exact) {
                    const auto pi = permutation_from_index(n, j);
                    std::copy(pi.begin(), pi.end(), ws.pi.begin());
                } else {
                    SplitRng rng(opts.seed, streams::id(streams::kPermutation, j));
                    fill_permutation(rng, ws.pi);
                }
                draws[j] = evaluate_draw(g, residuals, ws.pi, opts.zero_gamma_c, ws);
            }
        },
        1);
    return draws;
}

double critical_value(std::span<const double> stats, double alpha, Tail tail) {
    check_alpha(alpha);
    if (stats.empty())
        throw InferenceError("critical value requested from an empty statistic pool");

    std::vector<double> sorted(stats.begin(), stats.end());
    if (tail == Tail::two_sided)
        for (auto& s : sorted)
            s = std::abs(s);
    std::sort(sorted.begin(), sorted.end());

    // Smallest value whose empirical CDF strictly exceeds 1 - alpha: order
    // statistic k = floor((1 - alpha) B) + 1. The epsilon keeps an
    // integral (1 - alpha) B that rounding left a hair low from flooring
    // one step short.
    const auto b = static_cast<double>(sorted.size());
    auto k = static_cast<std::int64_t>(std::floor((1.0 - alpha) * b + 1e-9)) + 1;
    if (k > static_cast<std::int64_t>(sorted.size()))
        k = static_cast<std::int64_t>(sorted.size());
    return sorted[static_cast<std::size_t>(k - 1)];
}

std::pair<bool, double> test_positive_gc(double t1, std::span<const PermutationDraw> draws, double alpha) {
    const auto stats = collect_stats(draws);
    if (stats.empty())
        throw InferenceError("every permutation draw was degenerate; no reference distribution");
    const double c1 = critical_value(stats, alpha, Tail::one_sided);
    std::int64_t at_least = 0;
    for (const double s : stats)
        if (s >= t1)
            ++at_least;
    const double p = static_cast<double>(1 + at_least) / static_cast<double>(stats.size() + 1);
    return {t1 > c1, p};
}

InferenceResult confidence_interval(const ConcordanceEstimate& est, const VarianceEstimate& var,
                                    std::span<const PermutationDraw> draws, double alpha, int n) {
    check_alpha(alpha);
    if (n < 1)
        throw ConfigError("sample size must be positive");
    const auto stats = collect_stats(draws);
    if (stats.empty())
        throw InferenceError("every permutation draw was degenerate; no reference distribution");

    InferenceResult res;
    res.method = "permutation";
    res.alpha = alpha;
    res.n = n;
    res.n_permutations = static_cast<std::int64_t>(draws.size());
    res.degenerate_draws = res.n_permutations - static_cast<std::int64_t>(stats.size());
    res.c_hat = est.c_hat;
    res.sigma_plus = std::sqrt(var.sigma2_plus);
    res.t_obs = t_statistic(est.c_hat, 0.0, res.sigma_plus, n);
    res.critical_value = critical_value(stats, alpha, Tail::two_sided);
    res.critical_value_one_sided = critical_value(stats, alpha, Tail::one_sided);
    const double halfwidth = res.critical_value * res.sigma_plus / std::sqrt(static_cast<double>(n));
    res.ci_lower = est.c_hat - halfwidth;
    res.ci_upper = est.c_hat + halfwidth;
    const auto [reject, p] = test_positive_gc(res.t_obs, draws, alpha);
    res.reject_positive = reject;
    res.p_value = p;
    return res;
}

InferenceResult asymptotic_ci(const ConcordanceEstimate& est, const VarianceEstimate& var, double alpha,
                              int n) {
    check_alpha(alpha);
    if (n < 1)
        throw ConfigError("sample size must be positive");
    if (!(var.sigma2_plus > 0.0))
        throw DegenerateVarianceError("variance scale is zero; no asymptotic interval exists");

    InferenceResult res;
    res.method = "asymptotic";
    res.alpha = alpha;
    res.n = n;
    res.c_hat = est.c_hat;
    res.sigma_plus = std::sqrt(var.sigma2_plus);
    res.t_obs = t_statistic(est.c_hat, 0.0, res.sigma_plus, n);
    res.critical_value = normal_quantile(1.0 - alpha / 2.0);
    res.critical_value_one_sided = normal_quantile(1.0 - alpha);
    const double halfwidth = res.critical_value * res.sigma_plus / std::sqrt(static_cast<double>(n));
    res.ci_lower = est.c_hat - halfwidth;
    res.ci_upper = est.c_hat + halfwidth;
    res.p_value = 0.5 * std::erfc(res.t_obs / std::numbers::sqrt2);
    res.reject_positive = res.t_obs > res.critical_value_one_sided;
    return res;
}

InferenceResult run_inference(const Graph& g, std::span<const double> y, const InferenceOptions& opts) {
    check_alpha(opts.alpha);
    const ConcordanceEstimate est = estimate_gc(g, y, EstimatorOptions{opts.zero_gamma_c});
    const auto q = q_values(g, est);
    const auto q_bar = degree_class_means(g, q);
    const VarianceEstimate var = variance_estimate(g, q, q_bar);
    const auto draws = permutation_draws(g, est.residuals, opts);
    InferenceResult res = confidence_interval(est, var, draws, opts.alpha, g.size());
    res.seed = opts.seed;
    res.exact = opts.exact;
    return res;
}

} // namespace concord
