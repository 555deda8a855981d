#pragma once

#include "concord/concordance.hpp"
#include "concord/graph.hpp"
#include "concord/variance.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace concord {

enum class Tail { two_sided, one_sided };

// One relabeling of the residuals pushed through the full statistic.
struct PermutationDraw {
    double t_pi = 0.0;         // sqrt(n) * c_hat_pi / sigma_plus_pi (not centered)
    double c_hat_pi = 0.0;     // concordance estimate under the relabeling
    double sigma_plus_pi = 0.0; // scale (standard-deviation units)
    bool degenerate = false;   // scale collapsed to zero; excluded from quantiles
};

struct InferenceOptions {
    double alpha = 0.05;
    std::int64_t permutations = 1000;
    std::uint64_t seed = 1;
    bool exact = false; // enumerate all n! relabelings (n <= 8)
    bool zero_gamma_c = false;
    int threads = 0; // 0 = hardware concurrency
};

struct InferenceResult {
    double c_hat = 0.0;
    double sigma_plus = 0.0; // standard-deviation units
    double t_obs = 0.0;      // studentized statistic at c_null = 0
    double critical_value = 0.0;           // two-sided permutation quantile of |T_pi|
    double critical_value_one_sided = 0.0; // one-sided quantile of T_pi
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    double p_value = 1.0; // one-sided randomization p-value, in (0, 1]
    bool reject_positive = false;
    double alpha = 0.05;
    std::int64_t n_permutations = 0; // draws evaluated, degenerate ones included
    std::int64_t degenerate_draws = 0;
    std::uint64_t seed = 0;
    int n = 0;
    bool exact = false;
    std::string method; // "permutation" or "asymptotic"
};

// The uniform permutation used for a given draw index; the engine evaluates
// exactly this relabeling, so sampled pools can be reproduced externally.
std::vector<int> permutation_for_draw(int n, std::uint64_t seed, std::int64_t draw_index);

// B independent uniform permutations of {0..n-1} (Fisher-Yates per draw).
std::vector<std::vector<int>> sample_permutations(int n, std::int64_t count, std::uint64_t seed);

// Lexicographic unranking: index in [0, n!) -> permutation.
std::vector<int> permutation_from_index(int n, std::uint64_t index);

std::int64_t factorial(int n);

// Full statistic under one relabeling of the original standardized
// residuals (do not re-standardize: relabeling preserves the moments).
// Degeneracy is flagged, not thrown.
PermutationDraw permutation_statistic(const Graph& g, std::span<const double> residuals,
                                      std::span<const int> pi, bool zero_gamma_c = false);

// Sampled (or exact) pool of draws; deterministic for any thread count.
std::vector<PermutationDraw> permutation_draws(const Graph& g, std::span<const double> residuals,
                                               const InferenceOptions& opts);

// Smallest order statistic whose empirical CDF strictly exceeds 1 - alpha.
// Two-sided takes |stats| first. Throws InferenceError on an empty pool.
double critical_value(std::span<const double> stats, double alpha, Tail tail);

// Permutation confidence interval around c_hat with halfwidth
// critical_value * sigma_plus / sqrt(n); also fills the one-sided pieces.
InferenceResult confidence_interval(const ConcordanceEstimate& est, const VarianceEstimate& var,
                                    std::span<const PermutationDraw> draws, double alpha, int n);

// One-sided test of positive concordance: reject iff t1 exceeds the
// one-sided critical value; p-value is (1 + #{t_pi >= t1}) / (B + 1).
std::pair<bool, double> test_positive_gc(double t1, std::span<const PermutationDraw> draws, double alpha);

// Normal-quantile comparison interval: c_hat +/- z_{1-alpha/2} sigma_plus / sqrt(n).
InferenceResult asymptotic_ci(const ConcordanceEstimate& est, const VarianceEstimate& var, double alpha,
                              int n);

// estimate -> variance -> permutation pool -> interval and one-sided test.
InferenceResult run_inference(const Graph& g, std::span<const double> y, const InferenceOptions& opts = {});

} // namespace concord
