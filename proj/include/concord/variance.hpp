#pragma once

#include "concord/concordance.hpp"
#include "concord/graph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace concord {

// Dependency-graph variance pieces for the studentized statistic.
struct VarianceEstimate {
    double sigma2 = 0.0;          // two-neighborhood estimator, may be <= 0
    double sigma2_fallback = 0.0; // mean squared centered q, always >= 0
    double sigma2_plus = 0.0;     // sigma2 if positive, else the fallback
    std::vector<double> q_hat;
    std::vector<double> q_bar; // degree-class means of q_hat
};

// q_i = residual_i * (a_hat_i - residual_i * gamma_hat).
std::vector<double> q_values(const Graph& g, const ConcordanceEstimate& est);

// Mean of q over each vertex's degree class (the class always contains the
// vertex itself, so every divisor is positive).
std::vector<double> degree_class_means(const Graph& g, std::span<const double> q_hat);

// Assembles sigma2, the nonnegative fallback, and the positive-part scale.
// Throws DegenerateVarianceError when the positive-part scale is zero.
VarianceEstimate variance_estimate(const Graph& g, std::span<const double> q_hat,
                                   std::span<const double> q_bar);

// T = sqrt(n) * (c_hat - c_null) / sigma_plus.
double t_statistic(double c_hat, double c_null, double sigma_plus, std::int64_t n);

namespace detail {
struct SigmaPair {
    double sigma2;
    double sigma1; // fallback, >= 0
};
// Shared non-throwing core; the permutation engine flags degeneracy
// instead of throwing.
SigmaPair sigma_core(const Graph& g, std::span<const double> q_hat, std::span<const double> q_bar);

// "sigma2 if positive" with positivity judged against the fallback's scale:
// on graphs of diameter <= 2 the two-neighborhood sum cancels to zero in
// real arithmetic, and the leftover rounding noise must not be mistaken
// for a usable scale.
inline double select_sigma_plus2(SigmaPair p) {
    return p.sigma2 > 1e-12 * p.sigma1 ? p.sigma2 : p.sigma1;
}
} // namespace detail

} // namespace concord
