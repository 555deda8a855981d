#pragma once

#include "concord/graph.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace concord {

struct EstimatorOptions {
    // Dependency-graph mode: treat the non-neighbor term as exactly zero,
    // so c_hat = gamma_hat. The default keeps the estimated gamma_hat_c.
    bool zero_gamma_c = false;
};

// Point estimate of the graph concordance together with the per-vertex
// pieces the variance estimator and the permutation engine reuse.
struct ConcordanceEstimate {
    double gamma_hat = 0.0;   // average of residual * neighbor-average
    double gamma_hat_c = 0.0; // average of residual * non-neighbor-average
    double c_hat = 0.0;       // gamma_hat - gamma_hat_c
    double v_hat = 0.0;       // scale used to standardize the outcomes
    std::vector<double> residuals;
    std::vector<double> a_hat;
    std::vector<double> a_hat_c;
};

struct HomophilyEstimate {
    double ih = 0.0;      // (h - w) / (1 - w), degree-weighted
    double ih_prime = 0.0; // (h_prime - w) / (1 - w)
    double h = 0.0;
    double h_prime = 0.0;
    double w = 0.0; // share of the target type
};

// Centers and scales outcomes: residual_i = (y_i - mean) / v_hat with
// v_hat^2 the uncentered mean square of deviations. Throws
// DegenerateVarianceError when the outcomes are constant.
std::pair<std::vector<double>, double> standardize(std::span<const double> y);

// Neighborhood mean (zero for isolated vertices) and non-neighbor mean of
// the residuals; the non-neighbor divisor is n - 1 - degree(i), which
// construction guarantees positive.
std::pair<std::vector<double>, std::vector<double>> neighbor_averages(const Graph& g,
                                                                      std::span<const double> residuals);

// Loop-path estimator of the graph concordance.
ConcordanceEstimate estimate_gc(const Graph& g, std::span<const double> y, EstimatorOptions opts = {});

// Vectorized route: builds the dense adjacency and complement-adjacency
// matrices and evaluates the same estimator through matrix products. Agrees
// with estimate_gc to fp round-off; kept as an independent cross-check.
// Materializes two n*n matrices, so it is for moderate n.
ConcordanceEstimate estimate_gc_matrix(const Graph& g, std::span<const double> y, EstimatorOptions opts = {});

// Plug-in inbreeding homophily of `target` given one type label per vertex.
HomophilyEstimate inbreeding_homophily(const Graph& g, std::span<const std::string> types,
                                       const std::string& target);

} // namespace concord
