#include "concord/concordance.hpp"

#include "concord/errors.hpp"
#include "concord/numeric.hpp"

#include <cmath>

namespace concord {

std::pair<std::vector<double>, double> standardize(std::span<const double> y) {
    const std::size_t n = y.size();
    if (n < 2)
        throw ConfigError("standardize needs at least 2 outcomes, got " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(y[i]))
            throw ConfigError("outcome " + std::to_string(i) + " is not finite");

    const double mean = compensated_mean(y);
    KahanSum ss;
    for (double v : y) {
        const double d = v - mean;
        ss.add(d * d);
    }
    const double v2 = ss.value() / static_cast<double>(n);
    if (v2 <= 0.0)
        throw DegenerateVarianceError("outcomes are constant: residual scale is zero");
    const double v_hat = std::sqrt(v2);

    std::vector<double> residuals(n);
    for (std::size_t i = 0; i < n; ++i)
        residuals[i] = (y[i] - mean) / v_hat;
    return {std::move(residuals), v_hat};
}

std::pair<std::vector<double>, std::vector<double>> neighbor_averages(const Graph& g,
                                                                      std::span<const double> residuals) {
    const int n = g.size();
    if (static_cast<int>(residuals.size()) != n)
        throw ConfigError("residual vector length " + std::to_string(residuals.size()) +
                          " does not match graph size " + std::to_string(n));

    std::vector<double> a_hat(static_cast<std::size_t>(n), 0.0);
    std::vector<double> a_hat_c(static_cast<std::size_t>(n), 0.0);
    const double total = compensated_sum(residuals);
    for (int i = 0; i < n; ++i) {
        double nbr = 0.0;
        for (int j : g.neighbors(i))
            nbr += residuals[j];
        const int d = g.degree(i);
        if (d >= 1)
            a_hat[i] = nbr / d;
        a_hat_c[i] = (total - residuals[i] - nbr) / (n - 1 - d);
    }
    return {std::move(a_hat), std::move(a_hat_c)};
}

ConcordanceEstimate estimate_gc(const Graph& g, std::span<const double> y, EstimatorOptions opts) {
    const int n = g.size();
    if (static_cast<int>(y.size()) != n)
        throw ConfigError("outcome vector length " + std::to_string(y.size()) + " does not match graph size " +
                          std::to_string(n));
    ConcordanceEstimate est;
    auto [residuals, v_hat] = standardize(y);
    est.residuals = std::move(residuals);
    est.v_hat = v_hat;
    auto [a_hat, a_hat_c] = neighbor_averages(g, est.residuals);
    est.a_hat = std::move(a_hat);
    est.a_hat_c = std::move(a_hat_c);

    KahanSum g1, g2;
    for (int i = 0; i < n; ++i) {
        g1.add(est.residuals[i] * est.a_hat[i]);
        g2.add(est.residuals[i] * est.a_hat_c[i]);
    }
    est.gamma_hat = g1.value() / n;
    est.gamma_hat_c = opts.zero_gamma_c ? 0.0 : g2.value() / n;
    if (opts.zero_gamma_c)
        est.a_hat_c.assign(static_cast<std::size_t>(n), 0.0);
    est.c_hat = est.gamma_hat - est.gamma_hat_c;
    return est;
}

ConcordanceEstimate estimate_gc_matrix(const Graph& g, std::span<const double> y, EstimatorOptions opts) {
    const int n = g.size();
    if (static_cast<int>(y.size()) != n)
        throw ConfigError("outcome vector length " + std::to_string(y.size()) + " does not match graph size " +
                          std::to_string(n));
    ConcordanceEstimate est;
    auto [residuals, v_hat] = standardize(y);
    est.residuals = std::move(residuals);
    est.v_hat = v_hat;

    // Dense 0/1 adjacency and its off-diagonal complement.
    const std::size_t nn = static_cast<std::size_t>(n);
    std::vector<unsigned char> adj(nn * nn, 0);
    for (const auto& [a, b] : g.edges()) {
        adj[static_cast<std::size_t>(a) * nn + b] = 1;
        adj[static_cast<std::size_t>(b) * nn + a] = 1;
    }

    std::vector<double> d_inv(nn, 0.0), d_inv_c(nn, 0.0);
    for (int i = 0; i < n; ++i) {
        const int d = g.degree(i);
        if (d >= 1)
            d_inv[i] = 1.0 / d;
        d_inv_c[i] = 1.0 / (n - 1 - d);
    }

    std::vector<double> e_a(nn, 0.0), e_ac(nn, 0.0);
    const auto& e = est.residuals;
    for (std::size_t i = 0; i < nn; ++i) {
        const unsigned char* row = adj.data() + i * nn;
        double s = 0.0, sc = 0.0;
        for (std::size_t j = 0; j < nn; ++j) {
            if (row[j])
                s += e[j];
            else if (j != i)
                sc += e[j];
        }
        e_a[i] = s * d_inv[i];
        e_ac[i] = sc * d_inv_c[i];
    }

    KahanSum g1, g2;
    for (std::size_t i = 0; i < nn; ++i) {
        g1.add(e[i] * e_a[i]);
        g2.add(e[i] * e_ac[i]);
    }
    est.gamma_hat = g1.value() / n;
    est.gamma_hat_c = opts.zero_gamma_c ? 0.0 : g2.value() / n;
    est.a_hat = std::move(e_a);
    est.a_hat_c = opts.zero_gamma_c ? std::vector<double>(nn, 0.0) : std::move(e_ac);
    est.c_hat = est.gamma_hat - est.gamma_hat_c;
    return est;
}

HomophilyEstimate inbreeding_homophily(const Graph& g, std::span<const std::string> types,
                                       const std::string& target) {
    const int n = g.size();
    if (static_cast<int>(types.size()) != n)
        throw ConfigError("type vector length " + std::to_string(types.size()) + " does not match graph size " +
                          std::to_string(n));

    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    std::int64_t count = 0;
    for (int i = 0; i < n; ++i)
        if (types[i] == target) {
            y[i] = 1.0;
            ++count;
        }
    if (count == 0)
        throw DegenerateTypeError("no vertex has type '" + target + "'");
    if (count == n)
        throw DegenerateTypeError("every vertex has type '" + target + "': homophily is undefined (w = 1)");

    HomophilyEstimate hom;
    hom.w = static_cast<double>(count) / n;

    KahanSum num_prime, num, den;
    for (int i = 0; i < n; ++i) {
        const int d = g.degree(i);
        double ybar = 0.0;
        if (d >= 1) {
            double s = 0.0;
            for (int j : g.neighbors(i))
                s += y[j];
            ybar = s / d;
        }
        num_prime.add(y[i] * ybar);
        num.add(y[i] * ybar * d);
        den.add(y[i] * d);
    }
    if (den.value() <= 0.0)
        throw NoTypedEdgesError("no vertex of type '" + target + "' has an edge");

    hom.h_prime = num_prime.value() / count;
    hom.h = num.value() / den.value();
    hom.ih = (hom.h - hom.w) / (1.0 - hom.w);
    hom.ih_prime = (hom.h_prime - hom.w) / (1.0 - hom.w);
    return hom;
}

} // namespace concord
