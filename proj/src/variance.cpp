#include "concord/variance.hpp"

#include "concord/errors.hpp"
#include "concord/numeric.hpp"

#include <cmath>

namespace concord {

std::vector<double> q_values(const Graph& g, const ConcordanceEstimate& est) {
    const int n = g.size();
    if (static_cast<int>(est.residuals.size()) != n || static_cast<int>(est.a_hat.size()) != n)
        throw ConfigError("estimate does not match graph size " + std::to_string(n));
    std::vector<double> q(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double e = est.residuals[i];
        q[i] = e * (est.a_hat[i] - e * est.gamma_hat);
    }
    return q;
}

std::vector<double> degree_class_means(const Graph& g, std::span<const double> q_hat) {
    const int n = g.size();
    if (static_cast<int>(q_hat.size()) != n)
        throw ConfigError("q vector length " + std::to_string(q_hat.size()) + " does not match graph size " +
                          std::to_string(n));
    std::vector<double> q_bar(static_cast<std::size_t>(n));
    for (int c = 0; c < g.degree_class_count(); ++c) {
        const auto members = g.degree_class_members(c);
        KahanSum s;
        for (int v : members)
            s.add(q_hat[v]);
        const double mean = s.value() / static_cast<double>(members.size());
        for (int v : members)
            q_bar[v] = mean;
    }
    return q_bar;
}

namespace detail {

SigmaPair sigma_core(const Graph& g, std::span<const double> q_hat, std::span<const double> q_bar) {
    const int n = g.size();
    std::vector<double> centered(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        centered[i] = q_hat[i] - q_bar[i];

    KahanSum outer, fallback;
    for (int i = 0; i < n; ++i) {
        const double qi = centered[i];
        double two_sum = 0.0;
        for (int j : g.two_neighborhood(i))
            two_sum += centered[j];
        outer.add(qi * (qi + two_sum));
        fallback.add(qi * qi);
    }
    return {outer.value() / n, fallback.value() / n};
}

} // namespace detail

VarianceEstimate variance_estimate(const Graph& g, std::span<const double> q_hat,
                                   std::span<const double> q_bar) {
    const int n = g.size();
    if (static_cast<int>(q_hat.size()) != n || static_cast<int>(q_bar.size()) != n)
        throw ConfigError("q vectors do not match graph size " + std::to_string(n));
    VarianceEstimate var;
    var.q_hat.assign(q_hat.begin(), q_hat.end());
    var.q_bar.assign(q_bar.begin(), q_bar.end());
    const auto pair = detail::sigma_core(g, q_hat, q_bar);
    var.sigma2 = pair.sigma2;
    var.sigma2_fallback = pair.sigma1;
    var.sigma2_plus = detail::select_sigma_plus2(pair);
    if (var.sigma2_plus <= 0.0)
        throw DegenerateVarianceError(
            "scale normalizer is zero: every q value equals its degree-class mean, so the "
            "statistic cannot be studentized");
    return var;
}

double t_statistic(double c_hat, double c_null, double sigma_plus, std::int64_t n) {
    if (n < 1)
        throw ConfigError("t_statistic needs n >= 1");
    if (!(sigma_plus > 0.0))
        throw DegenerateVarianceError("sigma_plus must be positive to studentize");
    return std::sqrt(static_cast<double>(n)) * (c_hat - c_null) / sigma_plus;
}

} // namespace concord
