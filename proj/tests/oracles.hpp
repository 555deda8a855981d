#pragma once

// Definitional reference implementations used to cross-check the production
// code. Everything here is written straight from the defining sums, with
// dense matrices and plain double loops, and shares no shortcuts with src/
// (no complement trick, no compensated summation, no cached neighborhoods).

#include "concord/graph.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::vector<char>> adjacency_matrix(const concord::Graph& g) {
    const int n = g.size();
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                       std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (const int j : g.neighbors(i))
            adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    return adj;
}

struct Estimate {
    double gamma = 0.0;
    double gamma_c = 0.0;
    double c_hat = 0.0;
    double v_hat = 0.0;
    std::vector<double> e, a, a_c;
};

// The concordance pipeline on residuals that are already centered/scaled.
inline Estimate from_residuals(const concord::Graph& g, std::span<const double> e) {
    const int n = g.size();
    const auto adj = adjacency_matrix(g);
    Estimate est;
    est.e.assign(e.begin(), e.end());
    est.a.assign(static_cast<std::size_t>(n), 0.0);
    est.a_c.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        int d = 0, dc = 0;
        double s = 0.0, sc = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            if (adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                ++d;
                s += e[static_cast<std::size_t>(j)];
            } else {
                ++dc;
                sc += e[static_cast<std::size_t>(j)];
            }
        }
        est.a[static_cast<std::size_t>(i)] = d > 0 ? s / d : 0.0;
        est.a_c[static_cast<std::size_t>(i)] = sc / dc; // dc >= 1 by graph validation
    }
    double gs = 0.0, gcs = 0.0;
    for (int i = 0; i < n; ++i) {
        gs += e[static_cast<std::size_t>(i)] * est.a[static_cast<std::size_t>(i)];
        gcs += e[static_cast<std::size_t>(i)] * est.a_c[static_cast<std::size_t>(i)];
    }
    est.gamma = gs / n;
    est.gamma_c = gcs / n;
    est.c_hat = est.gamma - est.gamma_c;
    return est;
}

inline Estimate estimate(const concord::Graph& g, std::span<const double> y) {
    const int n = g.size();
    double mean = 0.0;
    for (const double v : y)
        mean += v;
    mean /= n;
    double ss = 0.0;
    for (const double v : y)
        ss += (v - mean) * (v - mean);
    const double v_hat = std::sqrt(ss / n);
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        e[static_cast<std::size_t>(i)] = (y[static_cast<std::size_t>(i)] - mean) / v_hat;
    Estimate est = from_residuals(g, e);
    est.v_hat = v_hat;
    return est;
}

struct Sigma {
    double sigma2 = 0.0;
    double sigma1 = 0.0;
    double sigma_plus2 = 0.0;
    std::vector<double> q, q_bar;
};

inline Sigma sigma(const concord::Graph& g, const Estimate& est) {
    const int n = g.size();
    const auto adj = adjacency_matrix(g);
    Sigma s;
    s.q.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        s.q[ui] = est.e[ui] * (est.a[ui] - est.e[ui] * est.gamma);
    }
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            deg[static_cast<std::size_t>(i)] +=
                adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    s.q_bar.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        int count = 0;
        for (int j = 0; j < n; ++j)
            if (deg[static_cast<std::size_t>(j)] == deg[static_cast<std::size_t>(i)]) {
                sum += s.q[static_cast<std::size_t>(j)];
                ++count;
            }
        s.q_bar[static_cast<std::size_t>(i)] = sum / count;
    }
    double outer = 0.0, fallback = 0.0;
    for (int i = 0; i < n; ++i) {
        const double qi = s.q[static_cast<std::size_t>(i)] - s.q_bar[static_cast<std::size_t>(i)];
        double inner = qi;
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            bool within_two = adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
            for (int k = 0; !within_two && k < n; ++k)
                within_two = adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
                             adj[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            if (within_two)
                inner += s.q[static_cast<std::size_t>(j)] - s.q_bar[static_cast<std::size_t>(j)];
        }
        outer += qi * inner;
        fallback += qi * qi;
    }
    s.sigma2 = outer / n;
    s.sigma1 = fallback / n;
    // positivity judged against the fallback's scale: on diameter <= 2
    // graphs the leading sum cancels to zero in real arithmetic and only
    // rounding noise is left
    s.sigma_plus2 = s.sigma2 > 1e-12 * s.sigma1 ? s.sigma2 : s.sigma1;
    return s;
}

struct TStat {
    double t = 0.0;
    double c_hat = 0.0;
    double sigma_plus = 0.0;
    bool degenerate = false;
};

// Full statistic of one relabeling of already-standardized residuals.
inline TStat t_of_relabeling(const concord::Graph& g, std::span<const double> residuals,
                             std::span<const int> pi) {
    const int n = g.size();
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        e[static_cast<std::size_t>(i)] =
            residuals[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])];
    const Estimate est = from_residuals(g, e);
    const Sigma sig = sigma(g, est);
    TStat out;
    out.c_hat = est.c_hat;
    if (sig.sigma_plus2 > 0.0) {
        out.sigma_plus = std::sqrt(sig.sigma_plus2);
        out.t = std::sqrt(static_cast<double>(n)) * est.c_hat / out.sigma_plus;
    } else {
        out.degenerate = true;
    }
    return out;
}

// Sorted vertex ids within two edges of i, excluding i, via matrix powers.
inline std::vector<int> two_neighborhood(const concord::Graph& g, int i) {
    const int n = g.size();
    const auto adj = adjacency_matrix(g);
    std::vector<int> out;
    for (int j = 0; j < n; ++j) {
        if (j == i)
            continue;
        bool within_two = adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
        for (int k = 0; !within_two && k < n; ++k)
            within_two = adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
                         adj[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        if (within_two)
            out.push_back(j);
    }
    return out;
}

struct Homophily {
    double ih = 0.0;
    double ih_prime = 0.0;
    double h = 0.0;
    double h_prime = 0.0;
    double w = 0.0;
};

inline Homophily homophily(const concord::Graph& g, std::span<const std::string> types,
                           const std::string& target) {
    const int n = g.size();
    const auto adj = adjacency_matrix(g);
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        y[static_cast<std::size_t>(i)] = types[static_cast<std::size_t>(i)] == target ? 1.0 : 0.0;

    double num_prime = 0.0, num = 0.0, den = 0.0, count = 0.0;
    for (int i = 0; i < n; ++i) {
        int d = 0;
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            if (adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                ++d;
                s += y[static_cast<std::size_t>(j)];
            }
        const double ybar = d > 0 ? s / d : 0.0;
        num_prime += y[static_cast<std::size_t>(i)] * ybar;
        num += y[static_cast<std::size_t>(i)] * ybar * d;
        den += y[static_cast<std::size_t>(i)] * d;
        count += y[static_cast<std::size_t>(i)];
    }
    Homophily out;
    out.w = count / n;
    out.h_prime = num_prime / count;
    out.h = num / den;
    out.ih = (out.h - out.w) / (1.0 - out.w);
    out.ih_prime = (out.h_prime - out.w) / (1.0 - out.w);
    return out;
}

} // namespace oracle
