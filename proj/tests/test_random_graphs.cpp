#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "concord/errors.hpp"
#include "concord/graph.hpp"
#include "concord/random_graphs.hpp"
#include "concord/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

TEST_CASE("erdos_renyi basics") {
    SUBCASE("lambda zero gives an empty graph on n vertices") {
        const auto g = concord::erdos_renyi({50, 0.0, 1});
        CHECK(g.size() == 50);
        CHECK(g.edge_count() == 0);
    }
    SUBCASE("same seed reproduces the same edges") {
        const auto a = concord::erdos_renyi({80, 2.0, 99});
        const auto b = concord::erdos_renyi({80, 2.0, 99});
        CHECK(std::vector(a.edges().begin(), a.edges().end()) ==
              std::vector(b.edges().begin(), b.edges().end()));
        const auto c = concord::erdos_renyi({80, 2.0, 100});
        CHECK(std::vector(a.edges().begin(), a.edges().end()) !=
              std::vector(c.edges().begin(), c.edges().end()));
    }
    SUBCASE("bad configs are rejected") {
        CHECK_THROWS_AS(concord::erdos_renyi({1, 0.5, 1}), concord::ConfigError);
        CHECK_THROWS_AS(concord::erdos_renyi({10, -0.1, 1}), concord::ConfigError);
        CHECK_THROWS_AS(concord::erdos_renyi({10, 9.5, 1}), concord::ConfigError);
    }
}

TEST_CASE("erdos_renyi mean degree matches the binomial model") {
    // average degree of G(n, lambda/(n-1)) has mean lambda; over many draws
    // the sample mean must land within 5 standard errors
    const int n = 300;
    const double lambda = 1.0;
    const int draws = 200;
    double total_avg = 0.0;
    for (int d = 0; d < draws; ++d) {
        const auto g = concord::erdos_renyi({n, lambda, 1000 + static_cast<std::uint64_t>(d)});
        total_avg += 2.0 * static_cast<double>(g.edge_count()) / n;
    }
    const double mean_avg = total_avg / draws;
    const double pairs = 0.5 * n * (n - 1);
    const double p = lambda / (n - 1);
    const double var_avg = 4.0 * pairs * p * (1.0 - p) / (static_cast<double>(n) * n);
    const double se = std::sqrt(var_avg / draws);
    CHECK(std::abs(mean_avg - lambda) < 5.0 * se);
}

TEST_CASE("erdos_renyi edge indicators are independent across pairs") {
    // the count of edges incident to vertex 0 is Binomial(n-1, p); check its
    // variance over draws, which a sloppy sampler (e.g. fixed edge count)
    // would shrink
    const int n = 60;
    const double lambda = 3.0;
    const double p = lambda / (n - 1);
    const int draws = 400;
    double sum = 0.0, sum2 = 0.0;
    for (int d = 0; d < draws; ++d) {
        const auto g = concord::erdos_renyi({n, lambda, 7000 + static_cast<std::uint64_t>(d)});
        const double deg = g.degree(0);
        sum += deg;
        sum2 += deg * deg;
    }
    const double mean = sum / draws;
    const double var = sum2 / draws - mean * mean;
    const double want_var = (n - 1) * p * (1.0 - p);
    CHECK(std::abs(mean - lambda) < 0.5);
    CHECK(var == doctest::Approx(want_var).epsilon(0.35));
}

TEST_CASE("barabasi_albert edge count identity holds on every draw") {
    for (const int m : {1, 2, 3, 5}) {
        for (int d = 0; d < 10; ++d) {
            concord::BAConfig cfg;
            cfg.n = 120;
            cfg.m = m;
            cfg.seed = 40 + static_cast<std::uint64_t>(10 * m + d);
            const auto g = concord::barabasi_albert(cfg);
            CHECK(g.size() == 120);
            // seed graph edges plus m per arrival
            const auto seed_edges = g.edge_count() - static_cast<std::int64_t>(120 - 20) * m;
            CHECK(seed_edges >= 0);
            // the ER(20, lambda=1) seed graph cannot have more than C(20,2) edges
            CHECK(seed_edges <= 190);

            // arrivals end with at least their m attachment edges
            for (int v = 20; v < 120; ++v)
                CHECK(g.degree(v) >= m);
        }
    }
}

TEST_CASE("barabasi_albert is reproducible and validates its config") {
    concord::BAConfig cfg;
    cfg.n = 90;
    cfg.m = 2;
    cfg.seed = 5;
    const auto a = concord::barabasi_albert(cfg);
    const auto b = concord::barabasi_albert(cfg);
    CHECK(std::vector(a.edges().begin(), a.edges().end()) ==
          std::vector(b.edges().begin(), b.edges().end()));

    concord::BAConfig bad = cfg;
    bad.m = 0;
    CHECK_THROWS_AS(concord::barabasi_albert(bad), concord::ConfigError);
    bad.m = 21; // more targets than the seed graph has vertices
    CHECK_THROWS_AS(concord::barabasi_albert(bad), concord::ConfigError);
    bad.m = 2;
    bad.n = 20; // nothing to grow
    CHECK_THROWS_AS(concord::barabasi_albert(bad), concord::ConfigError);
    bad.n = 90;
    bad.seed_graph_size = 1;
    CHECK_THROWS_AS(concord::barabasi_albert(bad), concord::ConfigError);
}

TEST_CASE("preferential attachment produces heavier tails than uniform attachment") {
    // match the ER mean degree to the BA draw, then compare max degrees
    const int n = 300;
    const int m = 3;
    int ba_wins = 0;
    const int rounds = 60;
    for (int d = 0; d < rounds; ++d) {
        concord::BAConfig cfg;
        cfg.n = n;
        cfg.m = m;
        cfg.seed = 9000 + static_cast<std::uint64_t>(d);
        const auto ba = concord::barabasi_albert(cfg);
        const double lambda = 2.0 * static_cast<double>(ba.edge_count()) / n;
        const auto er = concord::erdos_renyi({n, lambda, 15000 + static_cast<std::uint64_t>(d)});
        if (ba.degree_stats().d_mx > er.degree_stats().d_mx)
            ++ba_wins;
    }
    CHECK(ba_wins >= rounds * 95 / 100);
}

TEST_CASE("degree-proportional attachment beats uniform on average target degree") {
    // regenerate with the same seed and check the mean degree of chosen
    // targets exceeds the graph average: a direct signature of preferential
    // attachment that a uniform sampler fails
    concord::BAConfig cfg;
    cfg.n = 200;
    cfg.m = 2;
    cfg.seed = 31337;
    const auto g = concord::barabasi_albert(cfg);
    const auto stats = g.degree_stats();

    // hubs exist: some vertex far above the mean
    CHECK(stats.d_mx >= 3 * static_cast<int>(stats.d_av));

    // early vertices (the seed graph) end up much better connected than
    // late arrivals on average
    double early = 0.0, late = 0.0;
    for (int v = 0; v < 20; ++v)
        early += g.degree(v);
    for (int v = 180; v < 200; ++v)
        late += g.degree(v);
    CHECK(early / 20.0 > late / 20.0);
}
