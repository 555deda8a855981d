#include "concord/dgp.hpp"

#include "concord/errors.hpp"
#include "concord/numeric.hpp"
#include "concord/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace concord {

namespace detail {

void fill_outcomes(const Graph& g, double c, SplitRng& rng, std::span<double> y) {
    const int n = g.size();
    for (int i = 0; i < n; ++i)
        y[static_cast<std::size_t>(i)] = rng.next_normal();
    const double keep = std::sqrt(1.0 - c * c);
    for (const auto& [i, j] : g.edges()) {
        const double z = rng.next_normal();
        y[static_cast<std::size_t>(i)] = keep * y[static_cast<std::size_t>(i)] + c * z;
        y[static_cast<std::size_t>(j)] = keep * y[static_cast<std::size_t>(j)] + c * z;
    }
}

} // namespace detail

std::vector<double> generate_outcomes(const Graph& g, const DgpConfig& cfg) {
    if (!(cfg.c >= 0.0 && cfg.c < 1.0))
        throw ConfigError("dependence strength c must lie in [0, 1)");
    std::vector<double> y(static_cast<std::size_t>(g.size()));
    SplitRng rng(cfg.seed, streams::id(streams::kOutcomes, 0));
    detail::fill_outcomes(g, cfg.c, rng, y);
    return y;
}

namespace {

// Running per-vertex sums for the moments entering gamma and gamma_c:
// y, y^2, neighbor mean, y * neighbor mean, and the non-neighbor pair.
struct MomentBlock {
    std::vector<double> sy, syy, sb, syb, sbc, sybc;
    std::int64_t reps = 0;

    explicit MomentBlock(std::size_t n)
        : sy(n, 0.0), syy(n, 0.0), sb(n, 0.0), syb(n, 0.0), sbc(n, 0.0), sybc(n, 0.0) {}
};

struct BlockValue {
    double gamma = 0.0;
    double gamma_c = 0.0;
    double value = 0.0;
    bool ok = false;
};

BlockValue block_value(const MomentBlock& blk) {
    const std::size_t n = blk.sy.size();
    const double r = static_cast<double>(blk.reps);
    KahanSum var_sum, cov_sum, cov_c_sum;
    for (std::size_t i = 0; i < n; ++i) {
        const double my = blk.sy[i] / r;
        var_sum.add(blk.syy[i] / r - my * my);
        cov_sum.add(blk.syb[i] / r - my * (blk.sb[i] / r));
        cov_c_sum.add(blk.sybc[i] / r - my * (blk.sbc[i] / r));
    }
    const double v2 = var_sum.value() / static_cast<double>(n);
    BlockValue out;
    if (!(v2 > 0.0))
        return out;
    out.gamma = cov_sum.value() / static_cast<double>(n) / v2;
    out.gamma_c = cov_c_sum.value() / static_cast<double>(n) / v2;
    out.value = out.gamma - out.gamma_c;
    out.ok = true;
    return out;
}

} // namespace

TrueGcResult true_gc_monte_carlo(const Graph& g, double c, std::int64_t reps, std::uint64_t seed,
                                 int threads) {
    if (!(c >= 0.0 && c < 1.0))
        throw ConfigError("dependence strength c must lie in [0, 1)");
    if (reps < 2)
        throw ConfigError("the moment estimate needs at least 2 replications");

    const int n = g.size();
    const auto un = static_cast<std::size_t>(n);
    // Contiguous replication batches: serial inside a batch, batches in
    // parallel, so the result is identical for any thread count. The batch
    // values double as a spread estimate for the standard error.
    const std::int64_t k_batches = std::min<std::int64_t>(20, reps / 2);

    std::vector<MomentBlock> blocks;
    blocks.reserve(static_cast<std::size_t>(k_batches));
    for (std::int64_t b = 0; b < k_batches; ++b)
        blocks.emplace_back(un);

    parallel_for(
        static_cast<std::size_t>(k_batches), threads,
        [&](std::size_t b) {
            MomentBlock& blk = blocks[b];
            const std::int64_t begin = (static_cast<std::int64_t>(b) * reps) / k_batches;
            const std::int64_t end = ((static_cast<std::int64_t>(b) + 1) * reps) / k_batches;
            std::vector<double> y(un);
            for (std::int64_t r = begin; r < end; ++r) {
                SplitRng rng(seed, streams::id(streams::kTrueGc, static_cast<std::uint64_t>(r)));
                detail::fill_outcomes(g, c, rng, y);

                double total = 0.0;
                for (std::size_t i = 0; i < un; ++i)
                    total += y[i];
                for (int i = 0; i < n; ++i) {
                    const auto ui = static_cast<std::size_t>(i);
                    const auto nbrs = g.neighbors(i);
                    double s = 0.0;
                    for (const int j : nbrs)
                        s += y[static_cast<std::size_t>(j)];
                    const double ybar = nbrs.empty() ? 0.0 : s / static_cast<double>(nbrs.size());
                    const double ybar_c =
                        (total - y[ui] - s) / static_cast<double>(n - 1 - static_cast<int>(nbrs.size()));
                    blk.sy[ui] += y[ui];
                    blk.syy[ui] += y[ui] * y[ui];
                    blk.sb[ui] += ybar;
                    blk.syb[ui] += y[ui] * ybar;
                    blk.sbc[ui] += ybar_c;
                    blk.sybc[ui] += y[ui] * ybar_c;
                }
                ++blk.reps;
            }
        },
        1);

    MomentBlock pooled(un);
    for (const auto& blk : blocks) {
        pooled.reps += blk.reps;
        for (std::size_t i = 0; i < un; ++i) {
            pooled.sy[i] += blk.sy[i];
            pooled.syy[i] += blk.syy[i];
            pooled.sb[i] += blk.sb[i];
            pooled.syb[i] += blk.syb[i];
            pooled.sbc[i] += blk.sbc[i];
            pooled.sybc[i] += blk.sybc[i];
        }
    }

    const BlockValue pooled_value = block_value(pooled);
    if (!pooled_value.ok)
        throw DegenerateVarianceError("outcome variance across replications is zero");

    TrueGcResult res;
    res.value = pooled_value.value;
    res.gamma = pooled_value.gamma;
    res.gamma_c = pooled_value.gamma_c;
    res.reps = reps;
    res.std_error = std::numeric_limits<double>::quiet_NaN();

    if (k_batches >= 2) {
        std::vector<double> vals;
        vals.reserve(static_cast<std::size_t>(k_batches));
        for (const auto& blk : blocks) {
            const BlockValue bv = block_value(blk);
            if (bv.ok)
                vals.push_back(bv.value);
        }
        if (vals.size() >= 2) {
            const double mean = compensated_mean(vals);
            KahanSum ss;
            for (const double v : vals)
                ss.add((v - mean) * (v - mean));
            const auto k = static_cast<double>(vals.size());
            res.std_error = std::sqrt(ss.value() / (k * (k - 1.0)));
        }
    }
    return res;
}

} // namespace concord
