#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace concord {

// Splittable counter-based generator in the SplitMix64 family
// (Steele, Lea & Vigna 2014). Output i of a stream is mix(seed + i*gamma),
// so a stream is a pure function of (key, counter) and substreams derived
// from (master seed, stream id) are independent of scheduling. All sampling
// helpers are implemented here, not via <random> distributions, so results
// are bit-identical across standard libraries.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : state_(mix64(seed)), gamma_(mix_gamma(seed + kGoldenGamma)) {}

    // Substream `stream` of a master seed; distinct streams never share state.
    SplitRng(std::uint64_t seed, std::uint64_t stream)
        : SplitRng(mix64(mix64(seed + kGoldenGamma) ^ mix64(stream * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next_u64() {
        state_ += gamma_;
        return mix64(state_);
    }

    // Uniform on [0,1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on {0,...,bound-1}, unbiased (rejection).
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold)
                return r % bound;
        }
    }

    // Standard normal via Box-Muller; the paired draw is cached.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u;
        do {
            u = next_double();
        } while (u <= 0.0);
        const double v = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u));
        const double angle = 2.0 * std::numbers::pi * v;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    SplitRng split() {
        const std::uint64_t s = next_u64();
        return SplitRng(mix64(s ^ gamma_));
    }

private:
    static constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Gamma must be odd; weak gammas are re-mixed (SplittableRandom's rule).
    static std::uint64_t mix_gamma(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
        z = (z ^ (z >> 33)) | 1ULL;
        const int ones = __builtin_popcountll(z ^ (z >> 1));
        return ones < 24 ? z ^ 0xaaaaaaaaaaaaaaaaULL : z;
    }

    std::uint64_t state_;
    std::uint64_t gamma_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Registry of substream domains so independent consumers of one master seed
// can never collide. A stream id is (domain << 40) ^ index, giving every
// domain 2^40 indices; SplitRng(seed, id) then keys the substream.
namespace streams {

constexpr std::uint64_t kPermutation = 1; // index: permutation draw
constexpr std::uint64_t kErGraph = 2;     // index: regeneration attempt
constexpr std::uint64_t kBaGraph = 3;     // index: regeneration attempt
constexpr std::uint64_t kOutcomes = 4;    // index: replication
constexpr std::uint64_t kTrueGc = 5;      // index: replication
constexpr std::uint64_t kSimGraph = 6;    // index: 0
constexpr std::uint64_t kSimOutcomes = 7; // index: replication
constexpr std::uint64_t kSimPerms = 8;    // index: replication

constexpr std::uint64_t id(std::uint64_t domain, std::uint64_t index) { return (domain << 40) ^ index; }

} // namespace streams

} // namespace concord
