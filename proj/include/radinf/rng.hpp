#pragma once

#include <cstdint>
#include <cmath>

namespace radinf {

// Deterministic, platform-independent random streams.
//
// Every variate is a pure function of (seed, stream id, sample index, draw
// counter).  Parallel loops assign one stream per sample index, so results
// are identical for any number of worker threads; reductions over per-index
// buffers are done serially in index order by the callers.
//
// The core generator is splitmix64 (Steele, Lea, Vigna).  Uniform doubles
// take the top 53 bits; normals use Box-Muller on two uniforms.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Mixes (seed, stream, index) into a starting state that is well separated
// from neighbouring indices.
inline std::uint64_t mix_key(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64_next(s);
    s ^= stream * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull;
    std::uint64_t b = splitmix64_next(s);
    s ^= index * 0x9e6c63d0876a9a47ull + 0xbf58476d1ce4e5b9ull;
    std::uint64_t c = splitmix64_next(s);
    return a ^ (b + 0x165667b19e3779f9ull) ^ (c << 1);
}

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0)
        : state_(mix_key(seed, stream, index)) {}

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    // Uniform on (0,1): never returns 0 or 1, so log() below is safe.
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

// Stream ids used across the project.  Keeping them in one table avoids
// accidental reuse between unrelated experiments.
namespace streams {
inline constexpr std::uint64_t kBallPaths = 1;
inline constexpr std::uint64_t kConditionedPaths = 2;
inline constexpr std::uint64_t kFiberSampling = 3;
inline constexpr std::uint64_t kMeasureEstimate = 4;
inline constexpr std::uint64_t kCenterSampling = 5;
inline constexpr std::uint64_t kPAverage = 6;
inline constexpr std::uint64_t kBootstrap = 7;
inline constexpr std::uint64_t kPerturbation = 8;
inline constexpr std::uint64_t kSolverInit = 9;
inline constexpr std::uint64_t kGallery = 10;
}  // namespace streams

}  // namespace radinf
