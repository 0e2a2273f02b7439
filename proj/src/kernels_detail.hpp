#pragma once

// Per-item work functions shared by the serial reference kernels and their
// OpenMP counterparts.  A kernel is deterministic because each item depends
// only on (seed, stream, item index); the serial/OpenMP pair must produce
// bitwise-identical buffers.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "radinf/chebyshev.hpp"
#include "radinf/kernels.hpp"
#include "radinf/rng.hpp"
#include "radinf/space.hpp"
#include "wiener_core.hpp"

namespace radinf::kernels::detail {

inline double point_distance(const PointSet& ps, std::size_t i,
                             const std::vector<double>& c,
                             const NormedSpaceSpec& space,
                             std::vector<double>& scratch) {
    const auto& p = ps.points[i];
    scratch.resize(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) scratch[j] = p[j] - c[j];
    return eval_norm(space, scratch);
}

struct GridSpec {
    std::vector<long> counts;  // nodes per axis
    long rows = 0;             // counts[0]
    long row_size = 1;         // product of counts[1:]
};

inline GridSpec make_grid(const std::vector<double>& lo,
                          const std::vector<double>& hi, double step) {
    GridSpec g;
    for (std::size_t d = 0; d < lo.size(); ++d) {
        const long n = static_cast<long>(std::floor((hi[d] - lo[d]) / step)) + 1;
        g.counts.push_back(std::max<long>(n, 1));
    }
    g.rows = g.counts[0];
    for (std::size_t d = 1; d < g.counts.size(); ++d) g.row_size *= g.counts[d];
    return g;
}

// Minimum over one grid row (fixed first coordinate) of the max distance.
inline double grid_row_min(const PointSet& ps, const NormedSpaceSpec& space,
                           const std::vector<double>& lo, double step,
                           const GridSpec& grid, long row) {
    const int dim = ps.dim;
    std::vector<double> c(dim), scratch;
    c[0] = lo[0] + step * static_cast<double>(row);
    double best = std::numeric_limits<double>::infinity();
    for (long flat = 0; flat < grid.row_size; ++flat) {
        long rem = flat;
        for (int d = dim - 1; d >= 1; --d) {
            c[d] = lo[d] + step * static_cast<double>(rem % grid.counts[d]);
            rem /= grid.counts[d];
        }
        double far = 0.0;
        for (std::size_t i = 0; i < ps.points.size(); ++i)
            far = std::max(far, point_distance(ps, i, c, space, scratch));
        best = std::min(best, far);
    }
    return best;
}

struct BallSampleRecord {
    std::uint32_t proposals = 0;
    std::uint64_t fail_mask = 0;
    double value_12 = 0.0;
    double value_34 = 0.0;
};

inline BallSampleRecord ball_sample_item(int T, std::uint64_t seed,
                                         std::uint64_t index,
                                         const std::vector<int>& ms,
                                         long budget) {
    RngStream rng(seed, streams::kBallPaths, index);
    std::vector<double> v;
    BallSampleRecord rec;
    for (long attempt = 1; attempt <= budget; ++attempt) {
        if (wiener::detail::propose_ball_values(T, rng, v)) {
            rec.proposals = static_cast<std::uint32_t>(attempt);
            rec.fail_mask = wiener::detail::fm_fail_mask(v, T, ms);
            rec.value_12 = v[static_cast<std::size_t>(T) / 2];
            rec.value_34 = v[3 * static_cast<std::size_t>(T) / 4];
            return rec;
        }
    }
    throw std::runtime_error("kernels: ball-path rejection budget exceeded");
}

struct ConditionedSampleRecord {
    std::uint32_t proposals = 0;  // 0 = budget exhausted
    double value_34 = 0.0;
};

inline ConditionedSampleRecord conditioned_sample_item(double y, int T,
                                                       std::uint64_t seed,
                                                       std::uint64_t index,
                                                       long budget,
                                                       bool reject_ball) {
    RngStream rng(seed, streams::kConditionedPaths, index);
    std::vector<double> v;
    ConditionedSampleRecord rec;
    for (long attempt = 1; attempt <= budget; ++attempt) {
        if (wiener::detail::propose_conditioned_values(y, T, rng, v, reject_ball)) {
            rec.proposals = static_cast<std::uint32_t>(attempt);
            rec.value_34 = v[3 * static_cast<std::size_t>(T) / 4];
            return rec;
        }
    }
    rec.proposals = 0;
    return rec;
}

}  // namespace radinf::kernels::detail
