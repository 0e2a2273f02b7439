#pragma once

#include <cstdint>
#include <vector>

#include "radinf/chebyshev.hpp"
#include "radinf/space.hpp"

namespace radinf::kernels {

// Data-parallel cores.  Each kernel has an OpenMP implementation and a serial
// reference with identical output; the test suite checks them bitwise equal
// and the benchmark binary compares their throughput.  Work is indexed by a
// sample (or grid-row) id whose random stream is a pure function of
// (seed, stream, id), so results do not depend on the thread count.
// Reductions over per-index buffers run serially in index order.

// Index of the farthest point from c, ties broken toward the lower index.
struct FarthestPoint {
    std::size_t index = 0;
    double distance = 0.0;
};
FarthestPoint farthest_point(const PointSet& points,
                             const std::vector<double>& center,
                             const NormedSpaceSpec& space);
FarthestPoint farthest_point_serial(const PointSet& points,
                                    const std::vector<double>& center,
                                    const NormedSpaceSpec& space);

// Grid scan for the brute radius oracle: minimum over all grid centers of the
// max distance to the point set.  Rows along the first coordinate are the
// parallel unit; per-row minima are combined in row order.
double grid_min_max_distance(const PointSet& points, const NormedSpaceSpec& space,
                             const std::vector<double>& box_lo,
                             const std::vector<double>& box_hi, double step);
double grid_min_max_distance_serial(const PointSet& points,
                                    const NormedSpaceSpec& space,
                                    const std::vector<double>& box_lo,
                                    const std::vector<double>& box_hi,
                                    double step);

// Wiener ball-path batch: samples `n` sup-norm-ball-conditioned paths and
// records, per sample, the number of proposals used, the F(m) failure mask
// over `ms` (bit j set = sample violates the window condition for ms[j]) and
// the path values at nodes T/2 and 3T/4.
struct BallBatchResult {
    std::vector<std::uint32_t> proposals;  // per sample
    std::vector<std::uint64_t> fail_mask;  // per sample
    std::vector<double> value_at_12;       // per sample
    std::vector<double> value_at_34;       // per sample
};
BallBatchResult ball_path_batch(int t_intervals, long n, std::uint64_t seed,
                                const std::vector<int>& ms, long budget);
BallBatchResult ball_path_batch_serial(int t_intervals, long n,
                                       std::uint64_t seed,
                                       const std::vector<int>& ms, long budget);

// Conditioned-path batch (bridge to y on [0,1/2], free motion after), with
// optional ball rejection.  Records per-sample proposals and f(3/4).
struct ConditionedBatchResult {
    std::vector<std::uint32_t> proposals;   // per sample, 0 = budget exhausted
    std::vector<double> value_at_34;        // per sample
};
ConditionedBatchResult conditioned_path_batch(double y, int t_intervals, long n,
                                              std::uint64_t seed, long budget,
                                              bool reject_ball);
ConditionedBatchResult conditioned_path_batch_serial(double y, int t_intervals,
                                                     long n, std::uint64_t seed,
                                                     long budget,
                                                     bool reject_ball);

}  // namespace radinf::kernels
