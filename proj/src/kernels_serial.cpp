// Serial reference implementations of the data-parallel kernels.  Kept
// deliberately close to the straight-line math; the OpenMP versions must
// reproduce these buffers bitwise.

#include "kernels_detail.hpp"
#include "radinf/kernels.hpp"

namespace radinf::kernels {

FarthestPoint farthest_point_serial(const PointSet& ps,
                                    const std::vector<double>& center,
                                    const NormedSpaceSpec& space) {
    FarthestPoint far;
    std::vector<double> scratch;
    for (std::size_t i = 0; i < ps.points.size(); ++i) {
        const double d = detail::point_distance(ps, i, center, space, scratch);
        if (d > far.distance) {
            far.distance = d;
            far.index = i;
        }
    }
    return far;
}

double grid_min_max_distance_serial(const PointSet& ps,
                                    const NormedSpaceSpec& space,
                                    const std::vector<double>& box_lo,
                                    const std::vector<double>& box_hi,
                                    double step) {
    const auto grid = detail::make_grid(box_lo, box_hi, step);
    double best = std::numeric_limits<double>::infinity();
    for (long row = 0; row < grid.rows; ++row)
        best = std::min(best,
                        detail::grid_row_min(ps, space, box_lo, step, grid, row));
    return best;
}

BallBatchResult ball_path_batch_serial(int t_intervals, long n,
                                       std::uint64_t seed,
                                       const std::vector<int>& ms, long budget) {
    BallBatchResult out;
    out.proposals.resize(n);
    out.fail_mask.resize(n);
    out.value_at_12.resize(n);
    out.value_at_34.resize(n);
    for (long i = 0; i < n; ++i) {
        const auto rec = detail::ball_sample_item(t_intervals, seed,
                                                  static_cast<std::uint64_t>(i),
                                                  ms, budget);
        out.proposals[i] = rec.proposals;
        out.fail_mask[i] = rec.fail_mask;
        out.value_at_12[i] = rec.value_12;
        out.value_at_34[i] = rec.value_34;
    }
    return out;
}

ConditionedBatchResult conditioned_path_batch_serial(double y, int t_intervals,
                                                     long n, std::uint64_t seed,
                                                     long budget,
                                                     bool reject_ball) {
    ConditionedBatchResult out;
    out.proposals.resize(n);
    out.value_at_34.resize(n);
    for (long i = 0; i < n; ++i) {
        const auto rec = detail::conditioned_sample_item(
            y, t_intervals, seed, static_cast<std::uint64_t>(i), budget,
            reject_ball);
        out.proposals[i] = rec.proposals;
        out.value_at_34[i] = rec.value_34;
    }
    return out;
}

}  // namespace radinf::kernels
