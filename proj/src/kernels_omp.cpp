// OpenMP kernels.  Each item is a pure function of (seed, stream, index), so
// the schedule never affects the per-index buffers; reductions over those
// buffers run serially in index order.

#include "kernels_detail.hpp"
#include "radinf/kernels.hpp"

namespace radinf::kernels {

FarthestPoint farthest_point(const PointSet& ps,
                             const std::vector<double>& center,
                             const NormedSpaceSpec& space) {
    const long n = static_cast<long>(ps.points.size());
    if (n < 4096) return farthest_point_serial(ps, center, space);

    std::vector<double> dist(n);
#pragma omp parallel
    {
        std::vector<double> scratch;
#pragma omp for schedule(static)
        for (long i = 0; i < n; ++i)
            dist[i] = detail::point_distance(ps, static_cast<std::size_t>(i),
                                             center, space, scratch);
    }
    FarthestPoint far;
    for (long i = 0; i < n; ++i) {
        if (dist[i] > far.distance) {
            far.distance = dist[i];
            far.index = static_cast<std::size_t>(i);
        }
    }
    return far;
}

double grid_min_max_distance(const PointSet& ps, const NormedSpaceSpec& space,
                             const std::vector<double>& box_lo,
                             const std::vector<double>& box_hi, double step) {
    const auto grid = detail::make_grid(box_lo, box_hi, step);
    std::vector<double> row_min(grid.rows);
#pragma omp parallel for schedule(dynamic, 4)
    for (long row = 0; row < grid.rows; ++row)
        row_min[row] = detail::grid_row_min(ps, space, box_lo, step, grid, row);
    double best = std::numeric_limits<double>::infinity();
    for (long row = 0; row < grid.rows; ++row) best = std::min(best, row_min[row]);
    return best;
}

BallBatchResult ball_path_batch(int t_intervals, long n, std::uint64_t seed,
                                const std::vector<int>& ms, long budget) {
    BallBatchResult out;
    out.proposals.resize(n);
    out.fail_mask.resize(n);
    out.value_at_12.resize(n);
    out.value_at_34.resize(n);
    bool exhausted = false;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        try {
            const auto rec = detail::ball_sample_item(
                t_intervals, seed, static_cast<std::uint64_t>(i), ms, budget);
            out.proposals[i] = rec.proposals;
            out.fail_mask[i] = rec.fail_mask;
            out.value_at_12[i] = rec.value_12;
            out.value_at_34[i] = rec.value_34;
        } catch (const std::runtime_error&) {
#pragma omp critical
            exhausted = true;
        }
    }
    if (exhausted)
        throw std::runtime_error("kernels: ball-path rejection budget exceeded");
    return out;
}

ConditionedBatchResult conditioned_path_batch(double y, int t_intervals, long n,
                                              std::uint64_t seed, long budget,
                                              bool reject_ball) {
    ConditionedBatchResult out;
    out.proposals.resize(n);
    out.value_at_34.resize(n);
#pragma omp parallel for schedule(static)
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
