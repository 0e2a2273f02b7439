#pragma once

#include <cstdint>
#include <vector>

#include "radinf/information.hpp"
#include "radinf/space.hpp"
#include "radinf/stats.hpp"

namespace radinf {

struct PAverageResult {
    double p = 0.0;
    double estimate = 0.0;
    Interval ci95;
    long n_samples = 0;
    std::vector<double> cell_edges;                // y-bin edges
    std::vector<std::vector<double>> cell_centers; // fitted h per cell
};

// Monte Carlo p-average radius: samples the measure, bins by the observed
// information value, fits a per-cell center minimizing the empirical p-mean
// of ||x - h||, and reports ((1/n) sum ||x_i - h(y_i)||^p)^(1/p) with a
// bootstrap CI.  Binning the infimum over measurable h makes this an upper
// estimate.
PAverageResult p_avg_radius(const InformationOperatorSpec& op, double p,
                            const SetSampler& sampler,
                            const NormedSpaceSpec& space, int y_cells, long n,
                            std::uint64_t seed);

struct PSweepRow {
    double p = 0.0;
    double estimate = 0.0;
    Interval ci95;
    bool monotone_ok = true;   // nondecreasing vs the previous p
    bool upper_ok = true;      // estimate <= worst + 2 CI
    std::vector<bool> delta_checks;  // estimate >= bound * delta^(1/p) - 2 CI
};

// Sweep over increasing p on one fixed sample set.  The reported estimate at
// each p is the best (minimum) p-mean over every center family fitted in the
// sweep, which makes monotonicity in p an exact power-mean statement.
std::vector<PSweepRow> p_sweep(const InformationOperatorSpec& op,
                               const std::vector<double>& ps,
                               const std::vector<double>& deltas,
                               const SetSampler& sampler,
                               const NormedSpaceSpec& space,
                               const std::vector<ProbRadiusEstimate>& prob_bounds,
                               double worst, int y_cells, long n,
                               std::uint64_t seed);

}  // namespace radinf
