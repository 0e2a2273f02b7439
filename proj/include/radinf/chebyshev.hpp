#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "radinf/space.hpp"

namespace radinf {

struct PointSet {
    std::vector<std::vector<double>> points;
    int dim = 0;

    static PointSet from(std::vector<std::vector<double>> pts);
};

// Result of a radius computation: a certified sandwich
// lower <= Rad(points) <= upper = radius, with gap = upper - lower.
struct RadiusCertificate {
    double radius = 0.0;
    double upper = 0.0;
    double lower = 0.0;
    double gap = 0.0;
    std::vector<double> center;
    bool converged = false;
    int iterations = 0;
};

struct CenterSetProbe {
    double r = 0.0;  // certified radius the probe is relative to
    std::vector<std::pair<double, double>> bound_trend;  // (eps, diameter)
    double min_acceptance = 1.0;
    bool starved = false;
};

// Minimizes c -> max_i ||x_i - c|| by subgradient descent with Polyak-type
// steps and best-iterate tracking.  The lower bound combines the max of
// pairwise half-distances with a stationarity residual at the best iterate.
// `init_seed` jitters the starting point (0 = start from the coordinate-wise
// midpoint of the bounding box).
RadiusCertificate radius_center(const PointSet& points,
                                const NormedSpaceSpec& space, double tol,
                                int max_iters, std::uint64_t init_seed = 0);

// Independent oracle: exhaustive grid search over candidate centers in
// [box_lo, box_hi] at the given step.  dim <= 3 only.
double brute_radius_oracle(const PointSet& points, const NormedSpaceSpec& space,
                           const std::vector<double>& box_lo,
                           const std::vector<double>& box_hi, double step);

// For each eps, rejection-samples centers c with max_i ||x_i - c|| <= r + eps
// and reports the sampled diameter of that center set (in the space norm).
// The certified center is always included among the accepted candidates.
CenterSetProbe epsilon_center_diameter(const PointSet& points,
                                       const NormedSpaceSpec& space,
                                       const std::vector<double>& eps_list,
                                       int samples, std::uint64_t seed);

// Radii of a nested chain A_0 c A_1 c ... (the nesting is verified and a
// violation rejected).  Radii are nondecreasing up to solver tolerance.
std::vector<double> nested_radius_sequence(const std::vector<PointSet>& sets,
                                           const NormedSpaceSpec& space,
                                           double tol);

double set_diameter(const PointSet& points, const NormedSpaceSpec& space);

}  // namespace radinf
