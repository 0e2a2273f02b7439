#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "radinf/chebyshev.hpp"
#include "radinf/space.hpp"
#include "radinf/stats.hpp"

namespace radinf {

// Information operators on finite-dimensional model problems: n linear
// functionals (inner products with unit vectors), optionally with a fixed
// continuation table that picks functional i from the previously observed
// value (piecewise-constant adaptivity).
struct InformationOperatorSpec {
    std::vector<std::vector<double>> functionals;  // normalized at construction

    struct AdaptiveStage {
        std::vector<double> edges;  // bin edges over y_{i-1}
        std::vector<std::vector<double>> choices;  // edges.size()+1 functionals
    };
    // adaptive[i-1], when present, overrides functionals[i] given y_{i-1}.
    std::vector<std::optional<AdaptiveStage>> adaptive;

    static InformationOperatorSpec nonadaptive(
        std::vector<std::vector<double>> functionals);

    int cardinality() const { return static_cast<int>(functionals.size()); }
    int dim() const;

    // Observed information vector for x.
    std::vector<double> evaluate(std::span<const double> x) const;
    // The effective (row) matrix consistent with the observed prefix y.
    std::vector<std::vector<double>> rows_for(std::span<const double> y) const;
};

// Membership oracle plus bounding box; the problem sets A live here.
struct ConvexBody {
    int dim = 0;
    std::vector<double> box_lo, box_hi;
    std::function<bool(std::span<const double>)> contains;

    static ConvexBody ball(int dim, double radius = 1.0);
    static ConvexBody cube(int dim, double half_width = 1.0);
};

// Uniform sampler on a body by box rejection; the measure mu of the model
// problems.  Deterministic per (seed, stream, index).
struct SetSampler {
    ConvexBody body;
    long budget_per_point = 100000;

    std::vector<double> sample(std::uint64_t seed, std::uint64_t index) const;
};

struct FiberSample {
    std::vector<double> y;
    PointSet points;
    long proposals = 0;
    double solver_tolerance = 1e-12;
};

// Samples n_points from {x in A : N x = y} by parametrizing the affine fiber
// and rejecting against A; throws if the budget is exhausted with an empty
// sample.  Fewer than n_points accepted is allowed (reported in the sample).
FiberSample sample_fiber(const InformationOperatorSpec& op,
                         const std::vector<double>& y, const SetSampler& sampler,
                         int n_points, std::uint64_t seed);

// Chebyshev radius of a fiber sample; monotone in n_points up to noise.
RadiusCertificate local_radius(const InformationOperatorSpec& op,
                               const std::vector<double>& y,
                               const SetSampler& sampler,
                               const NormedSpaceSpec& space, int n_points,
                               std::uint64_t seed);

// max over the y grid of local_radius; empty fibers propagate the error.
double worst_radius(const InformationOperatorSpec& op, const SetSampler& sampler,
                    const NormedSpaceSpec& space,
                    const std::vector<std::vector<double>>& y_grid, int n_points,
                    std::uint64_t seed);

// Variant for restricted admissible sets, where fibers may legitimately be
// empty (an empty fiber has radius zero).
double worst_radius_allow_empty(const InformationOperatorSpec& op,
                                const SetSampler& sampler,
                                const NormedSpaceSpec& space,
                                const std::vector<std::vector<double>>& y_grid,
                                int n_points, std::uint64_t seed);

// A parametric monotone family of admissible sets A(t): sets grow with the
// parameter index, member(x, t) tests membership, and full_index marks the
// parameter whose set is the whole support (measure exactly 1, no Monte
// Carlo certificate needed).  When the fiber geometry is known in closed
// form the family supplies exact_sup_radius; otherwise the bound falls back
// to Monte Carlo local radii over probe_ys.
struct ExcludedSetFamily {
    std::vector<double> params;  // ascending set inclusion
    int full_index = -1;
    std::function<bool(std::span<const double>, double)> member;
    std::function<double(double)> exact_sup_radius;  // may be empty
    std::function<std::vector<std::vector<double>>(double)> probe_ys;  // may be empty
};

struct ProbRadiusEstimate {
    double delta = 0.0;
    double bound = 0.0;
    double param = 0.0;          // chosen family parameter
    double measure_estimate = 0.0;
    double measure_lcb = 0.0;    // Wilson 95% lower bound (1 when structural)
    bool certified = false;
    std::string message;
};

// Upper bound on the probabilistic radius: the smallest family member with
// certified measure >= 1 - delta, evaluated through its sup radius.
ProbRadiusEstimate prob_radius_upper(const InformationOperatorSpec& op,
                                     const ExcludedSetFamily& family,
                                     double delta, const SetSampler& sampler,
                                     const NormedSpaceSpec& space,
                                     long measure_samples, int fiber_points,
                                     std::uint64_t seed);

// Batched version sharing one measure-estimation pass, so the bounds are
// structurally nonincreasing in delta.
std::vector<ProbRadiusEstimate> prob_radius_upper_multi(
    const InformationOperatorSpec& op, const ExcludedSetFamily& family,
    const std::vector<double>& deltas, const SetSampler& sampler,
    const NormedSpaceSpec& space, long measure_samples, int fiber_points,
    std::uint64_t seed);

struct PerturbationRow {
    double scale = 0.0;
    double delta_radius = 0.0;  // |R(perturbed) - R(base)|
    bool boundary_flagged = false;
};

// Local-radius sensitivity under random perturbations of the functionals and
// of y, evaluated with common random numbers per scale.  Points with local
// radius near zero (the boundary of the support) are flagged, not asserted.
std::vector<PerturbationRow> perturbation_probe(
    const InformationOperatorSpec& op, const std::vector<double>& y,
    const std::vector<double>& scales, const SetSampler& sampler,
    const NormedSpaceSpec& space, int n_points, std::uint64_t seed);

// Slab family on the unit disk for the first-coordinate observation: A(t)
// removes the vertical slab |x_1| <= 1 - t.  Fibers are chords, so the sup
// radius is known exactly.
ExcludedSetFamily disk_slab_family(int steps = 2000);

// Cap family on the unit disk: A(t) removes |x_2| > t (the far tails of every
// fiber).  Exact sup radius min(t, 1).
ExcludedSetFamily disk_cap_family(int steps = 2000);

}  // namespace radinf
