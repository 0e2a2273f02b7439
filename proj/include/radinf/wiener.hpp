#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radinf/chebyshev.hpp"
#include "radinf/rng.hpp"
#include "radinf/space.hpp"
#include "radinf/stats.hpp"

namespace radinf::wiener {

// Brownian-path recovery from the single observation y = f(1/2), with error
// measured in ||g||_sup + |g(1/2)|.  Paths live on the uniform grid k/T and
// are interpreted as piecewise linear, so node sups are exact.

struct WienerConfig {
    int T = 1024;               // grid intervals; power of two >= 8
    long n_samples = 100000;
    std::uint64_t seed = 1;
    long rejection_budget = 1000000;  // proposals per accepted sample
};

void validate_config(const WienerConfig& cfg);

// A fiber of the observation map: either the full ball fiber {f(1/2) = y} or
// its restriction to F(m) = {|f(t) - f(1/2)| < 1 for |t - 1/2| <= 1/m}.
struct FiberSpec {
    double y = 0.0;
    bool full = true;
    int m = 0;  // only when !full; T % m == 0 so window endpoints are nodes

    static FiberSpec full_fiber(double y) { return {y, true, 0}; }
    static FiberSpec fm_fiber(double y, int m) { return {y, false, m}; }
};

// Candidate recovery output: node values of a piecewise-linear function.
// Centers need not start at 0 or stay inside the ball.
struct PiecewiseLinearCenter {
    int T = 0;
    std::vector<double> values;  // size T+1

    static PiecewiseLinearCenter zero(int t_intervals);
    double at_half() const { return values[static_cast<std::size_t>(T) / 2]; }
};

struct DeltaEstimate {
    int m = 0;
    double delta_hat = 0.0;
    Interval ci95;
    long n_samples = 0;
};

struct DeltaTable {
    std::vector<DeltaEstimate> rows;
    double acceptance_rate = 0.0;  // accepted / proposed ball paths
    long total_proposals = 0;
};

struct ProbRadiusEstimate {
    double delta = 0.0;
    double bound = 0.0;       // upper bound on the probabilistic radius
    int m = 0;                // certified window parameter
    DeltaEstimate measure;    // the certificate delta_hat + CI
    bool certified = false;
    std::string message;
};

// --- sampling ---------------------------------------------------------------

// Draws Wiener increments (variance 1/T per step) and rejects until the
// sup norm is <= 1.  Throws when the proposal budget is exhausted.
GridPath sample_ball_path(const WienerConfig& cfg, RngStream& rng);

// Brownian bridge from 0 to y on [0,1/2], free Brownian motion from y on
// [1/2,1]; rejected until sup <= 1 (expensive for |y| near 1).
GridPath sample_conditioned_path(double y, const WienerConfig& cfg,
                                 RngStream& rng);

bool fm_membership(const GridPath& path, int m);

// delta_hat(m) = fraction of ball-conditioned samples outside F(m), with a
// Wilson 95% interval.  The table also reports the rejection-sampler
// acceptance rate.
DeltaEstimate estimate_delta_m(int m, const WienerConfig& cfg);
DeltaTable estimate_delta_table(const std::vector<int>& ms,
                                const WienerConfig& cfg);

// --- exact fiber geometry ---------------------------------------------------

// Exact supremum over the continuum fiber of ||f - c||_sup + |f(1/2) - c(1/2)|
// for a piecewise-linear center.  Computed segment by segment from the
// pointwise adversary envelope; grid-sampled adversaries would understate it.
double fiber_sup_error(const PiecewiseLinearCenter& center, const FiberSpec& fiber,
                       const WienerConfig& cfg);

// Piecewise-linear tent: value y at 1/2, zero outside the F(m) window.
PiecewiseLinearCenter tent_center(double y, int m, const WienerConfig& cfg);

// Minimizes fiber_sup_error over node values (convex piecewise-affine in the
// node values) by subgradient descent with Polyak steps anchored on the
// analytic lower bound: 1 + |y| for full fibers, 1 for window fibers with
// m >= 4 (the envelope outside the window).
RadiusCertificate optimize_center(const FiberSpec& fiber, const WienerConfig& cfg,
                                  double tol, int max_iters);

// max over y_grid of the optimized full-fiber radius; equals 2 when the grid
// contains +-1.
double worst_case_radius_wiener(const WienerConfig& cfg,
                                const std::vector<double>& y_grid, double tol);

// Smallest m among the candidates with delta_hat(m) + 2*CI <= delta, together
// with the sup over y of the optimized F(m) fiber radius (= 1 up to tol).
ProbRadiusEstimate prob_radius_upper_wiener(double delta, const WienerConfig& cfg,
                                            const std::vector<int>& m_candidates,
                                            const std::vector<double>& y_grid,
                                            double tol);

// Same selection from a precomputed measure table, so several deltas can
// share one sampling pass.
ProbRadiusEstimate prob_radius_upper_from_table(
    double delta, const std::vector<DeltaEstimate>& table,
    const WienerConfig& cfg, const std::vector<double>& y_grid, double tol);

// --- general functionals ----------------------------------------------------

// A bounded linear functional on paths: finite atoms plus an optional density
// sampled at grid nodes (trapezoid weights).  Total mass (|atoms| + |density|)
// must be <= 1.
struct PathFunctional {
    std::vector<std::pair<double, double>> atoms;  // (time, weight)
    std::vector<double> density;                   // per-node, may be empty

    double apply(const GridPath& path) const;
    double total_mass(const WienerConfig& cfg) const;
};

struct AdversaryPath {
    GridPath path;
    double functional_value = 0.0;  // N f_eta, independent of eta
    double compensation = 0.0;      // bump amplitude used
};

// Builds f_eta: f(1/2) = 1, f(t1) = -1 for some |t1 - 1/2| <= eta, sup <= 1,
// with the functional value compensated outside the window so that it does
// not depend on eta.  Throws for a unit point mass at 1/2 (nothing to
// compensate with) and when the compensation bump cannot fit in the ball.
AdversaryPath adversary_f_eta(const PathFunctional& functional, double eta,
                              const WienerConfig& cfg);

// Best-center value of the continuum envelope objective forced by the
// adversary family: for every center c the error is at least
// (1 + |c(1/2)|) + |1 - c(1/2)|, so the minimum is 2.  Solved numerically
// over node values as an independent check.
double adversary_forced_error(const PathFunctional& functional,
                              const std::vector<double>& etas,
                              const WienerConfig& cfg, double tol);

}  // namespace radinf::wiener
