#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radinf/chebyshev.hpp"
#include "radinf/information.hpp"

namespace radinf::gallery {

// Atomic first-coordinate measure on the unit disk: weighted rational atoms
// crossed with Lebesgue measure along the vertical chords.
struct AtomMeasureSpec {
    std::vector<std::pair<double, double>> atoms;  // (position in [-1,1], weight)
    double slope = 0.0;  // steep-functional slope M; 0 = choose automatically
};

struct AtomsConstruction {
    struct ChordPiece {
        double q = 0.0;                 // atom position
        double lo = 0.0, hi = 0.0;      // kept x2-interval
        double weight = 0.0;            // atom weight
    };
    std::vector<ChordPiece> chords;
    std::vector<double> functional;     // unit vector (M, 1)/||(M, 1)||
    double slope = 0.0;
    int k_used = 0;
    double dropped_mass = 0.0;          // atoms below the top-k cut
    double trimmed_mass = 0.0;          // removed overlap zones
    bool fibers_verified = false;       // every L-fiber meets A at most once
    RadiusCertificate certificate;      // radius 0 when verified
};

// Builds the excluded-set construction showing that a single steep functional
// recovers atoms-supported elements exactly outside a set of measure delta.
AtomsConstruction atoms_construct(const AtomMeasureSpec& spec, double delta);

// min over n_directions unit functionals of sup over y of the chord radius of
// the fiber in the unit disk; equals 1 (a central chord is a diameter).
double atoms_worst_radius(int n_directions, int y_steps);

struct SlabSpec {
    int dim = 6;
    std::vector<double> sigmas;   // per-coordinate std deviations, last tiny
    double gamma = 0.01;
    std::vector<double> z;        // slab direction; empty = last axis

    static SlabSpec standard(int dim, double gamma);
};

struct HilbertDemo {
    double e_wor = 0.0;            // sup over the ball of ||a - z|| = 2
    double e_delta = 0.0;          // sqrt(2 + 2 gamma), analytic
    double e_delta_numeric = 0.0;  // constrained-maximization cross-check
    double slab_measure = 0.0;     // MC measure of the slab
    double measure_lcb = 0.0;
};

HilbertDemo hilbert_slab_demo(const SlabSpec& spec, long n, std::uint64_t seed);

struct CostModel {
    double c = 1.0;   // per-observation cost
    double m = 0.1;   // cheap combinatory cost
    double M = 10.0;  // expensive combinatory cost
};

struct CostEval {
    double comp_wor = 0.0;    // min(c + M, 2c)
    double comp_delta = 0.0;  // min(c + m, 2c)
    bool gap = false;         // comp_delta < comp_wor
};

CostEval cost_model_eval(const CostModel& model, double epsilon);

struct UcRow {
    double delta = 0.0;
    double bound = 0.0;
    double param = 0.0;
    bool certified = false;
};

// Probabilistic bounds on the uniform-disk / first-coordinate problem as
// delta decreases; the bounds rise monotonically toward the worst radius 1.
std::vector<UcRow> uc_delta_convergence(const std::vector<double>& deltas,
                                        long measure_samples,
                                        std::uint64_t seed);

struct RemovalReport {
    double base = 0.0;           // Monte Carlo worst radius of the full disk
    double chord_removed = 0.0;  // after deleting the x2-axis chord
    double point_removed = 0.0;  // after deleting a single point
    double slab_removed = 0.0;   // after deleting a positive-measure slab
};

// Removing measure-zero sets leaves the radii unchanged; a positive-measure
// slab (the negative control) lowers them.
RemovalReport measure_zero_removal_probe(int n_points, std::uint64_t seed);

}  // namespace radinf::gallery
