#pragma once

#include <span>
#include <string>
#include <vector>

namespace radinf {

enum class SpaceKind { Lp, SupNormPath, SupPlusPointPath, Euclidean };

// A norm evaluator plus metadata.  Path kinds act on GridPath values (and,
// for SupNormPath, on plain vectors as the coordinate-max norm); Lp and
// Euclidean act on plain vectors of the declared dimension.
struct NormedSpaceSpec {
    SpaceKind kind = SpaceKind::Euclidean;
    double p = 2.0;       // Lp only
    int dim = 0;          // Lp / Euclidean only
    double t_star = 0.5;  // SupPlusPointPath only
    std::string label;

    static NormedSpaceSpec lp(double p, int dim);
    static NormedSpaceSpec euclidean(int dim);
    static NormedSpaceSpec sup_path();
    static NormedSpaceSpec sup_plus_point(double t_star);

    // Labels as they appear in configs: "lp:p=2,dim=2", "euclidean:dim=3",
    // "sup_path", "sup_plus_point:t=0.5".
    static NormedSpaceSpec parse(const std::string& label);
};

// A discretized continuous path on [0,1] with f(0) = 0.  The grid is strictly
// increasing, starts at 0, ends at 1 and contains the node 1/2 exactly.
struct GridPath {
    std::vector<double> grid;
    std::vector<double> values;

    // Uniform grid with T intervals (T even so that 1/2 is a node).
    static GridPath uniform(int t_intervals);
    int node_at(double t) const;  // exact node lookup, throws if absent
};

void validate_grid_path(const GridPath& path);

struct ModulusEstimate {
    double epsilon = 0.0;
    double value = 0.0;
    double tolerance = 0.0;
    std::string method;
};

double eval_norm(const NormedSpaceSpec& space, std::span<const double> x);
double eval_norm(const NormedSpaceSpec& space, const GridPath& path);

// Numeric estimate of inf{1 - ||(x+y)/2|| : ||x|| = ||y|| = 1, ||x-y|| >= eps}
// over 2-D sections, supported for finite-dimensional kinds with dim <= 3.
// SupNormPath is handled as the coordinate-max norm on R^2.
ModulusEstimate modulus_of_convexity(const NormedSpaceSpec& space, double epsilon,
                                     double tol);

// Convexity flag derived from the modulus estimate at eps = 1.
bool is_uniformly_convex(const NormedSpaceSpec& space, double tol = 1e-4);

// Supporting functional of the norm at v (a subgradient of ||.|| at v), used
// by the minimax solvers.  Returns the zero vector when v = 0.
std::vector<double> norm_subgradient(const NormedSpaceSpec& space,
                                     std::span<const double> v);

}  // namespace radinf
