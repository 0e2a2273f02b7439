#include "radinf/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace radinf {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("space: " + msg);
}

}  // namespace

NormedSpaceSpec NormedSpaceSpec::lp(double p, int dim) {
    if (p < 1.0) fail("Lp requires p >= 1");
    if (dim < 1) fail("Lp requires dim >= 1");
    NormedSpaceSpec s;
    s.kind = SpaceKind::Lp;
    s.p = p;
    s.dim = dim;
    s.label = "lp:p=" + std::to_string(p) + ",dim=" + std::to_string(dim);
    return s;
}

NormedSpaceSpec NormedSpaceSpec::euclidean(int dim) {
    if (dim < 1) fail("Euclidean requires dim >= 1");
    NormedSpaceSpec s;
    s.kind = SpaceKind::Euclidean;
    s.dim = dim;
    s.label = "euclidean:dim=" + std::to_string(dim);
    return s;
}

NormedSpaceSpec NormedSpaceSpec::sup_path() {
    NormedSpaceSpec s;
    s.kind = SpaceKind::SupNormPath;
    s.label = "sup_path";
    return s;
}

NormedSpaceSpec NormedSpaceSpec::sup_plus_point(double t_star) {
    if (t_star < 0.0 || t_star > 1.0) fail("t* must lie in [0,1]");
    NormedSpaceSpec s;
    s.kind = SpaceKind::SupPlusPointPath;
    s.t_star = t_star;
    s.label = "sup_plus_point:t=" + std::to_string(t_star);
    return s;
}

NormedSpaceSpec NormedSpaceSpec::parse(const std::string& label) {
    auto read_kv = [&](const std::string& body, const std::string& key) {
        auto pos = body.find(key + "=");
        if (pos == std::string::npos) fail("label missing " + key + ": " + label);
        return std::stod(body.substr(pos + key.size() + 1));
    };
    if (label.rfind("lp:", 0) == 0) {
        const std::string body = label.substr(3);
        return lp(read_kv(body, "p"), static_cast<int>(read_kv(body, "dim")));
    }
    if (label.rfind("euclidean", 0) == 0) {
        auto pos = label.find("dim=");
        if (pos == std::string::npos) fail("euclidean label needs dim=");
        return euclidean(std::stoi(label.substr(pos + 4)));
    }
    if (label == "sup_path") return sup_path();
    if (label.rfind("sup_plus_point:", 0) == 0)
        return sup_plus_point(read_kv(label.substr(15), "t"));
    fail("unknown space label: " + label);
}

GridPath GridPath::uniform(int t_intervals) {
    if (t_intervals < 2 || t_intervals % 2 != 0)
        fail("uniform grid needs an even T >= 2 so that 1/2 is a node");
    GridPath path;
    path.grid.resize(t_intervals + 1);
    path.values.assign(t_intervals + 1, 0.0);
    for (int k = 0; k <= t_intervals; ++k)
        path.grid[k] = static_cast<double>(k) / t_intervals;
    return path;
}

int GridPath::node_at(double t) const {
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (std::abs(grid[k] - t) <= 1e-12) return static_cast<int>(k);
    fail("time " + std::to_string(t) + " is not a grid node");
}

void validate_grid_path(const GridPath& path) {
    if (path.grid.size() < 2 || path.grid.size() != path.values.size())
        fail("grid/value size mismatch");
    if (path.grid.front() != 0.0 || path.grid.back() != 1.0)
        fail("grid must span [0,1]");
    for (std::size_t k = 1; k < path.grid.size(); ++k)
        if (path.grid[k] <= path.grid[k - 1]) fail("grid not strictly increasing");
    if (path.values.front() != 0.0) fail("paths start at 0");
    path.node_at(0.5);
}

double eval_norm(const NormedSpaceSpec& space, std::span<const double> x) {
    switch (space.kind) {
        case SpaceKind::Euclidean: {
            if (static_cast<int>(x.size()) != space.dim) fail("dimension mismatch");
            double s = 0.0;
            for (double v : x) s += v * v;
            return std::sqrt(s);
        }
        case SpaceKind::Lp: {
            if (static_cast<int>(x.size()) != space.dim) fail("dimension mismatch");
            if (space.p == 1.0) {
                double s = 0.0;
                for (double v : x) s += std::abs(v);
                return s;
            }
            if (space.p == 2.0) {
                double s = 0.0;
                for (double v : x) s += v * v;
                return std::sqrt(s);
            }
            if (space.p == 4.0) {
                double s = 0.0;
                for (double v : x) s += (v * v) * (v * v);
                return std::sqrt(std::sqrt(s));
            }
            // Scale out the max for stability at large p.
            double m = 0.0;
            for (double v : x) m = std::max(m, std::abs(v));
            if (m == 0.0) return 0.0;
            double s = 0.0;
            for (double v : x) s += std::pow(std::abs(v) / m, space.p);
            return m * std::pow(s, 1.0 / space.p);
        }
        case SpaceKind::SupNormPath: {
            double m = 0.0;
            for (double v : x) m = std::max(m, std::abs(v));
            return m;
        }
        case SpaceKind::SupPlusPointPath:
            fail("sup_plus_point needs a GridPath (t* must be a grid node)");
    }
    fail("unreachable");
}

double eval_norm(const NormedSpaceSpec& space, const GridPath& path) {
    switch (space.kind) {
        case SpaceKind::SupNormPath: {
            double m = 0.0;
            for (double v : path.values) m = std::max(m, std::abs(v));
            return m;
        }
        case SpaceKind::SupPlusPointPath: {
            const int k = path.node_at(space.t_star);
            double m = 0.0;
            for (double v : path.values) m = std::max(m, std::abs(v));
            return m + std::abs(path.values[static_cast<std::size_t>(k)]);
        }
        default:
            return eval_norm(space, std::span<const double>(path.values));
    }
}

std::vector<double> norm_subgradient(const NormedSpaceSpec& space,
                                     std::span<const double> v) {
    std::vector<double> g(v.size(), 0.0);
    const double n = eval_norm(space, v);
    if (n == 0.0) return g;
    switch (space.kind) {
        case SpaceKind::Euclidean:
            for (std::size_t i = 0; i < v.size(); ++i) g[i] = v[i] / n;
            return g;
        case SpaceKind::Lp: {
            if (space.p == 1.0) {
                for (std::size_t i = 0; i < v.size(); ++i)
                    g[i] = (v[i] > 0.0) ? 1.0 : (v[i] < 0.0 ? -1.0 : 0.0);
                return g;
            }
            for (std::size_t i = 0; i < v.size(); ++i) {
                const double a = std::abs(v[i]) / n;
                g[i] = (v[i] >= 0.0 ? 1.0 : -1.0) * std::pow(a, space.p - 1.0);
            }
            return g;
        }
        case SpaceKind::SupNormPath: {
            std::size_t best = 0;
            for (std::size_t i = 1; i < v.size(); ++i)
                if (std::abs(v[i]) > std::abs(v[best])) best = i;
            g[best] = (v[best] >= 0.0) ? 1.0 : -1.0;
            return g;
        }
        case SpaceKind::SupPlusPointPath:
            fail("sup_plus_point subgradient is handled by the path solvers");
    }
    return g;
}

namespace {

// Unit vector of the section norm in direction theta.
void unit_vector(const NormedSpaceSpec& section, double theta, double out[2]) {
    double d[2] = {std::cos(theta), std::sin(theta)};
    const double n = eval_norm(section, std::span<const double>(d, 2));
    out[0] = d[0] / n;
    out[1] = d[1] / n;
}

double pair_objective(const NormedSpaceSpec& section, double th1, double th2) {
    double x[2], y[2];
    unit_vector(section, th1, x);
    unit_vector(section, th2, y);
    double mid[2] = {0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1])};
    return 1.0 - eval_norm(section, std::span<const double>(mid, 2));
}

double pair_distance(const NormedSpaceSpec& section, double th1, double th2) {
    double x[2], y[2];
    unit_vector(section, th1, x);
    unit_vector(section, th2, y);
    double d[2] = {x[0] - y[0], x[1] - y[1]};
    return eval_norm(section, std::span<const double>(d, 2));
}

// inf over feasible th2 (||x - y|| >= eps) of the midpoint objective for a
// fixed th1.  Feasible grid points are checked directly and the constraint
// boundary is located by bisection inside every bracketing cell.
double best_over_th2(const NormedSpaceSpec& section, double th1, double eps,
                     int grid_n) {
    double best = std::numeric_limits<double>::infinity();
    double prev_t = th1;
    double prev_d = 0.0;
    double far_t = th1, far_d = 0.0;
    for (int j = 1; j <= grid_n; ++j) {
        const double t = th1 + 2.0 * kPi * j / (grid_n + 1);
        const double d = pair_distance(section, th1, t);
        if (d > far_d) {
            far_d = d;
            far_t = t;
        }
        if (d >= eps) best = std::min(best, pair_objective(section, th1, t));
        if ((prev_d - eps) * (d - eps) < 0.0) {
            double a = prev_t, b = t;
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (a + b);
                if ((pair_distance(section, th1, m) - eps) * (prev_d - eps) < 0.0)
                    b = m;
                else
                    a = m;
            }
            const double m = 0.5 * (a + b);
            if (pair_distance(section, th1, m) >= eps - 1e-12)
                best = std::min(best, pair_objective(section, th1, m));
        }
        prev_t = t;
        prev_d = d;
    }
    // Boundary case eps = max distance (antipodal pairs): the grid never
    // exceeds the threshold, so refine the distance maximizer directly.
    {
        const double gr = 0.6180339887498949;
        double a = far_t - 2.0 * kPi / (grid_n + 1);
        double b = far_t + 2.0 * kPi / (grid_n + 1);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = pair_distance(section, th1, x1);
        double f2 = pair_distance(section, th1, x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 > f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = pair_distance(section, th1, x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = pair_distance(section, th1, x2);
            }
        }
        const double t_star = f1 > f2 ? x1 : x2;
        if (pair_distance(section, th1, t_star) >= eps - 1e-9)
            best = std::min(best, pair_objective(section, th1, t_star));
    }
    return best;
}

double section_modulus(const NormedSpaceSpec& section, double eps, int grid_n) {
    double best = std::numeric_limits<double>::infinity();
    double best_th1 = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        const double th1 = 2.0 * kPi * i / grid_n;
        const double v = best_over_th2(section, th1, eps, grid_n);
        if (v < best) {
            best = v;
            best_th1 = th1;
        }
    }
    // Golden-section refinement of th1 around the best grid angle.
    const double gr = 0.6180339887498949;
    double a = best_th1 - 2.0 * kPi / grid_n;
    double b = best_th1 + 2.0 * kPi / grid_n;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = best_over_th2(section, x1, eps, grid_n);
    double f2 = best_over_th2(section, x2, eps, grid_n);
    for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = best_over_th2(section, x1, eps, grid_n);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = best_over_th2(section, x2, eps, grid_n);
        }
    }
    best = std::min({best, f1, f2});
    return std::max(best, 0.0);
}

// Restriction of a 3-D norm to the plane spanned by an orthonormal (u, v).
struct PlaneSection {
    NormedSpaceSpec ambient;
    double u[3], v[3];
    double norm(double a, double b) const {
        double x[3] = {a * u[0] + b * v[0], a * u[1] + b * v[1],
                       a * u[2] + b * v[2]};
        return eval_norm(ambient, std::span<const double>(x, 3));
    }
};

}  // namespace

ModulusEstimate modulus_of_convexity(const NormedSpaceSpec& space, double epsilon,
                                     double tol) {
    if (!(epsilon > 0.0) || epsilon > 2.0)
        fail("modulus requires 0 < eps <= 2");
    if (tol <= 0.0) fail("modulus requires tol > 0");

    NormedSpaceSpec section;
    int dim = 2;
    switch (space.kind) {
        case SpaceKind::Euclidean:
            dim = space.dim;
            section = NormedSpaceSpec::euclidean(2);
            break;
        case SpaceKind::Lp:
            dim = space.dim;
            section = NormedSpaceSpec::lp(space.p, 2);
            break;
        case SpaceKind::SupNormPath:
            // Treated as the coordinate-max norm on R^2.
            dim = 2;
            section = space;
            break;
        case SpaceKind::SupPlusPointPath:
            fail("modulus estimation supports finite-dimensional kinds only");
    }
    if (dim > 3) fail("modulus estimation supports dim <= 3 only");

    const int grid_n = std::max(128, static_cast<int>(2.0 / std::sqrt(tol)));

    ModulusEstimate est;
    est.epsilon = epsilon;
    est.tolerance = tol;
    est.method = "2-D section scan + golden refinement";

    if (dim <= 2 || space.kind == SpaceKind::Euclidean) {
        // Euclidean sections of a Euclidean ball are all congruent discs.
        est.value = section_modulus(section, epsilon, grid_n);
        return est;
    }

    // dim == 3, non-Euclidean: every pair x, y spans a 2-D section through the
    // origin, so the modulus is the infimum of section moduli.  Sections are
    // scanned over a hemisphere of normals.
    double best = std::numeric_limits<double>::infinity();
    const int n_sections = 64;
    for (int s = 0; s < n_sections; ++s) {
        const double z = (s + 0.5) / n_sections;            // normal z in (0,1)
        const double phi = 2.39996322972865332 * s;         // golden angle
        const double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
        double n[3] = {rr * std::cos(phi), rr * std::sin(phi), z};
        // Orthonormal basis of the section.
        double u[3] = {-n[1], n[0], 0.0};
        double un = std::sqrt(u[0] * u[0] + u[1] * u[1]);
        if (un < 1e-9) {
            u[0] = 1.0;
            u[1] = 0.0;
            un = 1.0;
        }
        for (double& c : u) c /= un;
        double v[3] = {n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2],
                       n[0] * u[1] - n[1] * u[0]};
        PlaneSection plane{space, {u[0], u[1], u[2]}, {v[0], v[1], v[2]}};

        // Scan the induced planar norm through a generic parametrization.
        NormedSpaceSpec probe = NormedSpaceSpec::euclidean(2);  // placeholder kind
        (void)probe;
        // Reuse the planar machinery by wrapping the induced norm in a local
        // lambda-driven scan (kept inline: the induced norm is not one of the
        // library kinds).
        const int gn = std::max(96, grid_n / 2);
        auto unit2 = [&](double th, double out[2]) {
            const double c = std::cos(th), sn = std::sin(th);
            const double nn = plane.norm(c, sn);
            out[0] = c / nn;
            out[1] = sn / nn;
        };
        auto dist2 = [&](double t1, double t2) {
            double x[2], y[2];
            unit2(t1, x);
            unit2(t2, y);
            return plane.norm(x[0] - y[0], x[1] - y[1]);
        };
        auto obj2 = [&](double t1, double t2) {
            double x[2], y[2];
            unit2(t1, x);
            unit2(t2, y);
            return 1.0 - plane.norm(0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1]));
        };
        double sec_best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < gn; ++i) {
            const double t1 = 2.0 * kPi * i / gn;
            double prev_t = t1, prev_d = 0.0;
            for (int j = 1; j <= gn; ++j) {
                const double t2 = t1 + 2.0 * kPi * j / (gn + 1);
                const double d = dist2(t1, t2);
                if (d >= epsilon) sec_best = std::min(sec_best, obj2(t1, t2));
                if ((prev_d - epsilon) * (d - epsilon) < 0.0) {
                    double a = prev_t, b = t2;
                    for (int it = 0; it < 50; ++it) {
                        const double m = 0.5 * (a + b);
                        if ((dist2(t1, m) - epsilon) * (prev_d - epsilon) < 0.0)
                            b = m;
                        else
                            a = m;
                    }
                    const double m = 0.5 * (a + b);
                    if (dist2(t1, m) >= epsilon - 1e-12)
                        sec_best = std::min(sec_best, obj2(t1, m));
                }
                prev_t = t2;
                prev_d = d;
            }
        }
        best = std::min(best, sec_best);
    }
    est.value = std::max(best, 0.0);
    return est;
}

bool is_uniformly_convex(const NormedSpaceSpec& space, double tol) {
    return modulus_of_convexity(space, 1.0, tol).value > tol;
}

}  // namespace radinf
