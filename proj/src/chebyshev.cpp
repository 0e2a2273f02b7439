#include "radinf/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "radinf/kernels.hpp"
#include "radinf/rng.hpp"

namespace radinf {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("chebyshev: " + msg);
}

double distance(const NormedSpaceSpec& space, std::span<const double> a,
                std::span<const double> b, std::vector<double>& scratch) {
    scratch.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) scratch[i] = a[i] - b[i];
    return eval_norm(space, scratch);
}

// Max of ||x_i - x_j||/2 over (all or sampled) pairs: a radius lower bound
// valid in every norm.
double pairwise_half_diameter(const PointSet& ps, const NormedSpaceSpec& space) {
    const std::size_t k = ps.points.size();
    std::vector<double> diff;
    double best = 0.0;
    if (k <= 512) {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                best = std::max(best, distance(space, ps.points[i], ps.points[j], diff));
    } else {
        // Deterministic sampled pairs: strided sweeps plus extremes per axis.
        for (std::size_t s = 1; s <= 7; ++s) {
            const std::size_t stride = (k / 8) * s / 7 + 1;
            for (std::size_t i = 0; i + stride < k; i += 97)
                best = std::max(best,
                                distance(space, ps.points[i], ps.points[i + stride], diff));
        }
        for (int d = 0; d < ps.dim; ++d) {
            std::size_t lo = 0, hi = 0;
            for (std::size_t i = 1; i < k; ++i) {
                if (ps.points[i][d] < ps.points[lo][d]) lo = i;
                if (ps.points[i][d] > ps.points[hi][d]) hi = i;
            }
            best = std::max(best, distance(space, ps.points[lo], ps.points[hi], diff));
        }
    }
    return 0.5 * best;
}

// Euclidean norm of the minimum-norm point of conv{g_i}, by Frank-Wolfe with
// exact line search.  Any point of the hull is a subgradient, so this yields
// the tightest stationarity certificate among them.
double min_norm_in_hull(const std::vector<std::vector<double>>& gs) {
    if (gs.empty()) return 0.0;
    const std::size_t d = gs[0].size();
    std::vector<double> w = gs[0];
    for (int it = 0; it < 300; ++it) {
        std::size_t best = 0;
        double best_dot = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < gs.size(); ++i) {
            double dot = 0.0;
            for (std::size_t j = 0; j < d; ++j) dot += w[j] * gs[i][j];
            if (dot < best_dot) {
                best_dot = dot;
                best = i;
            }
        }
        // Line search min_t ||w + t(g - w)||^2 over [0,1].
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double dj = gs[best][j] - w[j];
            num += w[j] * dj;
            den += dj * dj;
        }
        if (den <= 1e-30) break;
        const double t = std::clamp(-num / den, 0.0, 1.0);
        if (t <= 0.0) break;
        for (std::size_t j = 0; j < d; ++j) w[j] += t * (gs[best][j] - w[j]);
    }
    double n2 = 0.0;
    for (double v : w) n2 += v * v;
    return std::sqrt(n2);
}

struct Box {
    std::vector<double> lo, hi;
};

Box bounding_box(const PointSet& ps) {
    Box b;
    b.lo = ps.points[0];
    b.hi = ps.points[0];
    for (const auto& p : ps.points)
        for (int d = 0; d < ps.dim; ++d) {
            b.lo[d] = std::min(b.lo[d], p[d]);
            b.hi[d] = std::max(b.hi[d], p[d]);
        }
    return b;
}

}  // namespace

PointSet PointSet::from(std::vector<std::vector<double>> pts) {
    if (pts.empty()) fail("point set must be nonempty");
    PointSet ps;
    ps.dim = static_cast<int>(pts[0].size());
    for (const auto& p : pts)
        if (static_cast<int>(p.size()) != ps.dim) fail("points must share dim");
    ps.points = std::move(pts);
    return ps;
}

double set_diameter(const PointSet& ps, const NormedSpaceSpec& space) {
    return 2.0 * pairwise_half_diameter(ps, space);
}

RadiusCertificate radius_center(const PointSet& ps, const NormedSpaceSpec& space,
                                double tol, int max_iters,
                                std::uint64_t init_seed) {
    if (tol <= 0.0) fail("tol must be positive");
    const std::size_t k = ps.points.size();
    const std::size_t d = static_cast<std::size_t>(ps.dim);

    RadiusCertificate cert;
    if (k == 1) {
        cert.center = ps.points[0];
        cert.converged = true;
        return cert;
    }

    const Box box = bounding_box(ps);
    // Euclidean diameter bound of the region holding both the iterate and the
    // optimal center (the center lies in the bounding box for the coordinate
    // -separable norms handled here).
    double box_d2 = 0.0;
    std::vector<double> c(d);
    for (std::size_t j = 0; j < d; ++j) {
        const double w = box.hi[j] - box.lo[j];
        box_d2 += w * w;
        c[j] = 0.5 * (box.lo[j] + box.hi[j]);
    }
    const double diam2 = std::sqrt(box_d2);
    if (init_seed != 0) {
        RngStream rng(init_seed, streams::kSolverInit, 0);
        for (std::size_t j = 0; j < d; ++j)
            c[j] = rng.next_uniform(box.lo[j], box.hi[j]);
    }

    double lower = pairwise_half_diameter(ps, space);
    std::vector<double> diff(d), best_c = c;
    auto far_at = [&](const std::vector<double>& at) {
        return kernels::farthest_point(ps, at, space);
    };

    double f_best = far_at(c).distance;
    best_c = c;

    // Stationarity residual at the incumbent: active subgradients within
    // `slack` of the max and the min-norm point r of their hull certify
    // f* >= f_best - slack - r * D.  The slack trades activation breadth
    // against the additive loss, so a ladder of slacks is probed.
    auto residual_lower = [&](double slack) {
        std::vector<std::vector<double>> gs;
        for (std::size_t i = 0; i < k; ++i) {
            const double di = distance(space, ps.points[i], best_c, diff);
            if (f_best - di <= slack) {
                for (std::size_t j = 0; j < d; ++j) diff[j] = ps.points[i][j] - best_c[j];
                auto g = norm_subgradient(space, diff);
                for (double& v : g) v = -v;
                gs.push_back(std::move(g));
            }
        }
        const double r = min_norm_in_hull(gs);
        return f_best - slack - r * diam2;
    };
    auto best_residual_lower = [&]() {
        double best = lower;
        for (double slack = 1e-12; slack <= 0.3; slack *= 10.0)
            best = std::max(best, residual_lower(slack));
        return best;
    };

    // Guarded candidate move for two-point optima: the midpoint of the two
    // farthest points covers both at half their distance in any norm, which
    // sidesteps the slow crawl along flat valleys.
    auto try_midpoint_snap = [&]() {
        std::size_t i1 = 0;
        double d1 = -1.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double di = distance(space, ps.points[i], c, diff);
            if (di > d1) {
                d1 = di;
                i1 = i;
            }
        }
        std::size_t i2 = (i1 == 0) ? 1 : 0;
        double d2 = -1.0;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == i1) continue;
            const double di = distance(space, ps.points[i], c, diff);
            if (di > d2) {
                d2 = di;
                i2 = i;
            }
        }
        std::vector<double> cand(d);
        for (std::size_t j = 0; j < d; ++j)
            cand[j] = 0.5 * (ps.points[i1][j] + ps.points[i2][j]);
        const double f_cand = far_at(cand).distance;
        if (f_cand < f_best) {
            f_best = f_cand;
            best_c = cand;
            c = cand;
        }
    };

    double delta = std::max(f_best - lower, 8.0 * tol);
    int stall = 0;
    int it = 0;
    for (; it < max_iters; ++it) {
        if (f_best - lower <= tol) break;
        if (it % 25 == 24) try_midpoint_snap();
        const auto far = far_at(c);
        const double f = far.distance;
        if (f < f_best - 0.05 * delta) {
            f_best = f;
            best_c = c;
            stall = 0;
        } else if (++stall > 60) {
            delta *= 0.5;
            stall = 0;
            c = best_c;
            lower = std::max(lower, best_residual_lower());
            if (delta < 0.25 * tol) break;
        }
        for (std::size_t j = 0; j < d; ++j)
            diff[j] = ps.points[far.index][j] - c[j];
        auto g = norm_subgradient(space, diff);
        double g2 = 0.0;
        for (double v : g) g2 += v * v;
        if (g2 <= 1e-30) break;  // farthest point coincides with the center
        const double target = std::max(lower, f_best - delta);
        const double step = (f - target) / g2;
        if (step <= 0.0) {
            delta *= 0.5;
            if (delta < 0.25 * tol) break;
            continue;
        }
        for (std::size_t j = 0; j < d; ++j) c[j] += step * g[j];
    }

    f_best = far_at(best_c).distance;
    lower = std::max(lower, best_residual_lower());
    lower = std::min(lower, f_best);

    cert.radius = f_best;
    cert.upper = f_best;
    cert.lower = lower;
    cert.gap = f_best - lower;
    cert.center = best_c;
    cert.iterations = it;
    cert.converged = cert.gap <= tol;
    return cert;
}

double brute_radius_oracle(const PointSet& ps, const NormedSpaceSpec& space,
                           const std::vector<double>& box_lo,
                           const std::vector<double>& box_hi, double step) {
    if (ps.dim > 3) fail("brute oracle supports dim <= 3 only");
    if (step <= 0.0) fail("step must be positive");
    if (static_cast<int>(box_lo.size()) != ps.dim ||
        static_cast<int>(box_hi.size()) != ps.dim)
        fail("box dimension mismatch");
    for (const auto& p : ps.points)
        for (int j = 0; j < ps.dim; ++j)
            if (p[j] < box_lo[j] - 1e-12 || p[j] > box_hi[j] + 1e-12)
                fail("box must contain the point set");
    return kernels::grid_min_max_distance(ps, space, box_lo, box_hi, step);
}

CenterSetProbe epsilon_center_diameter(const PointSet& ps,
                                       const NormedSpaceSpec& space,
                                       const std::vector<double>& eps_list,
                                       int samples, std::uint64_t seed) {
    if (eps_list.empty()) fail("need at least one eps");
    double min_eps = std::numeric_limits<double>::infinity();
    for (double e : eps_list)
        if (e > 0.0) min_eps = std::min(min_eps, e);
    const double solver_tol =
        std::isfinite(min_eps) ? std::max(1e-10, 1e-3 * min_eps) : 1e-10;
    const auto cert = radius_center(ps, space, solver_tol, 200000);
    const double r = cert.radius;

    CenterSetProbe probe;
    probe.r = r;
    std::vector<double> diff;

    const Box box = bounding_box(ps);
    for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
        const double eps = eps_list[ei];
        // Candidates live in the box inflated by r + eps (per-coordinate
        // bounds hold for every norm handled here).
        std::vector<std::vector<double>> accepted;
        accepted.push_back(cert.center);  // certified center always qualifies
        long hits = 0;
        std::vector<double> cand(ps.dim);
        for (int s = 0; s < samples; ++s) {
            RngStream rng(seed, streams::kCenterSampling,
                          (static_cast<std::uint64_t>(ei) << 40) + s);
            for (int j = 0; j < ps.dim; ++j)
                cand[j] = rng.next_uniform(box.lo[j] - (r + eps), box.hi[j] + (r + eps));
            const auto far = kernels::farthest_point(ps, cand, space);
            if (far.distance <= r + eps) {
                ++hits;
                if (accepted.size() < 768) accepted.push_back(cand);
            }
        }
        double diam = 0.0;
        for (std::size_t i = 0; i < accepted.size(); ++i)
            for (std::size_t j = i + 1; j < accepted.size(); ++j)
                diam = std::max(diam, distance(space, accepted[i], accepted[j], diff));
        probe.bound_trend.emplace_back(eps, diam);
        const double acc = samples > 0 ? static_cast<double>(hits) / samples : 0.0;
        probe.min_acceptance = std::min(probe.min_acceptance, acc);
        if (acc < 1e-4 && eps > 0.0) probe.starved = true;
    }
    return probe;
}

std::vector<double> nested_radius_sequence(const std::vector<PointSet>& sets,
                                           const NormedSpaceSpec& space,
                                           double tol) {
    if (sets.empty()) fail("need at least one set");
    std::vector<double> diff;
    for (std::size_t s = 1; s < sets.size(); ++s) {
        for (const auto& p : sets[s - 1].points) {
            bool found = false;
            for (const auto& q : sets[s].points) {
                if (distance(space, p, q, diff) <= 1e-12) {
                    found = true;
                    break;
                }
            }
            if (!found) fail("nesting violation: A_k must be contained in A_{k+1}");
        }
    }
    std::vector<double> radii;
    radii.reserve(sets.size());
    for (const auto& s : sets)
        radii.push_back(radius_center(s, space, tol, 200000).radius);
    return radii;
}

}  // namespace radinf
