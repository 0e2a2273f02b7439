#include "radinf/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "radinf/kernels.hpp"
#include "wiener_core.hpp"

namespace radinf::wiener {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("wiener: " + msg);
}

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

void require_aligned(const WienerConfig& cfg, int m) {
    if (m < 2) fail("window parameter m must be >= 2");
    if (cfg.T % m != 0)
        fail("m must divide T so the window endpoints are grid nodes");
}

// Adversary value range at a grid time, by segment regime.
struct Envelope {
    double lo = -1.0;
    double hi = 1.0;
    double at(double c) const { return std::max(std::abs(lo - c), std::abs(hi - c)); }
};

// Per-node regime table: which of the two envelope regimes (inside the F(m)
// window / outside it) the segments adjacent to each node carry.
struct RegimeTable {
    std::vector<bool> outside;  // node touches an outside segment
    std::vector<bool> inside;   // node touches an inside segment
    Envelope in_env;            // window envelope (outside env is [-1, 1])
    bool has_outside = false;
};

RegimeTable regimes_for(const FiberSpec& fiber, const WienerConfig& cfg) {
    const int T = cfg.T;
    RegimeTable table;
    table.outside.assign(T + 1, false);
    table.inside.assign(T + 1, false);
    if (fiber.full) {
        table.outside.assign(T + 1, true);
        table.has_outside = true;
        return table;
    }
    require_aligned(cfg, fiber.m);
    if (std::abs(fiber.y) > 1.0) fail("|y| must be <= 1");
    const int w = T / fiber.m;
    const int a = T / 2 - w, b = T / 2 + w;
    for (int s = 0; s < T; ++s) {
        const bool inside = (s >= a && s + 1 <= b);
        if (inside) {
            table.inside[s] = table.inside[s + 1] = true;
        } else {
            table.outside[s] = table.outside[s + 1] = true;
            table.has_outside = true;
        }
    }
    table.in_env.lo = std::max(-1.0, fiber.y - 1.0);
    table.in_env.hi = std::min(1.0, fiber.y + 1.0);
    return table;
}

double node_envelope(const RegimeTable& table, int k, double c) {
    double v = 0.0;
    if (table.outside[k]) v = 1.0 + std::abs(c);
    if (table.inside[k]) v = std::max(v, table.in_env.at(c));
    return v;
}

// Derivative (a subgradient) of the achieving envelope piece at node k.
double node_envelope_slope(const RegimeTable& table, int k, double c) {
    const double out_v = table.outside[k] ? 1.0 + std::abs(c) : -1.0;
    const double in_lo = table.inside[k] ? std::abs(table.in_env.lo - c) : -1.0;
    const double in_hi = table.inside[k] ? std::abs(table.in_env.hi - c) : -1.0;
    const double v = std::max({out_v, in_lo, in_hi});
    if (v == out_v) return c > 0.0 ? 1.0 : (c < 0.0 ? -1.0 : 0.0);
    if (v == in_lo) return c > table.in_env.lo ? 1.0 : (c < table.in_env.lo ? -1.0 : 0.0);
    return c > table.in_env.hi ? 1.0 : (c < table.in_env.hi ? -1.0 : 0.0);
}

}  // namespace

void validate_config(const WienerConfig& cfg) {
    if (!is_power_of_two(cfg.T) || cfg.T < 8)
        fail("T must be a power of two >= 8");
    if (cfg.rejection_budget < 1) fail("rejection budget must be positive");
}

PiecewiseLinearCenter PiecewiseLinearCenter::zero(int t_intervals) {
    PiecewiseLinearCenter c;
    c.T = t_intervals;
    c.values.assign(static_cast<std::size_t>(t_intervals) + 1, 0.0);
    return c;
}

GridPath sample_ball_path(const WienerConfig& cfg, RngStream& rng) {
    validate_config(cfg);
    GridPath path = GridPath::uniform(cfg.T);
    for (long attempt = 0; attempt < cfg.rejection_budget; ++attempt)
        if (detail::propose_ball_values(cfg.T, rng, path.values)) return path;
    throw std::runtime_error("wiener: ball-path rejection budget exceeded");
}

GridPath sample_conditioned_path(double y, const WienerConfig& cfg,
                                 RngStream& rng) {
    validate_config(cfg);
    if (std::abs(y) > 1.0) fail("conditioned sampling needs |y| <= 1");
    GridPath path = GridPath::uniform(cfg.T);
    for (long attempt = 0; attempt < cfg.rejection_budget; ++attempt)
        if (detail::propose_conditioned_values(y, cfg.T, rng, path.values, true))
            return path;
    throw std::runtime_error(
        "wiener: conditioned-path rejection budget exceeded (|y| near 1?)");
}

bool fm_membership(const GridPath& path, int m) {
    const int T = static_cast<int>(path.values.size()) - 1;
    if (m < 2 || T % m != 0) fail("misaligned window: m must divide T, m >= 2");
    return detail::fm_fail_mask(path.values, T, {m}) == 0;
}

DeltaEstimate estimate_delta_m(int m, const WienerConfig& cfg) {
    return estimate_delta_table({m}, cfg).rows.front();
}

DeltaTable estimate_delta_table(const std::vector<int>& ms,
                                const WienerConfig& cfg) {
    validate_config(cfg);
    if (cfg.n_samples <= 0) fail("n_samples must be positive");
    if (ms.empty() || ms.size() > 64) fail("need 1..64 window parameters");
    for (int m : ms) require_aligned(cfg, m);

    const auto batch = kernels::ball_path_batch(cfg.T, cfg.n_samples, cfg.seed,
                                                ms, cfg.rejection_budget);
    DeltaTable out;
    for (long i = 0; i < cfg.n_samples; ++i)
        out.total_proposals += batch.proposals[i];
    out.acceptance_rate =
        static_cast<double>(cfg.n_samples) / static_cast<double>(out.total_proposals);
    for (std::size_t j = 0; j < ms.size(); ++j) {
        std::size_t fails = 0;
        for (long i = 0; i < cfg.n_samples; ++i)
            if (batch.fail_mask[i] & (std::uint64_t{1} << j)) ++fails;
        DeltaEstimate est;
        est.m = ms[j];
        est.n_samples = cfg.n_samples;
        est.delta_hat = static_cast<double>(fails) / cfg.n_samples;
        est.ci95 = wilson_interval(fails, static_cast<std::size_t>(cfg.n_samples));
        out.rows.push_back(est);
    }
    return out;
}

double fiber_sup_error(const PiecewiseLinearCenter& center, const FiberSpec& fiber,
                       const WienerConfig& cfg) {
    validate_config(cfg);
    if (center.T != cfg.T ||
        center.values.size() != static_cast<std::size_t>(cfg.T) + 1)
        fail("center grid does not match the config grid");
    const auto table = regimes_for(fiber, cfg);
    double sup = 0.0;
    for (int k = 0; k <= cfg.T; ++k)
        sup = std::max(sup, node_envelope(table, k, center.values[k]));
    return sup + std::abs(fiber.y - center.at_half());
}

PiecewiseLinearCenter tent_center(double y, int m, const WienerConfig& cfg) {
    validate_config(cfg);
    require_aligned(cfg, m);
    auto c = PiecewiseLinearCenter::zero(cfg.T);
    const int w = cfg.T / m;
    const int mid = cfg.T / 2;
    for (int k = mid - w; k <= mid + w; ++k) {
        const double frac = 1.0 - std::abs(k - mid) / static_cast<double>(w);
        c.values[k] = y * frac;
    }
    return c;
}

RadiusCertificate optimize_center(const FiberSpec& fiber, const WienerConfig& cfg,
                                  double tol, int max_iters) {
    validate_config(cfg);
    if (std::abs(fiber.y) > 1.0) fail("|y| must be <= 1");
    if (tol <= 0.0) fail("tol must be positive");
    const int T = cfg.T;
    const int mid = T / 2;
    const auto table = regimes_for(fiber, cfg);

    // Analytic anchors: the outside envelope is >= 1 everywhere, and for full
    // fibers the halfway pin adds |y|.  For m = 2 (window covering [0,1]) the
    // anchor falls back to half the adversary range.
    double anchor;
    if (fiber.full)
        anchor = 1.0 + std::abs(fiber.y);
    else if (table.has_outside)
        anchor = 1.0;
    else
        anchor = 0.5 * (table.in_env.hi - table.in_env.lo);

    std::vector<double> c(static_cast<std::size_t>(T) + 1, 0.0);
    // The halfway node also carries the |y - c(1/2)| term, so it wins ties
    // for the achieving node.
    auto objective = [&](const std::vector<double>& v, int& argmax) {
        double m = -1.0;
        argmax = 0;
        for (int k = 0; k <= T; ++k) {
            const double e = node_envelope(table, k, v[k]);
            if (e > m) {
                m = e;
                argmax = k;
            }
        }
        if (node_envelope(table, mid, v[mid]) >= m - 1e-15) argmax = mid;
        return m + std::abs(fiber.y - v[mid]);
    };

    int argmax = 0;
    double J = objective(c, argmax);
    double J_best = J;
    std::vector<double> best_c = c;
    double delta = std::max(J - anchor, 8.0 * tol);
    const int patience = std::max(60, 2 * (T + 1));  // all nodes may be active
    int stall = 0;
    int it = 0;
    for (; it < max_iters; ++it) {
        if (J_best - anchor <= tol) break;
        J = objective(c, argmax);
        if (J < J_best - 1e-12) {
            J_best = J;
            best_c = c;
            stall = 0;
        } else if (++stall > patience) {
            delta *= 0.5;
            stall = 0;
            c = best_c;
            if (delta < 0.25 * tol) break;
        }
        const double g_node = node_envelope_slope(table, argmax, c[argmax]);
        const double g_abs =
            c[mid] > fiber.y ? 1.0 : (c[mid] < fiber.y ? -1.0 : 0.0);
        double g2;
        if (argmax == mid)
            g2 = (g_node + g_abs) * (g_node + g_abs);
        else
            g2 = g_node * g_node + g_abs * g_abs;
        if (g2 <= 1e-30) break;  // flat achieving piece: J is itself a bound
        const double target = std::max(anchor, J_best - delta);
        const double step = (J - target) / g2;
        if (step <= 0.0) {
            delta *= 0.5;
            if (delta < 0.25 * tol) break;
            continue;
        }
        if (argmax == mid) {
            c[mid] -= step * (g_node + g_abs);
        } else {
            c[argmax] -= step * g_node;
            c[mid] -= step * g_abs;
        }
    }

    RadiusCertificate cert;
    cert.radius = J_best;
    cert.upper = J_best;
    cert.lower = std::min(anchor, J_best);
    cert.gap = cert.upper - cert.lower;
    cert.center = best_c;
    cert.iterations = it;
    cert.converged = cert.gap <= tol;
    return cert;
}

double worst_case_radius_wiener(const WienerConfig& cfg,
                                const std::vector<double>& y_grid, double tol) {
    if (y_grid.empty()) fail("y grid must be nonempty");
    double worst = 0.0;
    for (double y : y_grid)
        worst = std::max(worst,
                         optimize_center(FiberSpec::full_fiber(y), cfg, tol,
                                         200000).radius);
    return worst;
}

ProbRadiusEstimate prob_radius_upper_wiener(double delta, const WienerConfig& cfg,
                                            const std::vector<int>& m_candidates,
                                            const std::vector<double>& y_grid,
                                            double tol) {
    if (m_candidates.empty()) fail("need at least one window candidate");
    const auto table = estimate_delta_table(m_candidates, cfg);
    return prob_radius_upper_from_table(delta, table.rows, cfg, y_grid, tol);
}

ProbRadiusEstimate prob_radius_upper_from_table(
    double delta, const std::vector<DeltaEstimate>& table,
    const WienerConfig& cfg, const std::vector<double>& y_grid, double tol) {
    if (delta < 0.0 || delta > 1.0) fail("delta must lie in [0,1]");
    ProbRadiusEstimate est;
    est.delta = delta;

    std::vector<DeltaEstimate> sorted = table;
    std::sort(sorted.begin(), sorted.end(),
              [](const DeltaEstimate& a, const DeltaEstimate& b) { return a.m < b.m; });
    const DeltaEstimate* chosen = nullptr;
    for (const auto& d : sorted) {
        if (d.delta_hat + 2.0 * d.ci95.half_width() <= delta) {
            chosen = &d;
            break;
        }
    }
    if (chosen == nullptr) {
        est.certified = false;
        est.message =
            "no candidate m reaches the measure target; increase m or n_samples";
        return est;
    }
    est.m = chosen->m;
    est.measure = *chosen;
    est.certified = true;

    double bound = 0.0;
    for (double y : y_grid)
        bound = std::max(bound,
                         optimize_center(FiberSpec::fm_fiber(y, chosen->m), cfg,
                                         tol, 200000).radius);
    est.bound = bound;
    return est;
}

double PathFunctional::apply(const GridPath& path) const {
    double v = 0.0;
    for (const auto& [t, w] : atoms)
        v += w * path.values[static_cast<std::size_t>(path.node_at(t))];
    if (!density.empty()) {
        if (density.size() != path.values.size())
            fail("density must have one weight per grid node");
        const double h = 1.0 / (static_cast<double>(path.values.size()) - 1.0);
        for (std::size_t k = 0; k < density.size(); ++k) {
            const double w =
                (k == 0 || k + 1 == density.size()) ? 0.5 * h : h;
            v += density[k] * path.values[k] * w;
        }
    }
    return v;
}

double PathFunctional::total_mass(const WienerConfig& cfg) const {
    double m = 0.0;
    for (const auto& [t, w] : atoms) m += std::abs(w);
    if (!density.empty()) {
        const double h = 1.0 / cfg.T;
        for (std::size_t k = 0; k < density.size(); ++k) {
            const double w = (k == 0 || k + 1 == density.size()) ? 0.5 * h : h;
            m += std::abs(density[k]) * w;
        }
    }
    return m;
}

namespace {

// Raw adversary profile with a dip spanning j grid steps: ramp 0 -> 1 on
// [0, 1/2], then 1 -> -1 -> 0 over [1/2, 1/2 + 2j/T], zero afterwards.
GridPath raw_adversary(int T, int j) {
    GridPath p = GridPath::uniform(T);
    const int mid = T / 2;
    for (int k = 0; k <= mid; ++k)
        p.values[k] = static_cast<double>(k) / mid;
    for (int k = 1; k <= j; ++k)
        p.values[mid + k] = 1.0 - 2.0 * k / j;
    for (int k = 1; k <= j; ++k)
        p.values[mid + j + k] = -1.0 + static_cast<double>(k) / j;
    return p;
}

}  // namespace

AdversaryPath adversary_f_eta(const PathFunctional& functional, double eta,
                              const WienerConfig& cfg) {
    validate_config(cfg);
    const int T = cfg.T;
    const int mid = T / 2;
    const int j = static_cast<int>(std::floor(eta * T + 1e-9));
    if (j < 2) fail("eta must span at least 2 grid steps");
    if (j > T / 8) fail("eta must be <= 1/8 so the compensation zone is clear");
    if (!functional.density.empty() &&
        functional.density.size() != static_cast<std::size_t>(T) + 1)
        fail("density must carry one weight per grid node");
    if (functional.total_mass(cfg) > 1.0 + 1e-12)
        fail("functional total mass must be <= 1");

    // Unit point mass at 1/2: every fiber value is pinned, compensation is
    // impossible (and the standard-information argument already covers it).
    {
        double at_half = 0.0, elsewhere = 0.0;
        for (const auto& [t, w] : functional.atoms)
            (std::abs(t - 0.5) <= 1e-12 ? at_half : elsewhere) += std::abs(w);
        if (!functional.density.empty())
            for (std::size_t k = 0; k < functional.density.size(); ++k)
                if (std::abs(static_cast<double>(k) / T - 0.5) > 1e-12)
                    elsewhere += std::abs(functional.density[k]);
        if (elsewhere == 0.0 && at_half > 0.0)
            fail("functional is a point mass at 1/2: compensation impossible "
                 "and unnecessary");
    }

    // Target value shared by every eta: the midrange of the raw profile
    // values over all admissible dips, which minimizes the worst-case
    // compensation amplitude.
    double raw_min = 1e18, raw_max = -1e18;
    for (int jj = 2; jj <= T / 8; ++jj) {
        const double v = functional.apply(raw_adversary(T, jj));
        raw_min = std::min(raw_min, v);
        raw_max = std::max(raw_max, v);
    }
    const double target = 0.5 * (raw_min + raw_max);

    const GridPath raw = raw_adversary(T, j);

    // Compensation bump: a tent over a functional-mass node whose support
    // stays clear of the pinned node 1/2 and of every dip this grid allows
    // (dips live in [1/2, 3/4]).  Valid zones: [1/T, 1/2 - 1/T] on the left,
    // (3/4, 1] on the right.
    auto bump_width_at = [&](int z) {
        int w = 0;
        if (z >= 1 && z <= mid - 1) w = std::min(z - 1, mid - 1 - z);
        else if (z > 3 * T / 4) w = std::min(z - (3 * T / 4 + 1), T - z);
        return std::min(w, T / 16);
    };
    int z_node = -1, z_width = 0;
    double z_score = 0.0;
    auto consider = [&](int z, double w) {
        const int width = bump_width_at(z);
        const double score = std::abs(w) * width;  // compensation capacity
        if (width >= 1 && score > z_score) {
            z_node = z;
            z_width = width;
            z_score = score;
        }
    };
    for (const auto& [t, w] : functional.atoms) consider(raw.node_at(t), w);
    if (!functional.density.empty())
        for (int k = 0; k <= T; ++k) consider(k, functional.density[k] / T);
    if (z_node < 0)
        throw std::runtime_error(
            "wiener: no functional mass outside the window; compensation "
            "infeasible");

    std::vector<double> bump(static_cast<std::size_t>(T) + 1, 0.0);
    for (int k = z_node - z_width; k <= z_node + z_width; ++k)
        bump[k] = 1.0 - std::abs(k - z_node) / static_cast<double>(z_width);

    GridPath bump_path = GridPath::uniform(T);
    bump_path.values = bump;
    const double q = functional.apply(bump_path);
    if (std::abs(q) < 1e-12)
        throw std::runtime_error(
            "wiener: compensation bump has zero functional weight");

    const double alpha = (target - functional.apply(raw)) / q;
    AdversaryPath out;
    out.path = raw;
    for (int k = 0; k <= T; ++k) out.path.values[k] += alpha * bump[k];
    out.compensation = alpha;
    out.functional_value = functional.apply(out.path);

    for (double v : out.path.values)
        if (std::abs(v) > 1.0 + 1e-12)
            throw std::runtime_error(
                "wiener: compensation pushes the path outside the ball");
    if (std::abs(out.path.values[mid] - 1.0) > 1e-12 ||
        std::abs(out.path.values[mid + j] + 1.0) > 1e-12)
        throw std::runtime_error("wiener: adversary construction corrupted");
    return out;
}

double adversary_forced_error(const PathFunctional& functional,
                              const std::vector<double>& etas,
                              const WienerConfig& cfg, double tol) {
    if (etas.empty()) fail("need at least one eta");
    std::vector<GridPath> paths;
    for (double eta : etas) paths.push_back(adversary_f_eta(functional, eta, cfg).path);

    const int T = cfg.T;
    const int mid = T / 2;

    // Error of a center against the family: the fixed constructed paths plus
    // the within-segment continuum envelope at 1/2 (dips may approach 1/2
    // arbitrarily closely, where a piecewise-linear center is within o(1) of
    // its value at 1/2).
    auto objective = [&](const std::vector<double>& c) {
        double sup = 1.0 + std::abs(c[mid]);
        for (const auto& p : paths)
            for (int k = 0; k <= T; ++k)
                sup = std::max(sup, std::abs(p.values[k] - c[k]));
        return sup + std::abs(1.0 - c[mid]);
    };

    // Subgradient descent from a deliberately off-center start; the bound
    // (1 + |c(1/2)|) + |1 - c(1/2)| >= 2 pins the optimum value.
    std::vector<double> c(static_cast<std::size_t>(T) + 1, 0.0);
    for (int k = 0; k <= T; ++k) c[k] = 0.3 * std::sin(0.37 * k);
    double J_best = objective(c);
    std::vector<double> best_c = c;
    const double anchor = 2.0;
    double delta = std::max(J_best - anchor, 8.0 * tol);
    int stall = 0;
    for (int it = 0; it < 200000 && J_best - anchor > tol; ++it) {
        // Identify an achieving term and step against it.
        double sup = 1.0 + std::abs(c[mid]);
        int arg_k = mid;
        int arg_path = -1;  // -1 = the envelope term at 1/2
        for (std::size_t i = 0; i < paths.size(); ++i)
            for (int k = 0; k <= T; ++k) {
                const double v = std::abs(paths[i].values[k] - c[k]);
                if (v > sup) {
                    sup = v;
                    arg_k = k;
                    arg_path = static_cast<int>(i);
                }
            }
        const double J = sup + std::abs(1.0 - c[mid]);
        if (J < J_best - 1e-12) {
            J_best = J;
            best_c = c;
            stall = 0;
        } else if (++stall > 60) {
            delta *= 0.5;
            stall = 0;
            c = best_c;
            if (delta < 0.25 * tol) break;
        }
        double g_k;
        if (arg_path < 0)
            g_k = c[arg_k] > 0.0 ? 1.0 : (c[arg_k] < 0.0 ? -1.0 : 0.0);
        else
            g_k = c[arg_k] > paths[arg_path].values[arg_k] ? 1.0 : -1.0;
        const double g_mid = c[mid] > 1.0 ? 1.0 : -1.0;
        double g2 = (arg_k == mid) ? (g_k + g_mid) * (g_k + g_mid)
                                   : g_k * g_k + g_mid * g_mid;
        if (g2 <= 1e-30) break;
        const double target = std::max(anchor, J_best - delta);
        const double step = (J - target) / g2;
        if (step <= 0.0) {
            delta *= 0.5;
            if (delta < 0.25 * tol) break;
            continue;
        }
        if (arg_k == mid) {
            c[mid] -= step * (g_k + g_mid);
        } else {
            c[arg_k] -= step * g_k;
            c[mid] -= step * g_mid;
        }
    }
    return J_best;
}

}  // namespace radinf::wiener
