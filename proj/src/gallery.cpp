#include "radinf/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "radinf/rng.hpp"
#include "radinf/stats.hpp"

namespace radinf::gallery {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("gallery: " + msg);
}

}  // namespace

AtomsConstruction atoms_construct(const AtomMeasureSpec& spec, double delta) {
    if (delta <= 0.0)
        fail("delta must be positive: the construction cannot trim at delta = 0");
    if (spec.atoms.empty()) fail("need at least one atom");
    double mass = 0.0;
    for (const auto& [q, c] : spec.atoms) {
        if (std::abs(q) > 1.0) fail("atoms must lie in [-1, 1]");
        if (c <= 0.0) fail("atom weights must be positive");
        mass += c;
    }
    if (std::abs(mass - 1.0) > 1e-9) fail("atom weights must sum to 1");

    // Top-k atoms by weight until the kept mass is >= 1 - delta/2.
    auto atoms = spec.atoms;
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    AtomsConstruction out;
    double kept = 0.0;
    std::size_t k = 0;
    while (k < atoms.size() && kept < 1.0 - delta / 2.0) kept += atoms[k++].second;
    if (kept < 1.0 - delta / 2.0)
        fail("top-k atom mass cannot reach 1 - delta/2");
    out.k_used = static_cast<int>(k);
    out.dropped_mass = mass - kept;

    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            min_gap = std::min(min_gap, std::abs(atoms[i].first - atoms[j].first));
    if (k > 1 && min_gap <= 0.0) fail("atoms must be distinct");

    double M = spec.slope;
    if (M <= 0.0) {
        M = (k > 1) ? 2.05 / min_gap : 1.0;
        if (!std::isfinite(M))
            throw std::runtime_error(
                "gallery: atoms too clustered for any feasible slope");
    }
    out.slope = M;

    // Chord pieces and their images under L(x) = M x1 + x2.
    struct Piece {
        double q, lo, hi, weight, extent;
    };
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < k; ++i) {
        const double q = atoms[i].first;
        const double e = std::sqrt(std::max(0.0, 1.0 - q * q));
        pieces.push_back({q, -e, e, atoms[i].second, 2.0 * e});
    }
    std::sort(pieces.begin(), pieces.end(),
              [M](const Piece& a, const Piece& b) { return M * a.q < M * b.q; });

    // Trim overlap zones of the translated images, cutting the lighter chord.
    double trimmed = 0.0;
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        auto& a = pieces[i];
        auto& b = pieces[i + 1];
        const double a_hi = M * a.q + a.hi;
        const double b_lo = M * b.q + b.lo;
        const double overlap = a_hi - b_lo;
        if (overlap <= 0.0) continue;
        if (a.weight <= b.weight) {
            const double cut = std::min(overlap + 1e-12, a.hi - a.lo);
            a.hi -= cut;
            trimmed += a.weight * cut / a.extent;
        } else {
            const double cut = std::min(overlap + 1e-12, b.hi - b.lo);
            b.lo += cut;
            trimmed += b.weight * cut / b.extent;
        }
    }
    out.trimmed_mass = trimmed;
    if (out.dropped_mass > delta / 2.0 + 1e-12 || trimmed > delta / 2.0 + 1e-12)
        throw std::runtime_error(
            "gallery: trimming exceeds the delta/2 budget; increase the slope");

    // Exhaustive fiber check: all pairs of kept image intervals disjoint.
    out.fibers_verified = true;
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            const double lo_i = M * pieces[i].q + pieces[i].lo;
            const double hi_i = M * pieces[i].q + pieces[i].hi;
            const double lo_j = M * pieces[j].q + pieces[j].lo;
            const double hi_j = M * pieces[j].q + pieces[j].hi;
            if (std::max(lo_i, lo_j) < std::min(hi_i, hi_j))
                out.fibers_verified = false;
        }
    if (!out.fibers_verified)
        throw std::runtime_error("gallery: fiber check failed after trimming");

    const double nrm = std::sqrt(M * M + 1.0);
    out.functional = {M / nrm, 1.0 / nrm};
    for (const auto& p : pieces)
        out.chords.push_back({p.q, p.lo, p.hi, p.weight});

    // Singleton fibers: radius 0 with a zero-gap certificate.
    out.certificate.radius = 0.0;
    out.certificate.upper = 0.0;
    out.certificate.lower = 0.0;
    out.certificate.gap = 0.0;
    out.certificate.converged = true;
    return out;
}

double atoms_worst_radius(int n_directions, int y_steps) {
    if (n_directions < 1 || y_steps < 1) fail("need positive scan sizes");
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n_directions; ++a) {
        const double theta = kPi * a / n_directions;
        const double lx = std::cos(theta), ly = std::sin(theta);
        // Fiber at level y: the chord {x : <l, x> = y} of the disk, with
        // endpoints y*l +- h*l_perp, h = sqrt(1 - y^2); radius = h.
        double sup = 0.0;
        for (int j = 0; j <= y_steps; ++j) {
            const double y = -1.0 + 2.0 * j / y_steps;
            const double h2 = 1.0 - y * y;
            if (h2 < 0.0) continue;
            const double h = std::sqrt(h2);
            const double ex = 2.0 * h * -ly, ey = 2.0 * h * lx;  // e+ - e-
            sup = std::max(sup, 0.5 * std::hypot(ex, ey));
        }
        best = std::min(best, sup);
    }
    return best;
}

SlabSpec SlabSpec::standard(int dim, double gamma) {
    SlabSpec s;
    s.dim = dim;
    s.gamma = gamma;
    s.sigmas.assign(dim, 0.35);
    s.sigmas[dim - 1] = gamma / 3.0;
    s.z.assign(dim, 0.0);
    s.z[dim - 1] = 1.0;
    return s;
}

HilbertDemo hilbert_slab_demo(const SlabSpec& spec, long n, std::uint64_t seed) {
    if (spec.dim < 2) fail("need dim >= 2");
    if (!(spec.gamma > 0.0)) fail("gamma must be positive");
    if (static_cast<int>(spec.sigmas.size()) != spec.dim)
        fail("need one sigma per coordinate");
    std::vector<double> z = spec.z;
    if (z.empty()) {
        z.assign(spec.dim, 0.0);
        z[spec.dim - 1] = 1.0;
    }
    double zn = 0.0;
    for (double v : z) zn += v * v;
    zn = std::sqrt(zn);
    if (zn < 1e-12) fail("z must be a direction");
    for (double& v : z) v /= zn;
    double sigma_z = 0.0;
    for (int d = 0; d < spec.dim; ++d) sigma_z += z[d] * z[d] * spec.sigmas[d] * spec.sigmas[d];
    sigma_z = std::sqrt(sigma_z);
    if (sigma_z > spec.gamma / 3.0 + 1e-12)
        fail("slab needs sigma along z at most gamma/3");

    HilbertDemo demo;
    demo.e_wor = 2.0;  // antipode of z on the ball
    demo.e_delta = std::sqrt(2.0 + 2.0 * spec.gamma);

    // Cross-check by 1-D maximization over s = <z, a>:
    // max (s-1)^2 + (1 - s^2) = 2 - 2s on s in [-gamma, gamma].
    {
        double best = 0.0;
        const int steps = 20001;
        for (int i = 0; i < steps; ++i) {
            const double s = -spec.gamma + 2.0 * spec.gamma * i / (steps - 1);
            const double w2 = 1.0 - s * s;
            best = std::max(best, (s - 1.0) * (s - 1.0) + w2);
        }
        demo.e_delta_numeric = std::sqrt(best);
    }

    // MC measure of the slab under the anisotropic Gaussian conditioned to
    // the ball.
    std::size_t inside = 0, total = 0;
    std::vector<double> a(spec.dim);
    for (long i = 0; i < n; ++i) {
        RngStream rng(seed, streams::kGallery, static_cast<std::uint64_t>(i));
        bool ok = false;
        for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
            double r2 = 0.0;
            for (int d = 0; d < spec.dim; ++d) {
                a[d] = spec.sigmas[d] * rng.next_normal();
                r2 += a[d] * a[d];
            }
            ok = r2 <= 1.0;
        }
        if (!ok) throw std::runtime_error("gallery: ball rejection starved");
        ++total;
        double s = 0.0;
        for (int d = 0; d < spec.dim; ++d) s += z[d] * a[d];
        if (std::abs(s) <= spec.gamma) ++inside;
    }
    demo.slab_measure = static_cast<double>(inside) / static_cast<double>(total);
    demo.measure_lcb = wilson_interval(inside, total).lo;
    return demo;
}

CostEval cost_model_eval(const CostModel& model, double epsilon) {
    if (model.c <= 0.0 || model.m < 0.0 || model.M < 0.0)
        fail("costs must be nonnegative with c > 0");
    (void)epsilon;  // the formulas hold for any tolerance in this model
    CostEval ev;
    ev.comp_delta = std::min(model.c + model.m, 2.0 * model.c);
    ev.comp_wor = std::min(model.c + model.M, 2.0 * model.c);
    ev.gap = ev.comp_delta < ev.comp_wor;
    return ev;
}

std::vector<UcRow> uc_delta_convergence(const std::vector<double>& deltas,
                                        long measure_samples,
                                        std::uint64_t seed) {
    for (std::size_t i = 1; i < deltas.size(); ++i)
        if (deltas[i] >= deltas[i - 1]) fail("deltas must be decreasing");
    const auto op = InformationOperatorSpec::nonadaptive({{1.0, 0.0}});
    SetSampler sampler{ConvexBody::ball(2)};
    const auto space = NormedSpaceSpec::euclidean(2);
    const auto fam = disk_slab_family();
    const auto ests = prob_radius_upper_multi(op, fam, deltas, sampler, space,
                                              measure_samples, 4000, seed);
    std::vector<UcRow> rows;
    for (const auto& e : ests)
        rows.push_back({e.delta, e.bound, e.param, e.certified});
    return rows;
}

RemovalReport measure_zero_removal_probe(int n_points, std::uint64_t seed) {
    const auto op = InformationOperatorSpec::nonadaptive({{1.0, 0.0}});
    const auto space = NormedSpaceSpec::euclidean(2);
    SetSampler disk{ConvexBody::ball(2)};

    std::vector<std::vector<double>> y_grid;
    for (double y = -0.99; y <= 0.991; y += 0.0475) y_grid.push_back({y});
    y_grid.push_back({0.0});
    y_grid.push_back({0.01});
    y_grid.push_back({-0.01});

    RemovalReport rep;
    rep.base = worst_radius(op, disk, space, y_grid, n_points, seed);

    SetSampler no_chord = disk;
    {
        auto base = disk.body.contains;
        no_chord.body.contains = [base](std::span<const double> x) {
            return base(x) && x[0] != 0.0;
        };
    }
    rep.chord_removed =
        worst_radius_allow_empty(op, no_chord, space, y_grid, n_points, seed);

    SetSampler no_point = disk;
    {
        auto base = disk.body.contains;
        no_point.body.contains = [base](std::span<const double> x) {
            return base(x) && !(x[0] == 0.3 && x[1] == 0.4);
        };
    }
    rep.point_removed =
        worst_radius_allow_empty(op, no_point, space, y_grid, n_points, seed);

    SetSampler no_slab = disk;
    {
        auto base = disk.body.contains;
        no_slab.body.contains = [base](std::span<const double> x) {
            return base(x) && std::abs(x[0]) > 0.2;
        };
    }
    rep.slab_removed =
        worst_radius_allow_empty(op, no_slab, space, y_grid, n_points, seed);
    return rep;
}

}  // namespace radinf::gallery
