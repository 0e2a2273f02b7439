#include "radinf/information.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "radinf/rng.hpp"

namespace radinf {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("information: " + msg);
}

void normalize_row(std::vector<double>& row) {
    double n2 = 0.0;
    for (double v : row) n2 += v * v;
    const double n = std::sqrt(n2);
    if (n < 1e-14) fail("functionals must be nonzero");
    for (double& v : row) v /= n;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Solve M x = b for a small square system by Gaussian elimination.
std::vector<double> solve_small(std::vector<std::vector<double>> M,
                                std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        if (std::abs(M[piv][col]) < 1e-12)
            fail("functionals are linearly dependent");
        std::swap(M[piv], M[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = M[r][col] / M[col][col];
            for (std::size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / M[i][i];
    return x;
}

struct FiberFrame {
    std::vector<double> x0;                 // least-norm point with A x0 = y
    std::vector<std::vector<double>> null;  // orthonormal null-space basis
};

FiberFrame fiber_frame(const std::vector<std::vector<double>>& rows,
                       const std::vector<double>& y, int dim) {
    const std::size_t n = rows.size();
    // Gram matrix A A^T and x0 = A^T (A A^T)^{-1} y.
    std::vector<std::vector<double>> gram(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram[i][j] = dot(rows[i], rows[j]);
    const auto lambda = solve_small(gram, y);
    FiberFrame frame;
    frame.x0.assign(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (int d = 0; d < dim; ++d) frame.x0[d] += lambda[i] * rows[i][d];

    // Gram-Schmidt of the standard basis against the rows.
    std::vector<std::vector<double>> basis = rows;
    for (auto& r : basis) normalize_row(r);
    // Re-orthonormalize the rows themselves first.
    std::vector<std::vector<double>> ortho;
    for (auto r : basis) {
        for (const auto& q : ortho) {
            const double c = dot(r, q);
            for (int d = 0; d < dim; ++d) r[d] -= c * q[d];
        }
        double n2 = dot(r, r);
        if (n2 > 1e-18) {
            for (double& v : r) v /= std::sqrt(n2);
            ortho.push_back(r);
        }
    }
    for (int e = 0; e < dim; ++e) {
        std::vector<double> v(dim, 0.0);
        v[e] = 1.0;
        for (const auto& q : ortho) {
            const double c = dot(v, q);
            for (int d = 0; d < dim; ++d) v[d] -= c * q[d];
        }
        for (const auto& q : frame.null) {
            const double c = dot(v, q);
            for (int d = 0; d < dim; ++d) v[d] -= c * q[d];
        }
        const double n2 = dot(v, v);
        if (n2 > 1e-14) {
            for (double& x : v) x /= std::sqrt(n2);
            frame.null.push_back(v);
        }
    }
    return frame;
}

}  // namespace

InformationOperatorSpec InformationOperatorSpec::nonadaptive(
    std::vector<std::vector<double>> functionals) {
    if (functionals.empty()) fail("cardinality must be >= 1");
    InformationOperatorSpec op;
    for (auto& f : functionals) normalize_row(f);
    const std::size_t d = functionals[0].size();
    for (const auto& f : functionals)
        if (f.size() != d) fail("functionals must share the ambient dimension");
    op.functionals = std::move(functionals);
    op.adaptive.resize(op.functionals.size());
    return op;
}

int InformationOperatorSpec::dim() const {
    return static_cast<int>(functionals.at(0).size());
}

std::vector<double> InformationOperatorSpec::evaluate(
    std::span<const double> x) const {
    std::vector<double> y(functionals.size());
    for (std::size_t i = 0; i < functionals.size(); ++i) {
        if (i > 0 && i - 1 < adaptive.size() && adaptive[i].has_value()) {
            const auto& stage = *adaptive[i];
            std::size_t bin = 0;
            while (bin < stage.edges.size() && y[i - 1] >= stage.edges[bin]) ++bin;
            auto row = stage.choices.at(bin);
            normalize_row(row);
            y[i] = dot(row, x);
        } else {
            y[i] = dot(functionals[i], x);
        }
    }
    return y;
}

std::vector<std::vector<double>> InformationOperatorSpec::rows_for(
    std::span<const double> y) const {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < functionals.size(); ++i) {
        if (i > 0 && i - 1 < adaptive.size() && adaptive[i].has_value()) {
            const auto& stage = *adaptive[i];
            std::size_t bin = 0;
            while (bin < stage.edges.size() && y[i - 1] >= stage.edges[bin]) ++bin;
            auto row = stage.choices.at(bin);
            normalize_row(row);
            rows.push_back(std::move(row));
        } else {
            rows.push_back(functionals[i]);
        }
    }
    return rows;
}

ConvexBody ConvexBody::ball(int dim, double radius) {
    ConvexBody b;
    b.dim = dim;
    b.box_lo.assign(dim, -radius);
    b.box_hi.assign(dim, radius);
    b.contains = [radius](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return s <= radius * radius;
    };
    return b;
}

ConvexBody ConvexBody::cube(int dim, double half_width) {
    ConvexBody b;
    b.dim = dim;
    b.box_lo.assign(dim, -half_width);
    b.box_hi.assign(dim, half_width);
    b.contains = [half_width](std::span<const double> x) {
        for (double v : x)
            if (std::abs(v) > half_width) return false;
        return true;
    };
    return b;
}

std::vector<double> SetSampler::sample(std::uint64_t seed,
                                       std::uint64_t index) const {
    RngStream rng(seed, streams::kMeasureEstimate, index);
    std::vector<double> x(body.dim);
    for (long attempt = 0; attempt < budget_per_point; ++attempt) {
        for (int d = 0; d < body.dim; ++d)
            x[d] = rng.next_uniform(body.box_lo[d], body.box_hi[d]);
        if (body.contains(x)) return x;
    }
    throw std::runtime_error("information: set sampler starved");
}

FiberSample sample_fiber(const InformationOperatorSpec& op,
                         const std::vector<double>& y, const SetSampler& sampler,
                         int n_points, std::uint64_t seed) {
    if (n_points < 1) fail("n_points must be >= 1");
    const int dim = op.dim();
    if (dim != sampler.body.dim) fail("operator/body dimension mismatch");
    if (y.size() != op.functionals.size()) fail("y has wrong cardinality");

    const auto rows = op.rows_for(y);
    const auto frame = fiber_frame(rows, y, dim);

    FiberSample out;
    out.y = y;
    out.points.dim = dim;

    // The particular solution seeds the sample so that degenerate fibers
    // (single points) are represented.
    if (sampler.body.contains(frame.x0)) out.points.points.push_back(frame.x0);

    const std::size_t null_dim = frame.null.size();
    if (null_dim == 0) {
        if (out.points.points.empty())
            throw std::runtime_error("information: empty fiber (budget exhausted)");
        return out;
    }

    // Sampling radius: any fiber point lies in the box, hence within
    // (box half-diagonal) + |box center - x0| of x0 in Euclidean distance.
    double half2 = 0.0, off2 = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double half = 0.5 * (sampler.body.box_hi[d] - sampler.body.box_lo[d]);
        const double off = 0.5 * (sampler.body.box_hi[d] + sampler.body.box_lo[d]) -
                           frame.x0[d];
        half2 += half * half;
        off2 += off * off;
    }
    const double radius = std::sqrt(half2) + std::sqrt(off2) + 1e-9;

    const long budget = std::max<long>(200000, 4000L * n_points);
    std::vector<double> x(dim), t(null_dim);
    for (long attempt = 0; attempt < budget; ++attempt) {
        RngStream rng(seed, streams::kFiberSampling,
                      static_cast<std::uint64_t>(attempt));
        for (std::size_t j = 0; j < null_dim; ++j)
            t[j] = rng.next_uniform(-radius, radius);
        for (int d = 0; d < dim; ++d) {
            double v = frame.x0[d];
            for (std::size_t j = 0; j < null_dim; ++j)
                v += t[j] * frame.null[j][d];
            x[d] = v;
        }
        ++out.proposals;
        if (sampler.body.contains(x)) {
            out.points.points.push_back(x);
            if (static_cast<int>(out.points.points.size()) >= n_points) break;
        }
    }
    if (out.points.points.empty())
        throw std::runtime_error("information: empty fiber (budget exhausted)");
    return out;
}

RadiusCertificate local_radius(const InformationOperatorSpec& op,
                               const std::vector<double>& y,
                               const SetSampler& sampler,
                               const NormedSpaceSpec& space, int n_points,
                               std::uint64_t seed) {
    const auto fiber = sample_fiber(op, y, sampler, n_points, seed);
    return radius_center(fiber.points, space, 1e-6, 50000);
}

namespace {

double worst_radius_impl(const InformationOperatorSpec& op,
                         const SetSampler& sampler, const NormedSpaceSpec& space,
                         const std::vector<std::vector<double>>& y_grid,
                         int n_points, std::uint64_t seed, bool allow_empty) {
    if (y_grid.empty()) fail("y grid must be nonempty");
    double worst = 0.0;
    for (std::size_t i = 0; i < y_grid.size(); ++i) {
        const std::uint64_t y_seed = mix_key(seed, 0x9d2c5680, i);
        try {
            worst = std::max(
                worst, local_radius(op, y_grid[i], sampler, space, n_points, y_seed)
                           .radius);
        } catch (const std::runtime_error&) {
            if (!allow_empty) throw;
        }
    }
    return worst;
}

}  // namespace

double worst_radius(const InformationOperatorSpec& op, const SetSampler& sampler,
                    const NormedSpaceSpec& space,
                    const std::vector<std::vector<double>>& y_grid, int n_points,
                    std::uint64_t seed) {
    return worst_radius_impl(op, sampler, space, y_grid, n_points, seed, false);
}

double worst_radius_allow_empty(const InformationOperatorSpec& op,
                                const SetSampler& sampler,
                                const NormedSpaceSpec& space,
                                const std::vector<std::vector<double>>& y_grid,
                                int n_points, std::uint64_t seed) {
    return worst_radius_impl(op, sampler, space, y_grid, n_points, seed, true);
}

std::vector<ProbRadiusEstimate> prob_radius_upper_multi(
    const InformationOperatorSpec& op, const ExcludedSetFamily& family,
    const std::vector<double>& deltas, const SetSampler& sampler,
    const NormedSpaceSpec& space, long measure_samples, int fiber_points,
    std::uint64_t seed) {
    if (family.params.empty()) fail("family must have parameters");
    if (!family.member) fail("family must define membership");
    if (measure_samples < 100) fail("need at least 100 measure samples");

    // One shared measure pass: counts per family parameter.
    const std::size_t P = family.params.size();
    std::vector<std::uint64_t> counts(P, 0);
    {
        std::vector<std::vector<double>> pts(measure_samples);
#pragma omp parallel for schedule(static)
        for (long i = 0; i < measure_samples; ++i)
            pts[i] = sampler.sample(seed, static_cast<std::uint64_t>(i));
#pragma omp parallel for schedule(static)
        for (long j = 0; j < static_cast<long>(P); ++j) {
            std::uint64_t c = 0;
            for (long i = 0; i < measure_samples; ++i)
                if (family.member(pts[i], family.params[j])) ++c;
            counts[j] = c;
        }
    }
    // The family is nested, so the counts must be nondecreasing.
    for (std::size_t j = 1; j < P; ++j)
        if (counts[j] < counts[j - 1])
            fail("family is not monotone: measures decrease along params");

    auto bound_for = [&](std::size_t j) {
        const double t = family.params[j];
        if (family.exact_sup_radius) return family.exact_sup_radius(t);
        if (!family.probe_ys) fail("family needs probe_ys for the MC bound");
        // Restrict the body to A(t) and take the grid max of local radii.
        SetSampler restricted = sampler;
        auto base_contains = sampler.body.contains;
        auto member = family.member;
        restricted.body.contains = [base_contains, member,
                                    t](std::span<const double> x) {
            return base_contains(x) && member(x, t);
        };
        return worst_radius_allow_empty(op, restricted, space, family.probe_ys(t),
                                        fiber_points, mix_key(seed, 0x85ebca6b, j));
    };

    std::vector<ProbRadiusEstimate> out;
    for (double delta : deltas) {
        if (delta < 0.0 || delta > 1.0) fail("delta must lie in [0,1]");
        ProbRadiusEstimate est;
        est.delta = delta;
        long chosen = -1;
        if (delta == 0.0) {
            if (family.full_index < 0) {
                est.message = "family has no full-measure member for delta = 0";
                out.push_back(est);
                continue;
            }
            chosen = family.full_index;
            est.measure_estimate = 1.0;
            est.measure_lcb = 1.0;  // structural: the full member has measure 1
        } else {
            for (std::size_t j = 0; j < P; ++j) {
                const auto ci = wilson_interval(counts[j],
                                                static_cast<std::size_t>(measure_samples));
                if (ci.lo >= 1.0 - delta) {
                    chosen = static_cast<long>(j);
                    est.measure_estimate =
                        static_cast<double>(counts[j]) / measure_samples;
                    est.measure_lcb = ci.lo;
                    break;
                }
            }
            if (chosen < 0) {
                est.message = "family cannot reach measure 1 - delta within budget";
                out.push_back(est);
                continue;
            }
        }
        est.param = family.params[static_cast<std::size_t>(chosen)];
        est.bound = bound_for(static_cast<std::size_t>(chosen));
        est.certified = true;
        out.push_back(est);
    }
    return out;
}

ProbRadiusEstimate prob_radius_upper(const InformationOperatorSpec& op,
                                     const ExcludedSetFamily& family,
                                     double delta, const SetSampler& sampler,
                                     const NormedSpaceSpec& space,
                                     long measure_samples, int fiber_points,
                                     std::uint64_t seed) {
    return prob_radius_upper_multi(op, family, {delta}, sampler, space,
                                   measure_samples, fiber_points, seed)
        .front();
}

std::vector<PerturbationRow> perturbation_probe(
    const InformationOperatorSpec& op, const std::vector<double>& y,
    const std::vector<double>& scales, const SetSampler& sampler,
    const NormedSpaceSpec& space, int n_points, std::uint64_t seed) {
    const auto base = local_radius(op, y, sampler, space, n_points, seed);
    const bool boundary = base.radius < 0.1;  // outside the interior regime

    // One fixed perturbation direction, scaled per row (common random
    // numbers: the fiber-sampling seed is shared with the base run).
    RngStream dir(seed, streams::kPerturbation, 0);
    std::vector<std::vector<double>> xi_rows(op.functionals.size(),
                                             std::vector<double>(op.dim()));
    std::vector<double> xi_y(y.size());
    for (auto& row : xi_rows)
        for (double& v : row) v = dir.next_normal();
    for (double& v : xi_y) v = dir.next_normal();

    std::vector<PerturbationRow> rows;
    for (double scale : scales) {
        PerturbationRow row;
        row.scale = scale;
        row.boundary_flagged = boundary;
        auto funcs = op.functionals;
        for (std::size_t i = 0; i < funcs.size(); ++i)
            for (int d = 0; d < op.dim(); ++d)
                funcs[i][d] += scale * xi_rows[i][d];
        std::vector<double> y2 = y;
        for (std::size_t i = 0; i < y2.size(); ++i) y2[i] += scale * xi_y[i];
        try {
            auto perturbed = InformationOperatorSpec::nonadaptive(funcs);
            const auto r2 = local_radius(perturbed, y2, sampler, space, n_points, seed);
            row.delta_radius = std::abs(r2.radius - base.radius);
        } catch (const std::runtime_error&) {
            row.boundary_flagged = true;  // fiber left the support
            row.delta_radius = 0.0;
        }
        rows.push_back(row);
    }
    return rows;
}

ExcludedSetFamily disk_slab_family(int steps) {
    if (steps < 2) fail("slab family needs >= 2 steps");
    ExcludedSetFamily fam;
    for (int j = 0; j < steps; ++j)
        fam.params.push_back(static_cast<double>(j) / (steps - 1));
    fam.full_index = steps - 1;
    fam.member = [](std::span<const double> x, double t) {
        return std::abs(x[0]) > 1.0 - t;
    };
    fam.exact_sup_radius = [](double t) {
        const double tau = 1.0 - t;
        if (tau >= 1.0) return 0.0;
        return std::sqrt(1.0 - tau * tau);
    };
    fam.probe_ys = [](double t) {
        const double tau = 1.0 - t;
        std::vector<std::vector<double>> ys;
        for (double f : {1e-9, 0.1, 0.3, 0.5, 0.8}) {
            const double y = tau + f * (1.0 - tau);
            if (y < 1.0) {
                ys.push_back({y});
                ys.push_back({-y});
            }
        }
        return ys;
    };
    return fam;
}

ExcludedSetFamily disk_cap_family(int steps) {
    if (steps < 2) fail("cap family needs >= 2 steps");
    ExcludedSetFamily fam;
    for (int j = 0; j < steps; ++j)
        fam.params.push_back(static_cast<double>(j) / (steps - 1));
    fam.full_index = steps - 1;
    fam.member = [](std::span<const double> x, double t) {
        return std::abs(x[1]) <= t;
    };
    fam.exact_sup_radius = [](double t) { return t; };
    fam.probe_ys = [](double) {
        return std::vector<std::vector<double>>{{0.0}, {0.5}, {-0.5}};
    };
    return fam;
}

}  // namespace radinf
