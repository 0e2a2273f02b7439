#include "radinf/paverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "radinf/rng.hpp"

namespace radinf {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("paverage: " + msg);
}

// Stable p-mean of distances: max-scaled to avoid overflow at large p.
double power_mean(const std::vector<double>& d, double p) {
    double m = 0.0;
    for (double v : d) m = std::max(m, v);
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double v : d) s += std::pow(v / m, p);
    return m * std::pow(s / static_cast<double>(d.size()), 1.0 / p);
}

struct SampleBins {
    std::vector<double> edges;       // y_cells + 1
    std::vector<int> cell_of;        // per sample
    std::vector<std::vector<std::size_t>> members;  // per cell
};

SampleBins bin_samples(const std::vector<double>& y0, int y_cells) {
    SampleBins bins;
    double lo = y0[0], hi = y0[0];
    for (double y : y0) {
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    if (hi <= lo) hi = lo + 1.0;  // degenerate image: one effective cell
    bins.edges.resize(y_cells + 1);
    for (int j = 0; j <= y_cells; ++j)
        bins.edges[j] = lo + (hi - lo) * j / y_cells;
    bins.members.resize(y_cells);
    bins.cell_of.resize(y0.size());
    for (std::size_t i = 0; i < y0.size(); ++i) {
        int c = static_cast<int>((y0[i] - lo) / (hi - lo) * y_cells);
        c = std::clamp(c, 0, y_cells - 1);
        bins.cell_of[i] = c;
        bins.members[c].push_back(i);
    }
    return bins;
}

// Fits the per-cell center minimizing the empirical p-mean by subgradient
// descent with an adaptive Polyak-style target.
std::vector<double> fit_cell_center(const std::vector<std::vector<double>>& xs,
                                    const std::vector<std::size_t>& members,
                                    const NormedSpaceSpec& space, double p,
                                    std::vector<double> init, int iters) {
    const std::size_t dim = init.size();
    std::vector<double> h = std::move(init);
    std::vector<double> diff(dim), d(members.size());

    auto eval = [&](const std::vector<double>& at) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto& x = xs[members[i]];
            for (std::size_t j = 0; j < dim; ++j) diff[j] = x[j] - at[j];
            d[i] = eval_norm(space, diff);
        }
        return power_mean(d, p);
    };

    double f_best = eval(h);
    std::vector<double> best = h;
    double delta = std::max(f_best * 0.5, 1e-6);
    int stall = 0;
    for (int it = 0; it < iters; ++it) {
        const double f = eval(h);
        if (f < f_best - 1e-14) {
            f_best = f;
            best = h;
            stall = 0;
        } else if (++stall > 20) {
            delta *= 0.5;
            stall = 0;
            h = best;
            if (delta < 1e-10) break;
        }
        // Subgradient of the p-mean: weights (d_i / f)^{p-1} / k on each
        // distance subgradient.
        std::vector<double> g(dim, 0.0);
        if (f <= 0.0) break;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (d[i] == 0.0) continue;
            const double w =
                std::exp((p - 1.0) * (std::log(d[i]) - std::log(f))) /
                static_cast<double>(members.size());
            const auto& x = xs[members[i]];
            for (std::size_t j = 0; j < dim; ++j) diff[j] = x[j] - h[j];
            const auto gi = norm_subgradient(space, diff);
            for (std::size_t j = 0; j < dim; ++j) g[j] -= w * gi[j];
        }
        double g2 = 0.0;
        for (double v : g) g2 += v * v;
        if (g2 <= 1e-30) break;
        const double step = (f - std::max(0.0, f_best - delta)) / g2;
        if (step <= 0.0) {
            delta *= 0.5;
            if (delta < 1e-10) break;
            continue;
        }
        for (std::size_t j = 0; j < dim; ++j) h[j] -= step * g[j];
    }
    return best;
}

struct FittedFamily {
    std::vector<std::vector<double>> centers;  // per cell
};

// Distances of every sample to its cell center.
std::vector<double> family_distances(const std::vector<std::vector<double>>& xs,
                                     const SampleBins& bins,
                                     const FittedFamily& fam,
                                     const NormedSpaceSpec& space) {
    std::vector<double> d(xs.size());
    std::vector<double> diff;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& h = fam.centers[bins.cell_of[i]];
        const auto& x = xs[i];
        diff.resize(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) diff[j] = x[j] - h[j];
        d[i] = eval_norm(space, diff);
    }
    return d;
}

Interval bootstrap_ci(const std::vector<double>& d, double p, std::uint64_t seed) {
    const int B = 200;
    const std::size_t n = d.size();
    std::vector<double> reps(B);
    std::vector<double> resampled(n);
    for (int b = 0; b < B; ++b) {
        RngStream rng(seed, streams::kBootstrap, static_cast<std::uint64_t>(b));
        for (std::size_t i = 0; i < n; ++i)
            resampled[i] = d[rng.next_u64() % n];
        reps[b] = power_mean(resampled, p);
    }
    std::sort(reps.begin(), reps.end());
    return {reps[static_cast<std::size_t>(0.025 * B)],
            reps[std::min<std::size_t>(B - 1, static_cast<std::size_t>(0.975 * B))]};
}

struct SweepData {
    std::vector<std::vector<double>> xs;
    SampleBins bins;
};

SweepData draw_samples(const InformationOperatorSpec& op,
                       const SetSampler& sampler, int y_cells, long n,
                       std::uint64_t seed) {
    if (n < 10) fail("need at least 10 samples");
    if (y_cells < 1) fail("need at least one y cell");
    SweepData data;
    data.xs.resize(n);
    const std::uint64_t draw_seed = mix_key(seed, streams::kPAverage, 0);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        data.xs[i] = sampler.sample(draw_seed, static_cast<std::uint64_t>(i));
    std::vector<double> y0(n);
    for (long i = 0; i < n; ++i) y0[i] = op.evaluate(data.xs[i])[0];
    data.bins = bin_samples(y0, y_cells);
    return data;
}

FittedFamily fit_family(const SweepData& data, const NormedSpaceSpec& space,
                        double p, const FittedFamily* warm) {
    const std::size_t dim = data.xs[0].size();
    FittedFamily fam;
    fam.centers.resize(data.bins.members.size());
    for (std::size_t c = 0; c < data.bins.members.size(); ++c) {
        const auto& members = data.bins.members[c];
        if (members.empty()) continue;  // resolved below from a neighbour
        std::vector<double> init(dim, 0.0);
        if (warm != nullptr && !(*warm).centers[c].empty()) {
            init = warm->centers[c];
        } else {
            for (std::size_t i : members)
                for (std::size_t j = 0; j < dim; ++j) init[j] += data.xs[i][j];
            for (double& v : init) v /= static_cast<double>(members.size());
        }
        fam.centers[c] =
            fit_cell_center(data.xs, members, space, p, std::move(init), 400);
    }
    // Empty cells inherit the nearest fitted neighbour.
    for (std::size_t c = 0; c < fam.centers.size(); ++c) {
        if (!fam.centers[c].empty()) continue;
        for (std::size_t off = 1; off < fam.centers.size(); ++off) {
            if (c >= off && !fam.centers[c - off].empty()) {
                fam.centers[c] = fam.centers[c - off];
                break;
            }
            if (c + off < fam.centers.size() && !fam.centers[c + off].empty()) {
                fam.centers[c] = fam.centers[c + off];
                break;
            }
        }
    }
    return fam;
}

}  // namespace

PAverageResult p_avg_radius(const InformationOperatorSpec& op, double p,
                            const SetSampler& sampler,
                            const NormedSpaceSpec& space, int y_cells, long n,
                            std::uint64_t seed) {
    if (p < 1.0) fail("p must be >= 1");
    const auto data = draw_samples(op, sampler, y_cells, n, seed);
    const auto fam = fit_family(data, space, p, nullptr);
    const auto d = family_distances(data.xs, data.bins, fam, space);

    PAverageResult res;
    res.p = p;
    res.n_samples = n;
    res.estimate = power_mean(d, p);
    res.ci95 = bootstrap_ci(d, p, mix_key(seed, streams::kBootstrap, 1));
    res.cell_edges = data.bins.edges;
    res.cell_centers = fam.centers;
    return res;
}

std::vector<PSweepRow> p_sweep(const InformationOperatorSpec& op,
                               const std::vector<double>& ps,
                               const std::vector<double>& deltas,
                               const SetSampler& sampler,
                               const NormedSpaceSpec& space,
                               const std::vector<ProbRadiusEstimate>& prob_bounds,
                               double worst, int y_cells, long n,
                               std::uint64_t seed) {
    if (ps.empty()) fail("need at least one p");
    for (std::size_t i = 1; i < ps.size(); ++i)
        if (ps[i] <= ps[i - 1]) fail("ps must be strictly increasing");
    if (deltas.size() != prob_bounds.size())
        fail("each delta needs its probabilistic bound");

    const auto data = draw_samples(op, sampler, y_cells, n, seed);

    // Fit one center family per p (warm-started along the sweep); every
    // family is a feasible h, so its p-mean upper-bounds the true radius.
    std::vector<FittedFamily> fams;
    for (std::size_t k = 0; k < ps.size(); ++k)
        fams.push_back(fit_family(data, space, ps[k],
                                  fams.empty() ? nullptr : &fams.back()));
    std::vector<std::vector<double>> dists;
    for (const auto& fam : fams)
        dists.push_back(family_distances(data.xs, data.bins, fam, space));

    std::vector<PSweepRow> rows;
    double prev = 0.0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        PSweepRow row;
        row.p = ps[k];
        // Best feasible family at this p; the minimum over a fixed candidate
        // set is exactly nondecreasing in p by the power-mean inequality.
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_fam = 0;
        for (std::size_t f = 0; f < fams.size(); ++f) {
            const double v = power_mean(dists[f], ps[k]);
            if (v < best) {
                best = v;
                best_fam = f;
            }
        }
        row.estimate = best;
        row.ci95 = bootstrap_ci(dists[best_fam], ps[k],
                                mix_key(seed, streams::kBootstrap, 100 + k));
        row.monotone_ok = (k == 0) || (best >= prev - 1e-12);
        prev = best;
        const double two_ci = 2.0 * row.ci95.half_width();
        row.upper_ok = best <= worst + two_ci;
        for (std::size_t di = 0; di < deltas.size(); ++di) {
            const double lower =
                prob_bounds[di].bound * std::pow(deltas[di], 1.0 / ps[k]) - two_ci;
            row.delta_checks.push_back(best >= lower);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace radinf
