// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion pins its tolerance in code.

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "radinf/chebyshev.hpp"
#include "radinf/experiments.hpp"
#include "radinf/gallery.hpp"
#include "radinf/information.hpp"
#include "radinf/rng.hpp"
#include "radinf/space.hpp"
#include "radinf/wiener.hpp"

using radinf::experiments::json;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion,
                name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// 1. Worst-case radius 2 vs probabilistic bound 1 at T = 1024, 1e5 samples.
void criterion_1() {
    const auto doc = radinf::experiments::run_experiment(
        json{{"experiment", "wiener-gap"},
             {"T", 1024},
             {"samples", 100000},
             {"deltas", json::array({0.5, 0.2, 0.1})},
             {"seed", 7}});
    const double worst = doc["results"]["worst_radius"].get<double>();
    bool ok = std::abs(worst - 2.0) <= 1e-6;
    std::string detail = "worst=" + fmt(worst);
    for (const auto& b : doc["results"]["prob_bounds"]) {
        const double bound = b["bound"].get<double>();
        const bool certified = b["certified"].get<bool>();
        ok = ok && certified && std::abs(bound - 1.0) <= 1e-6;
        detail += " bound(delta=" + fmt(b["delta"].get<double>()) + ")=" +
                  fmt(bound) + (certified ? "[m=" + std::to_string(b["m"].get<int>()) + "]"
                                          : "[uncertified]");
    }
    report(1, "factor-2 gap between worst-case and probabilistic radii", ok,
           detail);
}

// 2. Fiber radius law 1 + |y| and unit tent-fiber error at T = 1024.
void criterion_2() {
    radinf::wiener::WienerConfig cfg;
    cfg.T = 1024;
    bool ok = true;
    std::string detail;
    for (double y : {0.0, 0.5, -0.5, 1.0, -1.0}) {
        const auto cert = radinf::wiener::optimize_center(
            radinf::wiener::FiberSpec::full_fiber(y), cfg, 1e-7, 200000);
        if (std::abs(cert.radius - (1.0 + std::abs(y))) > 1e-6) {
            ok = false;
            detail += " full(y=" + fmt(y) + ")=" + fmt(cert.radius);
        }
        const auto tent = radinf::wiener::tent_center(y, 8, cfg);
        const double err = radinf::wiener::fiber_sup_error(
            tent, radinf::wiener::FiberSpec::fm_fiber(y, 8), cfg);
        if (std::abs(err - 1.0) > 1e-9) {
            ok = false;
            detail += " tent(y=" + fmt(y) + ")=" + fmt(err);
        }
    }
    report(2, "fiber radius law 1+|y| (1e-6) and tent fibers = 1 (1e-9)", ok,
           ok ? "all y in {0, +-0.5, +-1}" : detail);
}

// 3. delta_m trend over m in {2,...,64} at 1e5 samples.
void criterion_3() {
    const auto doc = radinf::experiments::run_experiment(
        json{{"experiment", "fm-measure"},
             {"T", 1024},
             {"samples", 100000},
             {"ms", json::array({2, 4, 8, 16, 32, 64})},
             {"seed", 11}});
    const bool ok = doc["pass_flags"]["trend_decreasing"].get<bool>();
    std::string detail = "delta_hat:";
    for (const auto& row : doc["results"]["table"])
        detail += " " + fmt(row["delta_hat"].get<double>());
    report(3, "window-measure defect decreasing in m beyond CI overlap", ok,
           detail);
}

// 4. General-functional adversaries: eta-independent values, forced error 2.
void criterion_4() {
    radinf::wiener::WienerConfig cfg;
    cfg.T = 1024;
    std::vector<radinf::wiener::PathFunctional> functionals(3);
    functionals[0].atoms = {{0.25, 0.3}};
    functionals[1].density.assign(cfg.T + 1, 0.9);
    functionals[2].atoms = {{0.75, 0.2}, {0.5, 0.1}};
    functionals[2].density.assign(cfg.T + 1, 0.0);
    for (int k = 0; k <= cfg.T / 2; ++k) functionals[2].density[k] = 0.5;

    const std::vector<double> etas = {1.0 / 16.0, 1.0 / 64.0, 1.0 / 128.0};
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < functionals.size(); ++i) {
        double lo = 1e18, hi = -1e18;
        for (double eta : etas) {
            const auto adv = radinf::wiener::adversary_f_eta(functionals[i], eta, cfg);
            lo = std::min(lo, adv.functional_value);
            hi = std::max(hi, adv.functional_value);
        }
        const double spread = hi - lo;
        const double forced =
            radinf::wiener::adversary_forced_error(functionals[i], etas, cfg, 1e-6);
        detail += " f" + std::to_string(i) + ": spread=" + fmt(spread) +
                  " forced=" + fmt(forced);
        ok = ok && spread <= 1e-9 && forced >= 2.0 - 1e-3;
    }
    report(4, "general functionals forced to worst-case error 2", ok, detail);
}

// 5. Chebyshev solver vs brute oracle; golden values; center-set contrast.
void criterion_5() {
    bool ok = true;
    std::string detail;

    double worst_diff = 0.0;
    for (const auto& space :
         {radinf::NormedSpaceSpec::euclidean(2), radinf::NormedSpaceSpec::lp(4, 2)}) {
        for (int inst = 0; inst < 100; ++inst) {
            radinf::RngStream rng(4000 + inst, 50, 0);
            const int count = 2 + static_cast<int>(rng.next_u64() % 7);
            std::vector<std::vector<double>> pts;
            for (int i = 0; i < count; ++i)
                pts.push_back({rng.next_uniform(0, 1), rng.next_uniform(0, 1)});
            const auto ps = radinf::PointSet::from(pts);
            const auto cert = radinf::radius_center(ps, space, 1e-6, 300000);
            std::vector<double> lo = pts[0], hi = pts[0];
            for (const auto& p : pts)
                for (int d = 0; d < 2; ++d) {
                    lo[d] = std::min(lo[d], p[d]);
                    hi[d] = std::max(hi[d], p[d]);
                }
            const double oracle =
                radinf::brute_radius_oracle(ps, space, lo, hi, 1e-3);
            worst_diff = std::max(worst_diff, std::abs(cert.radius - oracle));
        }
    }
    ok = ok && worst_diff <= 1e-3;
    detail += "max |solver-oracle|=" + fmt(worst_diff);

    const auto euc = radinf::NormedSpaceSpec::euclidean(2);
    const auto two = radinf::radius_center(
        radinf::PointSet::from({{0.1, 0.2}, {0.9, 0.6}}), euc, 1e-8, 200000);
    const double two_exact = 0.5 * std::hypot(0.8, 0.4);
    ok = ok && std::abs(two.radius - two_exact) <= 1e-6;
    const auto tri = radinf::radius_center(
        radinf::PointSet::from({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2}}),
        euc, 1e-8, 400000);
    ok = ok && std::abs(tri.radius - 1.0 / std::sqrt(3.0)) <= 1e-6;
    detail += " two=" + fmt(two.radius) + " tri=" + fmt(tri.radius);

    const auto probe = radinf::epsilon_center_diameter(
        radinf::PointSet::from({{-1.0, 0.0}, {1.0, 0.0}}), euc,
        {0.2, 0.05, 0.01}, 40000, 5);
    const bool shrinking = probe.bound_trend[0].second >
                               probe.bound_trend[2].second &&
                           probe.bound_trend[2].second <= 0.35;
    const auto mx_probe = radinf::epsilon_center_diameter(
        radinf::PointSet::from({{0.0, 0.0}, {1.0, 0.0}}),
        radinf::NormedSpaceSpec::sup_path(), {0.01}, 40000, 5);
    const bool persistent = mx_probe.bound_trend[0].second >= 0.9;
    ok = ok && shrinking && persistent;
    detail += " eps-diam(euclid)=" + fmt(probe.bound_trend[2].second) +
              " eps-diam(max)=" + fmt(mx_probe.bound_trend[0].second);

    report(5, "chebyshev solver: oracle match, golden values, center sets", ok,
           detail);
}

// 6. Uniformly convex convergence and measure-zero removal.
void criterion_6() {
    const auto doc = radinf::experiments::run_experiment(
        json{{"experiment", "uc-convergence"},
             {"deltas", json::array({0.1, 0.01, 0.0})},
             {"measure_samples", 100000},
             {"seed", 13}});
    bool ok = radinf::experiments::all_pass(doc);
    std::string detail = "bounds:";
    for (const auto& row : doc["results"]["rows"])
        detail += " " + fmt(row["bound"].get<double>());

    const auto rep = radinf::gallery::measure_zero_removal_probe(4000, 17);
    const bool removal_ok = rep.point_removed == rep.base &&
                            std::abs(rep.chord_removed - rep.base) <= 0.01 &&
                            rep.base - rep.slab_removed >= 0.02;
    ok = ok && removal_ok;
    detail += " removal(base=" + fmt(rep.base) +
              ", chord=" + fmt(rep.chord_removed) +
              ", slab=" + fmt(rep.slab_removed) + ")";
    report(6, "probabilistic bounds rise to the worst radius; null sets inert",
           ok, detail);
}

// 7. p-average radii: moment value, exact monotonicity, delta^(1/p) chain.
void criterion_7() {
    const auto doc = radinf::experiments::run_experiment(
        json{{"experiment", "p-average"}, {"seed", 19}});
    bool ok = radinf::experiments::all_pass(doc);
    double r2 = 0.0, r64 = 0.0;
    for (const auto& row : doc["results"]["rows"]) {
        if (row["p"].get<double>() == 2.0) r2 = row["estimate"].get<double>();
        if (row["p"].get<double>() == 64.0) r64 = row["estimate"].get<double>();
    }
    ok = ok && std::abs(r2 - 0.5) <= 0.02 && r64 >= 0.9;
    report(7, "p-average radii: R2 = 0.5, monotone in p, chain bounds hold", ok,
           "R2=" + fmt(r2) + " R64=" + fmt(r64));
}

// 8. Gallery: atoms, Hilbert slab, cost model.
void criterion_8() {
    bool ok = true;
    std::string detail;

    for (double delta : {0.05, 0.01}) {
        radinf::gallery::AtomMeasureSpec spec;
        spec.atoms = {{0.0, 0.5}, {0.5, 0.3}, {1.0 / 3.0, 0.2}};
        const auto c = radinf::gallery::atoms_construct(spec, delta);
        ok = ok && c.fibers_verified && c.certificate.radius == 0.0;
    }
    const double atoms_worst = radinf::gallery::atoms_worst_radius(360, 2000);
    ok = ok && std::abs(atoms_worst - 1.0) <= 1e-9;
    detail += "atoms_worst=" + fmt(atoms_worst);

    bool hilbert_ok = true;
    for (double gamma : {0.1, 0.01, 0.001}) {
        const auto demo = radinf::gallery::hilbert_slab_demo(
            radinf::gallery::SlabSpec::standard(6, gamma), 20000, 23);
        hilbert_ok = hilbert_ok && demo.e_wor == 2.0 &&
                     demo.e_delta == std::sqrt(2.0 + 2.0 * gamma) &&
                     std::abs(demo.e_delta_numeric - demo.e_delta) <= 1e-9 &&
                     demo.slab_measure >= 0.99;
        if (gamma == 0.001)
            hilbert_ok = hilbert_ok && std::abs(demo.e_wor / demo.e_delta -
                                                std::sqrt(2.0)) <=
                                           0.01 * std::sqrt(2.0);
    }
    ok = ok && hilbert_ok;
    detail += hilbert_ok ? " hilbert ok" : " hilbert FAILED";

    const auto ev = radinf::gallery::cost_model_eval({1.0, 0.1, 10.0}, 0.5);
    const bool cost_ok = ev.comp_delta == 1.1 && ev.comp_wor == 2.0 && ev.gap;
    ok = ok && cost_ok;
    detail += " cost=(" + fmt(ev.comp_delta) + "," + fmt(ev.comp_wor) + ")";

    report(8, "gallery: zero-radius atoms, sqrt(2) slab, cost formulas", ok,
           detail);
}

// 9. Determinism across thread counts and reruns.
void criterion_9() {
    const json configs[] = {
        json{{"experiment", "wiener-gap"}, {"T", 512}, {"samples", 20000},
             {"y_points", 11}, {"seed", 5}},
        json{{"experiment", "p-average"}, {"n", 5000}, {"measure_samples", 5000},
             {"fiber_points", 500}, {"ps", json::array({2.0, 16.0})}, {"seed", 5}},
    };
    bool ok = true;
    for (const auto& config : configs) {
        omp_set_num_threads(1);
        const auto a = radinf::experiments::run_experiment(config);
        omp_set_num_threads(4);
        const auto b = radinf::experiments::run_experiment(config);
        omp_set_num_threads(2);
        const auto c = radinf::experiments::run_experiment(config);
        ok = ok &&
             radinf::experiments::stable_dump(a) == radinf::experiments::stable_dump(b) &&
             radinf::experiments::stable_dump(a) == radinf::experiments::stable_dump(c);
    }
    report(9, "byte-identical reruns modulo wall_time at any thread count", ok);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
