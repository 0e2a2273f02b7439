#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "radinf/chebyshev.hpp"
#include "radinf/rng.hpp"
#include "radinf/space.hpp"

using namespace radinf;

namespace {

PointSet random_points(std::uint64_t seed, int count, double lo = 0.0,
                       double hi = 1.0) {
    RngStream rng(seed, 3, 0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < count; ++i)
        pts.push_back({rng.next_uniform(lo, hi), rng.next_uniform(lo, hi)});
    return PointSet::from(pts);
}

PointSet circle_points(std::uint64_t seed, int count) {
    RngStream rng(seed, 4, 0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < count; ++i) {
        const double a = rng.next_uniform(0.0, 6.283185307179586);
        pts.push_back({std::cos(a), std::sin(a)});
    }
    return PointSet::from(pts);
}

double dist(const NormedSpaceSpec& space, const std::vector<double>& a,
            const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return eval_norm(space, d);
}

}  // namespace

TEST_CASE("two points: radius is half the distance, center the midpoint") {
    const auto euc = NormedSpaceSpec::euclidean(2);
    const auto ps = PointSet::from({{0.2, -0.4}, {1.0, 0.8}});
    const auto cert = radius_center(ps, euc, 1e-8, 200000);
    const double expected = 0.5 * dist(euc, ps.points[0], ps.points[1]);
    CHECK(cert.converged);
    CHECK(cert.radius == doctest::Approx(expected).epsilon(1e-8));
    CHECK(cert.lower <= cert.radius);
    CHECK(cert.gap <= 1e-8);
    CHECK(cert.center[0] == doctest::Approx(0.6).epsilon(1e-3));
    CHECK(cert.center[1] == doctest::Approx(0.2).epsilon(1e-3));
}

TEST_CASE("equilateral triangle: circumradius 1/sqrt(3)") {
    const auto euc = NormedSpaceSpec::euclidean(2);
    const auto ps = PointSet::from(
        {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}});
    const auto cert = radius_center(ps, euc, 1e-8, 400000);
    CHECK(cert.converged);
    CHECK(cert.radius ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("coordinate-max norm pair: radius 1/2 within certificate gap") {
    const auto mx = NormedSpaceSpec::sup_path();
    const auto ps = PointSet::from({{0.0, 0.0}, {1.0, 1.0}});
    const auto cert = radius_center(ps, mx, 1e-6, 200000);
    CHECK(cert.converged);
    CHECK(cert.radius == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("single point set") {
    const auto cert = radius_center(PointSet::from({{0.3, 0.7}}),
                                    NormedSpaceSpec::euclidean(2), 1e-9, 10);
    CHECK(cert.radius == 0.0);
    CHECK(cert.center == std::vector<double>{0.3, 0.7});
}

TEST_CASE("brute oracle on known sets") {
    const auto euc = NormedSpaceSpec::euclidean(2);
    CHECK(brute_radius_oracle(PointSet::from({{0.4, 0.6}}), euc, {0.0, 0.0},
                              {1.0, 1.0}, 1e-2) <= 1e-2);
    const double two = brute_radius_oracle(PointSet::from({{0.0, 0.0}, {2.0, 0.0}}),
                                           euc, {-0.5, -0.5}, {2.5, 0.5}, 1e-3);
    CHECK(two == doctest::Approx(1.0).epsilon(2e-3));
    const double square = brute_radius_oracle(
        PointSet::from({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}), euc,
        {0.0, 0.0}, {1.0, 1.0}, 1e-3);
    CHECK(square == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(2e-3));

    CHECK_THROWS(brute_radius_oracle(
        PointSet::from({{0.0, 0.0, 0.0, 0.0}}), NormedSpaceSpec::euclidean(4),
        {-1, -1, -1, -1}, {1, 1, 1, 1}, 0.5));
    // Box not containing the set is rejected.
    CHECK_THROWS(brute_radius_oracle(PointSet::from({{2.0, 2.0}}), euc,
                                     {0.0, 0.0}, {1.0, 1.0}, 0.1));
}

TEST_CASE("solver agrees with the brute oracle on random instances") {
    for (const auto& space :
         {NormedSpaceSpec::euclidean(2), NormedSpaceSpec::lp(4, 2)}) {
        for (int inst = 0; inst < 25; ++inst) {
            RngStream rng(100 + inst, 5, 0);
            const int count = 2 + static_cast<int>(rng.next_u64() % 7);
            const auto ps = random_points(1000 + inst, count);
            const auto cert = radius_center(ps, space, 1e-6, 300000);
            std::vector<double> lo = {1e9, 1e9}, hi = {-1e9, -1e9};
            for (const auto& p : ps.points)
                for (int d = 0; d < 2; ++d) {
                    lo[d] = std::min(lo[d], p[d]);
                    hi[d] = std::max(hi[d], p[d]);
                }
            const double oracle = brute_radius_oracle(ps, space, lo, hi, 1e-3);
            CHECK(std::abs(cert.radius - oracle) <= 1e-3 + 1e-3);
        }
    }
}

TEST_CASE("radius <= diameter <= 2 radius") {
    const auto euc = NormedSpaceSpec::euclidean(2);
    for (int inst = 0; inst < 20; ++inst) {
        const auto ps = random_points(2000 + inst, 6);
        const auto cert = radius_center(ps, euc, 1e-7, 200000);
        const double diam = set_diameter(ps, euc);
        CHECK(cert.radius <= diam + 1e-6);
        CHECK(diam <= 2.0 * cert.radius + 1e-6);
    }
}

TEST_CASE("unique centers in round norms, two starts agree") {
    for (const auto& space :
         {NormedSpaceSpec::euclidean(2), NormedSpaceSpec::lp(3, 2)}) {
        const auto ps = random_points(37, 6);
        const double tol = 1e-6;
        const auto a = radius_center(ps, space, tol, 400000, 11);
        const auto b = radius_center(ps, space, tol, 400000, 77);
        CHECK(a.converged);
        CHECK(b.converged);
        CHECK(dist(space, a.center, b.center) <= 10.0 * tol);
    }
    // In the coordinate-max norm the center may genuinely differ per run
    // (non-uniformly-convex norm); only the value must agree.
    const auto mx = NormedSpaceSpec::sup_path();
    const auto ps = PointSet::from({{0.0, 0.0}, {1.0, 0.0}});
    const auto a = radius_center(ps, mx, 1e-7, 200000, 11);
    const auto b = radius_center(ps, mx, 1e-7, 200000, 77);
    CHECK(a.radius == doctest::Approx(b.radius).epsilon(1e-6));
}

TEST_CASE("epsilon-center diameters: round norm shrinks, max norm does not") {
    const auto euc = NormedSpaceSpec::euclidean(2);
    const auto pair = PointSet::from({{-1.0, 0.0}, {1.0, 0.0}});
    const auto probe =
        epsilon_center_diameter(pair, euc, {0.2, 0.05, 0.01, 0.0}, 40000, 5);
    // Trend decreases toward zero with eps.
    CHECK(probe.bound_trend[0].second > probe.bound_trend[2].second);
    CHECK(probe.bound_trend[2].second <= 0.35);
    CHECK(probe.bound_trend[3].second == 0.0);  // unique center at eps = 0

    const auto mx = NormedSpaceSpec::sup_path();
    const auto axis_pair = PointSet::from({{0.0, 0.0}, {1.0, 0.0}});
    const auto probe2 =
        epsilon_center_diameter(axis_pair, mx, {0.01}, 40000, 5);
    CHECK(probe2.bound_trend[0].second >= 0.9);  // a whole center segment
}

TEST_CASE("nested radius sequences") {
    const auto euc = NormedSpaceSpec::euclidean(2);

    // Nested random subsets of the disk.
    const auto big = circle_points(8, 64);
    std::vector<PointSet> chain;
    chain.push_back(PointSet::from({big.points.begin(), big.points.begin() + 8}));
    chain.push_back(PointSet::from({big.points.begin(), big.points.begin() + 24}));
    chain.push_back(big);
    const auto radii = nested_radius_sequence(chain, euc, 1e-6);
    CHECK(radii[0] <= radii[1] + 2e-6);
    CHECK(radii[1] <= radii[2] + 2e-6);
    CHECK(radii[2] <= 1.0 + 1e-5);

    // Densifying samples of a fixed circle drive the radius to 1.
    std::vector<PointSet> dense;
    const auto all = circle_points(9, 512);
    dense.push_back(PointSet::from({all.points.begin(), all.points.begin() + 32}));
    dense.push_back(PointSet::from({all.points.begin(), all.points.begin() + 128}));
    dense.push_back(all);
    const auto r2 = nested_radius_sequence(dense, euc, 1e-6);
    CHECK(r2[2] >= 0.99);
    CHECK(r2[2] <= 1.0 + 1e-5);

    // Constant chains have constant radii.
    const auto fixed = random_points(77, 5);
    const auto r3 = nested_radius_sequence({fixed, fixed, fixed}, euc, 1e-7);
    CHECK(r3[0] == doctest::Approx(r3[2]).epsilon(1e-8));

    // Nesting violations are rejected.
    CHECK_THROWS(nested_radius_sequence(
        {PointSet::from({{0.0, 0.0}, {5.0, 5.0}}), PointSet::from({{0.0, 0.0}})},
        euc, 1e-6));
}

TEST_CASE("deleting one re-approximable point barely moves the radius") {
    const auto euc = NormedSpaceSpec::euclidean(2);
    const auto ps = circle_points(21, 200);
    const auto with = radius_center(ps, euc, 1e-7, 200000);

    std::vector<std::vector<double>> rest = ps.points;
    const auto removed = rest[7];
    rest.erase(rest.begin() + 7);
    const auto without = radius_center(PointSet::from(rest), euc, 1e-7, 200000);

    double nn = 1e9;
    for (const auto& q : rest) nn = std::min(nn, dist(euc, removed, q));
    CHECK(std::abs(with.radius - without.radius) <= nn + 1e-5);
}
