#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "radinf/information.hpp"
#include "radinf/rng.hpp"

using namespace radinf;

namespace {

InformationOperatorSpec first_coordinate() {
    return InformationOperatorSpec::nonadaptive({{1.0, 0.0}});
}

SetSampler disk_sampler() { return SetSampler{ConvexBody::ball(2)}; }

const NormedSpaceSpec kEuclid = NormedSpaceSpec::euclidean(2);

}  // namespace

TEST_CASE("operator normalization and evaluation") {
    const auto op = InformationOperatorSpec::nonadaptive({{2.0, 0.0}, {3.0, 3.0}});
    CHECK(op.cardinality() == 2);
    CHECK(op.functionals[0][0] == doctest::Approx(1.0));
    CHECK(op.functionals[1][0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    const std::vector<double> x = {0.5, -0.25};
    const auto y = op.evaluate(x);
    CHECK(y[0] == doctest::Approx(0.5));
    CHECK(y[1] == doctest::Approx(0.25 / std::sqrt(2.0)));
    CHECK_THROWS(InformationOperatorSpec::nonadaptive({}));
    CHECK_THROWS(InformationOperatorSpec::nonadaptive({{0.0, 0.0}}));
}

TEST_CASE("adaptive continuation tables pick the branch from the prefix") {
    auto op = InformationOperatorSpec::nonadaptive({{1.0, 0.0}, {0.0, 1.0}});
    InformationOperatorSpec::AdaptiveStage stage;
    stage.edges = {0.0};
    stage.choices = {{0.0, 1.0}, {1.0, 1.0}};  // y1 < 0 -> x2, else diagonal
    op.adaptive[1] = stage;

    const std::vector<double> neg = {-0.5, 0.8};
    const std::vector<double> pos = {0.5, 0.8};
    const auto rows_neg = op.rows_for(op.evaluate(neg));
    const auto rows_pos = op.rows_for(op.evaluate(pos));
    CHECK(rows_neg[1][0] == doctest::Approx(0.0));
    CHECK(rows_pos[1][0] == doctest::Approx(1.0 / std::sqrt(2.0)));

    // Fibers of the adaptive operator are still affine given the prefix.
    const auto fiber = sample_fiber(op, op.evaluate(pos), disk_sampler(), 16, 3);
    for (const auto& pt : fiber.points.points) {
        const auto yy = op.evaluate(pt);
        CHECK(std::abs(yy[0] - 0.5) <= 1e-9);
        CHECK(std::abs(yy[1] - op.evaluate(pos)[1]) <= 1e-9);
    }
}

TEST_CASE("fiber samples satisfy the information constraint") {
    const auto op = first_coordinate();
    const auto fiber = sample_fiber(op, {0.3}, disk_sampler(), 200, 5);
    CHECK(fiber.points.points.size() == 200);  // includes the particular solution
    for (const auto& pt : fiber.points.points) {
        CHECK(std::abs(pt[0] - 0.3) <= 1e-12);
        CHECK(pt[0] * pt[0] + pt[1] * pt[1] <= 1.0 + 1e-12);
    }
}

TEST_CASE("local radius on disk chords") {
    const auto op = first_coordinate();
    const auto sampler = disk_sampler();

    const auto r0 = local_radius(op, {0.0}, sampler, kEuclid, 4096, 11);
    CHECK(r0.radius >= 0.98);
    CHECK(r0.radius <= 1.0 + 1e-9);

    const auto r06 = local_radius(op, {0.6}, sampler, kEuclid, 4096, 11);
    CHECK(r06.radius == doctest::Approx(0.8).epsilon(0.02));

    const auto r1 = local_radius(op, {1.0}, sampler, kEuclid, 64, 11);
    CHECK(r1.radius <= 1e-9);  // the fiber degenerates to one point

    CHECK_THROWS(local_radius(op, {1.2}, sampler, kEuclid, 64, 11));
}

TEST_CASE("local radius is monotone in the sample size") {
    const auto op = first_coordinate();
    const auto sampler = disk_sampler();
    const auto small = local_radius(op, {0.2}, sampler, kEuclid, 256, 7);
    const auto large = local_radius(op, {0.2}, sampler, kEuclid, 4096, 7);
    // Same stream: the small sample is a prefix of the large one.
    CHECK(small.radius <= large.radius + small.gap + large.gap + 1e-12);
}

TEST_CASE("worst radius over information values") {
    const auto sampler = disk_sampler();
    const std::vector<std::vector<double>> grid = {
        {-0.9}, {-0.6}, {-0.3}, {0.0}, {0.3}, {0.6}, {0.9}};
    const double disk_worst =
        worst_radius(first_coordinate(), sampler, kEuclid, grid, 4096, 13);
    CHECK(disk_worst == doctest::Approx(1.0).epsilon(0.02));

    // Observing both coordinates pins the point: radius 0.
    const auto both =
        InformationOperatorSpec::nonadaptive({{1.0, 0.0}, {0.0, 1.0}});
    const std::vector<std::vector<double>> grid2 = {{0.0, 0.0}, {0.3, -0.2}};
    CHECK(worst_radius(both, sampler, kEuclid, grid2, 64, 13) <= 1e-9);

    // Square model set, vertical fibers of length 2.
    SetSampler square{ConvexBody::cube(2)};
    const double square_worst =
        worst_radius(first_coordinate(), square, kEuclid, grid, 4096, 13);
    CHECK(square_worst == doctest::Approx(1.0).epsilon(0.02));

    // The grid max dominates each probed value (same per-index stream).
    CHECK(disk_worst >= local_radius(first_coordinate(), {0.0}, sampler, kEuclid,
                                     4096, mix_key(13, 0x9d2c5680, 3))
                                .radius -
                            1e-12);
}

TEST_CASE("slab family bounds: closed form, edges, monotonicity") {
    const auto op = first_coordinate();
    const auto sampler = disk_sampler();
    const auto fam = disk_slab_family();

    const auto ests = prob_radius_upper_multi(op, fam, {1.0, 0.2, 0.1, 0.05, 0.0},
                                              sampler, kEuclid, 100000, 2000, 17);
    CHECK(ests[0].bound == 0.0);  // delta = 1: the empty member suffices
    CHECK(ests[4].bound == 1.0);  // delta = 0: the full member, exactly
    CHECK(ests[4].measure_lcb == 1.0);
    // Closed-form value at delta = 0.1.
    CHECK(ests[2].bound == doctest::Approx(0.99691).epsilon(2e-3));
    // Bounds are nonincreasing in delta.
    for (int i = 4; i >= 1; --i) CHECK(ests[i].bound >= ests[i - 1].bound - 1e-12);
}

TEST_CASE("Monte Carlo fallback agrees with the exact slab geometry") {
    const auto op = first_coordinate();
    const auto sampler = disk_sampler();
    auto fam = disk_slab_family();
    fam.exact_sup_radius = nullptr;  // force the sampled route
    const auto est =
        prob_radius_upper(op, fam, 0.2, sampler, kEuclid, 60000, 4000, 19);
    CHECK(est.certified);
    const double tau = 1.0 - est.param;
    CHECK(est.bound == doctest::Approx(std::sqrt(1.0 - tau * tau)).epsilon(0.01));
}

TEST_CASE("probabilistic bounds converge to the worst radius as delta -> 0") {
    const auto op = first_coordinate();
    const auto sampler = disk_sampler();
    const auto fam = disk_slab_family();
    const std::vector<double> deltas = {0.2, 0.1, 0.05, 0.01};
    const auto ests = prob_radius_upper_multi(op, fam, deltas, sampler, kEuclid,
                                              100000, 2000, 17);
    std::vector<std::vector<double>> grid;
    for (int i = -9; i <= 9; ++i) grid.push_back({i / 10.0});
    const double worst = worst_radius(op, sampler, kEuclid, grid, 4096, 17);

    const double fitted_c = (worst - ests[0].bound) / deltas[0];
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double deficit = worst - ests[i].bound;
        CHECK(deficit <= fitted_c * deltas[i] + 1e-9);
    }
}

TEST_CASE("family that cannot reach the measure target reports failure") {
    const auto op = first_coordinate();
    const auto sampler = disk_sampler();
    auto fam = disk_slab_family(200);
    fam.params.resize(100);  // largest member keeps only ~60% of the disk
    fam.full_index = -1;
    const auto est =
        prob_radius_upper(op, fam, 0.1, sampler, kEuclid, 20000, 500, 23);
    CHECK_FALSE(est.certified);
    CHECK(!est.message.empty());
    // And delta = 0 without a designated full member also fails.
    const auto est0 =
        prob_radius_upper(op, fam, 0.0, sampler, kEuclid, 20000, 500, 23);
    CHECK_FALSE(est0.certified);
}

TEST_CASE("perturbation probe: zero at scale 0, small at small scales") {
    const auto op = first_coordinate();
    const auto sampler = disk_sampler();
    const auto rows = perturbation_probe(op, {0.0}, {0.0, 1e-3, 1e-2}, sampler,
                                         kEuclid, 4000, 29);
    CHECK(rows[0].delta_radius == 0.0);
    CHECK(rows[1].delta_radius <= 5e-3);
    CHECK_FALSE(rows[0].boundary_flagged);
    // Support-boundary case is flagged, not asserted.
    const auto edge =
        perturbation_probe(op, {0.999}, {1e-3}, sampler, kEuclid, 4000, 29);
    CHECK(edge[0].boundary_flagged);
}

TEST_CASE("cap family grows toward the full disk") {
    const auto fam = disk_cap_family(101);
    CHECK(fam.exact_sup_radius(0.4) == doctest::Approx(0.4));
    const std::vector<double> x = {0.1, 0.35};
    CHECK(fam.member(x, 0.4));
    CHECK_FALSE(fam.member(x, 0.3));
}
