#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "radinf/information.hpp"
#include "radinf/paverage.hpp"

using namespace radinf;

namespace {

InformationOperatorSpec first_coordinate() {
    return InformationOperatorSpec::nonadaptive({{1.0, 0.0}});
}

const NormedSpaceSpec kEuclid = NormedSpaceSpec::euclidean(2);

}  // namespace

TEST_CASE("disk p = 2 radius matches the conditional moment") {
    SetSampler sampler{ConvexBody::ball(2)};
    const auto res =
        p_avg_radius(first_coordinate(), 2.0, sampler, kEuclid, 24, 40000, 3);
    // E[x2^2 | x1] integrates to 1/4 over the disk, so R_2 = 1/2.
    CHECK(res.estimate == doctest::Approx(0.5).epsilon(0.02));
    CHECK(res.ci95.lo <= res.estimate);
    CHECK(res.estimate <= res.ci95.hi + 0.01);
}

TEST_CASE("large p approaches the worst radius") {
    SetSampler sampler{ConvexBody::ball(2)};
    const auto res =
        p_avg_radius(first_coordinate(), 64.0, sampler, kEuclid, 24, 50000, 3);
    CHECK(res.estimate >= 0.88);
    CHECK(res.estimate <= 1.0);
}

TEST_CASE("degenerate one-point set has radius zero for every p") {
    SetSampler point{ConvexBody::cube(2, 0.0)};
    for (double p : {1.0, 2.0, 8.0}) {
        const auto res =
            p_avg_radius(first_coordinate(), p, point, kEuclid, 4, 500, 5);
        CHECK(res.estimate == 0.0);
    }
}

TEST_CASE("p below 1 is rejected") {
    SetSampler sampler{ConvexBody::ball(2)};
    CHECK_THROWS(
        p_avg_radius(first_coordinate(), 0.5, sampler, kEuclid, 8, 1000, 1));
}

TEST_CASE("sweep: exact monotonicity, worst-case cap, delta chain") {
    SetSampler sampler{ConvexBody::ball(2)};
    const auto op = first_coordinate();
    const std::vector<double> ps = {2, 4, 8, 16, 32, 64};
    const std::vector<double> deltas = {0.2, 0.1, 0.05, 0.01};
    const auto fam = disk_cap_family();
    const auto bounds = prob_radius_upper_multi(op, fam, deltas, sampler, kEuclid,
                                                60000, 2000, 7);
    const auto rows =
        p_sweep(op, ps, deltas, sampler, kEuclid, bounds, 1.0, 24, 50000, 7);
    REQUIRE(rows.size() == ps.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].monotone_ok);
        CHECK(rows[i].upper_ok);
        for (bool ok : rows[i].delta_checks) CHECK(ok);
        if (i > 0) CHECK(rows[i].estimate >= rows[i - 1].estimate - 1e-12);
    }
    CHECK(rows[0].estimate == doctest::Approx(0.5).epsilon(0.03));
    CHECK(rows.back().estimate >= 0.88);

    CHECK_THROWS(p_sweep(op, {4, 2}, deltas, sampler, kEuclid, bounds, 1.0, 24,
                         1000, 7));
}
