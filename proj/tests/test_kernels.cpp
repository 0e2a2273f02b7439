#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <vector>

#include "radinf/kernels.hpp"
#include "radinf/rng.hpp"

using namespace radinf;
using namespace radinf::kernels;

namespace {

PointSet cloud(int n, std::uint64_t seed) {
    RngStream rng(seed, 40, 0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({rng.next_uniform(-1, 1), rng.next_uniform(-1, 1)});
    return PointSet::from(pts);
}

}  // namespace

TEST_CASE("farthest point: OpenMP equals the serial reference bitwise") {
    const auto ps = cloud(20000, 9);
    const auto space = NormedSpaceSpec::euclidean(2);
    const std::vector<double> c = {0.2, -0.1};
    const auto serial = farthest_point_serial(ps, c, space);
    for (int threads : {1, 3}) {
        omp_set_num_threads(threads);
        const auto par = farthest_point(ps, c, space);
        CHECK(par.index == serial.index);
        CHECK(par.distance == serial.distance);
    }
}

TEST_CASE("farthest point breaks ties toward the lower index") {
    const auto ps = PointSet::from({{0.0, 1.0}, {1.0, 0.0}, {0.0, -1.0}});
    const auto space = NormedSpaceSpec::euclidean(2);
    const std::vector<double> c = {0.0, 0.0};
    CHECK(farthest_point_serial(ps, c, space).index == 0);
    CHECK(farthest_point(ps, c, space).index == 0);
}

TEST_CASE("grid oracle: OpenMP equals the serial reference bitwise") {
    const auto ps = cloud(8, 17);
    const auto space = NormedSpaceSpec::lp(4, 2);
    const std::vector<double> lo = {-1.0, -1.0}, hi = {1.0, 1.0};
    const double serial = grid_min_max_distance_serial(ps, space, lo, hi, 0.01);
    for (int threads : {1, 3}) {
        omp_set_num_threads(threads);
        CHECK(grid_min_max_distance(ps, space, lo, hi, 0.01) == serial);
    }
}

TEST_CASE("ball batch: OpenMP equals the serial reference bitwise") {
    const std::vector<int> ms = {4, 16};
    const auto serial = ball_path_batch_serial(128, 500, 7, ms, 100000);
    for (int threads : {1, 3}) {
        omp_set_num_threads(threads);
        const auto par = ball_path_batch(128, 500, 7, ms, 100000);
        CHECK(par.proposals == serial.proposals);
        CHECK(par.fail_mask == serial.fail_mask);
        CHECK(par.value_at_12 == serial.value_at_12);
        CHECK(par.value_at_34 == serial.value_at_34);
    }
}

TEST_CASE("conditioned batch: OpenMP equals the serial reference bitwise") {
    const auto serial = conditioned_path_batch_serial(0.4, 128, 500, 7, 100000, true);
    for (int threads : {1, 3}) {
        omp_set_num_threads(threads);
        const auto par = conditioned_path_batch(0.4, 128, 500, 7, 100000, true);
        CHECK(par.proposals == serial.proposals);
        CHECK(par.value_at_34 == serial.value_at_34);
    }
}

TEST_CASE("streams are pure functions of (seed, stream, index)") {
    RngStream a(5, 2, 9);
    RngStream b(5, 2, 9);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    RngStream c(5, 2, 10);
    bool differs = false;
    RngStream a2(5, 2, 9);
    for (int i = 0; i < 100; ++i) differs = differs || (a2.next_u64() != c.next_u64());
    CHECK(differs);
}
