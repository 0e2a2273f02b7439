// Throughput comparison of the OpenMP kernels against their serial reference
// implementations.  Also double-checks bitwise agreement on the benchmark
// inputs.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "radinf/kernels.hpp"
#include "radinf/rng.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const std::string& name, double serial_s, double omp_s, bool equal) {
    std::printf("%-28s serial %8.3f ms   omp %8.3f ms   speedup %5.2fx   %s\n",
                name.c_str(), serial_s * 1e3, omp_s * 1e3, serial_s / omp_s,
                equal ? "outputs equal" : "OUTPUTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) omp_set_num_threads(std::stoi(argv[1]));
    std::printf("threads: %d\n", omp_get_max_threads());

    // farthest_point over a large point cloud
    {
        radinf::RngStream rng(7, 42, 0);
        std::vector<std::vector<double>> pts(200000, std::vector<double>(2));
        for (auto& p : pts) {
            p[0] = rng.next_uniform(-1, 1);
            p[1] = rng.next_uniform(-1, 1);
        }
        const auto ps = radinf::PointSet::from(pts);
        const auto space = radinf::NormedSpaceSpec::euclidean(2);
        const std::vector<double> c = {0.1, -0.2};

        auto t0 = Clock::now();
        radinf::kernels::FarthestPoint a;
        for (int r = 0; r < 20; ++r)
            a = radinf::kernels::farthest_point_serial(ps, c, space);
        const double ts = seconds_since(t0) / 20;
        t0 = Clock::now();
        radinf::kernels::FarthestPoint b;
        for (int r = 0; r < 20; ++r) b = radinf::kernels::farthest_point(ps, c, space);
        const double tp = seconds_since(t0) / 20;
        report("farthest_point (200k pts)", ts, tp,
               a.index == b.index && a.distance == b.distance);
    }

    // brute radius oracle grid scan
    {
        radinf::RngStream rng(11, 42, 0);
        std::vector<std::vector<double>> pts(8, std::vector<double>(2));
        for (auto& p : pts) {
            p[0] = rng.next_uniform(0, 1);
            p[1] = rng.next_uniform(0, 1);
        }
        const auto ps = radinf::PointSet::from(pts);
        const auto space = radinf::NormedSpaceSpec::euclidean(2);
        const std::vector<double> lo = {0.0, 0.0}, hi = {1.0, 1.0};

        auto t0 = Clock::now();
        const double a = radinf::kernels::grid_min_max_distance_serial(
            ps, space, lo, hi, 2e-3);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const double b =
            radinf::kernels::grid_min_max_distance(ps, space, lo, hi, 2e-3);
        const double tp = seconds_since(t0);
        report("grid oracle (500x500)", ts, tp, a == b);
    }

    // ball-path batch
    {
        const std::vector<int> ms = {4, 16, 64};
        auto t0 = Clock::now();
        const auto a =
            radinf::kernels::ball_path_batch_serial(512, 4000, 3, ms, 1000000);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const auto b = radinf::kernels::ball_path_batch(512, 4000, 3, ms, 1000000);
        const double tp = seconds_since(t0);
        report("ball_path_batch (4k x 512)", ts, tp,
               a.proposals == b.proposals && a.fail_mask == b.fail_mask &&
                   a.value_at_12 == b.value_at_12 && a.value_at_34 == b.value_at_34);
    }

    // conditioned-path batch
    {
        auto t0 = Clock::now();
        const auto a = radinf::kernels::conditioned_path_batch_serial(
            0.5, 512, 4000, 5, 1000000, true);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const auto b = radinf::kernels::conditioned_path_batch(0.5, 512, 4000, 5,
                                                               1000000, true);
        const double tp = seconds_since(t0);
        report("conditioned_batch (4k x 512)", ts, tp,
               a.proposals == b.proposals && a.value_at_34 == b.value_at_34);
    }
    return 0;
}
