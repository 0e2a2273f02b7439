#pragma once

// Shared single-sample Wiener proposal logic used by both the serial and the
// OpenMP batch kernels and by the public one-path samplers.

#include <cmath>
#include <cstdint>
#include <vector>

#include "radinf/rng.hpp"

namespace radinf::wiener::detail {

// One Wiener proposal on the uniform grid with T intervals; returns false as
// soon as the running sup exceeds 1 (early rejection).
inline bool propose_ball_values(int T, RngStream& rng, std::vector<double>& v) {
    v.resize(static_cast<std::size_t>(T) + 1);
    v[0] = 0.0;
    const double sd = std::sqrt(1.0 / T);
    for (int k = 1; k <= T; ++k) {
        v[k] = v[k - 1] + sd * rng.next_normal();
        if (std::abs(v[k]) > 1.0) return false;
    }
    return true;
}

// Bridge from 0 to y on [0,1/2] (value at T/2 pinned to y exactly), free
// motion on [1/2,1].  When reject_ball is set, proposals with sup > 1 fail.
inline bool propose_conditioned_values(double y, int T, RngStream& rng,
                                       std::vector<double>& v, bool reject_ball) {
    v.resize(static_cast<std::size_t>(T) + 1);
    const int half = T / 2;
    const double sd = std::sqrt(1.0 / T);
    double w = 0.0;
    v[0] = 0.0;
    for (int k = 1; k <= half; ++k) {
        w += sd * rng.next_normal();
        v[k] = w;  // raw motion; corrected below once w(1/2) is known
    }
    const double drift = v[half] - y;
    for (int k = 1; k <= half; ++k) {
        v[k] -= drift * static_cast<double>(k) / half;
        if (reject_ball && std::abs(v[k]) > 1.0) return false;
    }
    v[half] = y;
    for (int k = half + 1; k <= T; ++k) {
        v[k] = v[k - 1] + sd * rng.next_normal();
        if (reject_ball && std::abs(v[k]) > 1.0) return false;
    }
    return true;
}

// Bit j of the result is set when the path violates the F(ms[j]) window
// condition |f(t) - f(1/2)| < 1 on |t - 1/2| <= 1/ms[j].
inline std::uint64_t fm_fail_mask(const std::vector<double>& v, int T,
                                  const std::vector<int>& ms) {
    const int half = T / 2;
    const double mid = v[half];
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < ms.size(); ++j) {
        const int w = T / ms[j];
        bool ok = true;
        for (int k = half - w; k <= half + w; ++k) {
            if (std::abs(v[k] - mid) >= 1.0) {
                ok = false;
                break;
            }
        }
        if (!ok) mask |= (std::uint64_t{1} << j);
    }
    return mask;
}

}  // namespace radinf::wiener::detail
