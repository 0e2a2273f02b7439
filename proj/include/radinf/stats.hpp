#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace radinf {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double half_width() const { return 0.5 * (hi - lo); }
};

// Wilson score interval for a binomial proportion, z = 1.96 for 95%.
inline Interval wilson_interval(std::size_t successes, std::size_t n,
                                double z = 1.959963984540054) {
    if (n == 0) throw std::invalid_argument("wilson_interval: n == 0");
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double rad =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - rad, center + rad};
}

inline double mean_of(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

inline double variance_of(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

}  // namespace radinf
