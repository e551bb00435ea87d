#pragma once

#include <cmath>
#include <vector>

#include "homega/series.hpp"

namespace homega {

/// Concentric sample grid inside the disk of radius rmax, origin included.
inline std::vector<Complex> disk_grid(double rmax, long n_radial = 6,
                                      long n_angular = 24) {
    std::vector<Complex> pts;
    pts.emplace_back(0.0, 0.0);
    for (long i = 1; i <= n_radial; ++i) {
        const double r = rmax * static_cast<double>(i) / static_cast<double>(n_radial);
        for (long j = 0; j < n_angular; ++j) {
            const double t = 2.0 * M_PI * static_cast<double>(j) /
                             static_cast<double>(n_angular);
            pts.emplace_back(r * std::cos(t), r * std::sin(t));
        }
    }
    return pts;
}

/// n equispaced samples on the circle of radius r.
inline std::vector<Complex> circle_grid(double r, long n) {
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) {
        const double t = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
        pts.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    return pts;
}

} // namespace homega
