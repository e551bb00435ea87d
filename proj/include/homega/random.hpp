#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "homega/series.hpp"

namespace homega {

/// Seeded random stream with hand-rolled uniforms so that identical seeds
/// produce identical values on every platform and standard library.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform over the square [-half, half]^2.
    Complex complex_box(double half) {
        const double re = uniform(-half, half);
        const double im = uniform(-half, half);
        return {re, im};
    }

    /// Uniform over the annulus rmin <= |z| <= rmax (area measure).
    Complex complex_annulus(double rmin, double rmax) {
        const double r = std::sqrt(uniform(rmin * rmin, rmax * rmax));
        const double t = uniform(0.0, 2.0 * M_PI);
        return {r * std::cos(t), r * std::sin(t)};
    }

    std::vector<Complex> poly_coeffs(long degree, double half = 1.0) {
        std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
        for (auto& x : c) x = complex_box(half);
        return c;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace homega
