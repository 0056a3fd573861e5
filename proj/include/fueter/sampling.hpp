#ifndef FUETER_SAMPLING_HPP
#define FUETER_SAMPLING_HPP

#include <random>

#include "fueter/grid_bvp.hpp"
#include "fueter/operators.hpp"
#include "fueter/torus.hpp"

namespace fueter {

// All randomness in the library flows through std::mt19937_64 so that a
// (command, seed) pair reproduces every sampled instance.
using Rng = std::mt19937_64;

inline Vec4 random_unit4(Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        Vec4 v(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
        const double n = v.norm();
        if (n > 1e-6) return v / n;
    }
}

/** Random unit vector orthogonal to nu. */
inline Vec4 random_tangent_unit(Rng& rng, const Vec4& nu) {
    for (;;) {
        Vec4 v = random_unit4(rng);
        v -= v.dot(nu) * nu;
        const double n = v.norm();
        if (n > 1e-6) return v / n;
    }
}

inline Complex random_complex(Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double re = gauss(rng), im = gauss(rng);
    return Complex(re, im);
}

inline Field random_field(Rng& rng, const TorusGrid& grid, int m) {
    Field f(grid, m);
    for (auto& v : f.data) v = random_complex(rng);
    return f;
}

/** Random field with its mean mode removed. */
inline Field random_mean_zero_field(Rng& rng, const TorusGrid& grid, int m) {
    Field f = random_field(rng, grid, m);
    const long sites = grid.sites();
    for (int c = 0; c < m; ++c) {
        Complex mean(0, 0);
        for (long s = 0; s < sites; ++s) mean += f.at(s, c);
        mean /= static_cast<double>(sites);
        for (long s = 0; s < sites; ++s) f.at(s, c) -= mean;
    }
    return f;
}

inline Eigen::VectorXcd random_vector(Rng& rng, Eigen::Index n) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = random_complex(rng);
    return v;
}

} // namespace fueter

#endif // FUETER_SAMPLING_HPP
