#ifndef REEBKIT_TESTS_SUPPORT_HPP
#define REEBKIT_TESTS_SUPPORT_HPP

#include <cmath>

#include "reebkit/rng.hpp"
#include "reebkit/sp2.hpp"

namespace testsupport {

using namespace reebkit;

inline SymplecticPath rotation_path(double total_angle, double duration = 1.0,
                                    std::size_t n = 257) {
    return SymplecticPath::from_function(
        [total_angle, duration](double t) { return Mat2::rotation(total_angle * t / duration); },
        duration, n);
}

inline SymplecticPath stretch_path(double rate, double duration = 1.0, std::size_t n = 257) {
    return SymplecticPath::from_function(
        [rate](double t) { return Mat2::diag(std::exp(rate * t), std::exp(-rate * t)); }, duration,
        n);
}

inline SymplecticPath constant_identity_path(std::size_t n = 9) {
    return SymplecticPath::from_function([](double) { return Mat2::identity(); }, 1.0, n);
}

// Random symplectic matrix as a product of rotations and an axis stretch.
inline Mat2 random_symplectic(Rng& rng, double max_stretch = 1.0) {
    const Mat2 r1 = Mat2::rotation(rng.uniform(0.0, 2.0 * kPi));
    const Mat2 r2 = Mat2::rotation(rng.uniform(0.0, 2.0 * kPi));
    const double s = std::exp(rng.uniform(-max_stretch, max_stretch));
    return r1 * Mat2::diag(s, 1.0 / s) * r2;
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

} // namespace testsupport

#endif
