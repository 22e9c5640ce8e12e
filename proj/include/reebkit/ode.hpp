#ifndef REEBKIT_ODE_HPP
#define REEBKIT_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "reebkit/errors.hpp"

// Dormand-Prince 4(5) with adaptive step control and exact hits of requested
// sample times. States are fixed-size arrays; the right-hand side is any
// callable f(t, y) -> y'.

namespace reebkit {

struct OdeOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.0; // 0: no cap
    int max_steps = 2000000;
};

namespace detail {

template <std::size_t N>
using OdeState = std::array<double, N>;

template <std::size_t N>
inline OdeState<N> axpy(double a, const OdeState<N>& x, const OdeState<N>& y) {
    OdeState<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a * x[i] + y[i];
    return r;
}

} // namespace detail

// Integrates y' = f(t, y) from t0 to t1 (either direction), calling
// `on_sample(t, y)` exactly at the requested times (which must be sorted in
// integration direction and include neither endpoint twice).
template <std::size_t N, class F, class OnSample>
inline std::array<double, N> integrate_ode(F&& f, std::array<double, N> y, double t0, double t1,
                                           const std::vector<double>& sample_times, OnSample&& on_sample,
                                           const OdeOptions& opt = {}) {
    using State = std::array<double, N>;
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::fabs(t1 - t0);
    if (span == 0.0) {
        for (double ts : sample_times) {
            (void)ts;
            on_sample(t0, y);
        }
        return y;
    }

    // Dormand-Prince coefficients.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    double t = t0;
    double h = span / 100.0;
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    std::size_t next_sample = 0;
    State k1 = f(t, y);
    int steps = 0;

    while (dir * (t1 - t) > 0.0) {
        if (++steps > opt.max_steps) throw NoConvergence("ODE step limit exceeded");
        double h_eff = std::min(h, std::fabs(t1 - t));
        if (opt.max_step > 0.0) h_eff = std::min(h_eff, opt.max_step);
        bool hit_sample = false;
        if (next_sample < sample_times.size()) {
            const double ts = sample_times[next_sample];
            if (dir * (ts - t) <= h_eff + 1e-300) {
                h_eff = std::max(dir * (ts - t), 0.0);
                hit_sample = true;
            }
        }
        if (h_eff <= 1e-15 * span) {
            if (hit_sample) {
                on_sample(sample_times[next_sample], y);
                t = sample_times[next_sample];
                ++next_sample;
                continue;
            }
            if (std::fabs(t1 - t) <= 1e-12 * span) break; // endpoint reached within roundoff
            throw NoConvergence("ODE step size underflow");
        }
        const double hs = dir * h_eff;

        State y2 = detail::axpy<N>(hs * a21, k1, y);
        State k2 = f(t + c2 * hs, y2);
        State y3 = y;
        for (std::size_t i = 0; i < N; ++i) y3[i] += hs * (a31 * k1[i] + a32 * k2[i]);
        State k3 = f(t + c3 * hs, y3);
        State y4 = y;
        for (std::size_t i = 0; i < N; ++i) y4[i] += hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        State k4 = f(t + c4 * hs, y4);
        State y5 = y;
        for (std::size_t i = 0; i < N; ++i)
            y5[i] += hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        State k5 = f(t + c5 * hs, y5);
        State y6 = y;
        for (std::size_t i = 0; i < N; ++i)
            y6[i] += hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        State k6 = f(t + hs, y6);
        State ynew = y;
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] += hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        State k7 = f(t + hs, ynew);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                   e7 * k7[i]);
            const double sc = opt.abs_tol + opt.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (err <= 1.0) {
            t += hs;
            y = ynew;
            k1 = k7; // FSAL
            if (hit_sample && next_sample < sample_times.size() &&
                std::fabs(t - sample_times[next_sample]) <= 1e-12 * span + 1e-300) {
                on_sample(sample_times[next_sample], y);
                t = sample_times[next_sample]; // snap off the ulp drift
                ++next_sample;
            }
        }
        const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h = std::max(h_eff * factor, 1e-14 * span);
    }
    while (next_sample < sample_times.size()) {
        on_sample(sample_times[next_sample], y);
        ++next_sample;
    }
    return y;
}

template <std::size_t N, class F>
inline std::array<double, N> integrate_ode(F&& f, std::array<double, N> y, double t0, double t1,
                                           const OdeOptions& opt = {}) {
    return integrate_ode<N>(std::forward<F>(f), y, t0, t1, {}, [](double, const std::array<double, N>&) {},
                            opt);
}

} // namespace reebkit

#endif // REEBKIT_ODE_HPP
