#ifndef REEBKIT_SP2_HPP
#define REEBKIT_SP2_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "reebkit/errors.hpp"
#include "reebkit/linalg.hpp"

// Calculus of 2x2 determinant-one matrices and sampled paths in SL(2,R)
// starting at the identity: polar decomposition, endpoint classification,
// composition with loops, inversion and iteration. Paths are stored as dense
// samples; between samples they are interpolated along the one-parameter
// subgroup joining consecutive samples (log of the incremental factor).

namespace reebkit {

inline constexpr double kSymplecticDetTol = 1e-9;

inline void ensure_symplectic(const Mat2& a, double tol = kSymplecticDetTol) {
    const double d = det(a);
    if (std::fabs(d - 1.0) > tol)
        throw NonSymplectic("determinant " + std::to_string(d) + " is not 1 within tolerance");
}

struct Sp2Matrix {
    Mat2 m;
    explicit Sp2Matrix(const Mat2& a) : m(a) { ensure_symplectic(a); }
};

// ---------------------------------------------------------------------------
// sl(2,R) exponential / logarithm for traceless 2x2 matrices.
// For traceless xi, xi^2 = -det(xi) * Id, so both maps are closed-form.

inline Mat2 sl2_exp(const Mat2& xi) {
    const double delta = -det(xi); // >0 hyperbolic branch, <0 elliptic branch
    double c, g;                   // exp(xi) = c*Id + g*xi
    if (std::fabs(delta) < 1e-8) {
        c = 1.0 + delta / 2.0 + delta * delta / 24.0;
        g = 1.0 + delta / 6.0 + delta * delta / 120.0;
    } else if (delta > 0.0) {
        const double r = std::sqrt(delta);
        c = std::cosh(r);
        g = std::sinh(r) / r;
    } else {
        const double r = std::sqrt(-delta);
        c = std::cos(r);
        g = std::sin(r) / r;
    }
    Mat2 out = xi * g;
    out.a11 += c;
    out.a22 += c;
    return out;
}

// Principal logarithm; valid for matrices with positive half-trace, which
// covers the near-identity incremental factors this is used on.
inline Mat2 sl2_log(const Mat2& b) {
    const double h = 0.5 * trace(b);
    if (h <= 0.0)
        throw InsufficientResolution("matrix log of an increment with non-positive half-trace");
    Mat2 k = b;
    k.a11 -= h;
    k.a22 -= h;
    const double u = h * h - 1.0; // = -det(k)
    double f;                     // log(b) = f * k
    if (std::fabs(u) < 1e-8) {
        f = 1.0 - u / 6.0 + 3.0 * u * u / 40.0;
    } else if (u > 0.0) {
        const double s = std::sqrt(u);
        f = std::asinh(s) / s;
    } else {
        const double s = std::sqrt(-u);
        f = std::asin(s) / s;
    }
    return k * f;
}

// ---------------------------------------------------------------------------
// Polar decomposition A = M * U with M symmetric positive definite and U a
// rotation. For det(A) = 1 the rotation angle is atan2(a21-a12, a11+a22).

struct PolarDecomposition {
    Mat2 stretch;  // M, symmetric positive definite
    double angle;  // U = rotation(angle)
    Mat2 rotation() const { return Mat2::rotation(angle); }
};

inline double polar_angle(const Mat2& a) { return std::atan2(a.a21 - a.a12, a.a11 + a.a22); }

inline PolarDecomposition polar_decompose(const Mat2& a) {
    ensure_symplectic(a);
    const double angle = polar_angle(a);
    const Mat2 m = a * Mat2::rotation(-angle);
    return {m, angle};
}

// ---------------------------------------------------------------------------
// Endpoint classification. det(A - Id) = 2 - tr(A) when det(A) = 1, so the
// spectral trichotomy is a trace trichotomy with a degeneracy band around
// tr = 2.

enum class EndpointKind { PositiveHyperbolic, NegativeHyperbolic, Elliptic, Degenerate };

inline const char* to_string(EndpointKind k) {
    switch (k) {
        case EndpointKind::PositiveHyperbolic: return "positive_hyperbolic";
        case EndpointKind::NegativeHyperbolic: return "negative_hyperbolic";
        case EndpointKind::Elliptic: return "elliptic";
        case EndpointKind::Degenerate: return "degenerate";
    }
    return "?";
}

struct EndpointClass {
    EndpointKind kind = EndpointKind::Degenerate;
    double lambda = 0.0;      // hyperbolic: eigenvalue with |lambda| >= 1
    double lambda_inv = 0.0;  // hyperbolic: the reciprocal eigenvalue
    double phi = 0.0;         // elliptic: eigenvalues e^{+-i phi}, phi in (0, pi)
    double det_a_minus_id = 0.0;

    bool hyperbolic() const {
        return kind == EndpointKind::PositiveHyperbolic || kind == EndpointKind::NegativeHyperbolic;
    }
};

inline constexpr double kDefaultDegeneracyThreshold = 1e-8;

inline EndpointClass classify_endpoint(const Mat2& a,
                                       double degeneracy_threshold = kDefaultDegeneracyThreshold) {
    ensure_symplectic(a);
    EndpointClass out;
    const double tr = trace(a);
    out.det_a_minus_id = (a.a11 - 1.0) * (a.a22 - 1.0) - a.a12 * a.a21;
    if (std::fabs(out.det_a_minus_id) < degeneracy_threshold) {
        out.kind = EndpointKind::Degenerate;
        return out;
    }
    if (tr > 2.0) {
        out.kind = EndpointKind::PositiveHyperbolic;
        out.lambda = 0.5 * (tr + std::sqrt(tr * tr - 4.0));
        out.lambda_inv = 1.0 / out.lambda;
    } else if (tr <= -2.0 + degeneracy_threshold) {
        // Includes the double eigenvalue -1 (tr = -2, det(A-Id) = 4, resolved
        // here up to the same numerical band as the degeneracy test): odd
        // parity goes with negative real spectrum.
        out.kind = EndpointKind::NegativeHyperbolic;
        out.lambda = 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4.0)));
        out.lambda_inv = 1.0 / out.lambda;
    } else {
        out.kind = EndpointKind::Elliptic;
        out.phi = std::acos(std::clamp(tr / 2.0, -1.0, 1.0));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampled symplectic path starting at the identity.

struct PathSample {
    double t;
    Mat2 a;
};

class SymplecticPath {
public:
    static constexpr double kSampleDetTol = 1e-6;
    static constexpr double kMaxIncrementNorm = 0.1; // resolution guard for angle lifting
    static constexpr double kIdentityTol = 1e-9;

    explicit SymplecticPath(std::vector<PathSample> samples) : samples_(std::move(samples)) {
        validate();
        build_increments();
    }

    template <class F>
    static SymplecticPath from_function(F&& f, double duration, std::size_t n_samples) {
        if (n_samples < 2 || duration <= 0.0)
            throw BadInput("path sampling needs duration > 0 and at least two samples");
        std::vector<PathSample> s;
        s.reserve(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double t = duration * static_cast<double>(i) / static_cast<double>(n_samples - 1);
            s.push_back({t, f(t)});
        }
        return SymplecticPath(std::move(s));
    }

    std::size_t size() const { return samples_.size(); }
    const PathSample& operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<PathSample>& samples() const { return samples_; }
    double duration() const { return samples_.back().t; }
    const Mat2& endpoint() const { return samples_.back().a; }

    bool is_loop(double tol = kIdentityTol) const {
        return frobenius_norm(endpoint() - Mat2::identity()) <= tol;
    }

    // Value of the interpolated path at any t in [0, T].
    Mat2 evaluate(double t) const {
        const std::size_t k = segment_of(t);
        const double dt = samples_[k + 1].t - samples_[k].t;
        const double s = (t - samples_[k].t) / dt;
        if (s <= 0.0) return samples_[k].a;
        if (s >= 1.0) return samples_[k + 1].a;
        return samples_[k].a * sl2_exp(xi_[k] * s);
    }

    // d/dt of the interpolated path: Phi(t) * xi_k / dt_k within segment k.
    Mat2 derivative(double t) const {
        const std::size_t k = segment_of(t);
        const double dt = samples_[k + 1].t - samples_[k].t;
        const double s = std::clamp((t - samples_[k].t) / dt, 0.0, 1.0);
        return samples_[k].a * sl2_exp(xi_[k] * s) * xi_[k] * (1.0 / dt);
    }

private:
    void validate() const {
        if (samples_.size() < 2) throw BadInput("path needs at least two samples");
        if (std::fabs(samples_.front().t) > 0.0)
            throw BadInput("path must start at time 0");
        if (frobenius_norm(samples_.front().a - Mat2::identity()) > kIdentityTol)
            throw BadInput("path must start at the identity");
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            if (i > 0 && !(samples_[i].t > samples_[i - 1].t))
                throw BadInput("path times must be strictly increasing");
            ensure_symplectic(samples_[i].a, kSampleDetTol);
            if (i > 0 && operator_norm(samples_[i].a - samples_[i - 1].a) >= kMaxIncrementNorm)
                throw InsufficientResolution(
                    "consecutive path samples differ by operator norm >= 0.1 near t = " +
                    std::to_string(samples_[i].t));
        }
    }

    void build_increments() {
        xi_.resize(samples_.size() - 1);
        for (std::size_t k = 0; k + 1 < samples_.size(); ++k)
            xi_[k] = sl2_log(inverse(samples_[k].a) * samples_[k + 1].a);
    }

    std::size_t segment_of(double t) const {
        const double T = duration();
        if (t < -1e-12 || t > T * (1.0 + 1e-12) + 1e-12)
            throw BadInput("path evaluation outside [0, T]");
        t = std::clamp(t, 0.0, T);
        auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                                   [](double v, const PathSample& s) { return v < s.t; });
        std::size_t k = static_cast<std::size_t>(it - samples_.begin());
        if (k == 0) return 0;
        if (k >= samples_.size()) return samples_.size() - 2;
        return k - 1;
    }

    std::vector<PathSample> samples_;
    std::vector<Mat2> xi_;
};

// ---------------------------------------------------------------------------
// Path operations.

namespace detail {

// Insert midpoints until consecutive values of `eval` differ by operator norm
// below the path guard. `eval` must be defined on the whole time interval.
template <class Eval>
inline std::vector<PathSample> densify(std::vector<double> times, Eval&& eval) {
    std::vector<PathSample> out;
    out.reserve(times.size());
    for (double t : times) out.push_back({t, eval(t)});
    const double guard = 0.9 * SymplecticPath::kMaxIncrementNorm;
    for (int pass = 0; pass < 24; ++pass) {
        bool refined = false;
        std::vector<PathSample> next;
        next.reserve(out.size() * 2);
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i > 0 && operator_norm(out[i].a - out[i - 1].a) >= guard) {
                const double tm = 0.5 * (out[i - 1].t + out[i].t);
                next.push_back({tm, eval(tm)});
                refined = true;
            }
            next.push_back(out[i]);
        }
        out.swap(next);
        if (!refined) break;
    }
    return out;
}

} // namespace detail

inline SymplecticPath resample(const SymplecticPath& path, const std::vector<double>& times) {
    return SymplecticPath(detail::densify(times, [&](double t) { return path.evaluate(t); }));
}

// Pointwise product t -> L(t) * Phi(t). L must be a loop; its time grid is
// rescaled to Phi's duration before forming the product on the union grid.
inline SymplecticPath path_concat(const SymplecticPath& loop, const SymplecticPath& path) {
    if (!loop.is_loop())
        throw NotALoop("loop endpoint deviates from the identity by more than 1e-9");
    const double scale = path.duration() / loop.duration();
    std::vector<double> times;
    times.reserve(loop.size() + path.size());
    for (const auto& s : loop.samples()) times.push_back(s.t * scale);
    for (const auto& s : path.samples()) times.push_back(s.t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end(),
                            [&](double a, double b) { return std::fabs(a - b) < 1e-14 * path.duration(); }),
                times.end());
    auto eval = [&](double t) { return loop.evaluate(t / scale) * path.evaluate(t); };
    return SymplecticPath(detail::densify(times, eval));
}

inline SymplecticPath path_invert(const SymplecticPath& path) {
    std::vector<PathSample> s;
    s.reserve(path.size());
    for (const auto& smp : path.samples()) s.push_back({smp.t, inverse(smp.a)});
    return SymplecticPath(std::move(s));
}

// m-fold iterate: on segment k the path is t -> Phi(t - kT) * Phi(T)^k, the
// linearization of an m-fold covered orbit.
inline SymplecticPath path_iterate(const SymplecticPath& path, int m) {
    if (m < 1) throw BadInput("iteration count must be positive");
    if (m == 1) return path;
    const double T = path.duration();
    std::vector<Mat2> powers(static_cast<std::size_t>(m));
    powers[0] = Mat2::identity();
    for (int k = 1; k < m; ++k) powers[static_cast<std::size_t>(k)] = path.endpoint() * powers[static_cast<std::size_t>(k - 1)];

    std::vector<double> times;
    times.reserve(path.size() * static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        for (const auto& s : path.samples()) {
            const double t = s.t + T * k;
            if (!times.empty() && t <= times.back() + 1e-14 * T) continue;
            times.push_back(t);
        }
    if (std::fabs(times.front()) > 0.0) times.insert(times.begin(), 0.0);

    auto eval = [&](double t) {
        int k = std::min(m - 1, static_cast<int>(std::floor(t / T)));
        if (t - T * k > T) k = std::min(m - 1, k + 1);
        return path.evaluate(t - T * k) * powers[static_cast<std::size_t>(k)];
    };
    return SymplecticPath(detail::densify(times, eval));
}

} // namespace reebkit

#endif // REEBKIT_SP2_HPP
