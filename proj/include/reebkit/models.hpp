#ifndef REEBKIT_MODELS_HPP
#define REEBKIT_MODELS_HPP

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reebkit/errors.hpp"
#include "reebkit/linalg.hpp"
#include "reebkit/rng.hpp"

// Catalog of model contact 3-manifolds, plus one non-contact control flow.
//
//  * Frame models (heisenberg, su2, sl2): a global orthonormal frame
//    (X, e, f) with constant structure coefficients; alpha is the dual of X,
//    J maps e -> f, and theta' = d_alpha(e, f) = -alpha([e, f]). Each frame
//    model also carries a concrete realization (R^3 fields, unit quaternions,
//    or SL(2,R) matrices) used by the flow integrator.
//  * Chart models (t3, ellipsoid): alpha and the metric as explicit
//    coefficient functions on a box, derivatives by central differences with
//    one Richardson step.
//  * catmap: suspension of a hyperbolic torus map; no contact structure,
//    kept as a dynamics control case.

namespace reebkit {

// ---------------------------------------------------------------------------

struct ModelPoint {
    std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};
    int dim = 3;

    static ModelPoint coords(double a, double b, double c) { return {{a, b, c, 0.0}, 3}; }
    static ModelPoint four(double a, double b, double c, double d) { return {{a, b, c, d}, 4}; }
    Vec3 v3() const { return {x[0], x[1], x[2]}; }
};

inline double distance(const ModelPoint& a, const ModelPoint& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim; ++i) s += (a.x[i] - b.x[i]) * (a.x[i] - b.x[i]);
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Structure constants c(i,j,k) = g([E_i, E_j], E_k) in frame order (X, e, f).

struct StructureConstants {
    double c[3][3][3] = {};

    void set(int i, int j, int k, double value) {
        c[i][j][k] = value;
        c[j][i][k] = -value;
    }
    double operator()(int i, int j, int k) const { return c[i][j][k]; }
};

enum class FrameRealization { HeisenbergR3, QuaternionSU2, MatrixSL2 };

struct FrameModel {
    std::string name;
    double theta_prime = 2.0;
    StructureConstants sc;
    FrameRealization realization = FrameRealization::HeisenbergR3;
    std::optional<double> volume; // compact models only
    ModelPoint base_point;
    std::map<std::string, double> params;
};

struct ChartModel {
    std::string name;
    double theta_prime = 2.0;
    Vec3 lo, hi;
    std::array<bool, 3> periodic{false, false, false};
    int seed_axis = 2; // coordinate direction seeding the frame leg e
    double h = 1e-5;   // FD step for first derivatives
    std::function<Vec3(Vec3)> alpha;
    std::function<Mat3(Vec3)> metric;
    std::vector<std::string> warnings;
    std::map<std::string, double> params;
};

struct CatmapModel {
    std::string name;
    bool negative = false;
    double height = 1.0;

    Mat2 monodromy() const {
        const Mat2 a{2.0, 1.0, 1.0, 1.0};
        return negative ? a * (-1.0) : a;
    }
    // Eigen data of [[2,1],[1,1]]: lambda_pm = (3 +- sqrt(5))/2,
    // eigenvectors (1, (sqrt(5)-1)/2) and (1, -(sqrt(5)+1)/2).
    static double lambda_plus() { return 0.5 * (3.0 + std::sqrt(5.0)); }
    static double lambda_minus() { return 0.5 * (3.0 - std::sqrt(5.0)); }
    static Vec2 unstable_direction() {
        const Vec2 v{1.0, 0.5 * (std::sqrt(5.0) - 1.0)};
        return v * (1.0 / norm(v));
    }
    static Vec2 stable_direction() {
        const Vec2 v{1.0, -0.5 * (std::sqrt(5.0) + 1.0)};
        return v * (1.0 / norm(v));
    }
    // log of the positive monodromy (symmetric positive definite).
    static Mat2 log_monodromy() {
        const Mat2 a{2.0, 1.0, 1.0, 1.0};
        // symmetric 2x2 log: eigenvectors are orthogonal
        const double tr = trace(a), dt = det(a);
        const double disc = std::sqrt(tr * tr / 4.0 - dt);
        const double l1 = tr / 2.0 + disc, l2 = tr / 2.0 - disc;
        // eigenvector for l1 of symmetric [[2,1],[1,1]]
        Vec2 v1{1.0, l1 - 2.0};
        v1 = v1 * (1.0 / norm(v1));
        const Vec2 v2{-v1.y, v1.x};
        const double g1 = std::log(l1), g2 = std::log(l2);
        return {g1 * v1.x * v1.x + g2 * v2.x * v2.x, g1 * v1.x * v1.y + g2 * v2.x * v2.y,
                g1 * v1.x * v1.y + g2 * v2.x * v2.y, g1 * v1.y * v1.y + g2 * v2.y * v2.y};
    }
};

using Model = std::variant<FrameModel, ChartModel, CatmapModel>;

inline const std::string& model_name(const Model& m) {
    return std::visit([](const auto& v) -> const std::string& { return v.name; }, m);
}

inline bool is_contact_model(const Model& m) { return !std::holds_alternative<CatmapModel>(m); }

inline double model_theta_prime(const Model& m) {
    if (const auto* f = std::get_if<FrameModel>(&m)) return f->theta_prime;
    if (const auto* c = std::get_if<ChartModel>(&m)) return c->theta_prime;
    throw NotContact("catmap carries no contact structure");
}

// ---------------------------------------------------------------------------
// Frame-model ambient realizations.

namespace detail {

using Q = std::array<double, 4>; // quaternion (w, x, y, z)

inline Q quat_mul(const Q& a, const Q& b) {
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

// Lie algebra generators of the three frame legs, in the realization's
// coordinates. Index 0 = X, 1 = e, 2 = f.
inline Q su2_generator(int leg, double theta_prime) {
    const double s = 0.5 * theta_prime;
    switch (leg) {
        case 0: return {0.0, -s, 0.0, 0.0}; // -(theta'/2) i
        case 1: return {0.0, 0.0, s, 0.0};  //  (theta'/2) j
        default: return {0.0, 0.0, 0.0, s}; //  (theta'/2) k
    }
}

inline Mat2 sl2_generator(int leg, double theta_prime) {
    const double s = 0.5 * std::sqrt(theta_prime);
    switch (leg) {
        case 0: return {0.5, 0.0, 0.0, -0.5};  // H/2
        case 1: return {0.0, s, s, 0.0};       // s (E + F)
        default: return {0.0, s, -s, 0.0};     // s (E - F)
    }
}

inline Mat2 point_to_mat2(const ModelPoint& p) { return {p.x[0], p.x[1], p.x[2], p.x[3]}; }
inline ModelPoint mat2_to_point(const Mat2& m) { return ModelPoint::four(m.a11, m.a12, m.a21, m.a22); }

} // namespace detail

// Value of frame leg (0 = X, 1 = e, 2 = f) at p, in ambient coordinates.
inline ModelPoint frame_field(const FrameModel& model, int leg, const ModelPoint& p) {
    switch (model.realization) {
        case FrameRealization::HeisenbergR3: {
            const double s = std::sqrt(model.theta_prime);
            switch (leg) {
                case 0: return ModelPoint::coords(0.0, 0.0, 1.0);
                case 1: return ModelPoint::coords(s, 0.0, s * p.x[1]);
                default: return ModelPoint::coords(0.0, s, 0.0);
            }
        }
        case FrameRealization::QuaternionSU2: {
            const auto v = detail::quat_mul({p.x[0], p.x[1], p.x[2], p.x[3]},
                                            detail::su2_generator(leg, model.theta_prime));
            return ModelPoint::four(v[0], v[1], v[2], v[3]);
        }
        case FrameRealization::MatrixSL2: {
            const Mat2 v = detail::point_to_mat2(p) * detail::sl2_generator(leg, model.theta_prime);
            return detail::mat2_to_point(v);
        }
    }
    throw BadInput("unknown frame realization");
}

inline ModelPoint retract(const FrameModel& model, ModelPoint p) {
    switch (model.realization) {
        case FrameRealization::HeisenbergR3: return p;
        case FrameRealization::QuaternionSU2: {
            double n = 0.0;
            for (double v : p.x) n += v * v;
            n = std::sqrt(n);
            for (double& v : p.x) v /= n;
            return p;
        }
        case FrameRealization::MatrixSL2: {
            const double d = det(detail::point_to_mat2(p));
            if (d <= 0.0) throw NoConvergence("SL(2,R) trajectory left the positive-determinant chart");
            const double s = 1.0 / std::sqrt(d);
            for (double& v : p.x) v *= s;
            return p;
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Chart differential machinery (central differences, one Richardson step).

namespace detail {

template <class F>
inline auto richardson_d1(F&& g, double h) {
    const auto coarse = (g(h) - g(-h)) * (1.0 / (2.0 * h));
    const auto fine = (g(0.5 * h) - g(-0.5 * h)) * (1.0 / h);
    return fine * (4.0 / 3.0) - coarse * (1.0 / 3.0);
}

} // namespace detail

// Antisymmetric matrix M(i,j) = d_alpha(d_i, d_j) = d_i alpha_j - d_j alpha_i.
inline Mat3 chart_dalpha(const std::function<Vec3(Vec3)>& alpha, Vec3 p, double h) {
    Vec3 grad[3]; // grad[i] = derivative of alpha along axis i (as a covector row)
    for (int i = 0; i < 3; ++i) {
        grad[i] = detail::richardson_d1(
            [&](double step) {
                Vec3 q = p;
                q[i] += step;
                return alpha(q);
            },
            h);
    }
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = grad[i][j] - grad[j][i];
    return m;
}

// Reeb field of a chart model at p: the kernel direction of d_alpha scaled so
// alpha(X) = 1. For antisymmetric M the kernel is the axial vector.
inline Vec3 chart_reeb_from(const Mat3& dal, Vec3 alpha_p) {
    const Vec3 v{dal(1, 2), -dal(0, 2), dal(0, 1)};
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(dal(i, j)));
    if (norm(v) < 1e-12 * std::max(scale, 1e-30))
        throw SingularSystem("d_alpha has no well-conditioned kernel direction (non-contact point?)");
    const double denom = dot(alpha_p, v);
    if (std::fabs(denom) < 1e-12 * (norm(alpha_p) * norm(v)))
        throw SingularSystem("alpha vanishes on the kernel of d_alpha (non-contact point?)");
    const Vec3 x = v * (1.0 / denom);
    // Residuals of the defining linear system.
    const Vec3 r = dal * x;
    if (norm(r) > 1e-10 * std::max(1.0, scale) || std::fabs(dot(alpha_p, x) - 1.0) > 1e-10)
        throw SingularSystem("Reeb system residual above 1e-10");
    return x;
}

inline Vec3 chart_reeb(const ChartModel& model, Vec3 p) {
    return chart_reeb_from(chart_dalpha(model.alpha, p, model.h), model.alpha(p));
}

// Orthonormal frame (X, e, Je) of a chart model at p. The e leg seeds from a
// fixed coordinate axis projected into ker alpha; Je is the metric cross
// product of X and e, signed so that d_alpha(e, Je) > 0.
struct ChartFrame {
    Vec3 X, e, Je;
    Mat3 g;
    Mat3 dal;
    Vec3 alpha;
    double theta_prime; // d_alpha(e, Je)
};

inline ChartFrame chart_frame(const ChartModel& model, Vec3 p) {
    ChartFrame f;
    f.alpha = model.alpha(p);
    f.dal = chart_dalpha(model.alpha, p, model.h);
    f.X = chart_reeb_from(f.dal, f.alpha);
    f.g = model.metric(p);

    auto ip = [&](Vec3 a, Vec3 b) { return dot(a, f.g * b); };
    Vec3 seed{0.0, 0.0, 0.0};
    seed[model.seed_axis] = 1.0;
    Vec3 u = seed - f.X * f.alpha[model.seed_axis]; // in ker alpha
    const double un = std::sqrt(ip(u, u));
    if (un < 1e-10) throw DegenerateFrame("frame seed projects to (nearly) zero");
    f.e = u * (1.0 / un);

    // metric cross product of X and e
    const double sq = std::sqrt(det(f.g));
    const Vec3 xl = f.g * f.X, el = f.g * f.e;
    Vec3 w = cross(xl, el) * (1.0 / sq);
    const double wn = std::sqrt(ip(w, w));
    if (wn < 1e-10) throw DegenerateFrame("metric cross product degenerated");
    w = w * (1.0 / wn);
    double th = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) th += f.e[i] * w[j] * f.dal(i, j);
    if (std::fabs(th) < 1e-10) throw DegenerateFrame("d_alpha(e, Je) vanished");
    f.Je = th > 0.0 ? w : w * -1.0;
    f.theta_prime = std::fabs(th);
    return f;
}

// ---------------------------------------------------------------------------
// Catalog.

namespace detail {

inline double param_or(const std::map<std::string, double>& params, const std::string& key,
                       double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

inline StructureConstants heisenberg_constants(double theta) {
    StructureConstants sc;
    sc.set(1, 2, 0, -theta); // [e, f] = -theta' X
    return sc;
}

inline StructureConstants su2_constants(double theta) {
    StructureConstants sc;
    sc.set(0, 1, 2, -theta); // [X, e] = -theta' f
    sc.set(0, 2, 1, theta);  // [X, f] =  theta' e
    sc.set(1, 2, 0, -theta); // [e, f] = -theta' X
    return sc;
}

// sl2 frame: with h+ = (e+f)/sqrt2, h- = (e-f)/sqrt2 (scaled for theta'),
// the brackets read [X, h+] = h+, [X, h-] = -h-, [h+, h-] = theta' X.
inline StructureConstants sl2_constants(double theta) {
    StructureConstants sc;
    sc.set(0, 1, 2, 1.0);    // [X, e] = f
    sc.set(0, 2, 1, 1.0);    // [X, f] = e
    sc.set(1, 2, 0, -theta); // [e, f] = -theta' X
    return sc;
}

inline void require_positive(double v, const std::string& what) {
    if (!(v > 0.0)) throw InvalidParams(what + " must be positive");
}

} // namespace detail

inline Model build_model(const std::string& name, const std::map<std::string, double>& params = {}) {
    const double theta = detail::param_or(params, "theta_prime", 2.0);

    if (name == "heisenberg" || name == "su2" || name == "sl2") {
        detail::require_positive(theta, "theta_prime");
        FrameModel m;
        m.name = name;
        m.theta_prime = theta;
        m.params = params;
        if (name == "heisenberg") {
            m.sc = detail::heisenberg_constants(theta);
            m.realization = FrameRealization::HeisenbergR3;
            m.base_point = ModelPoint::coords(0.0, 0.0, 0.0);
        } else if (name == "su2") {
            m.sc = detail::su2_constants(theta);
            m.realization = FrameRealization::QuaternionSU2;
            m.base_point = ModelPoint::four(1.0, 0.0, 0.0, 0.0);
            const double radius = 2.0 / theta; // |q . X_hat| = theta'/2 rescales the round sphere
            m.volume = 2.0 * kPi * kPi * radius * radius * radius;
        } else {
            m.sc = detail::sl2_constants(theta);
            m.realization = FrameRealization::MatrixSL2;
            m.base_point = ModelPoint::four(1.0, 0.0, 0.0, 1.0);
        }
        return m;
    }

    if (name == "t3") {
        const double n_raw = detail::param_or(params, "n", 1.0);
        const int n = static_cast<int>(std::llround(n_raw));
        if (n <= 0 || std::fabs(n_raw - n) > 1e-9) throw InvalidParams("t3 winding n must be a positive integer");
        ChartModel m;
        m.name = "t3";
        m.params = params;
        m.theta_prime = static_cast<double>(n); // pinned by the flat compatible metric
        m.lo = {0.0, 0.0, 0.0};
        m.hi = {2.0 * kPi, 2.0 * kPi, 2.0 * kPi};
        m.periodic = {true, true, true};
        m.seed_axis = 2; // dz lies in ker alpha everywhere
        m.alpha = [n](Vec3 p) -> Vec3 { return {std::cos(n * p.z), -std::sin(n * p.z), 0.0}; };
        m.metric = [](Vec3) { return Mat3::identity(); };
        return m;
    }

    if (name == "ellipsoid") {
        const double a = detail::param_or(params, "a", 1.0);
        const double b = detail::param_or(params, "b", std::sqrt(2.0));
        detail::require_positive(a, "ellipsoid radius a");
        detail::require_positive(b, "ellipsoid radius b");
        detail::require_positive(theta, "theta_prime");

        ChartModel m;
        m.name = "ellipsoid";
        m.params = params;
        m.theta_prime = theta;
        // Chart (t1, p, q): z1 = a sqrt(1 - (p^2+q^2)/b^2) e^{i t1}, z2 = p + i q.
        // Covers a solid-torus neighborhood of the z2 = 0 core circle.
        const double rho = 0.5 * b;
        m.lo = {0.0, -rho, -rho};
        m.hi = {2.0 * kPi, rho, rho};
        m.periodic = {true, false, false};
        m.seed_axis = 1;
        const double h = m.h;
        auto alpha_fn = [a, b](Vec3 u) -> Vec3 {
            const double r2 = 1.0 - (u.y * u.y + u.z * u.z) / (b * b);
            return {0.5 * a * a * r2, -0.5 * u.z, 0.5 * u.y};
        };
        m.alpha = alpha_fn;
        // Compatible metric from a complex structure J on ker alpha. J is the
        // quarter turn of an auxiliary inner product whose anisotropy varies
        // along the core direction, so the metric is compatible (theta'
        // constant by construction) but nowhere Reeb-invariant.
        m.metric = [alpha_fn, theta, h](Vec3 pt) -> Mat3 {
            const Mat3 dal = chart_dalpha(alpha_fn, pt, h);
            const Vec3 al = alpha_fn(pt);
            const Vec3 X = chart_reeb_from(dal, al);
            auto dal_of = [&](Vec3 u, Vec3 v) {
                double s = 0.0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) s += u[i] * v[j] * dal(i, j);
                return s;
            };
            // anisotropic auxiliary inner product on the chart; the two
            // anisotropies have no common critical point along the core
            // direction, so the induced metric is nowhere Reeb-invariant
            Mat3 aux = Mat3::identity();
            aux(1, 1) = 1.0 + 0.4 * std::sin(pt.x);
            aux(2, 2) = 1.0 + 0.3 * std::cos(pt.x + 0.7);
            auto aux_ip = [&](Vec3 u, Vec3 v) { return dot(u, aux * v); };
            // aux-orthonormal basis of ker alpha
            Vec3 u1 = Vec3{0.0, 1.0, 0.0} - X * al.y;
            u1 = u1 * (1.0 / std::sqrt(aux_ip(u1, u1)));
            Vec3 u2 = Vec3{0.0, 0.0, 1.0} - X * al.z;
            u2 = u2 - u1 * aux_ip(u2, u1);
            u2 = u2 * (1.0 / std::sqrt(aux_ip(u2, u2)));
            double w = dal_of(u1, u2);
            if (w < 0.0) {
                u2 = u2 * -1.0;
                w = -w;
            }
            // J: u1 -> u2, u2 -> -u1; g = (1/theta') d_alpha(., J pi .) + alpha (x) alpha
            Mat3 g;
            for (int j = 0; j < 3; ++j) {
                Vec3 ej{0.0, 0.0, 0.0};
                ej[j] = 1.0;
                const Vec3 pj = ej - X * al[j];
                // coordinates of pj in the aux-orthonormal basis (u1, u2)
                const double c1 = aux_ip(pj, u1), c2 = aux_ip(pj, u2);
                const Vec3 jpj = u2 * c1 - u1 * c2;
                for (int i = 0; i < 3; ++i) {
                    Vec3 ei{0.0, 0.0, 0.0};
                    ei[i] = 1.0;
                    g(i, j) = dal_of(ei, jpj) / theta + al[i] * al[j];
                }
            }
            // symmetrize away FD rounding
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    const double s = 0.5 * (g(i, j) + g(j, i));
                    g(i, j) = g(j, i) = s;
                }
            return g;
        };

        // resonance warning: a/b close to a small-denominator rational
        const double ratio = a / b;
        for (int q = 1; q <= 10; ++q) {
            const double pnum = std::round(ratio * q);
            if (pnum >= 1.0 && std::fabs(ratio - pnum / q) < 1e-6) {
                m.warnings.push_back("ResonantEllipsoid: a/b within 1e-6 of " +
                                     std::to_string(static_cast<int>(pnum)) + "/" + std::to_string(q));
                break;
            }
        }
        return m;
    }

    if (name == "catmap") {
        CatmapModel m;
        m.name = "catmap";
        m.negative = detail::param_or(params, "negative", 0.0) != 0.0;
        return m;
    }

    throw UnknownModel("no catalog model named '" + name + "'");
}

// ---------------------------------------------------------------------------
// Contact validation.

struct ContactReport {
    bool applicable = true;
    bool positive = false;
    double min_contact_value = 0.0; // min of alpha ^ d_alpha over the grid (charts)
    double theta_prime = 0.0;
    double theta_spread = 0.0; // charts: relative spread of d_alpha(e, Je)
    double jacobi_residual = 0.0;
    std::vector<std::string> warnings;
};

namespace detail {

inline double frame_jacobi_residual(const StructureConstants& sc) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    double s = 0.0;
                    for (int mm = 0; mm < 3; ++mm)
                        s += sc(j, k, mm) * sc(i, mm, l) + sc(k, i, mm) * sc(j, mm, l) +
                             sc(i, j, mm) * sc(k, mm, l);
                    worst = std::max(worst, std::fabs(s));
                }
    return worst;
}

} // namespace detail

inline ContactReport validate_contact(const Model& model, int grid_resolution = 16) {
    ContactReport rep;
    if (const auto* cm = std::get_if<CatmapModel>(&model)) {
        (void)cm;
        rep.applicable = false;
        return rep;
    }
    if (const auto* fm = std::get_if<FrameModel>(&model)) {
        rep.jacobi_residual = detail::frame_jacobi_residual(fm->sc);
        if (rep.jacobi_residual > 1e-12)
            throw NotContact("frame structure constants violate the Jacobi identity");
        if (std::fabs(fm->sc(0, 1, 0)) > 0.0 || std::fabs(fm->sc(0, 2, 0)) > 0.0)
            throw NotContact("frame violates the Reeb conditions d_alpha(X, .) = 0");
        rep.theta_prime = -fm->sc(1, 2, 0);
        if (!(rep.theta_prime > 0.0)) throw NotContact("theta' = -alpha([e, f]) is not positive");
        if (std::fabs(rep.theta_prime - fm->theta_prime) > 1e-12)
            throw NotContact("declared theta' disagrees with the structure constants");
        rep.positive = true;
        rep.min_contact_value = rep.theta_prime;
        return rep;
    }

    const auto& cm = std::get<ChartModel>(model);
    rep.warnings = cm.warnings;
    rep.theta_prime = cm.theta_prime;
    double min_val = 1e300;
    double th_min = 1e300, th_max = -1e300;
    const int n = grid_resolution;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Vec3 p;
                const int idx[3] = {i, j, k};
                for (int d = 0; d < 3; ++d) {
                    const double frac = (idx[d] + 0.5) / n;
                    p[d] = cm.lo[d] + frac * (cm.hi[d] - cm.lo[d]);
                }
                const Vec3 al = cm.alpha(p);
                const Mat3 dal = chart_dalpha(cm.alpha, p, cm.h);
                const double s = al.x * dal(1, 2) - al.y * dal(0, 2) + al.z * dal(0, 1);
                min_val = std::min(min_val, s);
                const Mat3 g = cm.metric(p);
                const double m1 = g(0, 0);
                const double m2 = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
                if (m1 <= 0.0 || m2 <= 0.0 || det(g) <= 0.0)
                    throw NotContact("chart metric is not positive definite on the grid");
                const ChartFrame fr = chart_frame(cm, p);
                th_min = std::min(th_min, fr.theta_prime);
                th_max = std::max(th_max, fr.theta_prime);
            }
    rep.min_contact_value = min_val;
    rep.positive = min_val > 0.0;
    rep.theta_spread = (th_max - th_min) / std::max(1e-300, std::fabs(th_max));
    if (!rep.positive) throw NotContact("alpha ^ d_alpha is not positive on the validation grid");
    return rep;
}

// Reeb vector at p, in frame components for frame models and chart
// components for chart models.
inline Vec3 reeb_vector(const Model& model, const ModelPoint& p) {
    if (std::holds_alternative<FrameModel>(model)) return {1.0, 0.0, 0.0};
    if (const auto* cm = std::get_if<ChartModel>(&model)) return chart_reeb(*cm, p.v3());
    throw NotContact("catmap carries no Reeb field");
}

// ---------------------------------------------------------------------------
// Domain handling for chart models.

inline Vec3 wrap_point(const ChartModel& m, Vec3 p) {
    for (int d = 0; d < 3; ++d) {
        const double span = m.hi[d] - m.lo[d];
        if (m.periodic[d]) {
            p[d] = m.lo[d] + std::fmod(p[d] - m.lo[d], span);
            if (p[d] < m.lo[d]) p[d] += span;
        }
    }
    return p;
}

inline bool inside_domain(const ChartModel& m, Vec3 p, double margin = 0.0) {
    for (int d = 0; d < 3; ++d) {
        if (m.periodic[d]) continue;
        if (p[d] < m.lo[d] + margin || p[d] > m.hi[d] - margin) return false;
    }
    return true;
}

inline double chart_distance(const ChartModel& m, Vec3 a, Vec3 b) {
    double s = 0.0;
    for (int d = 0; d < 3; ++d) {
        double diff = a[d] - b[d];
        if (m.periodic[d]) {
            const double span = m.hi[d] - m.lo[d];
            diff = std::remainder(diff, span);
        }
        s += diff * diff;
    }
    return std::sqrt(s);
}

// Deterministic sample points for grid sweeps: chart models draw from the
// seeded generator inside the box (with an inset on non-periodic axes);
// frame-model quantities are position-independent, so the base point repeats.
inline std::vector<ModelPoint> sample_points(const Model& model, int count, Rng& rng) {
    std::vector<ModelPoint> out;
    out.reserve(static_cast<std::size_t>(count));
    if (const auto* fm = std::get_if<FrameModel>(&model)) {
        for (int i = 0; i < count; ++i) out.push_back(fm->base_point);
        return out;
    }
    if (const auto* cm = std::get_if<ChartModel>(&model)) {
        for (int i = 0; i < count; ++i) {
            Vec3 p;
            for (int d = 0; d < 3; ++d) {
                const double span = cm->hi[d] - cm->lo[d];
                const double inset = cm->periodic[d] ? 0.0 : 0.15 * span;
                p[d] = rng.uniform(cm->lo[d] + inset, cm->hi[d] - inset);
            }
            out.push_back(ModelPoint::coords(p.x, p.y, p.z));
        }
        return out;
    }
    for (int i = 0; i < count; ++i)
        out.push_back(ModelPoint::coords(rng.uniform(), rng.uniform(), 0.0));
    return out;
}

} // namespace reebkit

#endif // REEBKIT_MODELS_HPP
