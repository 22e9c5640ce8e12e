#ifndef REEBKIT_FLOW_HPP
#define REEBKIT_FLOW_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "reebkit/errors.hpp"
#include "reebkit/linalg.hpp"
#include "reebkit/models.hpp"
#include "reebkit/ode.hpp"
#include "reebkit/sp2.hpp"

// Reeb flow integration and the induced transport of the contact plane.
//
// The transport is always reported in the orthonormal frame (e, Je): for
// frame models the flow derivative in frame components solves a' = -C a with
// C the bracket-with-X matrix restricted to the plane; for chart models the
// coordinate variational equation is integrated and projected onto the frame
// at the endpoint; for the suspension model the fiber transport in the
// interpolating frame is exp(t log A), or R(pi t) exp(t log A) for the
// orientation-reversing variant, produced by integrating the frame-encoded
// variational equation.

namespace reebkit {

struct FlowOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step_fraction = 1.0 / 256.0; // of the requested duration
};

struct Trajectory {
    std::vector<double> times;
    std::vector<ModelPoint> points;
    double alpha_drift = 0.0; // max |alpha(velocity) - 1| over samples (contact models)
};

namespace detail {

inline OdeOptions ode_options(const FlowOptions& opt, double duration) {
    OdeOptions o;
    o.rel_tol = opt.rel_tol;
    o.abs_tol = opt.abs_tol;
    o.max_step = std::fabs(duration) * opt.max_step_fraction;
    if (o.max_step == 0.0) o.max_step = 0.0;
    return o;
}

inline std::vector<double> uniform_times(double T, std::size_t n) {
    std::vector<double> ts(n);
    for (std::size_t i = 0; i < n; ++i) ts[i] = T * static_cast<double>(i) / static_cast<double>(n - 1);
    return ts;
}

// Jacobian of the chart Reeb field by central differences with one
// Richardson step. The Reeb values carry ~1e-11 of FD roundoff, so the step
// sits well above it; the Richardson combination keeps the truncation error
// negligible for chart-scale fields.
inline constexpr double kChartFlowJacStep = 5e-3;

inline Mat3 chart_reeb_jacobian(const ChartModel& m, Vec3 p) {
    Mat3 j;
    for (int axis = 0; axis < 3; ++axis) {
        const Vec3 col = richardson_d1(
            [&](double step) {
                Vec3 q = p;
                q[axis] += step;
                return chart_reeb(m, q);
            },
            kChartFlowJacStep);
        for (int r = 0; r < 3; ++r) j(r, axis) = col[r];
    }
    return j;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Flow.

inline Trajectory flow(const Model& model, const ModelPoint& start, double T,
                       std::size_t n_samples = 129, const FlowOptions& opt = {}) {
    if (n_samples < 2) throw BadInput("flow needs at least two samples");
    Trajectory traj;
    traj.times = detail::uniform_times(T, n_samples);

    if (const auto* fm = std::get_if<FrameModel>(&model)) {
        std::array<double, 4> y{start.x[0], start.x[1], start.x[2], start.x[3]};
        auto rhs = [&](double, const std::array<double, 4>& s) {
            ModelPoint p;
            p.x = s;
            p.dim = start.dim;
            const ModelPoint v = frame_field(*fm, 0, p);
            return v.x;
        };
        integrate_ode<4>(rhs, y, 0.0, T, traj.times,
                         [&](double, const std::array<double, 4>& s) {
                             ModelPoint p;
                             p.x = s;
                             p.dim = start.dim;
                             traj.points.push_back(retract(*fm, p));
                         },
                         detail::ode_options(opt, T));
        traj.alpha_drift = 0.0; // velocity is the Reeb leg itself
        return traj;
    }

    if (const auto* cm = std::get_if<ChartModel>(&model)) {
        std::array<double, 3> y{start.x[0], start.x[1], start.x[2]};
        auto rhs = [&](double, const std::array<double, 3>& s) {
            const Vec3 v = chart_reeb(*cm, {s[0], s[1], s[2]});
            return std::array<double, 3>{v.x, v.y, v.z};
        };
        double drift = 0.0;
        integrate_ode<3>(rhs, y, 0.0, T, traj.times,
                         [&](double, const std::array<double, 3>& s) {
                             const Vec3 raw{s[0], s[1], s[2]};
                             if (!inside_domain(*cm, raw))
                                 throw DomainExit("trajectory left the chart domain at a non-periodic face");
                             const Vec3 w = wrap_point(*cm, raw);
                             traj.points.push_back(ModelPoint::coords(w.x, w.y, w.z));
                             const Vec3 vel = chart_reeb(*cm, raw);
                             drift = std::max(drift, std::fabs(dot(cm->alpha(raw), vel) - 1.0));
                         },
                         detail::ode_options(opt, T));
        traj.alpha_drift = drift;
        return traj;
    }

    // catmap suspension: unit-speed motion in s with the gluing map applied at
    // integer heights.
    const auto& km = std::get<CatmapModel>(model);
    const Mat2 a = km.monodromy();
    for (double t : traj.times) {
        double s_total = start.x[2] + t;
        double k = std::floor(s_total / km.height + 1e-13);
        Vec2 xy{start.x[0], start.x[1]};
        Mat2 power = Mat2::identity();
        for (int i = 0; i < static_cast<int>(std::fabs(k)); ++i) power = (k > 0 ? a : inverse(a)) * power;
        xy = power * xy;
        auto wrap01 = [](double v) {
            v = std::fmod(v, 1.0);
            return v < 0.0 ? v + 1.0 : v;
        };
        traj.points.push_back(
            ModelPoint::coords(wrap01(xy.x), wrap01(xy.y), s_total - k * km.height));
    }
    return traj;
}

inline ModelPoint flow_to(const Model& model, const ModelPoint& start, double T,
                          const FlowOptions& opt = {}) {
    return flow(model, start, T, 2, opt).points.back();
}

// ---------------------------------------------------------------------------
// Contact-plane transport.

struct XiTransportSample {
    double t = 0.0;
    Mat2 map;         // frame (e, Je) at start -> frame (e, Je) at phi_t
    ModelPoint point; // phi_t of the start point
};

namespace detail {

// Bracket-with-X matrix restricted to the plane: a' = -C a.
inline Mat2 frame_plane_generator(const FrameModel& m) {
    return {m.sc(0, 1, 1), m.sc(0, 2, 1), m.sc(0, 1, 2), m.sc(0, 2, 2)};
}

inline Mat2 catmap_coefficient(const CatmapModel& m, double t) {
    const Mat2 l = CatmapModel::log_monodromy();
    if (!m.negative) return l;
    const Mat2 r = Mat2::rotation(kPi * t);
    Mat2 j0{0.0, -1.0, 1.0, 0.0};
    return j0 * kPi + r * l * Mat2::rotation(-kPi * t);
}

template <class Coeff>
inline std::vector<Mat2> integrate_plane_ode(Coeff&& coeff, const std::vector<double>& times,
                                             double t_end, const FlowOptions& opt) {
    std::vector<Mat2> out;
    out.reserve(times.size());
    std::array<double, 4> y{1.0, 0.0, 0.0, 1.0};
    auto rhs = [&](double t, const std::array<double, 4>& s) {
        const Mat2 phi{s[0], s[1], s[2], s[3]};
        const Mat2 d = coeff(t) * phi;
        return std::array<double, 4>{d.a11, d.a12, d.a21, d.a22};
    };
    OdeOptions o;
    o.rel_tol = std::min(opt.rel_tol, 1e-11);
    o.abs_tol = 1e-13;
    o.max_step = std::fabs(t_end) * opt.max_step_fraction;
    integrate_ode<4>(rhs, y, 0.0, t_end, times,
                     [&](double, const std::array<double, 4>& s) {
                         out.push_back(Mat2{s[0], s[1], s[2], s[3]});
                     },
                     o);
    return out;
}

} // namespace detail

// Transport of the contact plane along the flow through `start`, sampled at
// the given times (all of one sign or zero, sorted away from zero). Frame
// quantities are position-independent, so frame-model positions are only
// integrated when `with_points` is set.
inline std::vector<XiTransportSample> xi_transport(const Model& model, const ModelPoint& start,
                                                   const std::vector<double>& times,
                                                   const FlowOptions& opt = {},
                                                   bool with_points = false) {
    if (times.empty()) return {};
    const double t_end = times.back();

    std::vector<XiTransportSample> out;
    out.reserve(times.size());

    if (const auto* fm = std::get_if<FrameModel>(&model)) {
        const Mat2 c = detail::frame_plane_generator(*fm);
        auto coeff = [&](double) { return c * (-1.0); };
        const auto maps = detail::integrate_plane_ode(coeff, times, t_end, opt);
        for (std::size_t i = 0; i < times.size(); ++i) {
            XiTransportSample s;
            s.t = times[i];
            s.map = maps[i];
            s.point = start;
            out.push_back(s);
        }
        if (with_points && std::fabs(t_end) > 0.0) {
            std::array<double, 4> y{start.x[0], start.x[1], start.x[2], start.x[3]};
            auto rhs = [&](double, const std::array<double, 4>& s) {
                ModelPoint p;
                p.x = s;
                p.dim = start.dim;
                return frame_field(*fm, 0, p).x;
            };
            std::size_t idx = 0;
            integrate_ode<4>(rhs, y, 0.0, t_end, times,
                             [&](double, const std::array<double, 4>& s) {
                                 ModelPoint p;
                                 p.x = s;
                                 p.dim = start.dim;
                                 out[idx++].point = retract(*fm, p);
                             },
                             detail::ode_options(opt, t_end));
        }
        return out;
    }

    if (const auto* cm = std::get_if<ChartModel>(&model)) {
        const ChartFrame f0 = chart_frame(*cm, start.v3());
        // state: position (3) + two transported vectors (6)
        std::array<double, 9> y{start.x[0], start.x[1], start.x[2], f0.e.x, f0.e.y, f0.e.z,
                                f0.Je.x, f0.Je.y, f0.Je.z};
        auto rhs = [&](double, const std::array<double, 9>& s) {
            const Vec3 p{s[0], s[1], s[2]};
            const Vec3 v = chart_reeb(*cm, p);
            const Mat3 dx = detail::chart_reeb_jacobian(*cm, p);
            const Vec3 d1 = dx * Vec3{s[3], s[4], s[5]};
            const Vec3 d2 = dx * Vec3{s[6], s[7], s[8]};
            return std::array<double, 9>{v.x, v.y, v.z, d1.x, d1.y, d1.z, d2.x, d2.y, d2.z};
        };
        OdeOptions o = detail::ode_options(opt, t_end);
        // the FD Jacobian has a ~1e-9 noise floor; the step controller must
        // not be asked to resolve below it
        o.rel_tol = std::max(opt.rel_tol, 1e-9);
        o.abs_tol = 1e-11;
        integrate_ode<9>(rhs, y, 0.0, t_end, times,
                         [&](double t, const std::array<double, 9>& s) {
                             const Vec3 p{s[0], s[1], s[2]};
                             const ChartFrame ft = chart_frame(*cm, p);
                             auto project = [&](Vec3 v) {
                                 // drop the (numerically tiny) Reeb component
                                 const double vx = dot(v, ft.g * ft.X);
                                 const Vec3 w = v - ft.X * vx;
                                 return Vec2{dot(w, ft.g * ft.e), dot(w, ft.g * ft.Je)};
                             };
                             const Vec2 c1 = project({s[3], s[4], s[5]});
                             const Vec2 c2 = project({s[6], s[7], s[8]});
                             XiTransportSample smp;
                             smp.t = t;
                             smp.map = Mat2{c1.x, c2.x, c1.y, c2.y};
                             smp.point = ModelPoint::coords(p.x, p.y, p.z);
                             out.push_back(smp);
                         },
                         o);
        return out;
    }

    const auto& km = std::get<CatmapModel>(model);
    auto coeff = [&](double t) { return detail::catmap_coefficient(km, t); };
    const auto maps = detail::integrate_plane_ode(coeff, times, t_end, opt);
    for (std::size_t i = 0; i < times.size(); ++i) {
        XiTransportSample s;
        s.t = times[i];
        s.map = maps[i];
        s.point = flow(model, start, times[i], 2, opt).points.back();
        out.push_back(s);
    }
    return out;
}

inline Mat2 xi_transport_to(const Model& model, const ModelPoint& start, double t,
                            const FlowOptions& opt = {}) {
    if (t == 0.0) return Mat2::identity();
    return xi_transport(model, start, {t}, opt).front().map;
}

// One transport chunk [t0, t1] starting from the point reached at global time
// t0. Global time matters only for the suspension's rotating-frame
// coefficient; frame and chart transports are time-invariant.
struct XiChunk {
    Mat2 map;
    ModelPoint end;
};

inline XiChunk xi_transport_chunk(const Model& model, const ModelPoint& at_t0, double t0, double t1,
                                  const FlowOptions& opt = {}) {
    XiChunk out;
    if (const auto* km = std::get_if<CatmapModel>(&model)) {
        auto coeff = [&](double t) { return detail::catmap_coefficient(*km, t0 + t); };
        out.map = detail::integrate_plane_ode(coeff, {t1 - t0}, t1 - t0, opt).front();
        out.end = flow(model, at_t0, t1 - t0, 2, opt).points.back();
        return out;
    }
    const auto s = xi_transport(model, at_t0, {t1 - t0}, opt, true);
    out.map = s.front().map;
    out.end = s.front().point;
    return out;
}

// Accumulated log-growth of a plane vector along the flow, renormalized at
// every sample time so contracting directions stay well-conditioned.
struct GrowthSample {
    double t = 0.0;
    double log_norm = 0.0;
    Vec2 direction;
};

inline std::vector<GrowthSample> xi_log_growth(const Model& model, const ModelPoint& start, Vec2 v0,
                                               const std::vector<double>& times,
                                               const FlowOptions& opt_in = {}) {
    FlowOptions opt = opt_in;
    opt.rel_tol = std::min(opt.rel_tol, 1e-13);
    opt.abs_tol = 1e-15;
    std::vector<GrowthSample> out;
    out.reserve(times.size());
    ModelPoint p = start;
    Vec2 v = v0 * (1.0 / norm(v0));
    double acc = 0.0;
    double t_prev = 0.0;
    for (double t : times) {
        const XiChunk chunk = xi_transport_chunk(model, p, t_prev, t, opt);
        Vec2 w = chunk.map * v;
        const double n = norm(w);
        acc += std::log(n);
        v = w * (1.0 / n);
        p = chunk.end;
        t_prev = t;
        out.push_back({t, acc, v});
    }
    return out;
}

} // namespace reebkit

#endif // REEBKIT_FLOW_HPP
