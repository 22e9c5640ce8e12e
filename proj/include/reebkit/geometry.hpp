#ifndef REEBKIT_GEOMETRY_HPP
#define REEBKIT_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "reebkit/errors.hpp"
#include "reebkit/flow.hpp"
#include "reebkit/linalg.hpp"
#include "reebkit/models.hpp"

// Riemannian computations for compatible metrics, in the orthonormal frame
// (X, e, Je). Everything reduces to the frame structure functions
// c(i,j,k) = g([E_i, E_j], E_k) and the connection coefficients
// Gamma(i,j,k) = g(nabla_{E_i} E_j, E_k) = (c(i,j,k) - c(j,k,i) + c(k,i,j))/2.
//
// Sectional curvatures of planes containing the Reeb leg are computed twice:
// once from the frame Riemann tensor and once from the decomposition
//
//   k(e, X) = g(Je, D_e X)^2 - g(e, D_e X)^2 - d/dt g(e(t), D_{e(t)} X)|_0
//
// with e(t) the normalized flow-invariant (Jacobi) transport of e; the two
// routes must agree within tolerance or the call fails hard.

namespace reebkit {

inline constexpr double kFrameTol = 1e-6;
inline constexpr double kChartTol = 1e-4;
inline constexpr double kFrameIdentityTol = 1e-8;
inline constexpr double kChartIdentityTol = 1e-5;

struct FramePack {
    double theta_prime = 0.0;
    double c[3][3][3] = {};
    double gamma[3][3][3] = {};
    bool exact = false; // frame models: constants, no FD noise

    // g(w, D_w X) for w = cos(t) e + sin(t) Je
    double radial_rate(double theta) const {
        const double w[2] = {std::cos(theta), std::sin(theta)};
        double s = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) s += w[a] * w[b] * gamma[a + 1][0][b + 1];
        return s;
    }
    // g(Jw, D_w X)
    double rotational_rate(double theta) const {
        const double w[2] = {std::cos(theta), std::sin(theta)};
        const double jw[2] = {-std::sin(theta), std::cos(theta)};
        double s = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) s += w[a] * jw[b] * gamma[a + 1][0][b + 1];
        return s;
    }
};

namespace detail {

// Differentiating the numerically-evaluated frame fields needs a step well
// above the fields' own FD noise floor (~1e-11), unlike the h = 1e-5 step
// used on the closed-form chart data.
inline constexpr double kFrameJacStep = 5e-4;

inline void koszul_from_c(FramePack& pack) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                pack.gamma[i][j][k] = 0.5 * (pack.c[i][j][k] - pack.c[j][k][i] + pack.c[k][i][j]);
}

// Structure functions of the chart frame at p.
inline void chart_c_at(const ChartModel& m, Vec3 p, double out_c[3][3][3],
                       double* theta_out = nullptr) {
    const ChartFrame f = chart_frame(m, p);
    const Vec3 fields[3] = {f.X, f.e, f.Je};
    Mat3 jac[3];
    for (int leg = 0; leg < 3; ++leg) {
        for (int axis = 0; axis < 3; ++axis) {
            const Vec3 col = richardson_d1(
                [&](double step) {
                    Vec3 q = p;
                    q[axis] += step;
                    const ChartFrame fq = chart_frame(m, q);
                    return leg == 0 ? fq.X : (leg == 1 ? fq.e : fq.Je);
                },
                kFrameJacStep);
            for (int r = 0; r < 3; ++r) jac[leg](r, axis) = col[r];
        }
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Vec3 bracket = jac[j] * fields[i] - jac[i] * fields[j];
            for (int k = 0; k < 3; ++k) out_c[i][j][k] = dot(bracket, f.g * fields[k]);
        }
    if (theta_out) *theta_out = f.theta_prime;
}

} // namespace detail

inline FramePack frame_pack(const Model& model, const ModelPoint& p) {
    FramePack pack;
    if (const auto* fm = std::get_if<FrameModel>(&model)) {
        (void)p;
        pack.theta_prime = fm->theta_prime;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) pack.c[i][j][k] = fm->sc(i, j, k);
        detail::koszul_from_c(pack);
        pack.exact = true;
        return pack;
    }
    if (const auto* cm = std::get_if<ChartModel>(&model)) {
        detail::chart_c_at(*cm, p.v3(), pack.c, &pack.theta_prime);
        detail::koszul_from_c(pack);
        pack.exact = false;
        return pack;
    }
    throw NotContact("catmap carries no compatible metric");
}

// ---------------------------------------------------------------------------
// Connection and second fundamental form.

struct FrameConnection {
    double gamma[3][3][3]; // Gamma(i,j,k) = g(nabla_{E_i} E_j, E_k)
    double c[3][3][3];
};

inline FrameConnection connection(const Model& model, const ModelPoint& p = {}) {
    const FramePack pack = frame_pack(model, p);
    FrameConnection out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                out.gamma[i][j][k] = pack.gamma[i][j][k];
                out.c[i][j][k] = pack.c[i][j][k];
            }
    return out;
}

// II(u, v) = g(nabla_u v, X) on the basis (e, Je).
inline Mat2 second_fundamental_form(const Model& model, const ModelPoint& p = {}) {
    const FramePack pack = frame_pack(model, p);
    return {pack.gamma[1][1][0], pack.gamma[1][2][0], pack.gamma[2][1][0], pack.gamma[2][2][0]};
}

// ---------------------------------------------------------------------------
// Riemann tensor route. For frame models the connection is constant and the
// curvature is pure Gamma algebra. For chart models the Riemann tensor is
// assembled in coordinates from first and second differences of the metric
// (steps chosen against the metric's own FD noise floor) and contracted with
// the orthonormal frame at the point.

// Quadratic form of the alpha-sectional curvature on the plane:
//   k(w(theta), X) = q11 cos^2 + 2 q12 cos sin + q22 sin^2.
struct SectionalForm {
    double q11 = 0.0, q12 = 0.0, q22 = 0.0;
    double eval(double theta) const {
        const double cth = std::cos(theta), sth = std::sin(theta);
        return q11 * cth * cth + 2.0 * q12 * cth * sth + q22 * sth * sth;
    }
    double max_value() const {
        const auto ev = sym_eigenvalues(q11, q12, q22);
        return ev[1];
    }
};

namespace detail {

// Frame models: Rm(i,j,k,l) = g(R(E_i, E_j) E_k, E_l) with constant Gamma.
inline double riemann_frame(const FramePack& p, int i, int j, int k, int l) {
    double s = 0.0;
    for (int m = 0; m < 3; ++m) {
        s += p.gamma[j][k][m] * p.gamma[i][m][l] - p.gamma[i][k][m] * p.gamma[j][m][l];
        s -= p.c[i][j][m] * p.gamma[m][k][l];
    }
    return s;
}

// Chart models: fully-lowered coordinate Riemann tensor at p.
struct ChartRiemann {
    double r[3][3][3][3]; // R(i,j,k,l) = g(R(d_i, d_j) d_k, d_l)
};

inline ChartRiemann chart_riemann(const ChartModel& m, Vec3 p) {
    const double h1 = 1e-4; // first derivatives of the (noisy) metric values
    const double h2 = 1e-2; // second differences, Richardson-extrapolated
    const Mat3 g0 = m.metric(p);
    const Mat3 ginv = inverse(g0);

    Mat3 dg[3];
    for (int a = 0; a < 3; ++a) {
        dg[a] = richardson_d1(
            [&](double step) {
                Vec3 q = p;
                q[a] += step;
                return m.metric(q);
            },
            h1);
    }
    Mat3 d2g[3][3];
    auto diag_stencil = [&](int a, double h) {
        Vec3 qa = p, qma = p;
        qa[a] += h;
        qma[a] -= h;
        return (m.metric(qa) + m.metric(qma) - g0 * 2.0) * (1.0 / (h * h));
    };
    auto cross_stencil = [&](int a, int b, double h) {
        Vec3 qpp = p, qpm = p, qmp = p, qmm = p;
        qpp[a] += h;
        qpp[b] += h;
        qpm[a] += h;
        qpm[b] -= h;
        qmp[a] -= h;
        qmp[b] += h;
        qmm[a] -= h;
        qmm[b] -= h;
        return (m.metric(qpp) - m.metric(qpm) - m.metric(qmp) + m.metric(qmm)) *
               (1.0 / (4.0 * h * h));
    };
    for (int a = 0; a < 3; ++a) {
        d2g[a][a] = diag_stencil(a, 0.5 * h2) * (4.0 / 3.0) - diag_stencil(a, h2) * (1.0 / 3.0);
        for (int b = a + 1; b < 3; ++b) {
            d2g[a][b] = cross_stencil(a, b, 0.5 * h2) * (4.0 / 3.0) -
                        cross_stencil(a, b, h2) * (1.0 / 3.0);
            d2g[b][a] = d2g[a][b];
        }
    }

    // Christoffels of the first kind and their derivatives
    auto gamma1 = [&](int l, int i, int j) {
        return 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
    };
    auto dgamma1 = [&](int a, int l, int i, int j) {
        return 0.5 * (d2g[a][i](j, l) + d2g[a][j](i, l) - d2g[a][l](i, j));
    };
    Mat3 dginv[3];
    for (int a = 0; a < 3; ++a) dginv[a] = (ginv * dg[a] * ginv) * -1.0;

    double gamma2[3][3][3]; // Gamma^k_{ij}
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int l = 0; l < 3; ++l) s += ginv(k, l) * gamma1(l, i, j);
                gamma2[k][i][j] = s;
            }
    auto dgamma2 = [&](int a, int k, int i, int j) {
        double s = 0.0;
        for (int l = 0; l < 3; ++l)
            s += dginv[a](k, l) * gamma1(l, i, j) + ginv(k, l) * dgamma1(a, l, i, j);
        return s;
    };

    ChartRiemann out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double up[3]; // R^l_{ijk}
                for (int l = 0; l < 3; ++l) {
                    double s = dgamma2(i, l, j, k) - dgamma2(j, l, i, k);
                    for (int mm = 0; mm < 3; ++mm)
                        s += gamma2[l][i][mm] * gamma2[mm][j][k] -
                             gamma2[l][j][mm] * gamma2[mm][i][k];
                    up[l] = s;
                }
                for (int l = 0; l < 3; ++l) {
                    double s = 0.0;
                    for (int mm = 0; mm < 3; ++mm) s += g0(l, mm) * up[mm];
                    out.r[i][j][k][l] = s;
                }
            }
    return out;
}

} // namespace detail

inline SectionalForm sectional_form(const Model& model, const ModelPoint& p, const FramePack& pack) {
    SectionalForm form;
    if (pack.exact) {
        form.q11 = detail::riemann_frame(pack, 1, 0, 0, 1);
        form.q22 = detail::riemann_frame(pack, 2, 0, 0, 2);
        form.q12 = 0.5 * (detail::riemann_frame(pack, 1, 0, 0, 2) +
                          detail::riemann_frame(pack, 2, 0, 0, 1));
        return form;
    }
    const auto& cm = std::get<ChartModel>(model);
    const Vec3 q = p.v3();
    const ChartFrame f = chart_frame(cm, q);
    const detail::ChartRiemann rm = detail::chart_riemann(cm, q);
    auto contract = [&](Vec3 a, Vec3 b, Vec3 c, Vec3 d) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        s += rm.r[i][j][k][l] * a[i] * b[j] * c[k] * d[l];
        return s;
    };
    form.q11 = contract(f.e, f.X, f.X, f.e);
    form.q22 = contract(f.Je, f.X, f.X, f.Je);
    form.q12 = 0.5 * (contract(f.e, f.X, f.X, f.Je) + contract(f.Je, f.X, f.X, f.e));
    return form;
}

// ---------------------------------------------------------------------------
// Jacobi-rate engine: flow-invariant transport of the plane over a short
// segment, reused for every angle at a point.

class JacobiRateEngine {
public:
    // Chart packs carry ~1e-8 FD noise, so the differencing segment is longer
    // there; frame packs are exact and keep the short segment.
    static double default_delta(const Model& model) {
        return std::holds_alternative<FrameModel>(model) ? 1e-3 : 5e-3;
    }

    JacobiRateEngine(const Model& model, const ModelPoint& p, double delta = 0.0)
        : delta_(delta > 0.0 ? delta : default_delta(model)), pack0_(frame_pack(model, p)) {
        const FlowOptions fopt;
        const std::vector<double> fwd{0.5 * delta_, delta_};
        const std::vector<double> bwd{-0.5 * delta_, -delta_};
        const auto sf = xi_transport(model, p, fwd, fopt, false);
        const auto sb = xi_transport(model, p, bwd, fopt, false);
        maps_[2] = sf[0].map; // +delta/2
        maps_[3] = sf[1].map; // +delta
        maps_[1] = sb[0].map; // -delta/2
        maps_[0] = sb[1].map; // -delta
        if (pack0_.exact) {
            for (int i = 0; i < 4; ++i) packs_[i] = pack0_;
        } else {
            packs_[0] = frame_pack(model, sb[1].point);
            packs_[1] = frame_pack(model, sb[0].point);
            packs_[2] = frame_pack(model, sf[0].point);
            packs_[3] = frame_pack(model, sf[1].point);
        }
    }

    const FramePack& pack() const { return pack0_; }

    // m(t) = g(e(t), D_{e(t)} X) at the transported, renormalized direction.
    double m_at(int slot, double theta) const {
        const Vec2 a0{std::cos(theta), std::sin(theta)};
        Vec2 a = maps_[slot] * a0;
        const double n = norm(a);
        a = a * (1.0 / n);
        const double ang = std::atan2(a.y, a.x);
        return packs_[slot].radial_rate(ang);
    }

    // d/dt m(e(t))|_0, Richardson-extrapolated central differences.
    double rate(double theta) const {
        const double r1 = (m_at(3, theta) - m_at(0, theta)) / (2.0 * delta_);
        const double r2 = (m_at(2, theta) - m_at(1, theta)) / delta_;
        return (4.0 * r2 - r1) / 3.0;
    }

    // d/dt ln |e~(t)| |_0: the growth rate of the unnormalized Jacobi field.
    double log_norm_rate(double theta) const {
        const Vec2 a0{std::cos(theta), std::sin(theta)};
        auto ln = [&](int slot) { return std::log(norm(maps_[slot] * a0)); };
        const double r1 = (ln(3) - ln(0)) / (2.0 * delta_);
        const double r2 = (ln(2) - ln(1)) / delta_;
        return (4.0 * r2 - r1) / 3.0;
    }

private:
    double delta_;
    FramePack pack0_;
    std::array<Mat2, 4> maps_;  // order: -d, -d/2, +d/2, +d
    std::array<FramePack, 4> packs_;
};

// ---------------------------------------------------------------------------
// alpha-sectional curvature, both routes reconciled.

struct SectionalValue {
    double value = 0.0;
    double tensor_route = 0.0;
    double decomposition_route = 0.0;
};

namespace detail {

inline double route_tolerance(const FramePack& p) { return p.exact ? kFrameTol : kChartTol; }

inline SectionalValue sectional_both(const FramePack& pack, const SectionalForm& form,
                                     const JacobiRateEngine& eng, double theta) {
    SectionalValue out;
    out.tensor_route = form.eval(theta);
    const double g1 = pack.rotational_rate(theta);
    const double m = pack.radial_rate(theta);
    out.decomposition_route = g1 * g1 - m * m - eng.rate(theta);
    out.value = out.tensor_route;
    if (std::fabs(out.tensor_route - out.decomposition_route) > route_tolerance(pack))
        throw OracleDisagreement(
            "alpha-sectional routes disagree: tensor " + std::to_string(out.tensor_route) +
            " vs decomposition " + std::to_string(out.decomposition_route));
    return out;
}

} // namespace detail

inline SectionalValue alpha_sectional(const Model& model, const ModelPoint& p, double angle) {
    const JacobiRateEngine eng(model, p);
    const SectionalForm form = sectional_form(model, p, eng.pack());
    return detail::sectional_both(eng.pack(), form, eng, angle);
}

// All angles at once, sharing one pack, one curvature form and one set of
// transports.
struct SectionalScan {
    std::vector<double> angles;
    std::vector<double> k_tensor;
    std::vector<double> k_decomposition;
    double max_route_difference = 0.0;
};

inline SectionalScan alpha_sectional_scan(const Model& model, const ModelPoint& p,
                                          int n_angles = 64) {
    const JacobiRateEngine eng(model, p);
    const SectionalForm form = sectional_form(model, p, eng.pack());
    SectionalScan scan;
    for (int i = 0; i < n_angles; ++i) {
        const double theta = kPi * static_cast<double>(i) / static_cast<double>(n_angles);
        const SectionalValue v = detail::sectional_both(eng.pack(), form, eng, theta);
        scan.angles.push_back(theta);
        scan.k_tensor.push_back(v.tensor_route);
        scan.k_decomposition.push_back(v.decomposition_route);
        scan.max_route_difference =
            std::max(scan.max_route_difference, std::fabs(v.tensor_route - v.decomposition_route));
    }
    return scan;
}

// ---------------------------------------------------------------------------
// Ricci curvature of the Reeb field, three routes reconciled.

struct RicciValue {
    double value = 0.0;
    double sum_route = 0.0;           // k(e, X) + k(Je, X)
    double det_route = 0.0;           // 2 det(II)
    double theta_formula = 0.0;       // theta'^2/2 - 2 m^2 - 2 (G1 - theta'/2)^2
    double theta_formula_spread = 0.0; // over sampled directions
};

inline RicciValue ricci_reeb(const Model& model, const ModelPoint& p = {}) {
    const FramePack pack = frame_pack(model, p);
    const SectionalForm form = sectional_form(model, p, pack);
    RicciValue out;
    out.sum_route = form.q11 + form.q22;
    const Mat2 ii{pack.gamma[1][1][0], pack.gamma[1][2][0], pack.gamma[2][1][0], pack.gamma[2][2][0]};
    out.det_route = 2.0 * det(ii);
    double fmin = 1e300, fmax = -1e300;
    for (int i = 0; i < 8; ++i) {
        const double theta = kPi * i / 8.0;
        const double m = pack.radial_rate(theta);
        const double g1 = pack.rotational_rate(theta);
        const double val = 0.5 * pack.theta_prime * pack.theta_prime - 2.0 * m * m -
                           2.0 * (g1 - 0.5 * pack.theta_prime) * (g1 - 0.5 * pack.theta_prime);
        fmin = std::min(fmin, val);
        fmax = std::max(fmax, val);
    }
    out.theta_formula = 0.5 * (fmin + fmax);
    out.theta_formula_spread = fmax - fmin;
    out.value = out.sum_route;

    const double tol = pack.exact ? kFrameIdentityTol : kChartIdentityTol;
    if (pack.exact && out.theta_formula_spread > kFrameIdentityTol)
        throw OracleDisagreement("theta-formula for Ricci depends on the sampled direction");
    if (std::fabs(out.sum_route - out.det_route) > tol ||
        std::fabs(out.sum_route - out.theta_formula) > tol)
        throw OracleDisagreement("Ricci routes disagree: sum " + std::to_string(out.sum_route) +
                                 ", 2 det II " + std::to_string(out.det_route) + ", theta-formula " +
                                 std::to_string(out.theta_formula));
    return out;
}

// ---------------------------------------------------------------------------
// Reeb-invariance defect of the metric and the zero-direction structure.

struct LieDerivativeInfo {
    double norm2 = 0.0;            // |L_X g|^2 in the orthonormal frame
    bool degenerate = false;       // Reeb-invariant point: every direction is a zero direction
    double zero_angle_1 = 0.0;     // in [0, pi), measured from the e leg
    double zero_angle_2 = 0.0;     // = zero_angle_1 + pi/2
    bool quadrant_alternation = false;
    double mean_rate = 0.0;        // DC offset of g(w, D_w X); ~ -H/2, vanishes for compatible g
};

inline LieDerivativeInfo lie_derivative_metric(const Model& model, const ModelPoint& p = {}) {
    const FramePack pack = frame_pack(model, p);
    LieDerivativeInfo out;
    double l[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            l[i][j] = pack.gamma[i][0][j] + pack.gamma[j][0][i];
            out.norm2 += l[i][j] * l[i][j];
        }
    if (out.norm2 <= 1e-10) {
        out.degenerate = true;
        return out;
    }
    // m(theta) = dc + a cos(2 theta) + b sin(2 theta)
    const double s11 = pack.gamma[1][0][1], s22 = pack.gamma[2][0][2];
    const double s12 = 0.5 * (pack.gamma[1][0][2] + pack.gamma[2][0][1]);
    const double a = 0.5 * (s11 - s22), b = s12;
    out.mean_rate = 0.5 * (s11 + s22);
    double theta0 = 0.5 * std::atan2(-a, b);
    // normalize representative zero directions into [0, pi)
    theta0 -= kPi * std::floor(theta0 / kPi);
    if (theta0 >= kPi) theta0 -= kPi;
    theta0 += 0.0; // -0.0 -> +0.0
    out.zero_angle_1 = std::min(theta0, std::fmod(theta0 + 0.5 * kPi, kPi));
    out.zero_angle_2 = std::max(theta0, std::fmod(theta0 + 0.5 * kPi, kPi));

    // sampled four-quadrant alternation, with a dead band near the zeros
    const double amp = std::sqrt(a * a + b * b);
    bool ok = amp > 10.0 * std::fabs(out.mean_rate);
    std::vector<int> signs;
    for (int i = 0; i < 64 && ok; ++i) {
        const double theta = 2.0 * kPi * i / 64.0;
        const double m = pack.radial_rate(theta);
        const double d1 = std::fabs(std::remainder(theta - out.zero_angle_1, kPi));
        const double d2 = std::fabs(std::remainder(theta - out.zero_angle_2, kPi));
        if (std::min(d1, d2) < 0.15) continue; // dead band
        if (m == 0.0) ok = false;
        signs.push_back(m > 0.0 ? 1 : -1);
    }
    int flips = 0;
    for (std::size_t i = 0; ok && i < signs.size(); ++i)
        if (signs[i] != signs[(i + 1) % signs.size()]) ++flips;
    out.quadrant_alternation = ok && flips == 4;
    return out;
}

// ---------------------------------------------------------------------------
// Curvature-bound detector: k(e, X) < [theta'/2 - sqrt(theta'^2/4 - Ricci/2)]^2
// for every unit e at every sampled point implies an Anosov Reeb flow.

struct NegBoundPointSample {
    ModelPoint point;
    double ricci = 0.0;
    double bound_rhs = 0.0;
    double max_k = 0.0;
    double worst_angle = 0.0;
    double margin = 0.0; // max_k - bound_rhs; verdict needs < 0
};

struct NegBoundReport {
    bool holds = false;
    double worst_margin = -1e300;
    NegBoundPointSample worst;
    std::vector<NegBoundPointSample> samples;
};

inline double neg_bound_rhs(double theta_prime, double ricci) {
    double radicand = 0.25 * theta_prime * theta_prime - 0.5 * ricci;
    if (radicand < 0.0) {
        if (radicand < -1e-10)
            throw OracleDisagreement("Ricci exceeds theta'^2/2: radicand " + std::to_string(radicand));
        radicand = 0.0;
    }
    const double r = 0.5 * theta_prime - std::sqrt(radicand);
    return r * r;
}

inline NegBoundReport neg_bound_check(const Model& model, const std::vector<ModelPoint>& points,
                                      int n_angles = 64) {
    NegBoundReport rep;
    for (const auto& p : points) {
        const RicciValue ric = ricci_reeb(model, p);
        const FramePack pack = frame_pack(model, p);
        const SectionalForm form = sectional_form(model, p, pack);
        NegBoundPointSample s;
        s.point = p;
        s.ricci = ric.value;
        s.bound_rhs = neg_bound_rhs(pack.theta_prime, ric.value);
        s.max_k = -1e300;
        for (int i = 0; i < n_angles; ++i) {
            const double theta = kPi * i / n_angles;
            const double k = form.eval(theta);
            if (k > s.max_k) {
                s.max_k = k;
                s.worst_angle = theta;
            }
        }
        s.margin = s.max_k - s.bound_rhs;
        if (s.margin > rep.worst_margin) {
            rep.worst_margin = s.margin;
            rep.worst = s;
        }
        rep.samples.push_back(s);
    }
    rep.holds = rep.worst_margin < 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Chern-Hamilton energy E(g) = integral of |L_X g|^2 dVol.

struct EnergyReport {
    double density = 0.0;                   // representative pointwise |L_X g|^2
    std::optional<double> energy;           // absent when no finite domain is declared
    std::optional<double> volume;
    std::string domain = "";
    int resolution = 0;
};

inline EnergyReport chern_hamilton_energy(const Model& model, int resolution = 32) {
    if (resolution < 2) throw BadInput("quadrature resolution must be at least 2");
    EnergyReport rep;
    rep.resolution = resolution;
    if (const auto* fm = std::get_if<FrameModel>(&model)) {
        const LieDerivativeInfo info = lie_derivative_metric(model, fm->base_point);
        rep.density = info.norm2;
        if (fm->volume) {
            rep.volume = fm->volume;
            rep.energy = info.norm2 * *fm->volume;
            rep.domain = "group volume";
        } else {
            rep.domain = "unbounded";
        }
        return rep;
    }
    if (const auto* cm = std::get_if<ChartModel>(&model)) {
        double energy = 0.0, volume = 0.0, density0 = 0.0;
        const int n = resolution;
        double cell = 1.0;
        for (int d = 0; d < 3; ++d) cell *= (cm->hi[d] - cm->lo[d]) / n;
        bool first = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Vec3 p;
                    const int idx[3] = {i, j, k};
                    for (int d = 0; d < 3; ++d)
                        p[d] = cm->lo[d] + (idx[d] + 0.5) * (cm->hi[d] - cm->lo[d]) / n;
                    const ModelPoint mp = ModelPoint::coords(p.x, p.y, p.z);
                    const LieDerivativeInfo info = lie_derivative_metric(model, mp);
                    const double vol_el = std::sqrt(det(cm->metric(p))) * cell;
                    energy += info.norm2 * vol_el;
                    volume += vol_el;
                    if (first) {
                        density0 = info.norm2;
                        first = false;
                    }
                }
        rep.density = density0;
        rep.energy = energy;
        rep.volume = volume;
        rep.domain = "chart box";
        return rep;
    }
    throw NotContact("catmap carries no compatible metric");
}

// ---------------------------------------------------------------------------
// Assembled per-point report.

struct CurvatureReport {
    ModelPoint point;
    double theta_prime = 0.0;
    std::vector<double> angles;
    std::vector<double> k;            // reconciled alpha-sectional values
    double ricci = 0.0;
    double extrinsic = 0.0;           // G(xi) = det II
    double mean_curvature = 0.0;      // H(xi) = trace II
    Mat2 second_fundamental;
    double lie_norm2 = 0.0;
    LieDerivativeInfo lie;
    double neg_bound_rhs_value = 0.0;
    double neg_margin = 0.0;          // RHS - max_e k  (positive when the bound holds)
};

inline CurvatureReport curvature_report(const Model& model, const ModelPoint& p,
                                        int n_angles = 64) {
    CurvatureReport rep;
    rep.point = p;
    const FramePack pack = frame_pack(model, p);
    rep.theta_prime = pack.theta_prime;
    const SectionalScan scan = alpha_sectional_scan(model, p, n_angles);
    rep.angles = scan.angles;
    rep.k = scan.k_tensor;
    const RicciValue ric = ricci_reeb(model, p);
    rep.ricci = ric.value;
    rep.second_fundamental = second_fundamental_form(model, p);
    rep.extrinsic = det(rep.second_fundamental);
    rep.mean_curvature = trace(rep.second_fundamental);
    rep.lie = lie_derivative_metric(model, p);
    rep.lie_norm2 = rep.lie.norm2;
    rep.neg_bound_rhs_value = neg_bound_rhs(pack.theta_prime, ric.value);
    double kmax = -1e300;
    for (double v : rep.k) kmax = std::max(kmax, v);
    rep.neg_margin = rep.neg_bound_rhs_value - kmax;

    const double tol = pack.exact ? kFrameIdentityTol : kChartIdentityTol;
    if (std::fabs(rep.mean_curvature) > tol)
        throw OracleDisagreement("mean curvature H(xi) is not zero: " +
                                 std::to_string(rep.mean_curvature));
    if (std::fabs(rep.ricci - 2.0 * rep.extrinsic) > tol)
        throw OracleDisagreement("Ricci(X) != 2 G(xi)");
    if (rep.ricci > 0.5 * rep.theta_prime * rep.theta_prime + kFrameIdentityTol)
        throw OracleDisagreement("Ricci(X) exceeds theta'^2/2");
    return rep;
}

} // namespace reebkit

#endif // REEBKIT_GEOMETRY_HPP
