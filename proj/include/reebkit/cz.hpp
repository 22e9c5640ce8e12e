#ifndef REEBKIT_CZ_HPP
#define REEBKIT_CZ_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reebkit/errors.hpp"
#include "reebkit/linalg.hpp"
#include "reebkit/rng.hpp"
#include "reebkit/sp2.hpp"

// Index computation for nondegenerate paths in SL(2,R) starting at the
// identity. Two independent algorithms are always run and must agree:
//
//  * crossing method: signed count of intersections of t -> det(Phi(t) - Id)
//    with zero. The form at a crossing is Q(v) = omega(v, Phi'(t0) v) on
//    ker(Phi(t0) - Id), with omega(u, w) = u1 w2 - u2 w1; the crossing at
//    t = 0 contributes half the signature of Q on the whole plane.
//  * rotation method: continuous lift of the polar angle, plus the canonical
//    continuation of the endpoint to a normal form (diag(2, 1/2) when
//    tr > 2, -Id when tr < 2) whose polar angle is computed in closed form.
//
// Counterclockwise rotation is the positive generator, so the rotation path
// R(pi t) on [0, 1] has index +1.

namespace reebkit {

struct Crossing {
    double t;
    int sign; // t = 0 entry holds the half-signature; interior entries the full signature
};

struct IndexResult {
    int index = 0;
    EndpointClass endpoint;
    std::vector<Crossing> crossings;
    int crossing_index = 0;
    int rotation_index = 0;
    bool regularized = false; // a non-transverse crossing forced an eps-perturbation
};

namespace detail {

// Symmetrized matrix of the quadratic form v -> omega(v, B v).
inline Mat2 crossing_form(const Mat2& b) {
    const Mat2 jb{b.a21, b.a22, -b.a11, -b.a12}; // J * B with J = [[0,1],[-1,0]]
    return {jb.a11, 0.5 * (jb.a12 + jb.a21), 0.5 * (jb.a12 + jb.a21), jb.a22};
}

struct FormSignature {
    int signature = 0;
    bool degenerate = false;
};

inline FormSignature form_signature(const Mat2& s, double rel_tol) {
    const auto ev = sym_eigenvalues(s.a11, s.a12, s.a22);
    const double scale = std::max({std::fabs(ev[0]), std::fabs(ev[1]), 1e-300});
    FormSignature out;
    for (double lambda : ev) {
        if (std::fabs(lambda) < rel_tol * scale) {
            out.degenerate = true;
        } else {
            out.signature += lambda > 0.0 ? 1 : -1;
        }
    }
    return out;
}

inline double det_minus_id(const Mat2& a) {
    return (a.a11 - 1.0) * (a.a22 - 1.0) - a.a12 * a.a21;
}

struct CrossingScan {
    std::vector<Crossing> crossings;
    int index = 0;
    bool needs_regularization = false;
};

// One pass of the crossing count on the interpolated path. Sets
// needs_regularization instead of deciding when a crossing form degenerates.
inline CrossingScan scan_crossings(const SymplecticPath& path, double form_tol) {
    CrossingScan out;
    const double T = path.duration();
    const std::size_t n = path.size();

    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = det_minus_id(path[i].a);

    // Initial crossing at t = 0: half the signature of the form on the plane.
    {
        const auto sig = form_signature(crossing_form(path.derivative(0.0)), form_tol);
        if (sig.degenerate && sig.signature == 0) {
            // Signature could move by +-1; the perturbed path decides.
            out.needs_regularization = true;
        }
        out.crossings.push_back({0.0, sig.signature / 2});
        out.index += sig.signature / 2;
        if (sig.degenerate && sig.signature != 0) out.needs_regularization = true;
    }

    auto eval_f = [&](double t) { return det_minus_id(path.evaluate(t)); };

    // A sign-change crossing generically has a 1-dimensional kernel; an exact
    // passage through the identity contributes the full signature.
    auto add_interior = [&](double t0) {
        const Mat2 k = path.evaluate(t0) - Mat2::identity();
        const Mat2 s = crossing_form(path.derivative(t0));
        if (frobenius_norm(k) < 1e-8) {
            const auto sig = form_signature(s, form_tol);
            if (sig.degenerate) out.needs_regularization = true;
            out.crossings.push_back({t0, sig.signature});
            out.index += sig.signature;
            return;
        }
        // 1-dimensional kernel: pick it off the larger row of K.
        Vec2 v = (std::fabs(k.a11) + std::fabs(k.a12) >= std::fabs(k.a21) + std::fabs(k.a22))
                     ? Vec2{-k.a12, k.a11}
                     : Vec2{-k.a22, k.a21};
        const double vn = norm(v);
        if (vn < 1e-14) {
            out.needs_regularization = true;
            return;
        }
        v = v * (1.0 / vn);
        const double q = v.x * (s.a11 * v.x + s.a12 * v.y) + v.y * (s.a12 * v.x + s.a22 * v.y);
        const double scale = std::max(frobenius_norm(s), 1e-300);
        if (std::fabs(q) < form_tol * scale) {
            out.needs_regularization = true;
            return;
        }
        out.crossings.push_back({t0, q > 0.0 ? 1 : -1});
        out.index += q > 0.0 ? 1 : -1;
    };

    std::vector<double> found;

    auto is_duplicate = [&](double t0) {
        for (double tf : found)
            if (std::fabs(tf - t0) < 1e-9 * T) return true;
        return false;
    };

    // Transverse crossings: sign changes of f between samples.
    for (std::size_t k = 1; k + 1 < n; ++k) {
        double lo = path[k].t, hi = path[k + 1].t;
        double flo = f[k], fhi = f[k + 1];
        if (flo == 0.0) continue; // handled as a touching candidate
        if (flo * fhi > 0.0) continue;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * T; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = eval_f(mid);
            if (fm == 0.0) { lo = hi = mid; break; }
            if (flo * fm < 0.0) { hi = mid; fhi = fm; } else { lo = mid; flo = fm; }
        }
        const double t0 = 0.5 * (lo + hi);
        found.push_back(t0);
        add_interior(t0);
    }

    // Full-turn passages: whenever the lifted polar angle crosses a multiple
    // of 2 pi, the path meets the crossing locus there (at the identity when
    // the stretch vanishes, through a dip otherwise); a graze that retreats
    // before the multiple never contributes. The lift is solidly resolved at
    // sample scale, so this detector is immune to the f-noise floor.
    {
        std::vector<double> lift(n);
        lift[0] = 0.0;
        double prev_ang = polar_angle(path[0].a);
        for (std::size_t k = 1; k < n; ++k) {
            const double cur = polar_angle(path[k].a);
            lift[k] = lift[k - 1] + wrap_angle(cur - prev_ang);
            prev_ang = cur;
        }
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double lo = std::min(lift[k], lift[k + 1]);
            const double hi = std::max(lift[k], lift[k + 1]);
            const double twopi = 2.0 * kPi;
            for (double m = twopi * std::ceil(lo / twopi); m < hi; m += twopi) {
                if (!(m > lo && m < hi)) continue; // strictly interior passages only
                // locate the angle passage by bisection on the lift
                double ta = path[k].t, tb = path[k + 1].t;
                double la = lift[k];
                const double base_ang = polar_angle(path[k].a);
                auto lift_at = [&](double t) {
                    return lift[k] + wrap_angle(polar_angle(path.evaluate(t)) - base_ang);
                };
                for (int it = 0; it < 200 && tb - ta > 1e-15 * T; ++it) {
                    const double mid = 0.5 * (ta + tb);
                    const double lm = lift_at(mid);
                    if ((la - m) * (lm - m) <= 0.0) tb = mid; else { ta = mid; la = lm; }
                }
                const double tstar = 0.5 * (ta + tb);
                if (tstar <= 1e-12 * T || tstar >= T * (1.0 - 1e-12) || is_duplicate(tstar)) continue;
                const double fstar = eval_f(tstar);
                if (fstar > 1e-13) {
                    out.needs_regularization = true; // passage without locus contact: unresolved
                    continue;
                }
                if (fstar >= -1e-13) {
                    // touches the identity: full signature
                    const auto sig = form_signature(crossing_form(path.derivative(tstar)), form_tol);
                    if (sig.degenerate) out.needs_regularization = true;
                    found.push_back(tstar);
                    out.crossings.push_back({tstar, sig.signature});
                    out.index += sig.signature;
                    continue;
                }
                // a dip through the locus: both transverse edges count
                for (const auto& [left, right] : {std::pair{path[k].t, tstar}, {tstar, path[k + 1].t}}) {
                    double blo = left, bhi = right;
                    double fblo = eval_f(blo), fbhi = eval_f(bhi);
                    if (fblo * fbhi >= 0.0) continue; // edge handled by the sign-change scan
                    for (int it = 0; it < 200 && bhi - blo > 1e-15 * T; ++it) {
                        const double mid = 0.5 * (blo + bhi);
                        const double fm = eval_f(mid);
                        if (fm == 0.0) { blo = bhi = mid; break; }
                        if (fblo * fm < 0.0) { bhi = mid; fbhi = fm; } else { blo = mid; fblo = fm; }
                    }
                    const double root = 0.5 * (blo + bhi);
                    if (is_duplicate(root)) continue;
                    found.push_back(root);
                    add_interior(root);
                }
            }
        }
    }

    // Local minima of |f| without a sample-level sign change hide either a
    // touching zero, a crossing pair narrower than the sample spacing, or a
    // harmless near-miss. The decider is the signed extremum of f toward
    // zero: a passage of the polar angle through a full turn forces f <= 0
    // there (a touch when the stretch vanishes, a dip otherwise), while a
    // miss keeps f strictly one-signed. Touch and micro-dip contribute the
    // same signature, so the boundary between them needs no resolution.
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (std::fabs(f[k]) > 0.05) continue;
        if (std::fabs(f[k - 1]) < std::fabs(f[k]) || std::fabs(f[k + 1]) < std::fabs(f[k])) continue;
        if (f[k - 1] * f[k] < 0.0 || f[k] * f[k + 1] < 0.0) continue; // sign change already handled
        const double a = path[k - 1].t, b = path[k + 1].t;

        constexpr int kFine = 256;
        double ft_prev = eval_f(a);
        bool any_sign_change = false;
        std::vector<double> sub_roots;
        for (int j = 1; j <= kFine; ++j) {
            const double tj = a + (b - a) * j / kFine;
            const double fj = eval_f(tj);
            // values below the evaluation noise floor carry no sign information
            if (std::min(std::fabs(ft_prev), std::fabs(fj)) > 1e-14 && ft_prev * fj < 0.0) {
                double lo = a + (b - a) * (j - 1) / kFine, hi = tj;
                double flo = ft_prev;
                for (int it = 0; it < 200 && hi - lo > 1e-15 * T; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = eval_f(mid);
                    if (fm == 0.0) { lo = hi = mid; break; }
                    if (flo * fm < 0.0) hi = mid; else { lo = mid; flo = fm; }
                }
                sub_roots.push_back(0.5 * (lo + hi));
                any_sign_change = true;
            }
            ft_prev = fj;
        }
        if (any_sign_change) {
            for (double t0 : sub_roots) {
                if (t0 <= 1e-12 * T || t0 >= T * (1.0 - 1e-12)) continue;
                bool duplicate = false;
                for (double tf : found)
                    if (std::fabs(tf - t0) < 1e-9 * T) duplicate = true;
                if (duplicate) continue;
                found.push_back(t0);
                add_interior(t0);
            }
            continue;
        }

        // No sign change even at the fine scale: minimize f toward zero.
        const double side = f[k] >= 0.0 ? 1.0 : -1.0;
        double lo = a, hi = b;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = side * eval_f(x1), f2 = side * eval_f(x2);
        for (int it = 0; it < 160 && hi - lo > 1e-14 * T; ++it) {
            if (f1 < f2) {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo); f1 = side * eval_f(x1);
            } else {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo); f2 = side * eval_f(x2);
            }
        }
        const double t0 = 0.5 * (lo + hi);
        const double closest = side * eval_f(t0); // signed approach: > 0 miss side
        if (t0 <= 1e-12 * T || t0 >= T * (1.0 - 1e-12)) continue;
        bool duplicate = false;
        for (double tf : found)
            if (std::fabs(tf - t0) < 1e-9 * T) duplicate = true;
        if (duplicate) continue;

        if (closest > 1e-13) continue; // genuine miss, resolved above evaluation noise
        if (closest < -1e-13) {
            // a dip through the locus narrower than the fine grid: bisect its
            // two transverse crossings and count each with its own form (a
            // monotone passage adds the pair, an angular turnaround cancels)
            const double fa = eval_f(a), fb = eval_f(b);
            const double f0 = eval_f(t0);
            for (const auto& [left, right, fl, fr] :
                 {std::tuple{a, t0, fa, f0}, std::tuple{t0, b, f0, fb}}) {
                if (fl * fr >= 0.0) continue;
                double blo = left, bhi = right, fblo = fl;
                for (int it = 0; it < 200 && bhi - blo > 1e-15 * T; ++it) {
                    const double mid = 0.5 * (blo + bhi);
                    const double fm = eval_f(mid);
                    if (fm == 0.0) { blo = bhi = mid; break; }
                    if (fblo * fm < 0.0) bhi = mid; else { blo = mid; fblo = fm; }
                }
                const double root = 0.5 * (blo + bhi);
                found.push_back(root);
                add_interior(root);
            }
            continue;
        }
        // |f| below the trust level. Near the identity the feature is a full
        // turn; whether it contributes is decided by the polar angle, which
        // is solidly resolved at the bracket edges: the angle either passes
        // the turn (touch or unresolved micro-dip, the full signature either
        // way) or retreats (graze, no contribution). Away from the identity
        // it is a shear tangency only the perturbation can decide.
        const Mat2 kk = path.evaluate(t0) - Mat2::identity();
        if (frobenius_norm(kk) < 1e-6) {
            const double da = wrap_angle(polar_angle(path.evaluate(a)));
            const double db = wrap_angle(polar_angle(path.evaluate(b)));
            if (da * db < 0.0 && std::min(std::fabs(da), std::fabs(db)) > 1e-9) {
                const auto sig = form_signature(crossing_form(path.derivative(t0)), form_tol);
                if (sig.degenerate) out.needs_regularization = true;
                found.push_back(t0);
                out.crossings.push_back({t0, sig.signature});
                out.index += sig.signature;
            }
            // same side: the angle grazes the turn and retreats
        } else {
            out.needs_regularization = true;
        }
    }

    return out;
}

// Crossing count with the eps-rotation regularization fallback: compose with
// rotation by -eps*t, recount, and require stability under eps -> eps/2.
inline CrossingScan crossing_count(const SymplecticPath& path) {
    CrossingScan scan = scan_crossings(path, 1e-10);
    if (!scan.needs_regularization) return scan;

    auto perturbed_index = [&](double eps) {
        std::vector<double> times;
        times.reserve(path.size());
        for (const auto& s : path.samples()) times.push_back(s.t);
        auto eval = [&](double t) { return Mat2::rotation(-eps * t) * path.evaluate(t); };
        SymplecticPath pp(detail::densify(times, eval));
        CrossingScan s2 = scan_crossings(pp, 1e-12);
        if (s2.needs_regularization)
            throw MethodDisagreement("crossing form still degenerate after eps-rotation");
        return s2;
    };

    const double eps = 1e-6;
    CrossingScan a = perturbed_index(eps);
    CrossingScan b = perturbed_index(0.5 * eps);
    if (a.index != b.index)
        throw MethodDisagreement("crossing count unstable under regularization eps -> eps/2");
    a.needs_regularization = true;
    return a;
}

// Continuous lift of the polar angle along the sampled path.
inline double lifted_polar_angle(const SymplecticPath& path) {
    double lift = 0.0;
    double prev = polar_angle(path[0].a);
    for (std::size_t i = 1; i < path.size(); ++i) {
        const double cur = polar_angle(path[i].a);
        const double step = wrap_angle(cur - prev);
        if (std::fabs(step) >= 0.5 * kPi)
            throw InsufficientResolution("polar angle jumps by >= pi/2 between samples");
        lift += step;
        prev = cur;
    }
    return lift;
}

inline int rotation_count(const SymplecticPath& path) {
    const double lift = lifted_polar_angle(path);
    const double tr = trace(path.endpoint());
    double total;
    if (tr > 2.0) {
        // Continuation to diag(2, 1/2) undoes the principal polar angle,
        // which lies in (-pi/2, pi/2) on this component.
        double a = std::remainder(lift, 2.0 * kPi);
        if (a >= 0.5 * kPi || a < -0.5 * kPi)
            throw MethodDisagreement("polar angle inconsistent with tr > 2 endpoint");
        total = lift - a;
    } else {
        // Continuation to -Id: shrink the stretch factor (angle unchanged),
        // then rotate the angle, reduced into (0, 2 pi), to pi.
        double a = std::remainder(lift, 2.0 * kPi);
        if (a <= 0.0) a += 2.0 * kPi;
        total = lift - a + kPi;
    }
    const double idx = total / kPi;
    const double rounded = std::round(idx);
    if (std::fabs(idx - rounded) > 1e-6)
        throw MethodDisagreement("rotation index is not an integer: " + std::to_string(idx));
    return static_cast<int>(rounded);
}

} // namespace detail

// ---------------------------------------------------------------------------

inline IndexResult cz_index(const SymplecticPath& path,
                            double degeneracy_threshold = kDefaultDegeneracyThreshold) {
    IndexResult out;
    out.endpoint = classify_endpoint(path.endpoint(), degeneracy_threshold);
    if (out.endpoint.kind == EndpointKind::Degenerate)
        throw DegenerateEndpoint("det(Phi(T) - Id) = " + std::to_string(out.endpoint.det_a_minus_id));

    const auto scan = detail::crossing_count(path);
    out.crossing_index = scan.index;
    out.crossings = scan.crossings;
    out.regularized = scan.needs_regularization;
    out.rotation_index = detail::rotation_count(path);

    if (out.crossing_index != out.rotation_index)
        throw MethodDisagreement("crossing index " + std::to_string(out.crossing_index) +
                                 " != rotation index " + std::to_string(out.rotation_index));
    out.index = out.crossing_index;

    const bool even = (out.index % 2) == 0;
    if (even != (out.endpoint.kind == EndpointKind::PositiveHyperbolic))
        throw MethodDisagreement("index parity contradicts the endpoint class");
    return out;
}

// Winding number of a loop of symplectic matrices.
inline int maslov_index(const SymplecticPath& loop) {
    if (!loop.is_loop())
        throw NotALoop("loop endpoint deviates from the identity by more than 1e-9");
    const double lift = detail::lifted_polar_angle(loop);
    const double w = lift / (2.0 * kPi);
    const double rounded = std::round(w);
    if (std::fabs(w - rounded) > 1e-6)
        throw MethodDisagreement("loop winding is not an integer: " + std::to_string(w));
    return static_cast<int>(rounded);
}

// ---------------------------------------------------------------------------
// Seeded generators for property suites.

struct PathGenOptions {
    int min_segments = 2;
    int max_segments = 4;
    double max_rotation_rate = 2.2;   // radians per segment
    double max_stretch_rate = 0.35;   // log-eigenvalue per segment
    std::size_t samples_per_segment = 128;
};

// Piecewise path: each segment is a rotation arc or an axis-aligned stretch
// conjugated by a rotation, glued continuously and starting at the identity.
inline SymplecticPath random_path(Rng& rng, const PathGenOptions& opt = {}) {
    const int nseg = opt.min_segments +
                     static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.max_segments - opt.min_segments + 1)));
    struct Segment {
        bool rot;
        double rate;  // rotation angle or stretch exponent over the segment
        double axis;  // stretch axis
    };
    std::vector<Segment> segs;
    for (int i = 0; i < nseg; ++i) {
        Segment s;
        s.rot = rng.coin();
        s.rate = s.rot ? rng.uniform(-opt.max_rotation_rate, opt.max_rotation_rate)
                       : rng.uniform(0.05, opt.max_stretch_rate) * (rng.coin() ? 1.0 : -1.0);
        s.axis = rng.uniform(0.0, kPi);
        segs.push_back(s);
    }
    const double T = 1.0;
    const double seg_len = T / nseg;
    std::vector<Mat2> prefix(static_cast<std::size_t>(nseg) + 1, Mat2::identity());
    auto factor = [&](const Segment& s, double u) {
        if (s.rot) return Mat2::rotation(s.rate * u);
        const Mat2 r = Mat2::rotation(s.axis);
        return r * Mat2::diag(std::exp(s.rate * u), std::exp(-s.rate * u)) * Mat2::rotation(-s.axis);
    };
    for (int i = 0; i < nseg; ++i)
        prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] * factor(segs[static_cast<std::size_t>(i)], 1.0);

    std::vector<PathSample> samples;
    samples.push_back({0.0, Mat2::identity()});
    for (int i = 0; i < nseg; ++i) {
        for (std::size_t j = 1; j <= opt.samples_per_segment; ++j) {
            const double u = static_cast<double>(j) / static_cast<double>(opt.samples_per_segment);
            samples.push_back({seg_len * (i + u),
                               prefix[static_cast<std::size_t>(i)] * factor(segs[static_cast<std::size_t>(i)], u)});
        }
    }
    return SymplecticPath(std::move(samples));
}

inline SymplecticPath random_nondegenerate_path(Rng& rng, const PathGenOptions& opt = {},
                                                double margin = 1e-3) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        SymplecticPath p = random_path(rng, opt);
        if (std::fabs(detail::det_minus_id(p.endpoint())) > margin) return p;
    }
    throw NoConvergence("could not generate a nondegenerate path in 256 attempts");
}

inline SymplecticPath random_hyperbolic_path(Rng& rng, const PathGenOptions& opt_in = {}) {
    PathGenOptions opt = opt_in;
    opt.max_stretch_rate = std::min(opt.max_stretch_rate, 0.25);
    for (int attempt = 0; attempt < 1024; ++attempt) {
        SymplecticPath p = random_path(rng, opt);
        if (std::fabs(trace(p.endpoint())) > 2.05) return p;
    }
    throw NoConvergence("could not generate a hyperbolic path in 1024 attempts");
}

// Loop P R(2 pi k t) P^-1 for a random symplectic conjugator P of bounded
// condition number; its winding number is k.
inline SymplecticPath random_loop(Rng& rng, int degree, std::size_t n_samples = 0) {
    const Mat2 p = Mat2::rotation(rng.uniform(0.0, kPi)) *
                   Mat2::diag(std::exp(rng.uniform(-0.5, 0.5)), 1.0) *
                   Mat2::diag(1.0, 1.0) *
                   Mat2::rotation(rng.uniform(0.0, kPi));
    const Mat2 pn = p * Mat2::diag(1.0 / std::sqrt(det(p)), 1.0 / std::sqrt(det(p)));
    const Mat2 pinv = inverse(pn);
    if (n_samples == 0) n_samples = 1024 * static_cast<std::size_t>(std::max(1, std::abs(degree)));
    return SymplecticPath::from_function(
        [&, degree](double t) { return pn * Mat2::rotation(2.0 * kPi * degree * t) * pinv; }, 1.0,
        n_samples + 1);
}

// Random monotone time reparametrization, resampled on a uniform grid.
inline SymplecticPath random_reparametrization(Rng& rng, const SymplecticPath& path) {
    const double T = path.duration();
    const double c = rng.uniform(-0.7, 0.7);
    const std::size_t n = path.size();
    std::vector<double> times;
    times.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = T * static_cast<double>(i) / static_cast<double>(n - 1);
        times.push_back(std::clamp(s + c * (T / kPi) * std::sin(kPi * s / T) * 0.5, 0.0, T));
    }
    times.front() = 0.0;
    times.back() = T;
    std::vector<PathSample> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = T * static_cast<double>(i) / static_cast<double>(n - 1);
        samples.push_back({s, path.evaluate(times[i])});
    }
    return SymplecticPath(std::move(samples));
}

// ---------------------------------------------------------------------------
// Axiom property driver.

struct AxiomReport {
    int trials = 0;
    int reparam_pass = 0;
    int maslov_pass = 0;
    int invert_pass = 0;
    int normalization_pass = 0;
    std::vector<std::string> failures;

    bool all_passed() const { return failures.empty(); }
};

inline AxiomReport verify_axioms(std::uint64_t seed, int trials) {
    Rng rng(seed);
    AxiomReport rep;
    rep.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        SymplecticPath phi = random_nondegenerate_path(rng);
        const int mu = cz_index(phi).index;

        try {
            const SymplecticPath warped = random_reparametrization(rng, phi);
            if (cz_index(warped).index == mu)
                ++rep.reparam_pass;
            else
                rep.failures.push_back("trial " + std::to_string(trial) + ": reparametrization changed the index");
        } catch (const Error& e) {
            rep.failures.push_back("trial " + std::to_string(trial) + ": reparam: " + e.what());
        }

        try {
            const int deg = static_cast<int>(rng.below(5)) - 2;
            const SymplecticPath loop = random_loop(rng, deg);
            const int ml = maslov_index(loop);
            const int mu_prod = cz_index(path_concat(loop, phi)).index;
            if (ml == deg && mu_prod - mu == 2 * ml)
                ++rep.maslov_pass;
            else
                rep.failures.push_back("trial " + std::to_string(trial) + ": Maslov compatibility failed");
        } catch (const Error& e) {
            rep.failures.push_back("trial " + std::to_string(trial) + ": maslov: " + e.what());
        }

        try {
            if (cz_index(path_invert(phi)).index == -mu)
                ++rep.invert_pass;
            else
                rep.failures.push_back("trial " + std::to_string(trial) + ": invertibility failed");
        } catch (const Error& e) {
            rep.failures.push_back("trial " + std::to_string(trial) + ": invert: " + e.what());
        }

        const SymplecticPath norm_path = SymplecticPath::from_function(
            [](double t) { return Mat2::rotation(kPi * t); }, 1.0, 257);
        if (cz_index(norm_path).index == 1)
            ++rep.normalization_pass;
        else
            rep.failures.push_back("trial " + std::to_string(trial) + ": normalization failed");
    }
    return rep;
}

} // namespace reebkit

#endif // REEBKIT_CZ_HPP
