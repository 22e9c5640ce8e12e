#include <catch2/catch.hpp>

#include <cmath>

#include "reebkit/dynamics.hpp"
#include "support.hpp"

using namespace reebkit;

TEST_CASE("flow on the catalog models") {
    SECTION("heisenberg: the Reeb field is the vertical translation") {
        const Model m = build_model("heisenberg");
        const Trajectory t = flow(m, ModelPoint::coords(0.0, 0.0, 0.0), 1.0, 9);
        const ModelPoint end = t.points.back();
        CHECK(end.x[0] == Approx(0.0).margin(1e-12));
        CHECK(end.x[1] == Approx(0.0).margin(1e-12));
        CHECK(end.x[2] == Approx(1.0).margin(1e-12));
    }
    SECTION("su2: the Hopf fiber closes after its period") {
        const Model m = build_model("su2");
        const auto spec = catalog_orbit_spec(m, "hopf");
        FlowOptions tight;
        tight.rel_tol = 1e-12;
        const ModelPoint end = flow_to(m, spec.seed, spec.period, tight);
        CHECK(distance(end, spec.seed) < 1e-8);
    }
    SECTION("t3: the axis line wraps back to the start after 2 pi") {
        const Model m = build_model("t3");
        const Trajectory t = flow(m, ModelPoint::coords(0.0, 0.0, 0.0), 2.0 * kPi, 17);
        const ModelPoint end = t.points.back();
        CHECK(chart_distance(std::get<ChartModel>(m), end.v3(), {0.0, 0.0, 0.0}) < 1e-8);
        CHECK(t.alpha_drift < 1e-7);
    }
    SECTION("catmap: the suspension applies the gluing map at integer heights") {
        const Model m = build_model("catmap");
        const Trajectory t = flow(m, ModelPoint::coords(0.25, 0.125, 0.0), 1.0, 3);
        const ModelPoint end = t.points.back();
        // [[2,1],[1,1]] (0.25, 0.125) = (0.625, 0.375)
        CHECK(end.x[0] == Approx(0.625).margin(1e-12));
        CHECK(end.x[1] == Approx(0.375).margin(1e-12));
    }
    SECTION("leaving a non-periodic chart face raises DomainExit") {
        // Darboux box: alpha = dz - y dx, Reeb field dz, no identifications.
        ChartModel box;
        box.name = "darboux_box";
        box.theta_prime = 1.0;
        box.lo = {-1.0, -1.0, -1.0};
        box.hi = {1.0, 1.0, 1.0};
        box.periodic = {false, false, false};
        box.seed_axis = 1;
        box.alpha = [](Vec3 p) -> Vec3 { return {-p.y, 0.0, 1.0}; };
        box.metric = [](Vec3) { return Mat3::identity(); };
        const Model m = box;
        CHECK_THROWS_AS(flow(m, ModelPoint::coords(0.0, 0.2, 0.0), 3.0, 9), DomainExit);
    }
    SECTION("a degenerate one-form has no Reeb field") {
        ChartModel flat;
        flat.name = "closed_form";
        flat.theta_prime = 1.0;
        flat.lo = {0.0, 0.0, 0.0};
        flat.hi = {1.0, 1.0, 1.0};
        flat.periodic = {true, true, true};
        flat.alpha = [](Vec3) -> Vec3 { return {0.0, 0.0, 1.0}; }; // alpha = dz, d alpha = 0
        flat.metric = [](Vec3) { return Mat3::identity(); };
        const Model m = flat;
        CHECK_THROWS_AS(reeb_vector(m, ModelPoint::coords(0.5, 0.5, 0.5)), SingularSystem);
    }
}

TEST_CASE("orbit refinement") {
    SECTION("sl2 geodesic closes through the deck identification") {
        const auto orbit = catalog_orbit(build_model("sl2"), "geodesic", 1.0);
        CHECK(orbit.period == Approx(1.0));
        CHECK(orbit.closure_defect < 1e-8);
    }
    SECTION("sl2: a perturbed seed shoots back onto the orbit") {
        const Model m = build_model("sl2");
        const auto spec = catalog_orbit_spec(m, "geodesic", 1.0);
        ModelPoint seed = spec.seed;
        seed.x[1] += 3e-4; // off-orbit perturbation in the group
        seed.x[2] += 2e-4;
        const auto orbit = refine_orbit(m, seed, spec.period, spec.tag, spec.deck_inverse);
        CHECK(orbit.closure_defect < 1e-8);
        CHECK(distance(orbit.seed, spec.seed) < 1e-2);
    }
    SECTION("catmap: Newton lands on the fixed point in one step") {
        const Model m = build_model("catmap");
        const auto orbit = refine_orbit(m, ModelPoint::coords(0.05, 0.97, 0.0), 1.0, "fixed_point");
        CHECK(orbit.closure_defect < 1e-10);
        const double dx = std::remainder(orbit.seed.x[0], 1.0);
        const double dy = std::remainder(orbit.seed.x[1], 1.0);
        CHECK(std::fabs(dx) < 1e-9);
        CHECK(std::fabs(dy) < 1e-9);
    }
    SECTION("su2: the catalog fiber is already closed; perturbed seeds hit the circle-action degeneracy") {
        const Model m = build_model("su2");
        const auto orbit = catalog_orbit(m, "hopf");
        CHECK(orbit.closure_defect < 1e-8);
        ModelPoint off = orbit.seed;
        off.x[1] += 1e-3;
        const auto spec = catalog_orbit_spec(m, "hopf");
        CHECK_THROWS_AS(refine_orbit(m, off, spec.period), DegenerateSection);
    }
    SECTION("t3: the shear return map has a singular section Jacobian") {
        const Model m = build_model("t3");
        ModelPoint off = ModelPoint::coords(0.0, 0.3, 0.2);
        CHECK_THROWS_AS(refine_orbit(m, off, 2.0 * kPi), DegenerateSection);
    }
}

TEST_CASE("linearization of the catalog orbits") {
    SECTION("sl2: return eigenvalues (e, 1/e), constant-coefficient oracle") {
        const auto orbit = catalog_orbit(build_model("sl2"), "geodesic", 1.0);
        const auto lin = linearize(orbit);
        CHECK(lin.det_drift < 1e-6);
        REQUIRE(lin.endpoint.kind == EndpointKind::PositiveHyperbolic);
        CHECK(lin.endpoint.lambda == Approx(std::exp(1.0)).margin(1e-9));
        CHECK(lin.endpoint.lambda_inv == Approx(std::exp(-1.0)).margin(1e-9));
    }
    SECTION("catmap: return eigenvalues (3 +- sqrt 5)/2") {
        const auto orbit = catalog_orbit(build_model("catmap"), "fixed_point");
        const auto lin = linearize(orbit);
        REQUIRE(lin.endpoint.kind == EndpointKind::PositiveHyperbolic);
        CHECK(lin.endpoint.lambda == Approx(CatmapModel::lambda_plus()).margin(1e-9));
        CHECK(lin.endpoint.lambda_inv == Approx(CatmapModel::lambda_minus()).margin(1e-9));
    }
    SECTION("su2: identity return map, degenerate orbit") {
        const auto orbit = catalog_orbit(build_model("su2"), "hopf");
        const auto lin = linearize(orbit);
        CHECK(frobenius_norm(lin.path.endpoint() - Mat2::identity()) < 1e-6);
        CHECK(lin.endpoint.kind == EndpointKind::Degenerate);
        CHECK_THROWS_AS(orbit_cz(orbit), DegenerateEndpoint);
    }
    SECTION("t3: parabolic shear return map is degenerate") {
        const auto orbit = catalog_orbit(build_model("t3"), "line");
        const auto lin = linearize(orbit);
        const Mat2 ret = lin.path.endpoint();
        // analytically tr = 2 exactly; the chart transport resolves it to
        // ~1e-6, so classify against a threshold matching that accuracy
        CHECK(trace(ret) == Approx(2.0).margin(1e-5));
        CHECK(classify_endpoint(ret, 1e-4).kind == EndpointKind::Degenerate);
        // the shear itself is the signature of the parabolic return map
        CHECK(std::fabs(ret.a21) + std::fabs(ret.a12) > 0.1);
    }
    SECTION("ellipsoid core circle at (a, b) = (1, sqrt 2): half-turn return map") {
        const auto orbit = catalog_orbit(build_model("ellipsoid"), "core");
        const auto lin = linearize(orbit);
        // rotation by 2 pi a^2 / b^2 = pi
        CHECK(lin.endpoint.kind == EndpointKind::NegativeHyperbolic);
        CHECK(trace(lin.path.endpoint()) == Approx(-2.0).margin(1e-5));
        const auto idx = orbit_cz(orbit);
        CHECK(std::abs(idx.index % 2) == 1);
    }
}

TEST_CASE("orbit indices in the splitting frame") {
    const auto orbit = catalog_orbit(build_model("sl2"), "geodesic", 1.0);
    for (int m = 1; m <= 4; ++m) {
        const auto idx = orbit_cz(orbit, FrameTag::Splitting, m);
        INFO("iterate " << m);
        CHECK(idx.index == 0);
        CHECK_FALSE(idx.doubled);
    }
    CHECK(orbit_cz(orbit, FrameTag::Model, 1).index == 0);
    CHECK(splitting_orientability(orbit));
}

TEST_CASE("orientation-reversing suspension: odd index, doubled splitting cover") {
    const Model m = build_model("catmap", {{"negative", 1.0}});
    const auto orbit = catalog_orbit(m, "fixed_point");

    const auto lin = linearize(orbit);
    CHECK(lin.endpoint.kind == EndpointKind::NegativeHyperbolic);
    CHECK(lin.endpoint.lambda == Approx(-CatmapModel::lambda_plus()).margin(1e-9));

    const auto idx1 = orbit_cz(orbit, FrameTag::Model, 1);
    const auto idx2 = orbit_cz(orbit, FrameTag::Model, 2);
    CHECK(std::abs(idx1.index % 2) == 1);
    CHECK(idx2.index == 2 * idx1.index);
    CHECK_FALSE(splitting_orientability(orbit));

    const auto lin_s = linearize(orbit, FrameTag::Splitting);
    CHECK(lin_s.doubled);
    CHECK(lin_s.endpoint.kind == EndpointKind::PositiveHyperbolic); // gamma^2 endpoint
    const auto idx_s = orbit_cz(orbit, FrameTag::Splitting, 1);
    CHECK(idx_s.doubled);
    CHECK(idx_s.raw.index == 0); // double-cover index
    CHECK(idx_s.index == 0);     // halved by the hyperbolic iteration law
}

TEST_CASE("positive catmap: orientable splitting, even index") {
    const auto orbit = catalog_orbit(build_model("catmap"), "fixed_point");
    CHECK(orbit_cz(orbit).index == 0);
    CHECK(splitting_orientability(orbit));
    const auto idx_s = orbit_cz(orbit, FrameTag::Splitting, 1);
    CHECK_FALSE(idx_s.doubled);
    CHECK(idx_s.index == 0);
}

TEST_CASE("splitting estimation") {
    SECTION("sl2 converges to the bisector lines") {
        const Model m = build_model("sl2");
        const auto est = estimate_splitting(m, std::get<FrameModel>(m).base_point);
        REQUIRE(est.unstable_converged);
        REQUIRE(est.stable_converged);
        CHECK(est.unstable_angle == Approx(0.75 * kPi).margin(1e-7));
        CHECK(est.stable_angle == Approx(0.25 * kPi).margin(1e-7));
    }
    SECTION("catmap converges to the eigen directions") {
        const Model m = build_model("catmap");
        const auto est = estimate_splitting(m, ModelPoint::coords(0, 0, 0));
        REQUIRE(est.unstable_converged);
        REQUIRE(est.stable_converged);
        const Vec2 u = CatmapModel::unstable_direction();
        const Vec2 s = CatmapModel::stable_direction();
        CHECK(std::fabs(std::remainder(est.unstable_angle - std::atan2(u.y, u.x), kPi)) < 1e-7);
        CHECK(std::fabs(std::remainder(est.stable_angle - std::atan2(s.y, s.x), kPi)) < 1e-7);
    }
    SECTION("su2 and t3 report no convergence") {
        const Model su2 = build_model("su2");
        const auto est = estimate_splitting(su2, std::get<FrameModel>(su2).base_point);
        CHECK_FALSE(est.unstable_converged);
        CHECK(est.unstable_drift > 1e-6);
        const Model t3 = build_model("t3");
        const auto est3 = estimate_splitting(t3, ModelPoint::coords(0.5, 0.5, 0.5), 5.0);
        CHECK_FALSE(est3.unstable_converged);
        CHECK_THROWS_AS(splitting_angles(t3, ModelPoint::coords(0.5, 0.5, 0.5)),
                        SplittingUnavailable);
    }
}

TEST_CASE("domination fits") {
    SECTION("sl2: rates +-1 give C = 2") {
        const Model m = build_model("sl2");
        const auto rep = domination_check(m, {std::get<FrameModel>(m).base_point});
        CHECK(rep.verdict);
        CHECK(rep.C == Approx(2.0).epsilon(0.01));
        CHECK(rep.residual < 0.05);
        CHECK(rep.A > 0.0);
    }
    SECTION("catmap: C = 2 ln((3 + sqrt 5)/2) for both variants") {
        const double expected = 2.0 * std::log(CatmapModel::lambda_plus());
        for (double neg : {0.0, 1.0}) {
            const Model m = build_model("catmap", {{"negative", neg}});
            const auto rep = domination_check(m, {ModelPoint::coords(0, 0, 0)});
            INFO("negative = " << neg);
            CHECK(rep.verdict);
            CHECK(rep.C == Approx(expected).epsilon(0.02));
        }
    }
    SECTION("su2: the isometric flow fails the fit") {
        const Model m = build_model("su2");
        const auto rep = domination_check(m, {std::get<FrameModel>(m).base_point});
        CHECK_FALSE(rep.verdict);
        CHECK(std::fabs(rep.C) < 1e-6);
    }
}

TEST_CASE("contact-pair criterion") {
    const Model sl2 = build_model("sl2");
    SECTION("zero-direction planes on sl2 pass") {
        const auto rep = contact_pair_check(sl2, 0.0, 0.5 * kPi);
        CHECK(rep.verdict);
    }
    SECTION("integrable E^u/E^s planes fail: the bracket stays in the plane") {
        const auto rep = contact_pair_check(sl2, 0.25 * kPi, 0.75 * kPi);
        CHECK_FALSE(rep.verdict);
        CHECK(std::fabs(rep.min_plus) < 1e-12);
        CHECK(std::fabs(rep.max_plus) < 1e-12);
    }
    SECTION("su2: every transverse pair fails (the flow rotates both ways)") {
        const Model su2 = build_model("su2");
        Rng rng(12);
        for (int i = 0; i < 8; ++i) {
            const double a = rng.uniform(0.0, kPi);
            const double b = a + rng.uniform(0.3, kPi - 0.3);
            CHECK_FALSE(contact_pair_check(su2, a, b).verdict);
        }
    }
    SECTION("t3 fails at the axis planes") {
        const Model t3 = build_model("t3");
        CHECK_FALSE(contact_pair_check(t3, 0.0, 0.5 * kPi, 4).verdict);
        CHECK_FALSE(contact_pair_check(t3, 0.25 * kPi, 0.75 * kPi, 4).verdict);
    }
    SECTION("non-transverse candidates are rejected") {
        CHECK_THROWS_AS(contact_pair_check(sl2, 0.3, 0.3 + 1e-5), NotTransverse);
    }
}

TEST_CASE("expansion rates: connection value equals the flow log-derivative") {
    const Model sl2 = build_model("sl2");
    const auto base = std::get<FrameModel>(sl2).base_point;
    const auto at_hplus = expansion_rate(sl2, base, 0.25 * kPi);
    CHECK(at_hplus.algebraic == Approx(-1.0).margin(1e-9));
    CHECK(at_hplus.dynamical == Approx(-1.0).margin(1e-6));
    const auto at_hminus = expansion_rate(sl2, base, 0.75 * kPi);
    CHECK(at_hminus.algebraic == Approx(1.0).margin(1e-9));
    const auto at_zero_dir = expansion_rate(sl2, base, 0.0);
    CHECK(at_zero_dir.algebraic == Approx(0.0).margin(1e-12));
    CHECK(at_zero_dir.dynamical == Approx(0.0).margin(1e-6));

    const Model su2 = build_model("su2");
    for (double theta : {0.0, 0.9, 2.2}) {
        const auto r = expansion_rate(su2, std::get<FrameModel>(su2).base_point, theta);
        CHECK(r.algebraic == Approx(0.0).margin(1e-12));
        CHECK(r.dynamical == Approx(0.0).margin(1e-6));
    }
}

TEST_CASE("detector consistency on the curvature-bound regime") {
    // When the curvature bound holds (sl2 at theta' = 1/2), the growth fit
    // must confirm domination and the zero-direction planes must form a
    // contact pair.
    const Model m = build_model("sl2", {{"theta_prime", 0.5}});
    const auto base = std::get<FrameModel>(m).base_point;
    REQUIRE(neg_bound_check(m, {base}).holds);
    const auto dom = domination_check(m, {base});
    CHECK(dom.verdict);
    CHECK(dom.C > 0.0);
    const auto lie = lie_derivative_metric(m, base);
    REQUIRE_FALSE(lie.degenerate);
    CHECK(contact_pair_check(m, lie.zero_angle_1, lie.zero_angle_2).verdict);
}

TEST_CASE("sign structure along the estimated splitting") {
    const Model m = build_model("sl2");
    const auto base = std::get<FrameModel>(m).base_point;
    const auto est = estimate_splitting(m, base);
    const FramePack pack = frame_pack(m, base);
    CHECK(pack.radial_rate(est.unstable_angle) > 0.0);
    CHECK(pack.radial_rate(est.stable_angle) < 0.0);
}
