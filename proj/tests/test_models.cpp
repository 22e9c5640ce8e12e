#include <catch2/catch.hpp>

#include <cmath>

#include "reebkit/models.hpp"
#include "support.hpp"

using namespace reebkit;

TEST_CASE("catalog construction and parameter validation") {
    CHECK_NOTHROW(build_model("heisenberg"));
    CHECK_NOTHROW(build_model("su2"));
    CHECK_NOTHROW(build_model("sl2"));
    CHECK_NOTHROW(build_model("t3", {{"n", 2.0}}));
    CHECK_NOTHROW(build_model("ellipsoid"));
    CHECK_NOTHROW(build_model("catmap", {{"negative", 1.0}}));
    CHECK_THROWS_AS(build_model("nilpotent"), UnknownModel);
    CHECK_THROWS_AS(build_model("t3", {{"n", 0.0}}), InvalidParams);
    CHECK_THROWS_AS(build_model("t3", {{"n", 1.5}}), InvalidParams);
    CHECK_THROWS_AS(build_model("ellipsoid", {{"a", -1.0}}), InvalidParams);
    CHECK_THROWS_AS(build_model("su2", {{"theta_prime", 0.0}}), InvalidParams);
}

TEST_CASE("frame models validate exactly") {
    for (const char* name : {"heisenberg", "su2", "sl2"}) {
        const Model m = build_model(name);
        const ContactReport rep = validate_contact(m);
        INFO(name);
        CHECK(rep.applicable);
        CHECK(rep.positive);
        CHECK(rep.theta_prime == Approx(2.0));
        CHECK(rep.jacobi_residual <= 1e-12);
        // Reeb conditions: no X component in [X, e], [X, f]
        const auto& fm = std::get<FrameModel>(m);
        CHECK(fm.sc(0, 1, 0) == 0.0);
        CHECK(fm.sc(0, 2, 0) == 0.0);
        CHECK(reeb_vector(m, fm.base_point).x == Approx(1.0));
    }
}

TEST_CASE("compatibility identity holds on all frame pairs") {
    // g(u, v) = (1/theta') d_alpha(u, J pi v) + alpha(u) alpha(v) in frame
    // terms: d_alpha(E_i, E_j) = -c(i, j, 0), J e = f, J f = -e, J X = 0.
    for (const char* name : {"heisenberg", "su2", "sl2"}) {
        const auto fm = std::get<FrameModel>(build_model(name));
        auto dal = [&](int i, int j) { return -fm.sc(i, j, 0); };
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double rhs = (i == 0 ? 1.0 : 0.0) * (j == 0 ? 1.0 : 0.0);
                if (j == 1) rhs += dal(i, 2) / fm.theta_prime;       // J e = f
                if (j == 2) rhs += -dal(i, 1) / fm.theta_prime;      // J f = -e
                const double lhs = (i == j) ? 1.0 : 0.0;
                INFO(name << " pair (" << i << "," << j << ")");
                REQUIRE(lhs == Approx(rhs).margin(1e-14));
            }
    }
}

TEST_CASE("t3 chart validates with the flat compatible metric") {
    const Model m = build_model("t3", {{"n", 1.0}});
    const ContactReport rep = validate_contact(m, 16);
    CHECK(rep.positive);
    CHECK(rep.min_contact_value == Approx(1.0).margin(1e-7)); // alpha ^ d_alpha = n vol
    CHECK(rep.theta_prime == Approx(1.0));
    CHECK(rep.theta_spread < 1e-6);

    const Model m3 = build_model("t3", {{"n", 3.0}});
    const ContactReport rep3 = validate_contact(m3, 8);
    CHECK(rep3.min_contact_value == Approx(3.0).margin(1e-6));
}

TEST_CASE("t3 Reeb field matches the hand solution of the defining system") {
    const Model m = build_model("t3", {{"n", 1.0}});
    const Vec3 x0 = reeb_vector(m, ModelPoint::coords(0.0, 0.0, 0.0));
    CHECK(x0.x == Approx(1.0).margin(1e-9));
    CHECK(x0.y == Approx(0.0).margin(1e-9));
    CHECK(x0.z == Approx(0.0).margin(1e-9));
    for (double z : {0.4, 1.7, 3.0}) {
        const Vec3 x = reeb_vector(m, ModelPoint::coords(0.2, 5.0, z));
        CHECK(x.x == Approx(std::cos(z)).margin(1e-9));
        CHECK(x.y == Approx(-std::sin(z)).margin(1e-9));
        CHECK(x.z == Approx(0.0).margin(1e-9));
    }
}

TEST_CASE("ellipsoid chart: contact, Reeb field and constructed metric") {
    const double b = std::sqrt(2.0);
    const Model m = build_model("ellipsoid");
    const ContactReport rep = validate_contact(m, 16);
    CHECK(rep.positive);
    // alpha . axial(d alpha) = a^2 r^2/2 + a^2 (p^2+q^2)/(2 b^2) = a^2/2,
    // constant on the chart
    CHECK(rep.min_contact_value == Approx(0.5).margin(1e-9));
    CHECK(rep.theta_spread < 1e-6); // theta' = 2 by construction

    // Reeb field: 2 (d_t1 / a^2 + d_theta2 / b^2) in chart coordinates
    for (const auto& pq : {std::pair{0.0, 0.0}, {0.3, -0.2}, {-0.45, 0.31}}) {
        const double p = pq.first, q = pq.second;
        const Vec3 x = reeb_vector(m, ModelPoint::coords(1.0, p, q));
        CHECK(x.x == Approx(2.0).margin(1e-8));                  // a = 1
        CHECK(x.y == Approx(-2.0 * q / (b * b)).margin(1e-8));
        CHECK(x.z == Approx(2.0 * p / (b * b)).margin(1e-8));
    }
    // at the core circle the field is tangent to the circle
    const Vec3 core = reeb_vector(m, ModelPoint::coords(0.0, 0.0, 0.0));
    CHECK(core.x == Approx(2.0).margin(1e-9));
    CHECK(core.y == Approx(0.0).margin(1e-9));
    CHECK(core.z == Approx(0.0).margin(1e-9));
}

TEST_CASE("chart compatibility identity on a grid") {
    for (const char* name : {"t3", "ellipsoid"}) {
        const Model model = build_model(name);
        const auto& cm = std::get<ChartModel>(model);
        Rng rng(11);
        for (int trial = 0; trial < 40; ++trial) {
            Vec3 p;
            for (int d = 0; d < 3; ++d) {
                const double span = cm.hi[d] - cm.lo[d];
                const double inset = cm.periodic[d] ? 0.0 : 0.2 * span;
                p[d] = rng.uniform(cm.lo[d] + inset, cm.hi[d] - inset);
            }
            const ChartFrame f = chart_frame(cm, p);
            const Vec3 al = cm.alpha(p);
            auto dal_of = [&](Vec3 u, Vec3 v) {
                double s = 0.0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) s += u[i] * v[j] * f.dal(i, j);
                return s;
            };
            auto ip = [&](Vec3 u, Vec3 v) { return dot(u, f.g * v); };
            // reconstruct J from the frame and check the defining identity on
            // all nine coordinate pairs
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    Vec3 ei{0, 0, 0}, ej{0, 0, 0};
                    ei[i] = 1.0;
                    ej[j] = 1.0;
                    const Vec3 pj = ej - f.X * al[j];
                    const double a = ip(pj, f.e), bb = ip(pj, f.Je);
                    const Vec3 jpj = f.Je * a - f.e * bb;
                    const double rhs = dal_of(ei, jpj) / cm.theta_prime + al[i] * al[j];
                    INFO(name << " pair (" << i << "," << j << ")");
                    REQUIRE(f.g(i, j) == Approx(rhs).margin(1e-6));
                }
        }
    }
}

TEST_CASE("catmap is flagged as a non-contact control") {
    const Model m = build_model("catmap");
    const ContactReport rep = validate_contact(m);
    CHECK_FALSE(rep.applicable);
    CHECK_THROWS_AS(reeb_vector(m, ModelPoint::coords(0, 0, 0)), NotContact);
    CHECK_THROWS_AS(model_theta_prime(m), NotContact);
}

TEST_CASE("resonant ellipsoid ratios produce a warning") {
    const auto warned = std::get<ChartModel>(build_model("ellipsoid", {{"a", 1.0}, {"b", 1.5}}));
    REQUIRE_FALSE(warned.warnings.empty());
    CHECK(warned.warnings.front().find("ResonantEllipsoid") != std::string::npos);
    const auto clean = std::get<ChartModel>(build_model("ellipsoid"));
    CHECK(clean.warnings.empty());
}

TEST_CASE("seeded sample points are deterministic") {
    const Model m = build_model("t3");
    Rng a(42), b(42);
    const auto pa = sample_points(m, 8, a);
    const auto pb = sample_points(m, 8, b);
    for (std::size_t i = 0; i < pa.size(); ++i)
        for (int d = 0; d < 3; ++d) REQUIRE(pa[i].x[d] == pb[i].x[d]);
}
