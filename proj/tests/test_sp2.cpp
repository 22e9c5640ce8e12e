#include <catch2/catch.hpp>

#include "reebkit/cz.hpp" // seeded path generators
#include "reebkit/sp2.hpp"
#include "support.hpp"

using namespace reebkit;
using testsupport::constant_identity_path;
using testsupport::random_symplectic;
using testsupport::rotation_path;
using testsupport::stretch_path;

TEST_CASE("validated matrix wrapper enforces unit determinant") {
    CHECK_NOTHROW(Sp2Matrix(Mat2::rotation(1.0)));
    CHECK_NOTHROW(Sp2Matrix(Mat2::diag(3.0, 1.0 / 3.0)));
    CHECK_THROWS_AS(Sp2Matrix(Mat2::diag(2.0, 1.0)), NonSymplectic);
    CHECK_THROWS_AS(Sp2Matrix(Mat2{1.0, 0.0, 0.0, 1.0 + 1e-7}), NonSymplectic);
}

TEST_CASE("polar decomposition on closed-form inputs") {
    SECTION("identity") {
        const auto pd = polar_decompose(Mat2::identity());
        CHECK(pd.angle == Approx(0.0).margin(1e-15));
        CHECK(frobenius_norm(pd.stretch - Mat2::identity()) < 1e-15);
    }
    SECTION("rotation by pi/3 is already orthogonal") {
        const auto pd = polar_decompose(Mat2::rotation(kPi / 3.0));
        CHECK(pd.angle == Approx(kPi / 3.0).margin(1e-15));
        CHECK(frobenius_norm(pd.stretch - Mat2::identity()) < 1e-14);
    }
    SECTION("diag(2, 1/2) is already symmetric positive definite") {
        const auto pd = polar_decompose(Mat2::diag(2.0, 0.5));
        CHECK(pd.angle == Approx(0.0).margin(1e-15));
        CHECK(frobenius_norm(pd.stretch - Mat2::diag(2.0, 0.5)) < 1e-15);
    }
    SECTION("rejects non-symplectic input") {
        CHECK_THROWS_AS(polar_decompose(Mat2::diag(2.0, 1.0)), NonSymplectic);
    }
}

TEST_CASE("polar round trip over random symplectic matrices") {
    Rng rng(101);
    for (int i = 0; i < 1000; ++i) {
        const Mat2 a = random_symplectic(rng);
        const auto pd = polar_decompose(a);
        const Mat2 back = pd.stretch * pd.rotation();
        REQUIRE(frobenius_norm(back - a) < 1e-9 * std::max(1.0, frobenius_norm(a)));
        // M symmetric positive definite
        REQUIRE(std::fabs(pd.stretch.a12 - pd.stretch.a21) < 1e-12 * frobenius_norm(pd.stretch));
        REQUIRE(pd.stretch.a11 > 0.0);
        REQUIRE(det(pd.stretch) > 0.0);
    }
}

TEST_CASE("endpoint classification trichotomy") {
    SECTION("positive hyperbolic") {
        const auto c = classify_endpoint(Mat2::diag(2.0, 0.5));
        CHECK(c.kind == EndpointKind::PositiveHyperbolic);
        CHECK(c.lambda == Approx(2.0));
        CHECK(c.lambda_inv == Approx(0.5));
    }
    SECTION("elliptic with phi = pi/3") {
        const auto c = classify_endpoint(Mat2::rotation(kPi / 3.0));
        CHECK(c.kind == EndpointKind::Elliptic);
        CHECK(c.phi == Approx(kPi / 3.0).margin(1e-12));
    }
    SECTION("identity is degenerate") {
        CHECK(classify_endpoint(Mat2::identity()).kind == EndpointKind::Degenerate);
    }
    SECTION("minus identity: double eigenvalue -1, det(A - Id) = 4") {
        const auto c = classify_endpoint(Mat2::identity() * -1.0);
        CHECK(c.kind == EndpointKind::NegativeHyperbolic);
        CHECK(c.lambda == Approx(-1.0));
        CHECK(c.det_a_minus_id == Approx(4.0));
    }
    SECTION("threshold is configurable") {
        const Mat2 near_id = Mat2::rotation(1e-6);
        CHECK(classify_endpoint(near_id).kind == EndpointKind::Degenerate);
        CHECK(classify_endpoint(near_id, 1e-14).kind == EndpointKind::Elliptic);
    }
}

TEST_CASE("classification is invariant under symplectic conjugation") {
    Rng rng(77);
    for (int i = 0; i < 1000; ++i) {
        const Mat2 a = random_symplectic(rng);
        const Mat2 p = random_symplectic(rng, 0.8);
        const Mat2 conj = p * a * inverse(p);
        const auto ca = classify_endpoint(a);
        const auto cc = classify_endpoint(conj);
        REQUIRE(ca.kind == cc.kind);
        if (ca.hyperbolic()) REQUIRE(ca.lambda == Approx(cc.lambda).epsilon(1e-9));
        if (ca.kind == EndpointKind::Elliptic) REQUIRE(ca.phi == Approx(cc.phi).margin(1e-9));
    }
}

TEST_CASE("path construction guards") {
    CHECK_THROWS_AS(SymplecticPath({{0.0, Mat2::rotation(0.2)}, {1.0, Mat2::rotation(0.3)}}),
                    BadInput); // must start at the identity
    CHECK_THROWS_AS(SymplecticPath({{0.0, Mat2::identity()}, {1.0, Mat2::diag(2.0, 1.0)}}),
                    NonSymplectic);
    // coarse sampling of a fast rotation trips the resolution guard
    CHECK_THROWS_AS(SymplecticPath::from_function(
                        [](double t) { return Mat2::rotation(3.0 * kPi * t); }, 1.0, 4),
                    InsufficientResolution);
    CHECK_THROWS_AS(SymplecticPath({{0.0, Mat2::identity()}, {0.0, Mat2::identity()}}), BadInput);
}

TEST_CASE("interpolation reproduces one-parameter families between samples") {
    const auto rot = rotation_path(2.0, 1.0, 33);
    for (double t : {0.11, 0.37, 0.5001, 0.93}) {
        CHECK(frobenius_norm(rot.evaluate(t) - Mat2::rotation(2.0 * t)) < 1e-12);
    }
    const auto str = stretch_path(0.8, 1.0, 33);
    for (double t : {0.11, 0.37, 0.93}) {
        CHECK(frobenius_norm(str.evaluate(t) - Mat2::diag(std::exp(0.8 * t), std::exp(-0.8 * t))) <
              1e-12);
    }
}

TEST_CASE("resampling onto a new grid preserves the path") {
    const auto rot = rotation_path(2.4, 1.0, 65);
    std::vector<double> times;
    for (int i = 0; i <= 100; ++i) times.push_back(i / 100.0);
    const auto res = resample(rot, times);
    CHECK(res.size() >= 101);
    for (double t : {0.13, 0.5, 0.77})
        CHECK(frobenius_norm(res.evaluate(t) - Mat2::rotation(2.4 * t)) < 1e-12);
}

TEST_CASE("path_concat") {
    SECTION("full rotation loop times the constant path equals the loop") {
        const auto loop = rotation_path(2.0 * kPi, 1.0, 1025);
        const auto prod = path_concat(loop, constant_identity_path());
        for (double t : {0.2, 0.5, 0.9})
            CHECK(frobenius_norm(prod.evaluate(t) - Mat2::rotation(2.0 * kPi * t)) < 1e-11);
    }
    SECTION("loop times rotation-by-pi gives rotation by 3 pi t") {
        const auto loop = rotation_path(2.0 * kPi, 1.0, 1025);
        const auto prod = path_concat(loop, rotation_path(kPi));
        for (double t : {0.2, 0.5, 0.9})
            CHECK(frobenius_norm(prod.evaluate(t) - Mat2::rotation(3.0 * kPi * t)) < 1e-11);
    }
    SECTION("constant identity loop is neutral") {
        const auto phi = stretch_path(0.7);
        const auto prod = path_concat(constant_identity_path(), phi);
        for (double t : {0.2, 0.5, 0.9})
            CHECK(frobenius_norm(prod.evaluate(t) - phi.evaluate(t)) < 1e-12);
    }
    SECTION("non-loops are rejected") {
        CHECK_THROWS_AS(path_concat(rotation_path(kPi), rotation_path(kPi)), NotALoop);
    }
}

TEST_CASE("path_invert") {
    const auto rot = rotation_path(kPi);
    const auto inv = path_invert(rot);
    for (double t : {0.2, 0.5, 0.9})
        CHECK(frobenius_norm(inv.evaluate(t) - Mat2::rotation(-kPi * t)) < 1e-12);

    const auto str = stretch_path(1.0);
    const auto sinv = path_invert(str);
    for (double t : {0.2, 0.9})
        CHECK(frobenius_norm(sinv.evaluate(t) - Mat2::diag(std::exp(-t), std::exp(t))) < 1e-12);

    SECTION("involution on random paths") {
        Rng rng(5);
        for (int i = 0; i < 20; ++i) {
            const auto p = random_path(rng);
            const auto q = path_invert(path_invert(p));
            for (std::size_t k = 0; k < p.size(); k += 17)
                REQUIRE(frobenius_norm(p[k].a - q[k].a) < 1e-12);
        }
    }
}

TEST_CASE("path_iterate") {
    SECTION("m = 1 is the identity operation") {
        const auto p = stretch_path(0.5);
        const auto q = path_iterate(p, 1);
        CHECK(q.duration() == Approx(p.duration()));
        CHECK(frobenius_norm(q.endpoint() - p.endpoint()) < 1e-15);
    }
    SECTION("stretch semigroup: the double of diag(e^t, e^-t) extends the flow") {
        const auto p = stretch_path(1.0);
        const auto q = path_iterate(p, 2);
        CHECK(q.duration() == Approx(2.0));
        for (double t : {0.5, 1.0, 1.5, 2.0})
            CHECK(frobenius_norm(q.evaluate(t) - Mat2::diag(std::exp(t), std::exp(-t))) < 1e-10);
    }
    SECTION("rotation semigroup: endpoint passes -Id then Id") {
        const auto p = rotation_path(kPi, 1.0, 513);
        const auto q = path_iterate(p, 2);
        CHECK(frobenius_norm(q.evaluate(1.0) - Mat2::identity() * -1.0) < 1e-10);
        CHECK(frobenius_norm(q.evaluate(2.0) - Mat2::identity()) < 1e-10);
    }
}

TEST_CASE("every operation output keeps unit determinant") {
    Rng rng(31);
    auto check_dets = [](const SymplecticPath& path) {
        for (const auto& s : path.samples()) REQUIRE(std::fabs(det(s.a) - 1.0) < 1e-6);
    };
    for (int i = 0; i < 25; ++i) {
        const auto p = random_path(rng);
        const auto loop = random_loop(rng, 1);
        check_dets(path_invert(p));
        check_dets(path_iterate(p, 3));
        check_dets(path_concat(loop, p));
    }
}
