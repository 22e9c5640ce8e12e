#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "reebkit/cli.hpp"

using namespace reebkit;
namespace fs = std::filesystem;

namespace {

const std::string kSpecDir = REEBKIT_SPEC_DIR;

std::string fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("reebkit_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

std::string slurp(const std::string& path) { return read_text_file(path); }

void write_spec(const std::string& dir, const std::string& name, const std::string& body) {
    std::ofstream out(dir + "/" + name);
    out << body;
}

} // namespace

TEST_CASE("index command reproduces the normalization example") {
    const std::string out = fresh_dir("index");
    REQUIRE(run_spec_file(kSpecDir + "/index_rot_pi.json", out) == 0);
    const auto rep = nlohmann::json::parse(slurp(out + "/index_report.json"));
    CHECK(rep["index"].get<int>() == 1);
    CHECK(rep["result"]["endpoint"]["class"].get<std::string>() == "negative_hyperbolic");
}

TEST_CASE("orbit command: sl2 splitting frame") {
    const std::string out = fresh_dir("orbit");
    REQUIRE(run_spec_file(kSpecDir + "/orbit_sl2.json", out) == 0);
    const auto rep = nlohmann::json::parse(slurp(out + "/orbit_report.json"));
    CHECK(rep["index"].get<int>() == 0);
    CHECK(rep["orbit"]["closure_defect"].get<double>() < 1e-8);
    CHECK(rep["linearization"]["endpoint"]["class"].get<std::string>() == "positive_hyperbolic");
    CHECK(fs::exists(out + "/orbit_trajectory.csv"));
}

TEST_CASE("curvature command on su2") {
    const std::string out = fresh_dir("curv");
    REQUIRE(run_spec_file(kSpecDir + "/curvature_su2.json", out) == 0);
    const auto rep = nlohmann::json::parse(slurp(out + "/curvature_report.json"));
    for (const auto& pt : rep["points"]) {
        CHECK(pt["ricci"].get<double>() == Approx(2.0).margin(1e-9));
        CHECK(pt["lie_norm2"].get<double>() == Approx(0.0).margin(1e-12));
    }
    const std::string csv = slurp(out + "/curvature_sweep.csv");
    CHECK(csv.rfind("point_x,point_y,point_z,angle,k,ricci,lie_norm2,margin", 0) == 0);
}

TEST_CASE("anosov command on sl2 gathers all three detectors") {
    const std::string out = fresh_dir("anosov");
    REQUIRE(run_spec_file(kSpecDir + "/anosov_sl2.json", out) == 0);
    const auto rep = nlohmann::json::parse(slurp(out + "/anosov_report.json"));
    CHECK(rep["domination"]["verdict"].get<bool>());
    CHECK(rep["domination"]["C"].get<double>() == Approx(2.0).epsilon(0.01));
    CHECK(rep["contact_pair"]["report"]["verdict"].get<bool>());
    CHECK_FALSE(rep["neg_bound"]["holds"].get<bool>()); // theta' = 2 margin is +2
}

TEST_CASE("energy command on t3") {
    const std::string out = fresh_dir("energy");
    REQUIRE(run_spec_file(kSpecDir + "/energy_t3.json", out) == 0);
    const auto rep = nlohmann::json::parse(slurp(out + "/energy_report.json"));
    CHECK(rep["energy"]["energy"].get<double>() == Approx(16.0 * kPi * kPi * kPi).epsilon(1e-3));
}

TEST_CASE("identical runs produce byte-identical reports") {
    const std::string out1 = fresh_dir("det1");
    const std::string out2 = fresh_dir("det2");
    for (const char* spec : {"index_rot_pi.json", "anosov_sl2.json", "curvature_su2.json"}) {
        REQUIRE(run_spec_file(kSpecDir + "/" + spec, out1, 7) == 0);
        REQUIRE(run_spec_file(kSpecDir + "/" + spec, out2, 7) == 0);
    }
    for (const auto& entry : fs::directory_iterator(out1)) {
        const std::string name = entry.path().filename().string();
        INFO(name);
        REQUIRE(slurp(out1 + "/" + name) == slurp(out2 + "/" + name));
    }
}

TEST_CASE("validation failures exit with code 2") {
    const std::string out = fresh_dir("bad");
    SECTION("missing spec file") { CHECK(run_spec_file(out + "/nope.json", out) == 2); }
    SECTION("unknown model") {
        write_spec(out, "bad_model.json",
                   R"({"command": "curvature", "model": {"name": "mystery"}})");
        CHECK(run_spec_file(out + "/bad_model.json", out) == 2);
    }
    SECTION("overrides outside the documented ranges") {
        write_spec(out, "bad_tol.json",
                   R"({"command": "energy", "model": {"name": "t3"}, "overrides": {"tolerance": 0.5}})");
        CHECK(run_spec_file(out + "/bad_tol.json", out) == 2);
        write_spec(out, "bad_grid.json",
                   R"({"command": "curvature", "model": {"name": "t3"}, "overrides": {"grid": 4}})");
        CHECK(run_spec_file(out + "/bad_grid.json", out) == 2);
        write_spec(out, "bad_horizon.json",
                   R"({"command": "anosov", "model": {"name": "sl2"}, "overrides": {"horizon": 200}})");
        CHECK(run_spec_file(out + "/bad_horizon.json", out) == 2);
    }
    SECTION("curvature on the non-contact control") {
        write_spec(out, "catmap_curv.json",
                   R"({"command": "curvature", "model": {"name": "catmap"}})");
        CHECK(run_spec_file(out + "/catmap_curv.json", out) == 2);
    }
    SECTION("malformed path file") {
        write_spec(out, "broken_path.json", R"({"command": "index", "path": "missing.json"})");
        CHECK(run_spec_file(out + "/broken_path.json", out) == 2);
    }
}

TEST_CASE("path files round-trip through the deterministic writer") {
    const auto path = SymplecticPath::from_function(
        [](double t) { return Mat2::rotation(1.3 * t) * Mat2::diag(std::exp(0.2 * t), std::exp(-0.2 * t)); },
        1.0, 65);
    const std::string text = path_to_report(path).dump();
    const auto back = path_from_json(nlohmann::json::parse(text));
    REQUIRE(back.size() == path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        REQUIRE(back[i].t == path[i].t);
        REQUIRE(frobenius_norm(back[i].a - path[i].a) == 0.0);
    }
}

TEST_CASE("numerical-consistency errors carry the dedicated kind") {
    // exit code 3 is reserved for cross-check disagreements; the mapping is
    // keyed off Error::Kind::Numeric
    CHECK(OracleDisagreement("x").kind() == Error::Kind::Numeric);
    CHECK(MethodDisagreement("x").kind() == Error::Kind::Numeric);
    CHECK(BadInput("x").kind() == Error::Kind::Validation);
}

TEST_CASE("anosov command on the non-contact control reports the fit only") {
    const std::string out = fresh_dir("anosov_cat");
    write_spec(out, "catmap_anosov.json",
               R"({"command": "anosov", "model": {"name": "catmap"}, "seed": 3})");
    REQUIRE(run_spec_file(out + "/catmap_anosov.json", out) == 0);
    const auto rep = nlohmann::json::parse(slurp(out + "/anosov_report.json"));
    CHECK(rep["domination"]["verdict"].get<bool>());
    CHECK(rep["neg_bound"].is_null());
    CHECK(rep["contact_pair"].is_null());
}

TEST_CASE("orbit command reports a null index for the degenerate Hopf orbit") {
    const std::string out = fresh_dir("orbit_hopf");
    write_spec(out, "hopf.json",
               R"({"command": "orbit", "model": {"name": "su2"}, "seed": "hopf"})");
    REQUIRE(run_spec_file(out + "/hopf.json", out) == 0);
    const auto rep = nlohmann::json::parse(slurp(out + "/orbit_report.json"));
    CHECK(rep["index"].is_null());
    CHECK(rep["linearization"]["endpoint"]["class"].get<std::string>() == "degenerate");
}

TEST_CASE("orbit command accepts explicit seeds with a period guess") {
    const std::string out = fresh_dir("orbit_seed");
    write_spec(out, "catmap_orbit.json",
               R"({"command": "orbit",
                   "model": {"name": "catmap"},
                   "catalog": "fixed_point",
                   "seed": [0.05, 0.9, 0.0],
                   "period_guess": 1.0,
                   "frame": "model"})");
    REQUIRE(run_spec_file(out + "/catmap_orbit.json", out) == 0);
    const auto rep = nlohmann::json::parse(slurp(out + "/orbit_report.json"));
    CHECK(rep["orbit"]["closure_defect"].get<double>() < 1e-8);
    CHECK(rep["index"].get<int>() == 0);
}
