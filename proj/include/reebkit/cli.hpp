#ifndef REEBKIT_CLI_HPP
#define REEBKIT_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "reebkit/io.hpp"

// Batch front-end: reads a JSON run spec, executes one pipeline, writes
// deterministic reports. Exit codes: 0 success, 2 validation error,
// 3 numerical-consistency error (a cross-check disagreed; never downgraded).

namespace reebkit {

struct RunSpec {
    std::string command; // index | orbit | curvature | anosov | energy
    nlohmann::json doc;
    std::string base_dir;

    // overrides, with documented ranges
    double tolerance = 1e-9; // [1e-12, 1e-3]
    int grid = 16;           // [8, 256]
    double horizon = 10.0;   // (0, 100]
    std::uint64_t seed = 0;
    int points = 16;
    int angles = 64;
};

namespace detail {

inline void validate_overrides(const RunSpec& spec) {
    if (spec.tolerance < 1e-12 || spec.tolerance > 1e-3)
        throw InvalidParams("tolerance must lie in [1e-12, 1e-3]");
    if (spec.grid < 8 || spec.grid > 256) throw InvalidParams("grid must lie in [8, 256]");
    if (!(spec.horizon > 0.0) || spec.horizon > 100.0)
        throw InvalidParams("horizon must lie in (0, 100]");
    if (spec.points < 1 || spec.points > 4096) throw InvalidParams("points must lie in [1, 4096]");
    if (spec.angles < 4 || spec.angles > 1024) throw InvalidParams("angles must lie in [4, 1024]");
}

inline std::string resolve_path(const RunSpec& spec, const std::string& rel) {
    std::filesystem::path p(rel);
    if (p.is_absolute()) return rel;
    return (std::filesystem::path(spec.base_dir) / p).string();
}

} // namespace detail

inline RunSpec load_run_spec(const std::string& spec_path,
                             std::optional<std::uint64_t> seed_override = std::nullopt) {
    RunSpec spec;
    spec.doc = parse_json(read_text_file(spec_path), "run spec " + spec_path);
    spec.base_dir = std::filesystem::path(spec_path).parent_path().string();
    if (spec.base_dir.empty()) spec.base_dir = ".";
    if (!spec.doc.contains("command")) throw BadInput("run spec needs a 'command'");
    spec.command = spec.doc["command"].get<std::string>();
    // In orbit specs 'seed' may instead be the orbit seed point (an array).
    if (spec.doc.contains("seed") && spec.doc["seed"].is_number())
        spec.seed = spec.doc["seed"].get<std::uint64_t>();
    if (seed_override) spec.seed = *seed_override;
    if (spec.doc.contains("overrides")) {
        const auto& o = spec.doc["overrides"];
        if (o.contains("tolerance")) spec.tolerance = o["tolerance"].get<double>();
        if (o.contains("grid")) spec.grid = o["grid"].get<int>();
        if (o.contains("horizon")) spec.horizon = o["horizon"].get<double>();
        if (o.contains("points")) spec.points = o["points"].get<int>();
        if (o.contains("angles")) spec.angles = o["angles"].get<int>();
    }
    detail::validate_overrides(spec);
    return spec;
}

namespace detail {

inline Report config_report(const RunSpec& spec) {
    Report c = Report::object();
    c.set("command", spec.command);
    c.set("seed", static_cast<std::int64_t>(spec.seed));
    c.set("tolerance", spec.tolerance);
    c.set("grid", spec.grid);
    c.set("horizon", spec.horizon);
    c.set("points", spec.points);
    c.set("angles", spec.angles);
    if (spec.doc.contains("model")) {
        const auto& m = spec.doc["model"];
        Report mr = Report::object();
        mr.set("name", m.value("name", std::string{}));
        if (m.contains("params")) {
            Report pr = Report::object();
            for (auto it = m["params"].begin(); it != m["params"].end(); ++it)
                pr.set(it.key(), it.value().get<double>());
            mr.set("params", std::move(pr));
        }
        c.set("model", std::move(mr));
    }
    if (spec.doc.contains("path")) c.set("path", spec.doc["path"].get<std::string>());
    return c;
}

inline void run_index(const RunSpec& spec, const std::string& out_dir) {
    if (!spec.doc.contains("path")) throw BadInput("index spec needs a 'path' file");
    const SymplecticPath path = read_path_file(resolve_path(spec, spec.doc["path"].get<std::string>()));
    const IndexResult result = cz_index(path);
    Report rep = Report::object();
    rep.set("config", config_report(spec));
    rep.set("index", result.index);
    rep.set("endpoint", to_string(result.endpoint.kind));
    Report crossings = Report::array();
    for (const auto& c : result.crossings) {
        Report row = Report::array();
        row.push(c.t).push(c.sign);
        crossings.push(std::move(row));
    }
    rep.set("crossings", std::move(crossings));
    rep.set("result", index_to_report(result));
    write_text_file(out_dir + "/index_report.json", rep.dump());
}

inline void run_orbit(const RunSpec& spec, const std::string& out_dir) {
    const OrbitSpec ospec = orbit_spec_from_json(spec.doc);
    const ReebOrbit orbit = orbit_from_spec(ospec);
    const LinearizedOrbit lin = linearize(orbit, ospec.frame);

    Report rep = Report::object();
    rep.set("config", config_report(spec));
    Report orb = Report::object();
    orb.set("catalog", orbit.catalog_tag);
    orb.set("seed", point_to_report(orbit.seed));
    orb.set("period", orbit.period);
    orb.set("closure_defect", orbit.closure_defect);
    rep.set("orbit", std::move(orb));
    Report lr = Report::object();
    lr.set("frame", to_string(ospec.frame));
    lr.set("doubled", lin.doubled);
    lr.set("det_drift", lin.det_drift);
    lr.set("endpoint", endpoint_to_report(lin.endpoint));
    rep.set("linearization", std::move(lr));
    if (lin.endpoint.kind == EndpointKind::Degenerate) {
        rep.set("index", nullptr);
    } else {
        const OrbitIndex idx = orbit_cz(orbit, ospec.frame, ospec.iterate);
        rep.set("index", idx.index);
        rep.set("iterate", idx.iterate);
        rep.set("index_result", index_to_report(idx.raw));
        if (idx.doubled) rep.set("doubled_cover_index", idx.raw.index);
    }
    write_text_file(out_dir + "/orbit_report.json", rep.dump());

    std::vector<std::string> cols{"t", "x0", "x1", "x2", "x3", "a11", "a12", "a21", "a22"};
    CsvWriter csv(cols);
    for (std::size_t i = 0; i < orbit.trajectory.times.size(); ++i) {
        const double t = orbit.trajectory.times[i];
        const ModelPoint& p = orbit.trajectory.points[i];
        const Mat2 a = lin.path.evaluate(std::min(t, lin.path.duration()));
        csv.row({t, p.x[0], p.x[1], p.x[2], p.x[3], a.a11, a.a12, a.a21, a.a22});
    }
    write_text_file(out_dir + "/orbit_trajectory.csv", csv.str());
}

inline void run_curvature(const RunSpec& spec, const std::string& out_dir) {
    if (!spec.doc.contains("model")) throw BadInput("curvature spec needs a 'model'");
    const Model model = model_from_json(spec.doc["model"]);
    const ContactReport contact = validate_contact(model, spec.grid);
    if (!contact.applicable) throw NotContact("curvature needs a contact model");
    Rng rng(spec.seed);
    const auto points = sample_points(model, spec.points, rng);

    Report rep = Report::object();
    rep.set("config", config_report(spec));
    Report cr = Report::object();
    cr.set("positive", contact.positive);
    cr.set("min_contact_value", contact.min_contact_value);
    cr.set("theta_prime", contact.theta_prime);
    cr.set("theta_spread", contact.theta_spread);
    rep.set("contact", std::move(cr));

    CsvWriter csv({"point_x", "point_y", "point_z", "angle", "k", "ricci", "lie_norm2", "margin"});
    Report reports = Report::array();
    for (const auto& p : points) {
        const CurvatureReport c = curvature_report(model, p, spec.angles);
        reports.push(curvature_to_report(c));
        for (std::size_t i = 0; i < c.angles.size(); ++i) {
            csv.row({p.x[0], p.x[1], p.x[2], c.angles[i], c.k[i], c.ricci, c.lie_norm2,
                     c.neg_bound_rhs_value - c.k[i]});
        }
    }
    rep.set("points", std::move(reports));
    write_text_file(out_dir + "/curvature_report.json", rep.dump());
    write_text_file(out_dir + "/curvature_sweep.csv", csv.str());
}

inline void run_anosov(const RunSpec& spec, const std::string& out_dir) {
    if (!spec.doc.contains("model")) throw BadInput("anosov spec needs a 'model'");
    const Model model = model_from_json(spec.doc["model"]);
    Rng rng(spec.seed);
    const bool frame_model = std::holds_alternative<FrameModel>(model);
    const bool contact = is_contact_model(model);
    const auto dom_points = sample_points(model, frame_model ? 1 : 2, rng);
    const DominationReport dom = domination_check(model, dom_points, spec.horizon);

    Report rep = Report::object();
    rep.set("config", config_report(spec));
    rep.set("domination", domination_to_report(dom));

    if (contact) {
        const auto nb_points = sample_points(model, spec.points, rng);
        const NegBoundReport nb = neg_bound_check(model, nb_points, spec.angles);
        rep.set("neg_bound", neg_bound_to_report(nb));

        // contact-pair candidates: the zero-direction planes when the metric
        // is nowhere Reeb-invariant at the probe point, else a fixed pair
        const LieDerivativeInfo lie = lie_derivative_metric(model, dom_points.front());
        double a1 = 0.0, a2 = 0.5 * kPi;
        if (!lie.degenerate) {
            a1 = lie.zero_angle_1;
            a2 = lie.zero_angle_2;
        }
        const ContactPairReport cp = contact_pair_check(model, a1, a2, 8);
        Report cpr = Report::object();
        cpr.set("xi_plus_angle", a1);
        cpr.set("xi_minus_angle", a2);
        cpr.set("report", contact_pair_to_report(cp));
        rep.set("contact_pair", std::move(cpr));
    } else {
        rep.set("neg_bound", nullptr);
        rep.set("contact_pair", nullptr);
    }
    write_text_file(out_dir + "/anosov_report.json", rep.dump());
}

inline void run_energy(const RunSpec& spec, const std::string& out_dir) {
    if (!spec.doc.contains("model")) throw BadInput("energy spec needs a 'model'");
    const Model model = model_from_json(spec.doc["model"]);
    const int res = spec.doc.contains("resolution") ? spec.doc["resolution"].get<int>() : spec.grid;
    if (res < 8 || res > 256) throw InvalidParams("resolution must lie in [8, 256]");
    const EnergyReport e = chern_hamilton_energy(model, res);
    Report rep = Report::object();
    rep.set("config", config_report(spec));
    rep.set("energy", energy_to_report(e));
    write_text_file(out_dir + "/energy_report.json", rep.dump());
}

} // namespace detail

// Returns the process exit code.
inline int run(const RunSpec& spec, const std::string& out_dir) {
    try {
        std::filesystem::create_directories(out_dir);
        if (spec.command == "index")
            detail::run_index(spec, out_dir);
        else if (spec.command == "orbit")
            detail::run_orbit(spec, out_dir);
        else if (spec.command == "curvature")
            detail::run_curvature(spec, out_dir);
        else if (spec.command == "anosov")
            detail::run_anosov(spec, out_dir);
        else if (spec.command == "energy")
            detail::run_energy(spec, out_dir);
        else
            throw BadInput("unknown command '" + spec.command + "'");
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "reebkit: %s\n", e.what());
        return e.kind() == Error::Kind::Numeric ? 3 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "reebkit: %s\n", e.what());
        return 2;
    }
}

inline int run_spec_file(const std::string& spec_path, const std::string& out_dir,
                         std::optional<std::uint64_t> seed_override = std::nullopt) {
    try {
        const RunSpec spec = load_run_spec(spec_path, seed_override);
        return run(spec, out_dir);
    } catch (const Error& e) {
        std::fprintf(stderr, "reebkit: %s\n", e.what());
        return e.kind() == Error::Kind::Numeric ? 3 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "reebkit: %s\n", e.what());
        return 2;
    }
}

} // namespace reebkit

#endif // REEBKIT_CLI_HPP
