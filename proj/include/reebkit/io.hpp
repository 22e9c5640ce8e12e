#ifndef REEBKIT_IO_HPP
#define REEBKIT_IO_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reebkit/cz.hpp"
#include "reebkit/dynamics.hpp"
#include "reebkit/errors.hpp"
#include "reebkit/geometry.hpp"
#include "reebkit/models.hpp"
#include "reebkit/report.hpp"
#include "reebkit/sp2.hpp"

// File formats:
//   path file     { "samples": [[t, a11, a12, a21, a22], ...] }
//   model spec    { "name": "...", "params": { ... } }
//   orbit spec    { "model": {...}, "catalog": tag | "seed": [...],
//                   "period_guess": T, "frame": "model" | "splitting" }
// Reports are emitted through the deterministic writer in report.hpp.

namespace reebkit {

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadInput("cannot write file: " + path);
    out << content;
}

inline nlohmann::json parse_json(const std::string& text, const std::string& what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw BadInput(what + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Symplectic path files.

inline SymplecticPath path_from_json(const nlohmann::json& j) {
    if (!j.contains("samples") || !j["samples"].is_array())
        throw BadInput("path file needs a 'samples' array");
    std::vector<PathSample> samples;
    for (const auto& row : j["samples"]) {
        if (!row.is_array() || row.size() != 5)
            throw BadInput("path sample rows must be [t, a11, a12, a21, a22]");
        samples.push_back({row[0].get<double>(),
                           Mat2{row[1].get<double>(), row[2].get<double>(), row[3].get<double>(),
                                row[4].get<double>()}});
    }
    return SymplecticPath(std::move(samples));
}

inline SymplecticPath read_path_file(const std::string& path) {
    return path_from_json(parse_json(read_text_file(path), "path file " + path));
}

inline Report path_to_report(const SymplecticPath& path) {
    Report rows = Report::array();
    for (const auto& s : path.samples()) {
        Report row = Report::array();
        row.push(s.t).push(s.a.a11).push(s.a.a12).push(s.a.a21).push(s.a.a22);
        rows.push(std::move(row));
    }
    return Report::object().set("samples", std::move(rows));
}

// ---------------------------------------------------------------------------
// Model and orbit specs.

inline Model model_from_json(const nlohmann::json& j) {
    if (!j.contains("name")) throw BadInput("model spec needs a 'name'");
    std::map<std::string, double> params;
    if (j.contains("params")) {
        for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
            params[it.key()] = it.value().get<double>();
    }
    return build_model(j["name"].get<std::string>(), params);
}

struct OrbitSpec {
    Model model;
    std::string catalog_tag = "default";
    double length = 0.0;       // catalog parameter, model-specific
    bool explicit_seed = false;
    ModelPoint seed;
    double period_guess = 0.0;
    FrameTag frame = FrameTag::Model;
    int iterate = 1;
};

inline OrbitSpec orbit_spec_from_json(const nlohmann::json& j) {
    if (!j.contains("model")) throw BadInput("orbit spec needs a 'model'");
    OrbitSpec spec{model_from_json(j["model"]), "default", 0.0, false, {}, 0.0, FrameTag::Model, 1};
    if (j.contains("catalog")) spec.catalog_tag = j["catalog"].get<std::string>();
    if (j.contains("length")) spec.length = j["length"].get<double>();
    // 'seed' is a coordinate array, a catalog tag string, or (numeric) the
    // RNG seed of the surrounding run spec
    if (j.contains("seed") && j["seed"].is_string()) {
        spec.catalog_tag = j["seed"].get<std::string>();
    } else if (j.contains("seed") && j["seed"].is_array()) {
        const auto& s = j["seed"];
        if (s.size() != 3 && s.size() != 4)
            throw BadInput("orbit seed must have 3 or 4 coordinates");
        spec.explicit_seed = true;
        spec.seed.dim = static_cast<int>(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) spec.seed.x[i] = s[i].get<double>();
        if (!j.contains("period_guess")) throw BadInput("explicit seeds need a 'period_guess'");
        spec.period_guess = j["period_guess"].get<double>();
    }
    if (j.contains("frame")) {
        const std::string f = j["frame"].get<std::string>();
        if (f == "model")
            spec.frame = FrameTag::Model;
        else if (f == "splitting")
            spec.frame = FrameTag::Splitting;
        else
            throw BadInput("orbit frame must be 'model' or 'splitting'");
    }
    if (j.contains("iterate")) {
        spec.iterate = j["iterate"].get<int>();
        if (spec.iterate < 1 || spec.iterate > 16) throw BadInput("iterate must be in [1, 16]");
    }
    return spec;
}

inline ReebOrbit orbit_from_spec(const OrbitSpec& spec) {
    if (spec.explicit_seed) {
        // anchor to the catalog deck when one exists for this model
        std::function<ModelPoint(const ModelPoint&)> deck;
        try {
            deck = catalog_orbit_spec(spec.model, spec.catalog_tag, spec.period_guess).deck_inverse;
        } catch (const BadInput&) {
        }
        return refine_orbit(spec.model, spec.seed, spec.period_guess, spec.catalog_tag, deck);
    }
    return catalog_orbit(spec.model, spec.catalog_tag, spec.length);
}

// ---------------------------------------------------------------------------
// Report serialization of the domain results.

inline Report endpoint_to_report(const EndpointClass& e) {
    Report r = Report::object();
    r.set("class", to_string(e.kind));
    r.set("det_a_minus_id", e.det_a_minus_id);
    if (e.hyperbolic()) r.set("lambda", e.lambda).set("lambda_inv", e.lambda_inv);
    if (e.kind == EndpointKind::Elliptic) r.set("phi", e.phi);
    return r;
}

inline Report index_to_report(const IndexResult& r) {
    Report crossings = Report::array();
    for (const auto& c : r.crossings) {
        Report row = Report::array();
        row.push(c.t).push(c.sign);
        crossings.push(std::move(row));
    }
    return Report::object()
        .set("index", r.index)
        .set("endpoint", endpoint_to_report(r.endpoint))
        .set("crossings", std::move(crossings))
        .set("crossing_index", r.crossing_index)
        .set("rotation_index", r.rotation_index)
        .set("regularized", r.regularized);
}

inline Report point_to_report(const ModelPoint& p) {
    Report r = Report::array();
    for (int i = 0; i < p.dim; ++i) r.push(p.x[i]);
    return r;
}

inline Report curvature_to_report(const CurvatureReport& c) {
    Report r = Report::object();
    r.set("point", point_to_report(c.point));
    r.set("theta_prime", c.theta_prime);
    r.set("ricci", c.ricci);
    r.set("extrinsic_curvature", c.extrinsic);
    r.set("mean_curvature", c.mean_curvature);
    Report ii = Report::array();
    ii.push(c.second_fundamental.a11).push(c.second_fundamental.a12);
    ii.push(c.second_fundamental.a21).push(c.second_fundamental.a22);
    r.set("second_fundamental_form", std::move(ii));
    r.set("lie_norm2", c.lie_norm2);
    if (c.lie.degenerate) {
        r.set("zero_directions", "degenerate");
    } else {
        Report z = Report::array();
        z.push(c.lie.zero_angle_1).push(c.lie.zero_angle_2);
        r.set("zero_directions", std::move(z));
        r.set("quadrant_alternation", c.lie.quadrant_alternation);
    }
    r.set("neg_bound_rhs", c.neg_bound_rhs_value);
    r.set("neg_margin", c.neg_margin);
    Report ks = Report::array();
    for (double v : c.k) ks.push(v);
    r.set("k", std::move(ks));
    return r;
}

inline Report domination_to_report(const DominationReport& d) {
    Report fits = Report::array();
    for (const auto& f : d.fits) {
        fits.push(Report::object()
                      .set("point", point_to_report(f.point))
                      .set("A", f.A)
                      .set("C", f.C)
                      .set("residual", f.residual));
    }
    return Report::object()
        .set("verdict", d.verdict)
        .set("C", d.C)
        .set("A", d.A)
        .set("residual", d.residual)
        .set("horizon", d.horizon)
        .set("samples_per_point", d.samples_per_point)
        .set("fits", std::move(fits));
}

inline Report contact_pair_to_report(const ContactPairReport& c) {
    return Report::object()
        .set("verdict", c.verdict)
        .set("min_plus", c.min_plus)
        .set("max_plus", c.max_plus)
        .set("min_minus", c.min_minus)
        .set("max_minus", c.max_minus)
        .set("samples", c.samples)
        .set("swapped_roles", c.swapped_roles);
}

inline Report neg_bound_to_report(const NegBoundReport& n) {
    Report samples = Report::array();
    for (const auto& s : n.samples) {
        samples.push(Report::object()
                         .set("point", point_to_report(s.point))
                         .set("ricci", s.ricci)
                         .set("bound_rhs", s.bound_rhs)
                         .set("max_k", s.max_k)
                         .set("worst_angle", s.worst_angle)
                         .set("margin", s.margin));
    }
    return Report::object()
        .set("holds", n.holds)
        .set("worst_margin", n.worst_margin)
        .set("samples", std::move(samples));
}

inline Report energy_to_report(const EnergyReport& e) {
    Report r = Report::object();
    r.set("density", e.density);
    if (e.energy)
        r.set("energy", *e.energy);
    else
        r.set("energy", nullptr);
    if (e.volume)
        r.set("volume", *e.volume);
    else
        r.set("volume", nullptr);
    r.set("domain", e.domain);
    r.set("resolution", e.resolution);
    return r;
}

// CSV with fixed 17-significant-digit floats.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) out_ += ",";
            out_ += columns_[i];
        }
        out_ += "\n";
    }
    void row(const std::vector<double>& values) {
        if (values.size() != columns_.size()) throw BadInput("CSV row width mismatch");
        char buf[40];
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ += ",";
            std::snprintf(buf, sizeof buf, "%.17g", values[i]);
            out_ += buf;
        }
        out_ += "\n";
    }
    const std::string& str() const { return out_; }

private:
    std::vector<std::string> columns_;
    std::string out_;
};

} // namespace reebkit

#endif // REEBKIT_IO_HPP
