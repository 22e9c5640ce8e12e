#include <cstdint>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "reebkit/cli.hpp"

namespace {

constexpr const char* kCatalogHelp =
    "Model catalog (model spec JSON: {\"name\": ..., \"params\": {...}}):\n"
    "  heisenberg            R^3 with alpha = dz - y dx; Reeb field dz.\n"
    "                        params: theta_prime (default 2)\n"
    "  su2                   round 3-sphere, Reeb orbits are the Hopf fibers.\n"
    "                        params: theta_prime (default 2)\n"
    "  sl2                   geodesic-flow frame on the unit tangent bundle of a\n"
    "                        hyperbolic surface: [X,h+]=h+, [X,h-]=-h-.\n"
    "                        params: theta_prime (default 2)\n"
    "  t3                    torus chart alpha = cos(nz) dx - sin(nz) dy; the flat\n"
    "                        compatible metric fixes theta' = n. params: n (default 1)\n"
    "  ellipsoid             standard primitive restricted to |z1|^2/a^2 + |z2|^2/b^2 = 1,\n"
    "                        solid-torus chart around the z2 = 0 core circle.\n"
    "                        params: a (1), b (sqrt 2), theta_prime (2)\n"
    "  catmap                suspension of [[2,1],[1,1]] on the 2-torus; a non-contact\n"
    "                        control flow. params: negative (0 or 1)\n";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reebkit - Reeb flow indices, compatible-metric curvature, and "
                 "Anosovity detectors on model contact 3-manifolds"};
    app.footer(kCatalogHelp);
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--spec", spec_path, "run spec JSON file")->required();
        cmd->add_option("--out", out_dir, "output directory for reports");
        cmd->add_option("--seed", seed, "64-bit seed overriding the spec");
    };

    add_common(app.add_subcommand("index", "Conley-Zehnder index of a sampled symplectic path"));
    add_common(app.add_subcommand("orbit", "refine, linearize, classify and index a periodic orbit"));
    add_common(app.add_subcommand("curvature", "compatible-metric curvature sweep with cross-checks"));
    add_common(app.add_subcommand("anosov", "domination fit, contact-pair test and curvature bound"));
    add_common(app.add_subcommand("energy", "Chern-Hamilton energy of the compatible metric"));

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const reebkit::RunSpec spec = reebkit::load_run_spec(spec_path, seed);
        if (spec.command != command) {
            std::fprintf(stderr, "reebkit: spec command '%s' does not match subcommand '%s'\n",
                         spec.command.c_str(), command.c_str());
            return 2;
        }
        return reebkit::run(spec, out_dir);
    } catch (const reebkit::Error& e) {
        std::fprintf(stderr, "reebkit: %s\n", e.what());
        return e.kind() == reebkit::Error::Kind::Numeric ? 3 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "reebkit: %s\n", e.what());
        return 2;
    }
}
