// gsforge: build, localize and verify the explicit steady flows from the command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsforge/run.hpp"

namespace {

int fail(const gsforge::Error& e, int code) {
    std::cerr << gsforge::error_json(e) << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gsforge: explicit steady Euler, Boussinesq and IPM flows with residual verification"};
    app.set_version_flag("--version", "gsforge 0.1.0");

    std::string task, config_path, out, grid, format, golden;
    std::optional<int> order, shells, levels;
    std::optional<double> ell, tau, k, s, alpha_target;
    std::optional<std::uint64_t> seed;
    app.add_option("--task", task, "euler-build | euler-localize | multiscale | boussinesq | ipm | verify");
    app.add_option("--config", config_path, "JSON config; flags override its keys")->check(CLI::ExistingFile);
    app.add_option("--out", out, "output directory");
    app.add_option("--grid", grid, "node counts nx,ny (odd)");
    app.add_option("--levels", levels, "grid levels, each refined by 2");
    app.add_option("--order", order, "series truncation order");
    app.add_option("--ell", ell, "length scale");
    app.add_option("--tau", tau, "tau, sets m = 1/(2 ell tau)");
    app.add_option("--k", k, "Boussinesq / IPM slope parameter");
    app.add_option("--s", s, "Boussinesq / IPM exponent");
    app.add_option("--alpha-target", alpha_target, "Holder exponent of the multiscale family");
    app.add_option("--shells", shells, "number of multiscale shells");
    app.add_option("--seed", seed, "seed for Holder pair sampling");
    app.add_option("--format", format, "csv | vtk | json");
    app.add_option("--golden", golden, "report.json to compare against");
    CLI11_PARSE(app, argc, argv);

    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        std::stringstream ss;
        ss << is.rdbuf();
        try {
            j = nlohmann::ordered_json::parse(ss.str());
        } catch (const nlohmann::json::parse_error& e) {
            return fail(gsforge::ConfigError(std::string("config is not valid JSON: ") + e.what(), {}),
                        gsforge::kExitConfig);
        }
        if (!j.is_object()) return fail(gsforge::ConfigError("config must be a JSON object", {}), gsforge::kExitConfig);
    }
    if (!task.empty()) j["task"] = task;
    if (!out.empty()) j["out"] = out;
    if (!format.empty()) j["format"] = format;
    if (!golden.empty()) j["golden"] = golden;
    if (!grid.empty()) {
        int nx = 0, ny = 0;
        char comma = 0, extra = 0;
        std::istringstream gs(grid);
        if (!(gs >> nx >> comma >> ny) || comma != ',' || (gs >> extra)) {
            return fail(gsforge::ConfigError("--grid expects nx,ny", {"grid"}), gsforge::kExitConfig);
        }
        j["grid"] = {nx, ny};
    }
    if (levels) j["levels"] = *levels;
    if (order) j["order"] = *order;
    if (ell) j["ell"] = *ell;
    if (tau) j["tau"] = *tau;
    if (k) j["k"] = *k;
    if (s) j["s"] = *s;
    if (alpha_target) j["alpha_target"] = *alpha_target;
    if (shells) j["shells"] = *shells;
    if (seed) j["seed"] = *seed;

    gsforge::RunConfig config;
    try {
        config = gsforge::config_from_json(j.dump());
    } catch (const gsforge::ConfigError& e) {
        return fail(e, gsforge::kExitConfig);
    }
    return gsforge::run(config, std::clog, std::cerr);
}
