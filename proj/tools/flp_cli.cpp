#include "flp/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

template <class T>
void override_if(CLI::Option* opt, std::optional<T>& field, const T& value)
{
    if (opt->count() > 0) field = value;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Linearised fluid-loaded plate: scenario runner"};
    std::string mode, profile, closure, out, config, state;
    double U = 0, xmin = 0, xmax = 0, tmax = 0, kmax = 0;
    int nx = 0, nt = 0;
    auto* o_mode = app.add_option("--mode", mode, "figure1 | full-line | imomega | dispersion | kernel | wellposed | half-line | nonlocal-check");
    auto* o_U = app.add_option("--U", U, "Flow speed");
    auto* o_profile = app.add_option("--profile", profile, "Profile name or CSV file");
    auto* o_nx = app.add_option("--nx", nx, "Points in x (or Re k)");
    auto* o_nt = app.add_option("--nt", nt, "Points in t (or Im k)");
    auto* o_xmin = app.add_option("--xmin", xmin);
    auto* o_xmax = app.add_option("--xmax", xmax);
    auto* o_tmax = app.add_option("--tmax", tmax);
    auto* o_kmax = app.add_option("--kmax", kmax);
    auto* o_closure = app.add_option("--closure", closure, "given-xxx | given-xx | free-edge-zero");
    auto* o_state = app.add_option("--state", state, "Surface state CSV for nonlocal-check");
    auto* o_out = app.add_option("--out", out, "Output directory");
    app.add_option("--config", config, "JSON config file; flags override it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        flp::ScenarioConfig c;
        if (const char* env = std::getenv("FLP_OUTPUT_DIR"); env && *env) c.out = env;
        if (!config.empty()) {
            std::ifstream in(config);
            if (!in) throw flp::InvalidArgument("cannot open config " + config);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw flp::InvalidArgument(std::string("config is not valid JSON: ") + e.what());
            }
            c = flp::config_from_json(j, c);
        }
        if (o_mode->count()) c.mode = mode;
        if (o_closure->count()) c.closure = closure;
        if (o_out->count()) c.out = out;
        override_if(o_U, c.U, U);
        override_if(o_profile, c.profile, profile);
        override_if(o_nx, c.nx, nx);
        override_if(o_nt, c.nt, nt);
        override_if(o_xmin, c.xmin, xmin);
        override_if(o_xmax, c.xmax, xmax);
        override_if(o_tmax, c.tmax, tmax);
        override_if(o_kmax, c.kmax, kmax);
        override_if(o_state, c.state, state);
        flp::run_scenario(c);
    } catch (const std::exception& e) {
        std::cerr << "flp: " << e.what() << '\n';
        return flp::exit_code_for(e);
    }
    return 0;
}
