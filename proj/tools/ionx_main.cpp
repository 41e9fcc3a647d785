// ionx: membrane ion-transmitter simulator CLI.
//
//   ionx run --scenario fig5 --out DIR [--config FILE] [--set key=value ...]
//   ionx netlist --mode potentiostatic --out FILE [--config FILE] [--set ...]
//   ionx grid --dump [--out FILE] [--config FILE] [--set ...]
//
// Exit codes: 0 success, 2 usage error, 3 solver failure.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ionx/config.hpp"
#include "ionx/csv.hpp"
#include "ionx/errors.hpp"
#include "ionx/netlist.hpp"
#include "ionx/scenario.hpp"
#include "ionx/solver.hpp"

namespace {

ionx::ConfigMap overrides_from_sets(const std::vector<std::string>& sets) {
    ionx::ConfigMap map;
    for (const auto& kv : sets) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--set expects key=value, got: " + kv);
        }
        map[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return map;
}

/// Defaults -> scenario preset -> config file -> --set overrides.
ionx::RunConfig build_config(const std::string& scenario, const std::string& config_path,
                             const std::vector<std::string>& sets) {
    ionx::RunConfig cfg;
    if (!scenario.empty()) cfg.apply(ionx::scenario_preset(scenario));
    if (!config_path.empty()) cfg.apply(ionx::load_config_file(config_path));
    cfg.apply(overrides_from_sets(sets));
    return cfg;
}

std::string scenario_from_config(const std::string& config_path) {
    if (config_path.empty()) return "";
    const auto map = ionx::load_config_file(config_path);
    const auto it = map.find("scenario");
    return it == map.end() ? "" : it->second;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"membrane ion-transmitter simulator"};
    app.require_subcommand(1);

    std::string scenario, config_path, out_path;
    std::vector<std::string> sets;

    CLI::App* run = app.add_subcommand("run", "run a named scenario");
    run->add_option("--scenario", scenario, "scenario name (see README)");
    run->add_option("--config", config_path, "config file (key=value lines)");
    run->add_option("--out", out_path, "output directory")->required();
    run->add_option("--set", sets, "override, key=value (repeatable)");

    std::string netlist_mode = "potentiostatic";
    CLI::App* netlist = app.add_subcommand("netlist", "export the network as a netlist");
    netlist->add_option("--mode", netlist_mode, "potentiostatic | galvanostatic");
    netlist->add_option("--config", config_path, "config file");
    netlist->add_option("--out", out_path, "output file")->required();
    netlist->add_option("--set", sets, "override, key=value (repeatable)");

    bool dump = false;
    CLI::App* grid = app.add_subcommand("grid", "inspect the compartment grid");
    grid->add_flag("--dump", dump, "write the grid as CSV");
    grid->add_option("--config", config_path, "config file");
    grid->add_option("--out", out_path, "output file (default stdout)");
    grid->add_option("--set", sets, "override, key=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            std::string name = scenario;
            if (name.empty()) name = scenario_from_config(config_path);
            if (name.empty()) name = "custom";
            const ionx::RunConfig cfg = build_config(name, config_path, sets);
            const auto result = ionx::run_scenario(name, cfg, out_path);
            for (const auto& f : result.files) std::cout << f << '\n';
            return 0;
        }
        if (netlist->parsed()) {
            std::vector<std::string> all_sets = sets;
            all_sets.push_back("mode=" + netlist_mode);
            const ionx::RunConfig cfg = build_config("", config_path, all_sets);
            const ionx::CompartmentGrid g = cfg.make_grid();
            const ionx::StateVector eq = ionx::solve_equilibrium(cfg.system, g, cfg.solver);
            const ionx::Netlist nl =
                ionx::export_netlist(cfg.system, g, eq, cfg.drive_mode());
            ionx::write_file(out_path, ionx::netlist_to_text(nl));
            std::cout << out_path << '\n';
            return 0;
        }
        if (grid->parsed()) {
            const ionx::RunConfig cfg = build_config("", config_path, sets);
            const ionx::CompartmentGrid g = cfg.make_grid();
            std::ostringstream os;
            g.write_csv(os);
            if (out_path.empty()) {
                if (!dump) {
                    std::cout << "N=" << g.size() << " width=" << g.total_width()
                              << " membrane=[" << g.face_position(g.membrane_begin()) << ", "
                              << g.face_position(g.membrane_end()) << "]\n";
                } else {
                    std::cout << os.str();
                }
            } else {
                ionx::write_file(out_path, os.str());
                std::cout << out_path << '\n';
            }
            return 0;
        }
    } catch (const ionx::ConvergenceError& e) {
        std::cerr << "solver failure: " << e.what() << " (residual " << e.residual_norm()
                  << " at tau " << e.tau() << ")\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
