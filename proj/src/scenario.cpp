#include "ionx/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <future>
#include <sstream>
#include <stdexcept>

#include "ionx/channel.hpp"
#include "ionx/csv.hpp"
#include "ionx/format.hpp"
#include "ionx/noise.hpp"
#include "ionx/solver.hpp"

namespace ionx {

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "equilibrium", "fig3", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "custom"};
    return names;
}

ConfigMap scenario_preset(const std::string& name) {
    ConfigMap m;
    if (name == "equilibrium" || name == "custom") return m;
    if (name == "fig3") {
        m["drive"] = "step(5)";
        m["tau_end"] = "60";
        m["snapshots"] = "1,60";
        return m;
    }
    if (name == "fig5") {
        m["drive"] = "step(5)";
        m["sweep.vsig"] = "1,3,5,7";
        m["tau_end"] = "100";
        return m;
    }
    if (name == "fig6") {
        m["drive"] = "square(5, 40, 0.5)";
        m["tau_end"] = "100";
        return m;
    }
    if (name == "fig7") {
        m["drive"] = "square(5, 40, 0.5)";
        m["sweep.vsig"] = "3,5,7,9";
        m["tau_end"] = "100";
        return m;
    }
    if (name == "fig8" || name == "fig9") {
        m["drive"] = "step(5)";
        m["sweep.vsig"] = "1,3,5,7";
        return m;
    }
    if (name == "fig10") {
        m["drive"] = "step(5)";
        m["sweep.vsig"] = "1,2,3,4,5,6,7,8,9";
        return m;
    }
    std::ostringstream os;
    os << "unknown scenario '" << name << "'; valid names:";
    for (const auto& s : scenario_names()) os << ' ' << s;
    throw std::invalid_argument(os.str());
}

std::vector<double> uniform_times(double dt, double tau_end) {
    if (!(dt > 0.0) || !(tau_end > 0.0)) {
        throw std::invalid_argument("sampling needs positive dt and tau_end");
    }
    const std::size_t n = static_cast<std::size_t>(std::llround(tau_end / dt));
    std::vector<double> times(n + 1);
    for (std::size_t j = 0; j <= n; ++j) times[j] = static_cast<double>(j) * dt;
    times.back() = tau_end;
    return times;
}

namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& file) {
    return (fs::path(dir) / file).string();
}

void write_out(ScenarioResult& result, const std::string& dir, const std::string& file,
               const std::string& contents) {
    const std::string path = join(dir, file);
    write_file(path, contents);
    result.files.push_back(path);
}

void write_manifest(ScenarioResult& result, const std::string& name, const RunConfig& cfg,
                    const std::string& dir) {
    ConfigMap m = cfg.to_map();
    m["scenario"] = name;
    write_out(result, dir, "manifest.cfg", render_config(m));
}

SolveSettings series_settings(const RunConfig& cfg) {
    SolveSettings st = cfg.solver;
    st.output_times = uniform_times(cfg.output_dt, cfg.tau_end);
    st.snapshot_times = cfg.snapshot_times;
    return st;
}

std::string snapshot_to_string(const RunConfig& cfg, const CompartmentGrid& g,
                               const StateVector& st) {
    std::ostringstream os;
    write_snapshot_csv(os, cfg.system, g, st);
    return os.str();
}

std::string tag_for(double v) {
    std::string t = format_double(v);
    for (char& ch : t) {
        if (ch == '.') ch = 'p';
        if (ch == '-') ch = 'm';
    }
    return t;
}

/// Transient sweep over V_sig; returns one SimulationResult per amplitude.
std::vector<SimulationResult> sweep_transients(const RunConfig& cfg) {
    const auto& sweep = cfg.vsig_sweep;
    if (sweep.empty()) throw std::invalid_argument("this scenario needs sweep.vsig values");
    std::vector<std::future<SimulationResult>> jobs;
    for (double v : sweep) {
        jobs.push_back(std::async(std::launch::async, [&cfg, v] {
            const CompartmentGrid grid = cfg.make_grid();
            return simulate(cfg.system, grid, cfg.drive_mode_with_amplitude(v), cfg.tau_end,
                            series_settings(cfg));
        }));
    }
    std::vector<SimulationResult> results;
    results.reserve(jobs.size());
    for (auto& j : jobs) results.push_back(j.get());
    return results;
}

struct SteadyPoint {
    double vsig = 0.0;
    double flux = 0.0;
    double c_mid = 0.0;
    StateVector state;
};

/// Driven steady states for a V_sig sweep (step drive).
std::vector<SteadyPoint> sweep_steady(const RunConfig& cfg) {
    const auto& sweep = cfg.vsig_sweep;
    if (sweep.empty()) throw std::invalid_argument("this scenario needs sweep.vsig values");
    std::vector<std::future<SteadyPoint>> jobs;
    for (double v : sweep) {
        jobs.push_back(std::async(std::launch::async, [&cfg, v] {
            const CompartmentGrid grid = cfg.make_grid();
            const StateVector eq = solve_equilibrium(cfg.system, grid, cfg.solver);
            const DriveMode drive = cfg.drive_mode_with_amplitude(v);
            const StateVector steady =
                solve_steady(cfg.system, grid, drive, 1.0, eq, cfg.solver);
            SteadyPoint p;
            p.vsig = v;
            p.flux = membrane_exit_flux(cfg.system, grid, steady);
            p.c_mid = steady.c(0, grid.mid_membrane_compartment());
            p.state = steady;
            return p;
        }));
    }
    std::vector<SteadyPoint> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

std::vector<double> omega_grid_for(const RunConfig& cfg, const MembraneRC& rc) {
    const double wmin = cfg.omega_min > 0.0 ? cfg.omega_min : 1e-3 / rc.time_constant;
    const double wmax = cfg.omega_max > 0.0 ? cfg.omega_max : 1e3 / rc.time_constant;
    return log_omega_grid(wmin, wmax, cfg.omega_points);
}

NoiseChainResult noise_chain_for(const RunConfig& cfg, const CompartmentGrid& grid,
                                 const StateVector& eq, const SteadyPoint& p) {
    MembraneRC rc = membrane_rc(cfg.system, grid, eq, cfg.basis(), cfg.noise.v0_override);
    return noise_chain(cfg.system, cfg.basis(), grid, eq, p.flux, p.c_mid,
                       omega_grid_for(cfg, rc), cfg.noise);
}

ScenarioResult run_equilibrium(const RunConfig& cfg, const std::string& dir) {
    ScenarioResult result;
    const CompartmentGrid grid = cfg.make_grid();
    const StateVector eq = solve_equilibrium(cfg.system, grid, cfg.solver);
    write_out(result, dir, "profile_equilibrium.csv", snapshot_to_string(cfg, grid, eq));
    std::ostringstream gcsv;
    grid.write_csv(gcsv);
    write_out(result, dir, "grid.csv", gcsv.str());
    return result;
}

ScenarioResult run_fig3(const RunConfig& cfg, const std::string& dir) {
    ScenarioResult result;
    const CompartmentGrid grid = cfg.make_grid();
    SimulationResult sim = simulate(cfg.system, grid, cfg.drive_mode(), cfg.tau_end,
                                    series_settings(cfg));
    for (std::size_t j = 0; j < sim.snapshots.size(); ++j) {
        write_out(result, dir, "profile_tau_" + tag_for(sim.snapshots[j].tau) + ".csv",
                  snapshot_to_string(cfg, grid, sim.snapshots[j]));
    }
    const StateVector last = sim.snapshots.empty() ? solve_equilibrium(cfg.system, grid)
                                                   : sim.snapshots.back();
    const StateVector steady =
        solve_steady(cfg.system, grid, cfg.drive_mode(), 1.0, last, cfg.solver);
    write_out(result, dir, "profile_steady.csv", snapshot_to_string(cfg, grid, steady));
    std::ostringstream os;
    write_series_csv(os, sim.flux, sim.current);
    write_out(result, dir, "series.csv", os.str());
    return result;
}

ScenarioResult run_fig5(const RunConfig& cfg, const std::string& dir) {
    ScenarioResult result;
    const auto sims = sweep_transients(cfg);
    std::vector<std::string> header = {"tau"};
    std::vector<std::vector<double>> columns = {sims.front().flux.taus};
    for (std::size_t j = 0; j < sims.size(); ++j) {
        header.push_back("J_vsig_" + tag_for(cfg.vsig_sweep[j]));
        columns.push_back(sims[j].flux.values);
        std::ostringstream os;
        write_series_csv(os, sims[j].flux, sims[j].current);
        write_out(result, dir, "series_vsig_" + tag_for(cfg.vsig_sweep[j]) + ".csv", os.str());
    }
    std::ostringstream os;
    write_csv_table(os, {}, header, columns);
    write_out(result, dir, "fig5_flux.csv", os.str());
    return result;
}

ScenarioResult run_fig6(const RunConfig& cfg, const std::string& dir) {
    ScenarioResult result;
    const CompartmentGrid grid = cfg.make_grid();
    SimulationResult sim = simulate(cfg.system, grid, cfg.drive_mode(), cfg.tau_end,
                                    series_settings(cfg));
    std::vector<double> drive_values;
    for (double t : sim.flux.taus) drive_values.push_back(cfg.drive.eval(t));
    std::ostringstream os;
    write_csv_table(os, {}, {"tau", "V_sig", "J_exit", "I_total"},
                    {sim.flux.taus, drive_values, sim.flux.values, sim.current.values});
    write_out(result, dir, "fig6_square.csv", os.str());
    return result;
}

ScenarioResult run_fig7(const RunConfig& cfg, const std::string& dir) {
    ScenarioResult result;
    const auto sims = sweep_transients(cfg);
    std::vector<std::string> header = {"tau"};
    std::vector<std::vector<double>> columns;
    for (std::size_t j = 0; j < sims.size(); ++j) {
        const ConcentrationSeries wave = line_source_waveform(sims[j].flux, cfg.channel);
        if (j == 0) columns.push_back(wave.taus);
        header.push_back("C_vsig_" + tag_for(cfg.vsig_sweep[j]));
        columns.push_back(wave.values);
        std::ostringstream os;
        write_waveform_csv(os, wave);
        write_out(result, dir, "waveform_vsig_" + tag_for(cfg.vsig_sweep[j]) + ".csv", os.str());
    }
    std::ostringstream os;
    write_csv_table(os, {}, header, columns);
    write_out(result, dir, "fig7_concentration.csv", os.str());
    return result;
}

ScenarioResult run_fig8(const RunConfig& cfg, const std::string& dir, bool snr_summary) {
    ScenarioResult result;
    const CompartmentGrid grid = cfg.make_grid();
    const StateVector eq = solve_equilibrium(cfg.system, grid, cfg.solver);
    const auto points = sweep_steady(cfg);

    std::vector<std::string> snr_header = {"omega"};
    std::vector<std::vector<double>> snr_columns;
    for (std::size_t j = 0; j < points.size(); ++j) {
        const NoiseChainResult chain = noise_chain_for(cfg, grid, eq, points[j]);
        std::ostringstream os;
        write_spectrum_csv(os, chain);
        write_out(result, dir, "spectrum_vsig_" + tag_for(points[j].vsig) + ".csv", os.str());
        if (snr_summary) {
            if (j == 0) snr_columns.push_back(chain.snr.omegas);
            snr_header.push_back("SNR_vsig_" + tag_for(points[j].vsig));
            snr_columns.push_back(chain.snr.psd);
        }
    }
    if (snr_summary) {
        std::ostringstream os;
        write_csv_table(os, {}, snr_header, snr_columns);
        write_out(result, dir, "fig9_snr.csv", os.str());
    }
    return result;
}

ScenarioResult run_fig10(const RunConfig& cfg, const std::string& dir) {
    ScenarioResult result;
    const CompartmentGrid grid = cfg.make_grid();
    const StateVector eq = solve_equilibrium(cfg.system, grid, cfg.solver);
    const auto points = sweep_steady(cfg);
    std::vector<double> vsig, snr_dc, snr_db;
    for (const auto& p : points) {
        MembraneRC rc = membrane_rc(cfg.system, grid, eq, cfg.basis(), cfg.noise.v0_override);
        const NoiseChainResult chain = noise_chain(cfg.system, cfg.basis(), grid, eq, p.flux,
                                                   p.c_mid, {1e-12 / rc.time_constant},
                                                   cfg.noise);
        // The Lorentzian is flat to ~1e-24 at this omega; report it as DC.
        vsig.push_back(p.vsig);
        snr_dc.push_back(chain.snr.psd.front());
        snr_db.push_back(10.0 * std::log10(chain.snr.psd.front()));
    }
    std::ostringstream os;
    write_csv_table(os, {}, {"v_sig", "snr_dc", "snr_dc_db"}, {vsig, snr_dc, snr_db});
    write_out(result, dir, "fig10_snr_vs_vsig.csv", os.str());
    return result;
}

ScenarioResult run_custom(const RunConfig& cfg, const std::string& dir) {
    ScenarioResult result;
    const CompartmentGrid grid = cfg.make_grid();
    SimulationResult sim = simulate(cfg.system, grid, cfg.drive_mode(), cfg.tau_end,
                                    series_settings(cfg));
    std::ostringstream os;
    write_series_csv(os, sim.flux, sim.current);
    write_out(result, dir, "series.csv", os.str());
    for (const auto& snap : sim.snapshots) {
        write_out(result, dir, "profile_tau_" + tag_for(snap.tau) + ".csv",
                  snapshot_to_string(cfg, grid, snap));
    }
    return result;
}

}  // namespace

ScenarioResult run_scenario(const std::string& name, const RunConfig& cfg,
                            const std::string& out_dir) {
    scenario_preset(name);  // validates the name
    fs::create_directories(out_dir);

    ScenarioResult result;
    if (name == "equilibrium") result = run_equilibrium(cfg, out_dir);
    else if (name == "fig3") result = run_fig3(cfg, out_dir);
    else if (name == "fig5") result = run_fig5(cfg, out_dir);
    else if (name == "fig6") result = run_fig6(cfg, out_dir);
    else if (name == "fig7") result = run_fig7(cfg, out_dir);
    else if (name == "fig8") result = run_fig8(cfg, out_dir, false);
    else if (name == "fig9") result = run_fig8(cfg, out_dir, true);
    else if (name == "fig10") result = run_fig10(cfg, out_dir);
    else result = run_custom(cfg, out_dir);

    write_manifest(result, name, cfg, out_dir);
    return result;
}

}  // namespace ionx
