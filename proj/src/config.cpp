#include "ionx/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ionx/constants.hpp"
#include "ionx/format.hpp"

namespace ionx {

namespace {

std::string strip(const std::string& text) {
    const std::size_t b = text.find_first_not_of(" \t\r");
    const std::size_t e = text.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return text.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for " + key + ": " + value);
    }
}

std::size_t to_count(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw std::invalid_argument("expected a non-negative integer for " + key);
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    if (strip(value).empty()) return out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, strip(item)));
    return out;
}

std::string render_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (j) out += ",";
        out += format_double(values[j]);
    }
    return out;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap map;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not key=value: " + line);
        }
        map[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return map;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

ScalingBasis RunConfig::basis() const {
    ScalingBasis b;
    b.diffusion = basis_diffusion;
    b.concentration = basis_concentration;
    b.temperature = basis_temperature;
    const double eps = basis_epsilon_r * constants::vacuum_permittivity;
    b.length = std::sqrt(eps * constants::gas_constant * basis_temperature /
                         (constants::faraday * constants::faraday * basis_concentration));
    return b;
}

CompartmentGrid RunConfig::make_grid() const {
    if (grid_kind == "paper") return build_paper_grid();
    if (grid_kind == "scaled") {
        return build_scaled_grid(system.membrane_thickness, system.bath_width, grid_counts);
    }
    if (grid_kind == "uniform") {
        return build_uniform_grid(uniform_solution, uniform_membrane, uniform_width);
    }
    throw std::invalid_argument("unknown grid.kind: " + grid_kind);
}

DriveMode RunConfig::drive_mode() const {
    if (mode == "potentiostatic") return DriveMode::potentiostatic(drive);
    if (mode == "galvanostatic") return DriveMode::galvanostatic(drive);
    throw std::invalid_argument("unknown mode: " + mode);
}

DriveMode RunConfig::drive_mode_with_amplitude(double amplitude) const {
    DriveSignal scaled = drive;
    if (const auto* st = std::get_if<StepSignal>(&drive.variant())) {
        (void)st;
        scaled = DriveSignal::step(amplitude);
    } else if (const auto* sq = std::get_if<SquareSignal>(&drive.variant())) {
        scaled = DriveSignal::square(amplitude, sq->period, sq->duty);
    } else {
        throw std::invalid_argument("sweep requires a step or square drive");
    }
    if (mode == "potentiostatic") return DriveMode::potentiostatic(scaled);
    return DriveMode::galvanostatic(scaled);
}

void RunConfig::apply(const ConfigMap& overrides) {
    for (const auto& [key, value] : overrides) {
        if (key == "system.X") system.fixed_charge = to_double(key, value);
        else if (key == "system.d") system.membrane_thickness = to_double(key, value);
        else if (key == "system.delta") system.bath_width = to_double(key, value);
        else if (key == "system.c0") system.bulk_concentration = to_double(key, value);
        else if (key == "system.epsilon") system.permittivity = to_double(key, value);
        else if (key == "system.D1S") system.diff_solution[0] = to_double(key, value);
        else if (key == "system.D2S") system.diff_solution[1] = to_double(key, value);
        else if (key == "system.D1M") system.diff_membrane[0] = to_double(key, value);
        else if (key == "system.D2M") system.diff_membrane[1] = to_double(key, value);
        else if (key == "basis.Da") basis_diffusion = to_double(key, value);
        else if (key == "basis.c_bulk") basis_concentration = to_double(key, value);
        else if (key == "basis.T") basis_temperature = to_double(key, value);
        else if (key == "basis.eps_r") basis_epsilon_r = to_double(key, value);
        else if (key == "grid.kind") grid_kind = value;
        else if (key == "grid.bulk") grid_counts.bulk = to_count(key, value);
        else if (key == "grid.medium") grid_counts.medium = to_count(key, value);
        else if (key == "grid.fine") grid_counts.fine = to_count(key, value);
        else if (key == "grid.core") grid_counts.core = to_count(key, value);
        else if (key == "grid.uniform_solution") uniform_solution = to_count(key, value);
        else if (key == "grid.uniform_membrane") uniform_membrane = to_count(key, value);
        else if (key == "grid.uniform_width") uniform_width = to_double(key, value);
        else if (key == "drive") drive = DriveSignal::parse(value);
        else if (key == "mode") mode = value;
        else if (key == "tau_end") tau_end = to_double(key, value);
        else if (key == "output.dt") output_dt = to_double(key, value);
        else if (key == "snapshots") snapshot_times = to_list(key, value);
        else if (key == "sweep.vsig") vsig_sweep = to_list(key, value);
        else if (key == "solver.newton_tol") solver.newton_tol = to_double(key, value);
        else if (key == "solver.max_newton_iters") solver.max_newton_iters = to_count(key, value);
        else if (key == "solver.dt_init") solver.dt_init = to_double(key, value);
        else if (key == "solver.dt_min") solver.dt_min = to_double(key, value);
        else if (key == "solver.dt_max") solver.dt_max = to_double(key, value);
        else if (key == "solver.adapt_factor") solver.adapt_factor = to_double(key, value);
        else if (key == "channel.D") channel.diffusion = to_double(key, value);
        else if (key == "channel.u") channel.flow_speed = to_double(key, value);
        else if (key == "channel.y_obs") channel.observation = to_double(key, value);
        else if (key == "channel.segments") {
            const auto positions = to_list(key, value);
            if (positions.empty()) throw std::invalid_argument("channel.segments needs positions");
            channel.segments.clear();
            for (double y : positions) {
                channel.segments.push_back({y, 1.0 / static_cast<double>(positions.size())});
            }
        }
        else if (key == "noise.delta_f") noise.bandwidth_hz = to_double(key, value);
        else if (key == "noise.thermal_model") {
            if (value == "paper") noise.thermal_model = ThermalModel::PaperForm;
            else if (value == "standard") noise.thermal_model = ThermalModel::Standard;
            else throw std::invalid_argument("noise.thermal_model must be paper or standard");
        }
        else if (key == "noise.v0") noise.v0_override = to_double(key, value);
        else if (key == "noise.eps_coeff") noise.dc_epsilon_coeff = to_double(key, value);
        else if (key == "noise.omega_min") omega_min = to_double(key, value);
        else if (key == "noise.omega_max") omega_max = to_double(key, value);
        else if (key == "noise.omega_points") omega_points = to_count(key, value);
        else if (key == "scenario") { /* recorded in manifests; not a parameter */ }
        else throw std::invalid_argument("unknown config key: " + key);
    }
}

ConfigMap RunConfig::to_map() const {
    ConfigMap m;
    m["system.X"] = format_double(system.fixed_charge);
    m["system.d"] = format_double(system.membrane_thickness);
    m["system.delta"] = format_double(system.bath_width);
    m["system.c0"] = format_double(system.bulk_concentration);
    m["system.epsilon"] = format_double(system.permittivity);
    m["system.D1S"] = format_double(system.diff_solution[0]);
    m["system.D2S"] = format_double(system.diff_solution[1]);
    m["system.D1M"] = format_double(system.diff_membrane[0]);
    m["system.D2M"] = format_double(system.diff_membrane[1]);
    m["basis.Da"] = format_double(basis_diffusion);
    m["basis.c_bulk"] = format_double(basis_concentration);
    m["basis.T"] = format_double(basis_temperature);
    m["basis.eps_r"] = format_double(basis_epsilon_r);
    m["grid.kind"] = grid_kind;
    m["grid.bulk"] = std::to_string(grid_counts.bulk);
    m["grid.medium"] = std::to_string(grid_counts.medium);
    m["grid.fine"] = std::to_string(grid_counts.fine);
    m["grid.core"] = std::to_string(grid_counts.core);
    m["grid.uniform_solution"] = std::to_string(uniform_solution);
    m["grid.uniform_membrane"] = std::to_string(uniform_membrane);
    m["grid.uniform_width"] = format_double(uniform_width);
    m["drive"] = drive.to_string();
    m["mode"] = mode;
    m["tau_end"] = format_double(tau_end);
    m["output.dt"] = format_double(output_dt);
    m["snapshots"] = render_list(snapshot_times);
    m["sweep.vsig"] = render_list(vsig_sweep);
    m["solver.newton_tol"] = format_double(solver.newton_tol);
    m["solver.max_newton_iters"] = std::to_string(solver.max_newton_iters);
    m["solver.dt_init"] = format_double(solver.dt_init);
    m["solver.dt_min"] = format_double(solver.dt_min);
    m["solver.dt_max"] = format_double(solver.dt_max);
    m["solver.adapt_factor"] = format_double(solver.adapt_factor);
    m["channel.D"] = format_double(channel.diffusion);
    m["channel.u"] = format_double(channel.flow_speed);
    m["channel.y_obs"] = format_double(channel.observation);
    std::vector<double> positions;
    for (const auto& seg : channel.segments) positions.push_back(seg.position);
    m["channel.segments"] = render_list(positions);
    m["noise.delta_f"] = format_double(noise.bandwidth_hz);
    m["noise.thermal_model"] =
        noise.thermal_model == ThermalModel::PaperForm ? "paper" : "standard";
    m["noise.v0"] = format_double(noise.v0_override);
    m["noise.eps_coeff"] = format_double(noise.dc_epsilon_coeff);
    m["noise.omega_min"] = format_double(omega_min);
    m["noise.omega_max"] = format_double(omega_max);
    m["noise.omega_points"] = std::to_string(omega_points);
    return m;
}

std::string render_config(const ConfigMap& map) {
    std::string out;
    for (const auto& [key, value] : map) {
        out += key;
        out += "=";
        out += value;
        out += "\n";
    }
    return out;
}

}  // namespace ionx
