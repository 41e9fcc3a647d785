#pragma once

/**
 * @file config.hpp
 * @brief Flat key=value run configuration with section prefixes
 *        (system.X=1, drive=step(5), ...), plus the manifest round-trip:
 *        every effective parameter serializes back out, and a config built
 *        from a manifest reproduces the run.
 */

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ionx/channel.hpp"
#include "ionx/dimensionless.hpp"
#include "ionx/drive.hpp"
#include "ionx/grid.hpp"
#include "ionx/noise.hpp"
#include "ionx/solver.hpp"

namespace ionx {

using ConfigMap = std::map<std::string, std::string>;

/// Parse key=value lines; '#' starts a comment, blank lines are skipped.
ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);

/// Everything a scenario run needs. Defaults are the reference system with
/// the verbatim grid and the noise-figure scaling basis.
struct RunConfig {
    DimensionlessSystem system = DimensionlessSystem::reference();

    // Scaling basis primitives (lambda follows from eps_r, T, c_bulk).
    double basis_diffusion = 2e-9;        // basis.Da, m^2/s
    double basis_concentration = 100.0;   // basis.c_bulk, mol/m^3
    double basis_temperature = 298.0;     // basis.T, K
    double basis_epsilon_r = 2.0;         // basis.eps_r (relative permittivity)

    std::string grid_kind = "paper";      // paper | scaled | uniform
    GridCounts grid_counts{};
    std::size_t uniform_solution = 8;     // grid.uniform_* (testing grids)
    std::size_t uniform_membrane = 8;
    double uniform_width = 1.25;

    DriveSignal drive = DriveSignal::step(5.0);
    std::string mode = "potentiostatic";  // potentiostatic | galvanostatic
    double tau_end = 100.0;
    double output_dt = 0.1;
    std::vector<double> snapshot_times;
    std::vector<double> vsig_sweep;       // sweep.vsig

    SolveSettings solver{};
    ChannelParams channel{};
    NoiseOptions noise{};
    double omega_min = 0.0;               // 0 = auto from theta
    double omega_max = 0.0;
    std::size_t omega_points = 241;

    ScalingBasis basis() const;
    CompartmentGrid make_grid() const;
    DriveMode drive_mode() const;
    DriveMode drive_mode_with_amplitude(double amplitude) const;

    /// Apply key=value overrides on top of this config; throws
    /// std::invalid_argument for unknown keys or malformed values.
    void apply(const ConfigMap& overrides);

    /// Every effective parameter, serialized (manifest contents).
    ConfigMap to_map() const;
};

/// Render a ConfigMap as config-file text (sorted keys, one per line).
std::string render_config(const ConfigMap& map);

}  // namespace ionx
