#pragma once

/**
 * @file scenario.hpp
 * @brief Named figure-reproduction scenarios: each runs the pipeline with the
 *        reference parameters (plus overrides) and writes CSV outputs and a
 *        manifest recording every effective parameter.
 */

#include <string>
#include <vector>

#include "ionx/config.hpp"

namespace ionx {

/// Names accepted by run_scenario.
const std::vector<std::string>& scenario_names();

/// Preset overrides a scenario applies on top of the defaults (user overrides
/// are applied after these).
ConfigMap scenario_preset(const std::string& name);

struct ScenarioResult {
    std::vector<std::string> files;  // paths written, manifest included
};

/// Run scenario `name` with the given effective config, writing outputs under
/// out_dir. Throws std::invalid_argument for unknown names (the message lists
/// the valid ones) and propagates solver errors.
ScenarioResult run_scenario(const std::string& name, const RunConfig& cfg,
                            const std::string& out_dir);

/// Uniform sampling grid 0, dt, 2dt, ..., tau_end.
std::vector<double> uniform_times(double dt, double tau_end);

}  // namespace ionx
