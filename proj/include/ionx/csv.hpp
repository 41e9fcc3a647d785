#pragma once

/**
 * @file csv.hpp
 * @brief CSV emission with byte-stable formatting: every float is written in
 *        its shortest round-trip decimal form, no timestamps in data files.
 */

#include <iosfwd>
#include <string>
#include <vector>

#include "ionx/dimensionless.hpp"
#include "ionx/grid.hpp"
#include "ionx/noise.hpp"
#include "ionx/series.hpp"
#include "ionx/state.hpp"

namespace ionx {

/// Generic table: header row plus shortest-round-trip numeric columns.
/// Optional comment lines (already including their leading '#') go first.
void write_csv_table(std::ostream& out, const std::vector<std::string>& comments,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns);

/// Snapshot CSV, columns: xi, c1, c2, phi, rho.
void write_snapshot_csv(std::ostream& out, const DimensionlessSystem& s,
                        const CompartmentGrid& g, const StateVector& state);

/// Series CSV, columns: tau, J_exit, I_total.
void write_series_csv(std::ostream& out, const FluxSeries& flux, const CurrentSeries& current);

/// Spectrum CSV, columns: omega, S_thermal, S_shot, S_J_total, SNR, SNR_dB.
/// The DC impulse weight is emitted as a header comment line.
void write_spectrum_csv(std::ostream& out, const NoiseChainResult& chain);

/// Waveform CSV, columns: tau, concentration.
void write_waveform_csv(std::ostream& out, const ConcentrationSeries& series);

void write_file(const std::string& path, const std::string& contents);

}  // namespace ionx
