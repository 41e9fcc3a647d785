#include "ionx/csv.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "ionx/format.hpp"

namespace ionx {

void write_csv_table(std::ostream& out, const std::vector<std::string>& comments,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) {
        throw std::invalid_argument("csv header/column count mismatch");
    }
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns) {
        if (col.size() != rows) throw std::invalid_argument("csv columns must align");
    }
    for (const auto& c : comments) out << c << '\n';
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j) out << ',';
        out << header[j];
    }
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (j) out << ',';
            out << format_double(columns[j][r]);
        }
        out << '\n';
    }
}

void write_snapshot_csv(std::ostream& out, const DimensionlessSystem& s,
                        const CompartmentGrid& g, const StateVector& state) {
    std::vector<double> xi, c1, c2, phi, rho;
    for (std::size_t k = 0; k < g.size(); ++k) {
        xi.push_back(g.center(k));
        c1.push_back(state.c(0, k));
        c2.push_back(state.c(1, k));
        phi.push_back(state.phi(k));
        double r = -g.theta(k, s);
        for (std::size_t i = 0; i < kNumSpecies; ++i) r += s.valences[i] * state.c(i, k);
        rho.push_back(r);
    }
    write_csv_table(out, {}, {"xi", "c1", "c2", "phi", "rho"}, {xi, c1, c2, phi, rho});
}

void write_series_csv(std::ostream& out, const FluxSeries& flux, const CurrentSeries& current) {
    if (flux.taus != current.taus) {
        throw std::invalid_argument("flux/current series must share the time grid");
    }
    write_csv_table(out, {}, {"tau", "J_exit", "I_total"},
                    {flux.taus, flux.values, current.values});
}

void write_spectrum_csv(std::ostream& out, const NoiseChainResult& chain) {
    std::vector<double> snr_db(chain.snr.psd.size());
    for (std::size_t j = 0; j < snr_db.size(); ++j) {
        snr_db[j] = 10.0 * std::log10(chain.snr.psd[j]);
    }
    // Thermal and shot columns in flux-PSD units so S_J_total is their sum.
    std::vector<double> thermal_j(chain.thermal.psd.size());
    std::vector<double> shot_j(chain.shot.psd.size());
    for (std::size_t j = 0; j < thermal_j.size(); ++j) {
        thermal_j[j] = chain.transfer_factor2 * chain.thermal.psd[j];
        shot_j[j] = chain.transfer_factor2 * chain.shot.psd[j];
    }
    write_csv_table(
        out,
        {"# dc_impulse_weight=" + format_double(chain.flux_total.dc_impulse_weight)},
        {"omega", "S_thermal", "S_shot", "S_J_total", "SNR", "SNR_dB"},
        {chain.flux_total.omegas, thermal_j, shot_j, chain.flux_total.psd,
         chain.snr.psd, snr_db});
}

void write_waveform_csv(std::ostream& out, const ConcentrationSeries& series) {
    write_csv_table(out, {}, {"tau", "concentration"}, {series.taus, series.values});
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ionx
