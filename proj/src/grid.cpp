#include "ionx/grid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ionx/faces.hpp"
#include "ionx/state.hpp"

namespace ionx {

const char* region_name(Region r) {
    switch (r) {
        case Region::SolutionLeft: return "SolutionLeft";
        case Region::Membrane: return "Membrane";
        case Region::SolutionRight: return "SolutionRight";
    }
    return "?";
}

CompartmentGrid::CompartmentGrid(std::vector<double> widths, std::vector<Region> regions)
    : widths_(std::move(widths)), regions_(std::move(regions)) {
    if (widths_.empty() || widths_.size() != regions_.size()) {
        throw std::invalid_argument("grid needs matching, non-empty widths and regions");
    }
    for (double w : widths_) {
        if (!(w > 0.0)) throw std::invalid_argument("compartment widths must be positive");
    }
    // Regions must be the contiguous blocks SolutionLeft | Membrane | SolutionRight.
    std::size_t k = 0;
    while (k < regions_.size() && regions_[k] == Region::SolutionLeft) ++k;
    membrane_begin_ = k;
    while (k < regions_.size() && regions_[k] == Region::Membrane) ++k;
    membrane_end_ = k;
    while (k < regions_.size() && regions_[k] == Region::SolutionRight) ++k;
    if (k != regions_.size() || membrane_begin_ == membrane_end_) {
        throw std::invalid_argument("regions must form solution | membrane | solution blocks");
    }

    // Place xi = 0 on the left membrane boundary.
    double left_solution_width = 0.0;
    for (std::size_t j = 0; j < membrane_begin_; ++j) left_solution_width += widths_[j];
    centers_.resize(widths_.size());
    double edge = -left_solution_width;
    for (std::size_t j = 0; j < widths_.size(); ++j) {
        centers_[j] = edge + 0.5 * widths_[j];
        edge += widths_[j];
    }
}

double CompartmentGrid::face_position(std::size_t f) const {
    if (f > size()) throw std::out_of_range("face index out of range");
    if (f == size()) return centers_.back() + 0.5 * widths_.back();
    return centers_[f] - 0.5 * widths_[f];
}

std::size_t CompartmentGrid::mid_membrane_compartment() const {
    const double mid = 0.5 * (face_position(membrane_begin_) + face_position(membrane_end_));
    std::size_t best = membrane_begin_;
    double best_dist = std::abs(centers_[best] - mid);
    for (std::size_t k = membrane_begin_; k < membrane_end_; ++k) {
        const double d = std::abs(centers_[k] - mid);
        if (d < best_dist) {
            best = k;
            best_dist = d;
        }
    }
    return best;
}

double CompartmentGrid::membrane_width() const {
    return face_position(membrane_end_) - face_position(membrane_begin_);
}

double CompartmentGrid::theta(std::size_t k, const DimensionlessSystem& s) const {
    return regions_[k] == Region::Membrane ? s.fixed_charge : 0.0;
}

double CompartmentGrid::diffusion(std::size_t i, std::size_t k,
                                  const DimensionlessSystem& s) const {
    return regions_[k] == Region::Membrane ? s.diff_membrane[i] : s.diff_solution[i];
}

void CompartmentGrid::write_csv(std::ostream& out) const {
    out << "k,xi_k,delta_k,region\n";
    for (std::size_t k = 0; k < size(); ++k) {
        out << (k + 1) << ',' << centers_[k] << ',' << widths_[k] << ','
            << region_name(regions_[k]) << '\n';
    }
}

namespace {

void append_block(std::vector<double>& widths, std::vector<Region>& regions,
                  std::size_t count, double width, Region region) {
    widths.insert(widths.end(), count, width);
    regions.insert(regions.end(), count, region);
}

}  // namespace

CompartmentGrid build_paper_grid() {
    std::vector<double> widths;
    std::vector<Region> regions;
    widths.reserve(480);
    regions.reserve(480);
    // k = 1..30: 3        (bath)
    // k = 31..40: 0.6     (transition)
    // k = 41..200: 0.05   (fine zone, interface at its midpoint k=120|121)
    // k = 201..210: 0.6
    // k = 211..270: 1.5   (membrane core)
    // k = 271..280: 0.6
    // k = 281..440: 0.05  (fine zone, interface at its midpoint k=360|361)
    // k = 441..450: 0.6
    // k = 451..480: 3
    append_block(widths, regions, 30, 3.0, Region::SolutionLeft);
    append_block(widths, regions, 10, 0.6, Region::SolutionLeft);
    append_block(widths, regions, 80, 0.05, Region::SolutionLeft);
    append_block(widths, regions, 80, 0.05, Region::Membrane);
    append_block(widths, regions, 10, 0.6, Region::Membrane);
    append_block(widths, regions, 60, 1.5, Region::Membrane);
    append_block(widths, regions, 10, 0.6, Region::Membrane);
    append_block(widths, regions, 80, 0.05, Region::Membrane);
    append_block(widths, regions, 80, 0.05, Region::SolutionRight);
    append_block(widths, regions, 10, 0.6, Region::SolutionRight);
    append_block(widths, regions, 30, 3.0, Region::SolutionRight);
    return CompartmentGrid(std::move(widths), std::move(regions));
}

CompartmentGrid build_scaled_grid(double membrane_thickness, double bath_width,
                                  const GridCounts& counts) {
    if (!(membrane_thickness > 0.0) || !(bath_width > 0.0)) {
        throw std::invalid_argument("grid geometry must be positive");
    }
    if (counts.bulk == 0 || counts.medium == 0 || counts.fine == 0 || counts.core == 0) {
        throw std::invalid_argument("grid counts must be positive");
    }
    // Keep the paper's fine/medium interface bands (4 and 6 lambda) and absorb
    // the remaining length into the bulk / core blocks.
    const double fine_band = 4.0;
    const double medium_band = 6.0;
    const double bulk_width = bath_width - medium_band - fine_band;
    const double core_width = membrane_thickness - 2.0 * (fine_band + medium_band);
    if (!(bulk_width > 0.0) || !(core_width > 0.0)) {
        throw std::invalid_argument("geometry too small for the interface band structure");
    }
    const double w_bulk = bulk_width / static_cast<double>(counts.bulk);
    const double w_medium = medium_band / static_cast<double>(counts.medium);
    const double w_fine = fine_band / static_cast<double>(counts.fine);
    const double w_core = core_width / static_cast<double>(counts.core);

    std::vector<double> widths;
    std::vector<Region> regions;
    append_block(widths, regions, counts.bulk, w_bulk, Region::SolutionLeft);
    append_block(widths, regions, counts.medium, w_medium, Region::SolutionLeft);
    append_block(widths, regions, counts.fine, w_fine, Region::SolutionLeft);
    append_block(widths, regions, counts.fine, w_fine, Region::Membrane);
    append_block(widths, regions, counts.medium, w_medium, Region::Membrane);
    append_block(widths, regions, counts.core, w_core, Region::Membrane);
    append_block(widths, regions, counts.medium, w_medium, Region::Membrane);
    append_block(widths, regions, counts.fine, w_fine, Region::Membrane);
    append_block(widths, regions, counts.fine, w_fine, Region::SolutionRight);
    append_block(widths, regions, counts.medium, w_medium, Region::SolutionRight);
    append_block(widths, regions, counts.bulk, w_bulk, Region::SolutionRight);
    return CompartmentGrid(std::move(widths), std::move(regions));
}

CompartmentGrid build_uniform_grid(std::size_t n_solution, std::size_t n_membrane,
                                   double width) {
    std::vector<double> widths;
    std::vector<Region> regions;
    append_block(widths, regions, n_solution, width, Region::SolutionLeft);
    append_block(widths, regions, n_membrane, width, Region::Membrane);
    append_block(widths, regions, n_solution, width, Region::SolutionRight);
    return CompartmentGrid(std::move(widths), std::move(regions));
}

double theta_at(const DimensionlessSystem& s, double xi) {
    if (xi < -s.bath_width || xi > s.membrane_thickness + s.bath_width) {
        throw std::out_of_range("position outside [-delta, d+delta]");
    }
    return (xi >= 0.0 && xi <= s.membrane_thickness) ? s.fixed_charge : 0.0;
}

NetworkElements network_elements(const CompartmentGrid& g, const DimensionlessSystem& s,
                                 const StateVector& state) {
    if (state.size() != g.size()) {
        throw std::invalid_argument("state dimensions do not match grid");
    }
    const std::size_t n = g.size();
    NetworkElements e;
    e.capacitance.resize(n);
    e.medium_resistance.resize(n);
    e.stored_charge_source.resize(n);
    for (std::size_t i = 0; i < kNumSpecies; ++i) {
        e.diffusion_resistance.emplace_back(n);
        e.migration_source.emplace_back(n);
    }

    std::vector<FaceEval> faces(n + 1);
    for (std::size_t f = 0; f <= n; ++f) faces[f] = eval_face(g, s, state, f);

    for (std::size_t k = 0; k < n; ++k) {
        const double dk = g.width(k);
        e.capacitance[k] = dk;
        e.medium_resistance[k] = dk / (2.0 * s.permittivity);
        double rho = -g.theta(k, s);
        for (std::size_t i = 0; i < kNumSpecies; ++i) {
            rho += s.valences[i] * state.c(i, k);
        }
        e.stored_charge_source[k] = -dk * rho;
        for (std::size_t i = 0; i < kNumSpecies; ++i) {
            const double dip = g.diffusion(i, k, s);
            e.diffusion_resistance[i][k] = dk / (2.0 * dip);
            const double zi = s.valences[i];
            const double half = 0.5 * dk;
            // GJ_eik(-): flux entering through the left half; GJ_eik(+): leaving
            // through the right half.
            e.migration_source[i][k][0] =
                -dip * zi * faces[k].species[i].conc *
                (state.phi(k) - faces[k].phi) / half;
            e.migration_source[i][k][1] =
                dip * zi * faces[k + 1].species[i].conc *
                (state.phi(k) - faces[k + 1].phi) / half;
        }
    }
    return e;
}

}  // namespace ionx
