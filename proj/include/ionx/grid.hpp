#pragma once

/**
 * @file grid.hpp
 * @brief Nonuniform compartment grid with region labels, the fixed-charge
 *        profile, and the circuit-network element values derived from it.
 *
 * The transport domain is split into N compartments of width delta_k. Each
 * compartment carries a region label; the membrane block sits between the two
 * solution blocks and the fixed-charge / diffusion-coefficient switches are
 * aligned to compartment boundaries. Positions are measured in Debye lengths
 * with xi = 0 at the left membrane boundary.
 */

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ionx/dimensionless.hpp"

namespace ionx {

enum class Region { SolutionLeft, Membrane, SolutionRight };

const char* region_name(Region r);

class CompartmentGrid {
  public:
    /// widths and regions must be the same length; regions must form three
    /// contiguous blocks (left solution, membrane, right solution).
    CompartmentGrid(std::vector<double> widths, std::vector<Region> regions);

    std::size_t size() const { return widths_.size(); }
    double width(std::size_t k) const { return widths_[k]; }
    double center(std::size_t k) const { return centers_[k]; }
    Region region(std::size_t k) const { return regions_[k]; }
    const std::vector<double>& widths() const { return widths_; }
    const std::vector<double>& centers() const { return centers_; }
    const std::vector<Region>& regions() const { return regions_; }

    /// Position of face f (f = 0..N); face 0 is the left domain edge.
    double face_position(std::size_t f) const;
    double left_edge() const { return face_position(0); }
    double right_edge() const { return face_position(size()); }
    double total_width() const { return right_edge() - left_edge(); }

    /// Index of the first membrane compartment and one past the last.
    std::size_t membrane_begin() const { return membrane_begin_; }
    std::size_t membrane_end() const { return membrane_end_; }

    /// Face index of the membrane / right-solution boundary (the transmitter
    /// exit face at xi = d_grid).
    std::size_t membrane_exit_face() const { return membrane_end_; }

    /// Compartment whose center is closest to the membrane midpoint.
    std::size_t mid_membrane_compartment() const;

    /// Membrane thickness implied by the region labels (in lambda).
    double membrane_width() const;

    /// Fixed charge of compartment k (X in the membrane, 0 in solution).
    double theta(std::size_t k, const DimensionlessSystem& s) const;

    /// Diffusion coefficient of species i in compartment k.
    double diffusion(std::size_t i, std::size_t k, const DimensionlessSystem& s) const;

    /// CSV dump, columns: k, xi_k, delta_k, region (k is 1-based).
    void write_csv(std::ostream& out) const;

  private:
    std::vector<double> widths_;
    std::vector<double> centers_;
    std::vector<Region> regions_;
    std::size_t membrane_begin_ = 0;
    std::size_t membrane_end_ = 0;
};

/// The verbatim 480-compartment grid with the four width classes
/// 3 / 0.6 / 0.05 / 1.5. The bath blocks are exactly 100 lambda each; the
/// membrane block spans the inner 110 lambda, so each interface sits in the
/// middle of a fine 0.05-width zone with 4 lambda of fine grid per phase.
/// Note the implied membrane thickness (110) differs from the nominal d=50;
/// see build_scaled_grid for a grid that matches the nominal geometry.
CompartmentGrid build_paper_grid();

/// Compartment counts per width class, mirrored around the membrane core.
struct GridCounts {
    std::size_t bulk = 30;    // coarse bath block
    std::size_t medium = 10;  // transition zone
    std::size_t fine = 80;    // per side of each interface
    std::size_t core = 20;    // membrane core block
};

/// Grid with the same width-class structure rescaled so the bath width and
/// membrane thickness match the requested geometry exactly. The fine zones
/// straddle the interfaces (counts.fine compartments on each side).
CompartmentGrid build_scaled_grid(double membrane_thickness, double bath_width,
                                  const GridCounts& counts = {});

/// Uniform three-block grid (testing helper).
CompartmentGrid build_uniform_grid(std::size_t n_solution, std::size_t n_membrane,
                                   double width);

/// Fixed-charge profile of the system: X for 0 <= xi <= d, 0 elsewhere in
/// [-delta, d+delta]. Throws std::out_of_range outside the domain.
double theta_at(const DimensionlessSystem& s, double xi);

/// Element values of the network model evaluated at a state.
struct NetworkElements {
    // [species][compartment]
    std::vector<std::vector<double>> diffusion_resistance;  // R_dik = delta_k/(2 D_ip)
    std::vector<double> capacitance;                        // C_dk = delta_k
    std::vector<double> medium_resistance;                  // R_pk = delta_k/(2 eps)
    std::vector<double> stored_charge_source;               // GJ_pk
    // [species][compartment][0=minus face, 1=plus face]
    std::vector<std::vector<std::array<double, 2>>> migration_source;  // GJ_eik(+/-)
};

class StateVector;  // defined in state.hpp

NetworkElements network_elements(const CompartmentGrid& g, const DimensionlessSystem& s,
                                 const StateVector& state);

}  // namespace ionx
