#pragma once

/**
 * @file netlist.hpp
 * @brief Text netlist export of the compartment network and a parser for the
 *        same dialect (round-trip safe).
 *
 * Dialect: one element per line, whitespace separated:
 *   R name node+ node- value
 *   C name node+ node- value
 *   V name node+ node- value
 *   I name node+ node- value
 *   F name node+ node- value
 *   G name out+ out- ctrl+ ctrl- gain [offset]
 * Comment lines start with '*'. Node names: compartment centers c1_k, c2_k,
 * phi_k (k = 1..N), faces c1b_f, c2b_f, phib_f (f = 0..N), ground 0, and the
 * boundary displacement node d_left. Controlled-source coefficients are
 * evaluated at the state passed to the exporter.
 */

#include <string>
#include <vector>

#include "ionx/dimensionless.hpp"
#include "ionx/grid.hpp"
#include "ionx/solver.hpp"
#include "ionx/state.hpp"

namespace ionx {

struct NetlistElement {
    char type = 'R';
    std::string name;
    std::vector<std::string> nodes;
    std::vector<double> params;
};

struct Netlist {
    std::vector<std::string> comments;
    std::vector<NetlistElement> elements;

    std::size_t count_type(char type) const;
};

/// Enumerate the network elements of the grid at the given (equilibrium)
/// state, plus the boundary subcircuit of the active drive mode.
Netlist export_netlist(const DimensionlessSystem& s, const CompartmentGrid& g,
                       const StateVector& eq, const DriveMode& mode);

std::string netlist_to_text(const Netlist& nl);
Netlist parse_netlist(const std::string& text);

}  // namespace ionx
