#pragma once

namespace ionx::constants {

// Physical constants (SI units). Single source of truth for the whole library.
inline constexpr double faraday = 96485.33212;      // C/mol
inline constexpr double gas_constant = 8.31446;     // J/(mol*K)
inline constexpr double boltzmann = 1.380649e-23;   // J/K
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

}  // namespace ionx::constants
