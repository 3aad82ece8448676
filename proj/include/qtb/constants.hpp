#ifndef QTB_CONSTANTS_HPP
#define QTB_CONSTANTS_HPP

#include <cmath>

// Unit system used throughout: energies in eV, lengths in nm, times in fs.
// Masses are expressed as multiples of the free electron mass.

namespace qtb::constants {

inline constexpr double hbar2_over_2me = 0.0380998;     // eV nm^2
inline constexpr double hbar_ev_fs     = 0.6582120;     // eV fs
inline constexpr double boltzmann_ev_k = 8.617333262e-5; // eV / K
inline constexpr double elementary_charge_c = 1.602176634e-19; // C

// free electron mass in eV fs^2 / nm^2, consistent with the two values above
inline constexpr double electron_mass =
    hbar_ev_fs * hbar_ev_fs / (2.0 * hbar2_over_2me);

} // namespace qtb::constants

namespace qtb {

struct PhysicalConstants {
    double hbar2_over_2me = constants::hbar2_over_2me; // eV nm^2
    double hbar_ev_fs     = constants::hbar_ev_fs;     // eV fs
};

/// k = sqrt(2mE)/hbar in nm^-1 for E in eV and mass m = mass_factor * m_e.
inline double wavenumber(double energy_ev, double mass_factor) {
    return std::sqrt(mass_factor * energy_ev / constants::hbar2_over_2me);
}

/// kappa = sqrt(2m(V-E))/hbar in nm^-1, valid for E < V.
inline double decay_constant(double v_ev, double energy_ev, double mass_factor) {
    return std::sqrt(mass_factor * (v_ev - energy_ev) / constants::hbar2_over_2me);
}

/// 2m/hbar^2 in 1/(eV nm^2); the coefficient of (V-E) psi in the ODE.
inline double two_m_over_hbar2(double mass_factor) {
    return mass_factor / constants::hbar2_over_2me;
}

/// classical velocity sqrt(2mE)/m in nm/fs
inline double velocity(double energy_ev, double mass_factor) {
    return constants::hbar_ev_fs * wavenumber(energy_ev, mass_factor) /
           (mass_factor * constants::electron_mass);
}

} // namespace qtb

#endif
