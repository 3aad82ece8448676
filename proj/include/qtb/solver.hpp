#ifndef QTB_SOLVER_HPP
#define QTB_SOLVER_HPP

#include <complex>
#include <vector>

#include "qtb/potential.hpp"
#include "qtb/types.hpp"

namespace qtb {

/// State of the first-order system: psi and dpsi/dx.
struct WaveState {
    std::complex<double> psi;
    std::complex<double> dpsi; // nm^-1
};

struct SolverOptions {
    double h = 1e-4;               // nm, RK4 step
    double eps_tail = 1e-6;        // eV, tail cutoff when building potentials
    double max_flux_error = 1e-6;  // relative |A|^2 - |B|^2 - |C|^2 tolerance
};

struct Trajectory {
    std::vector<double> x;
    std::vector<WaveState> y;
};

/// Fixed-step RK4 integration of psi'' = (2m/hbar^2)(V - E) psi between
/// `from` and `to` (direction inferred from the sign, last step shortened to
/// land exactly on `to`). Rectangular edges are snapped onto step boundaries.
/// Throws errc::overflow once |psi| exceeds 1e30; transmission_numeric
/// rescales instead and never trips this.
Trajectory integrate_rk4(const Potential& p, double energy_ev, double from, double to,
                         WaveState y0, double h);

/// Transmission probability and transmitted phase by backward integration
/// from a pure outgoing wave at x_max, decomposed into incident/reflected
/// plane waves at x_min. Flux-conservation violations are flagged, not fatal.
TransmissionPoint transmission_numeric(const Potential& p, double energy_ev,
                                       const SolverOptions& opts = {});

/// Same decomposition data, exposed for flux and symmetry tests.
struct ScatteringAmplitudes {
    std::complex<double> a; // incident (scaled)
    std::complex<double> b; // reflected (scaled)
    double log_scale = 0.0; // ln of the factor divided out during integration
    double flux_error = 0.0;
};

ScatteringAmplitudes scattering_amplitudes(const Potential& p, double energy_ev,
                                           const SolverOptions& opts = {});

} // namespace qtb

#endif
