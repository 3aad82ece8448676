#ifndef QTB_TRANSPORT_HPP
#define QTB_TRANSPORT_HPP

#include <functional>
#include <vector>

#include "qtb/potential.hpp"
#include "qtb/solver.hpp"
#include "qtb/types.hpp"
#include "qtb/wkb.hpp"

namespace qtb {

struct MaterialPair {
    double chi1 = 0.0; // eV, electron affinity
    double chi2 = 0.0;
    double eg1 = 0.0; // eV, band gap
    double eg2 = 0.0;
};

struct BandOffsets {
    double dec = 0.0; // conduction band step
    double dev = 0.0; // valence band step
};

/// dEc = chi1 - chi2; dEv = Eg2 - Eg1 - dEc.
BandOffsets band_offsets(const MaterialPair& m);

struct DeviceConfig {
    double fermi_level = 0.1;  // eV, measured from the emitter band edge
    double temperature = 300.0; // K
    double mass_factor = 1.0;   // used in both the supply prefactor and the engine
    Engine engine = Engine::analytic;
    SolverOptions solver;
    WkbOptions wkb;
    int n_energy = 8001; // Simpson points for the longitudinal-energy integral
    // Fraction of the applied bias by which the barrier-region levels drop
    // relative to the emitter: transmission is evaluated at E + alpha e Vb.
    // 0 keeps the plain Fermi-window-only model, in which J is monotone in
    // bias; 0.5 is the standard symmetric-structure choice that produces
    // negative differential resistance.
    double level_shift_alpha = 0.0;
};

struct CurrentPoint {
    double bias_v = 0.0;
    double current = 0.0; // A/m^2
    PointFlag flag = PointFlag::ok;
};

/// Current density through the barrier at a forward bias, computed from the
/// standard transverse-momentum reduction
///   J = (e m* kT / 2 pi^2 hbar^3) int dE_l T(E_l)
///       ln[(1 + e^{(EF-E_l)/kT}) / (1 + e^{(EF-E_l-eVb)/kT})]
/// with upper limit EF + 20 kT + eVb. Bias enters through the Fermi windows
/// only; the barrier itself is not tilted.
CurrentPoint tsu_esaki_current(const DeviceConfig& dev, const DoubleBarrierSpec& spec,
                               double bias_v);

/// Same integral with an externally supplied transmission function, so tests
/// can drive both this reduction and the raw two-momentum integral from one
/// T(E).
CurrentPoint tsu_esaki_current_with(const DeviceConfig& dev,
                                    const std::function<double(double)>& transmission,
                                    double bias_v);

/// Maps tsu_esaki_current over a monotone bias list; per-point flags.
std::vector<CurrentPoint> iv_curve(const DeviceConfig& dev, const DoubleBarrierSpec& spec,
                                   const std::vector<double>& biases, int threads = 1);

/// Fermi supply term ln[(1+e^{(EF-E)/kT})/(1+e^{(EF-E-eVb)/kT})], stable for
/// large arguments.
double supply_function(double energy_ev, double fermi_ev, double kt_ev, double bias_v);

} // namespace qtb

#endif
