#ifndef QTB_WKB_HPP
#define QTB_WKB_HPP

#include "qtb/potential.hpp"
#include "qtb/types.hpp"

namespace qtb {

struct TurningPoints {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0, x4 = 0.0; // nm, x1 < x2 <= x3 < x4
};

enum class TurningPointMode { gaussian_analytic, numeric, automatic };

struct WkbOptions {
    int n_simpson = 512; // Simpson subintervals per action integral
    TurningPointMode mode = TurningPointMode::automatic;
};

/// The four classical turning points V(x) = E of a double barrier.
/// gaussian_analytic uses the closed forms x_{1,2} = -/+ sigma1 sqrt(2 ln(V1/E)),
/// x_{3,4} = a -/+ sigma2 sqrt(2 ln(V2/E)), each barrier's points ignoring the
/// partner's tail; it requires a - 3 sigma1 - 3 sigma2 > 0. numeric bisects
/// V - E on brackets found by scanning and also covers merged barriers.
TurningPoints turning_points(const Potential& p, double energy_ev,
                             TurningPointMode mode = TurningPointMode::automatic);

/// Barrier opacities and well phase: T1 = exp(-S_right), T3 = exp(-S_left)
/// with S the action integrals over the forbidden regions, T2 the well phase
/// integral. Quadrature is composite Simpson in an angle variable that
/// removes the square-root turning-point behavior.
struct WkbFactors {
    double t1 = 1.0; // right barrier, in (0, 1]
    double t2 = 0.0; // well phase, rad
    double t3 = 1.0; // left barrier, in (0, 1]
};

WkbFactors wkb_factors(const Potential& p, double energy_ev, const TurningPoints& tp,
                       int n_simpson = 512);

/// Four-turning-point connection-formula transmission probability.
double wkb_transmission(const WkbFactors& f);

struct WkbSingleResult {
    double transmission = 0.0;  // (1/T + T/4)^-2
    double transmission_t2 = 0.0; // small-T simplification T^2
};

/// Two-turning-point (single hump) semiclassical transmission.
WkbSingleResult wkb_single_transmission(const Potential& p, double energy_ev,
                                        int n_simpson = 512);

/// Sweep-friendly entry point: dispatches on the number of turning points
/// (4 -> double-barrier formula, 2 -> single-hump formula), flags energies
/// where the four-turning-point formulation is invalid for a true double
/// barrier (E >= min(V1, V2)) instead of failing.
TransmissionPoint transmission_wkb(const Potential& p, double energy_ev,
                                   const WkbOptions& opts = {});

/// All sign changes of V(x) - E located by scan + bisection, ordered.
std::vector<double> find_turning_points(const Potential& p, double energy_ev);

/// Action integral int_xl^xr sqrt(2m|V - E|)/hbar dx; forbidden = true takes
/// V - E, false takes E - V. Used by the factor routines and the delay module.
double action_integral(const Potential& p, double energy_ev, double xl, double xr,
                       bool forbidden, int n_simpson);

} // namespace qtb

#endif
