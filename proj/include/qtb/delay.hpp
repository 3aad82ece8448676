#ifndef QTB_DELAY_HPP
#define QTB_DELAY_HPP

#include "qtb/rect.hpp"
#include "qtb/wkb.hpp"

namespace qtb {

enum class ResonanceClass { off, resonance, anti_resonance };

const char* resonance_class_name(ResonanceClass c);

/// Group delay (phase time): hbar times the energy derivative of the
/// transmitted phase, by central finite differences with step de_ev.
struct GroupDelay {
    double tau_fs = 0.0;
    double energy_ev = 0.0;
    const char* method = "";
    ResonanceClass classification = ResonanceClass::off;
    PointFlag flag = PointFlag::ok;
};

/// hbar d/dE arg[T exp(i k1 b)] for the rectangular double barrier; the
/// e^{ik1 b} factor strips the free traversal across the structure span so
/// the opaque limit reproduces the width-independent Hartman value.
GroupDelay phase_time_rect_double(const RectDoubleParams& p, double energy_ev,
                                  double de_ev);

/// Single rectangular barrier phase time from the exact transmitted phase.
GroupDelay phase_time_rect_single(double v0, double L, double energy_ev, double de_ev,
                                  double mass_factor = 1.0);

/// Semiclassical group delay: hbar d/dE arctan(2 tan T2 / T1^2) with the
/// factors recomputed at each stencil energy and the arctan branch tracked
/// so the phase is continuous.
GroupDelay phase_time_wkb(const Potential& p, double energy_ev, double de_ev,
                          const WkbOptions& opts = {});

/// Same semiclassical phase with the exact rectangular factors
/// T1 = exp(-kappa w1), T2 = k1 a substituted; the route that recovers the
/// resonance and anti-resonance delay formulas.
GroupDelay phase_time_wkb_rect(const RectDoubleParams& p, double energy_ev, double de_ev);

/// Opaque-barrier saturation value 2m/(hbar k1 k2), fs. Requires 0 < E < V.
double hartman_limit(double energy_ev, double v_ev, double mass_factor = 1.0);

/// Single-barrier reference probabilities in the semiclassical form used by
/// the resonance/anti-resonance delay formulas.
struct SingleBarrierRefs {
    double r0 = 0.0;    // reflection probability
    double t0 = 1.0;    // transmission probability, r0 + t0 = 1
    double v = 0.0;     // nm/fs
    double kappa = 0.0; // nm^-1
    double L = 0.0;     // nm
};

SingleBarrierRefs single_barrier_refs(double v0, double L, double energy_ev,
                                      double mass_factor = 1.0);

/// (1 + R0)/T0 * a/v and T0/(1 + R0) * a/v.
double resonance_delay_reference(const SingleBarrierRefs& r, double a);
double anti_resonance_delay_reference(const SingleBarrierRefs& r, double a);

} // namespace qtb

#endif
