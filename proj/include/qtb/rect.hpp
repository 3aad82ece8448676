#ifndef QTB_RECT_HPP
#define QTB_RECT_HPP

#include <complex>

#include "qtb/potential.hpp"
#include "qtb/types.hpp"

namespace qtb {

/// Closed-form parameters of a rectangular double barrier. `a` is the
/// inter-barrier separation (the width of the free well between the inner
/// edges), so the structure occupies [0, w1) u [w1+a, w1+a+w2) and
/// b = w1 + a + w2 is its total span.
struct RectDoubleParams {
    double v1 = 0.0; // eV
    double v2 = 0.0; // eV
    double w1 = 0.0; // nm
    double w2 = 0.0; // nm
    double a = 0.0;  // nm, well width
    double mass_factor = 1.0;

    double g() const { return w1 + w2; }
    double b() const { return w1 + a + w2; }

    /// Converts a DoubleBarrierSpec (whose rectangular `a` is the distance
    /// between left edges) to well-width form. Rejects non-rectangular
    /// shapes and overlapping barriers.
    static RectDoubleParams from_spec(const DoubleBarrierSpec& spec);
};

inline constexpr double eps_degenerate = 1e-9; // eV

struct ComplexAmplitude {
    std::complex<double> t; // global transmission amplitude
    double probability() const { return std::norm(t); }
};

/// Exact transmission amplitude of the double barrier, one complex-wavenumber
/// code path for energies below and above either barrier height.
/// Errors with errc::degenerate_energy when E is within eps_degenerate of a
/// finite-width barrier height.
ComplexAmplitude rect_double_amplitude(const RectDoubleParams& p, double energy_ev);

TransmissionPoint rect_double_transmission(const RectDoubleParams& p, double energy_ev);

struct RectSingleResult {
    double transmission = 0.0; // |T|^2
    double alpha = 0.0;        // transmitted phase referenced to the barrier span, rad
    double reflection = 0.0;   // 1 - |T|^2
};

/// Exact single rectangular barrier of height v0 and width L.
RectSingleResult rect_single(double v0, double L, double energy_ev, double mass_factor = 1.0);

} // namespace qtb

#endif
