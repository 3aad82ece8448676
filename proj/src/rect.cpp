#include "qtb/rect.hpp"

#include <cmath>

#include "qtb/constants.hpp"
#include "qtb/error.hpp"

namespace qtb {

using cplx = std::complex<double>;

RectDoubleParams RectDoubleParams::from_spec(const DoubleBarrierSpec& spec) {
    require(spec.shape1.kind == ShapeKind::rectangular &&
                spec.shape2.kind == ShapeKind::rectangular,
            errc::invalid_argument, "analytic engine requires rectangular shapes");
    RectDoubleParams p;
    p.v1 = spec.v1;
    p.v2 = spec.v2;
    p.w1 = spec.shape1.param;
    p.w2 = spec.shape2.param;
    p.mass_factor = spec.mass_factor;
    require(spec.a >= p.w1, errc::invalid_argument,
            "analytic engine requires non-overlapping barriers (a >= w1)");
    p.a = spec.a - p.w1;
    return p;
}

namespace {

struct BarrierTerms {
    cplx c;        // cosh(kappa w)
    cplx eta_m_s;  // (k/kappa - kappa/k) sinh(kappa w)
    cplx eta_p_s;  // (k/kappa + kappa/k) sinh(kappa w)
};

// Local transfer across one slab of height v and width w embedded in free
// regions with real wavenumber k. kappa is taken with Im >= 0 so the same
// expression continues smoothly through E = v.
BarrierTerms barrier_terms(double v, double w, double e, double k, double c2m) {
    BarrierTerms t;
    if (w == 0.0) {
        t.c = 1.0;
        t.eta_m_s = 0.0;
        t.eta_p_s = 0.0;
        return t;
    }
    const cplx kappa = std::sqrt(cplx(c2m * (v - e), 0.0));
    const cplx kw = kappa * w;
    const cplx s = std::sinh(kw);
    t.c = std::cosh(kw);
    // kappa -> 0 is excluded by the degeneracy guard, sinh(kw)/kappa stays finite
    t.eta_m_s = (k / kappa - kappa / k) * s;
    t.eta_p_s = (k / kappa + kappa / k) * s;
    return t;
}

} // namespace

ComplexAmplitude rect_double_amplitude(const RectDoubleParams& p, double energy_ev) {
    require(energy_ev > 0, errc::invalid_argument, "energy must be positive");
    require(p.w1 >= 0 && p.w2 >= 0 && p.a >= 0, errc::invalid_argument,
            "rect params: negative length");
    for (auto [v, w] : {std::pair{p.v1, p.w1}, std::pair{p.v2, p.w2}})
        if (w > 0 && std::abs(energy_ev - v) < eps_degenerate)
            fail(errc::degenerate_energy,
                 "energy degenerate with a barrier height; evaluate off E = V");

    const double c2m = two_m_over_hbar2(p.mass_factor);
    const double k = std::sqrt(c2m * energy_ev);
    const BarrierTerms b1 = barrier_terms(p.v1, p.w1, energy_ev, k, c2m);
    const BarrierTerms b2 = barrier_terms(p.v2, p.w2, energy_ev, k, c2m);

    const cplx half_i(0.0, 0.5);
    const cplx phase_well = std::polar(1.0, k * p.a);
    // Matching psi, psi' at the four interfaces gives, for the coefficient of
    // the incident wave,
    //   M = (eta1+ eta2+ / 4) s1 s2 e^{ika}
    //     + (c1 - i/2 eta1- s1)(c2 - i/2 eta2- s2) e^{-ika}
    // and T_global = e^{-ikb} / M.
    const cplx m22 = 0.25 * b1.eta_p_s * b2.eta_p_s * phase_well +
                     (b1.c - half_i * b1.eta_m_s) * (b2.c - half_i * b2.eta_m_s) /
                         phase_well;
    ComplexAmplitude amp;
    amp.t = std::polar(1.0, -k * p.b()) / m22;
    return amp;
}

TransmissionPoint rect_double_transmission(const RectDoubleParams& p, double energy_ev) {
    TransmissionPoint pt;
    pt.energy_ev = energy_ev;
    pt.engine = Engine::analytic;
    const ComplexAmplitude amp = rect_double_amplitude(p, energy_ev);
    pt.transmission = amp.probability();
    pt.phase_rad = std::arg(amp.t);
    return pt;
}

RectSingleResult rect_single(double v0, double L, double energy_ev, double mass_factor) {
    require(energy_ev > 0, errc::invalid_argument, "energy must be positive");
    require(L >= 0, errc::invalid_argument, "width must be non-negative");
    RectSingleResult r;
    if (L == 0.0) {
        r.transmission = 1.0;
        r.alpha = 0.0;
        r.reflection = 0.0;
        return r;
    }
    if (std::abs(energy_ev - v0) < eps_degenerate)
        fail(errc::degenerate_energy, "energy degenerate with the barrier height");

    const double c2m = two_m_over_hbar2(mass_factor);
    const double k = std::sqrt(c2m * energy_ev);
    const BarrierTerms b = barrier_terms(v0, L, energy_ev, k, c2m);
    const cplx m22 = b.c - cplx(0.0, 0.5) * b.eta_m_s;
    r.transmission = 1.0 / std::norm(m22);
    r.alpha = -std::arg(m22);
    r.reflection = 1.0 - r.transmission;
    return r;
}

} // namespace qtb
