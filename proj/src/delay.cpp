#include "qtb/delay.hpp"

#include <cmath>

#include "qtb/constants.hpp"
#include "qtb/error.hpp"

namespace qtb {

namespace {

constexpr double class_tol = 0.05; // rad, on 2 k1 a mod 2 pi

double wrap_to_pi(double d) {
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d <= -M_PI) d += 2.0 * M_PI;
    return d;
}

ResonanceClass classify(double k1, double a) {
    const double phase = std::fmod(2.0 * k1 * a, 2.0 * M_PI);
    const double dist0 = std::min(phase, 2.0 * M_PI - phase);
    if (dist0 < class_tol) return ResonanceClass::resonance;
    if (std::abs(phase - M_PI) < class_tol) return ResonanceClass::anti_resonance;
    return ResonanceClass::off;
}

// central difference of an unwrapped principal-value phase over a 3-point stencil
template <typename PhaseFn>
GroupDelay fd_delay(PhaseFn&& phase, double energy, double de, const char* method) {
    GroupDelay g;
    g.energy_ev = energy;
    g.method = method;
    for (int attempt = 0; attempt < 2; ++attempt) {
        require(energy - de > 0, errc::invalid_argument, "stencil leaves E > 0 domain");
        const double p0 = phase(energy - de);
        const double p1 = phase(energy);
        const double p2 = phase(energy + de);
        const double d1 = wrap_to_pi(p1 - p0);
        const double d2 = wrap_to_pi(p2 - p1);
        if (std::isfinite(d1) && std::isfinite(d2)) {
            g.tau_fs = constants::hbar_ev_fs * (d1 + d2) / (2.0 * de);
            return g;
        }
        de /= 10.0; // retry once with a tighter stencil
    }
    g.flag = PointFlag::unwrap_failure;
    g.tau_fs = std::nan("");
    return g;
}

} // namespace

const char* resonance_class_name(ResonanceClass c) {
    switch (c) {
    case ResonanceClass::off: return "off";
    case ResonanceClass::resonance: return "resonance";
    case ResonanceClass::anti_resonance: return "anti-resonance";
    }
    return "off";
}

GroupDelay phase_time_rect_double(const RectDoubleParams& p, double energy_ev,
                                  double de_ev) {
    require(de_ev > 0, errc::invalid_argument, "de must be positive");
    auto phase = [&](double e) {
        const ComplexAmplitude amp = rect_double_amplitude(p, e);
        const double k = wavenumber(e, p.mass_factor);
        return std::arg(amp.t * std::polar(1.0, k * p.b()));
    };
    GroupDelay g = fd_delay(phase, energy_ev, de_ev, "rect");
    g.classification = classify(wavenumber(energy_ev, p.mass_factor), p.a);
    return g;
}

GroupDelay phase_time_rect_single(double v0, double L, double energy_ev, double de_ev,
                                  double mass_factor) {
    require(de_ev > 0, errc::invalid_argument, "de must be positive");
    auto phase = [&](double e) { return rect_single(v0, L, e, mass_factor).alpha; };
    return fd_delay(phase, energy_ev, de_ev, "rect-single");
}

namespace {

// continuous semiclassical phase: arctan(2 tan T2 / T1^2) on the branch
// selected by T2, so it is smooth in E wherever the factors are
double wkb_phase(double t1, double t2) {
    const double u = 2.0 * std::tan(t2) / (t1 * t1);
    return std::atan(u) + M_PI * std::floor(t2 / M_PI + 0.5);
}

template <typename FactorsFn>
GroupDelay wkb_fd_delay(FactorsFn&& factors, double energy, double de, const char* method) {
    GroupDelay g;
    g.energy_ev = energy;
    g.method = method;
    for (int attempt = 0; attempt < 2; ++attempt) {
        require(energy - de > 0, errc::invalid_argument, "stencil leaves E > 0 domain");
        const WkbFactors f0 = factors(energy - de);
        const WkbFactors f2 = factors(energy + de);
        // the branch-tracked phase is only trustworthy if the stencil does not
        // jump across a large fraction of a well period
        if (std::abs(f2.t2 - f0.t2) < 0.5 * M_PI) {
            const double p0 = wkb_phase(f0.t1, f0.t2);
            const double p2 = wkb_phase(f2.t1, f2.t2);
            if (std::isfinite(p0) && std::isfinite(p2)) {
                g.tau_fs = constants::hbar_ev_fs * (p2 - p0) / (2.0 * de);
                return g;
            }
        }
        de /= 10.0;
    }
    g.flag = PointFlag::unwrap_failure;
    g.tau_fs = std::nan("");
    return g;
}

} // namespace

GroupDelay phase_time_wkb(const Potential& p, double energy_ev, double de_ev,
                          const WkbOptions& opts) {
    require(de_ev > 0, errc::invalid_argument, "de must be positive");
    auto factors = [&](double e) {
        const TurningPoints tp = turning_points(p, e, opts.mode);
        return wkb_factors(p, e, tp, opts.n_simpson);
    };
    GroupDelay g = wkb_fd_delay(factors, energy_ev, de_ev, "wkb");
    if (g.flag == PointFlag::ok) {
        const WkbFactors f = factors(energy_ev);
        g.classification = classify(1.0, f.t2); // 2 T2 mod 2 pi
    }
    return g;
}

GroupDelay phase_time_wkb_rect(const RectDoubleParams& p, double energy_ev, double de_ev) {
    require(de_ev > 0, errc::invalid_argument, "de must be positive");
    require(p.v1 > 0 && energy_ev < p.v1, errc::invalid_argument,
            "rectangular factors need 0 < E < V1");
    auto factors = [&](double e) {
        WkbFactors f;
        f.t1 = std::exp(-decay_constant(p.v1, e, p.mass_factor) * p.w1);
        f.t2 = wavenumber(e, p.mass_factor) * p.a;
        f.t3 = f.t1;
        return f;
    };
    GroupDelay g = wkb_fd_delay(factors, energy_ev, de_ev, "wkb-rect");
    g.classification = classify(wavenumber(energy_ev, p.mass_factor), p.a);
    return g;
}

double hartman_limit(double energy_ev, double v_ev, double mass_factor) {
    require(energy_ev > 0 && energy_ev < v_ev, errc::invalid_argument,
            "hartman limit needs 0 < E < V");
    const double k1 = wavenumber(energy_ev, mass_factor);
    const double k2 = decay_constant(v_ev, energy_ev, mass_factor);
    return constants::hbar_ev_fs * two_m_over_hbar2(mass_factor) / (k1 * k2);
}

SingleBarrierRefs single_barrier_refs(double v0, double L, double energy_ev,
                                      double mass_factor) {
    require(energy_ev > 0 && energy_ev < v0, errc::invalid_argument,
            "references need 0 < E < V0");
    SingleBarrierRefs r;
    r.kappa = decay_constant(v0, energy_ev, mass_factor);
    r.L = L;
    r.v = velocity(energy_ev, mass_factor);
    const double t1 = std::exp(-r.kappa * L);
    const double denom = 1.0 / t1 + t1 / 4.0;
    r.t0 = 1.0 / (denom * denom);
    const double num = 1.0 / t1 - t1 / 4.0;
    r.r0 = (num * num) / (denom * denom);
    return r;
}

double resonance_delay_reference(const SingleBarrierRefs& r, double a) {
    return (1.0 + r.r0) / r.t0 * a / r.v;
}

double anti_resonance_delay_reference(const SingleBarrierRefs& r, double a) {
    return r.t0 / (1.0 + r.r0) * a / r.v;
}

} // namespace qtb
