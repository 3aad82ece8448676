#include "qtb/solver.hpp"

#include <algorithm>
#include <cmath>

#include "qtb/constants.hpp"
#include "qtb/error.hpp"

namespace qtb {

using cplx = std::complex<double>;

namespace {

constexpr double overflow_limit = 1e30;
constexpr double rescale_limit = 1e50;
constexpr double edge_nudge = 1e-9; // nm, keeps RK4 stage evaluations inside a segment

struct Derivs {
    const Potential& pot;
    double coef; // 2m/hbar^2
    double energy;
    double lo, hi; // current segment, stage evaluations clamped inside

    void operator()(double x, const WaveState& y, WaveState& dy) const {
        const double xc = std::clamp(x, lo, hi);
        dy.psi = y.dpsi;
        dy.dpsi = coef * (pot(xc) - energy) * y.psi;
    }
};

void rk4_step(const Derivs& f, double x, double h, WaveState& y) {
    WaveState k1, k2, k3, k4, t;
    f(x, y, k1);
    t.psi = y.psi + 0.5 * h * k1.psi;
    t.dpsi = y.dpsi + 0.5 * h * k1.dpsi;
    f(x + 0.5 * h, t, k2);
    t.psi = y.psi + 0.5 * h * k2.psi;
    t.dpsi = y.dpsi + 0.5 * h * k2.dpsi;
    f(x + 0.5 * h, t, k3);
    t.psi = y.psi + h * k3.psi;
    t.dpsi = y.dpsi + h * k3.dpsi;
    f(x + h, t, k4);
    y.psi += h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
    y.dpsi += h / 6.0 * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi);
}

// Segment boundaries between `from` and `to` in marching order, with
// rectangular edges inserted so no step straddles a discontinuity.
std::vector<double> segment_points(const Potential& p, double from, double to) {
    const bool fwd = to > from;
    const double lo = std::min(from, to), hi = std::max(from, to);
    std::vector<double> pts{lo};
    for (double b : p.breakpoints())
        if (b > lo && b < hi) pts.push_back(b);
    pts.push_back(hi);
    if (!fwd) std::reverse(pts.begin(), pts.end());
    return pts;
}

template <typename OnStep>
void integrate(const Potential& p, double energy, double from, double to, WaveState& y,
               double h, double* log_scale, OnStep&& on_step) {
    const std::vector<double> pts = segment_points(p, from, to);
    Derivs f{p, two_m_over_hbar2(p.mass_factor()), energy, 0, 0};
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const double x0 = pts[s], x1 = pts[s + 1];
        const double len = std::abs(x1 - x0);
        if (len == 0.0) continue;
        if (len > 2.0 * edge_nudge) {
            f.lo = std::min(x0, x1) + edge_nudge;
            f.hi = std::max(x0, x1) - edge_nudge;
        } else {
            f.lo = f.hi = 0.5 * (x0 + x1);
        }
        const long n = std::max(1L, static_cast<long>(std::ceil(len / h)));
        const double hs = (x1 - x0) / static_cast<double>(n);
        double x = x0;
        for (long i = 0; i < n; ++i) {
            rk4_step(f, x, hs, y);
            x = (i + 1 == n) ? x1 : x0 + hs * static_cast<double>(i + 1);
            const double mag = std::max(std::abs(y.psi), std::abs(y.dpsi));
            if (log_scale) {
                if (mag > rescale_limit) {
                    y.psi /= mag;
                    y.dpsi /= mag;
                    *log_scale += std::log(mag);
                }
            } else if (mag > overflow_limit) {
                fail(errc::overflow,
                     "integration magnitude exceeded 1e30 (deep tunneling); "
                     "renormalize or use transmission_numeric");
            }
            on_step(x, y);
        }
    }
}

} // namespace

Trajectory integrate_rk4(const Potential& p, double energy_ev, double from, double to,
                         WaveState y0, double h) {
    require(h > 0, errc::invalid_argument, "step must be positive");
    require(from != to, errc::invalid_argument, "empty integration range");
    Trajectory tr;
    tr.x.push_back(from);
    tr.y.push_back(y0);
    WaveState y = y0;
    integrate(p, energy_ev, from, to, y, h, nullptr, [&](double x, const WaveState& s) {
        tr.x.push_back(x);
        tr.y.push_back(s);
    });
    return tr;
}

ScatteringAmplitudes scattering_amplitudes(const Potential& p, double energy_ev,
                                           const SolverOptions& opts) {
    require(energy_ev > 0, errc::invalid_argument, "energy must be positive");
    require(opts.h > 0, errc::invalid_argument, "step must be positive");

    const double k = wavenumber(energy_ev, p.mass_factor());
    ScatteringAmplitudes out;
    if (p.empty()) {
        out.a = 1.0;
        out.b = 0.0;
        return out;
    }

    // outgoing wave C e^{ikx} with C = 1 at the right tail edge
    const double xr = p.x_max(), xl = p.x_min();
    WaveState y{std::polar(1.0, k * xr), cplx(0.0, k) * std::polar(1.0, k * xr)};
    integrate(p, energy_ev, xr, xl, y, opts.h, &out.log_scale,
              [](double, const WaveState&) {});

    const cplx ik(0.0, k);
    out.a = 0.5 * (y.psi + y.dpsi / ik) * std::polar(1.0, -k * xl);
    out.b = 0.5 * (y.psi - y.dpsi / ik) * std::polar(1.0, k * xl);

    // |A|^2 = |B|^2 + |C|^2 with |C| = e^{-log_scale} in scaled units
    const double a2 = std::norm(out.a), b2 = std::norm(out.b);
    const double c2 = std::exp(-2.0 * out.log_scale);
    out.flux_error = std::abs(a2 - b2 - c2) / a2;
    return out;
}

TransmissionPoint transmission_numeric(const Potential& p, double energy_ev,
                                       const SolverOptions& opts) {
    TransmissionPoint pt;
    pt.energy_ev = energy_ev;
    pt.engine = Engine::numeric;
    if (p.empty()) {
        pt.transmission = 1.0;
        pt.phase_rad = 0.0;
        return pt;
    }
    const ScatteringAmplitudes amps = scattering_amplitudes(p, energy_ev, opts);
    if (!std::isfinite(std::abs(amps.a)) || std::abs(amps.a) == 0.0) {
        pt.flag = PointFlag::failed;
        pt.transmission = std::nan("");
        pt.phase_rad = std::nan("");
        return pt;
    }
    // assembled from log magnitudes so opaque barriers cannot overflow
    const double log_t = -2.0 * (std::log(std::abs(amps.a)) + amps.log_scale);
    pt.transmission = std::exp(log_t);
    pt.phase_rad = -std::arg(amps.a);
    if (amps.flux_error > opts.max_flux_error) pt.flag = PointFlag::flux_violation;
    return pt;
}

} // namespace qtb
