#include "qtb/wkb.hpp"

#include <algorithm>
#include <cmath>

#include "qtb/constants.hpp"
#include "qtb/error.hpp"

namespace qtb {

namespace {

constexpr int scan_cells = 4096;

double bisect(const Potential& p, double energy, double lo, double hi) {
    double flo = p(lo) - energy;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p(mid) - energy;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

bool gaussian_pair(const DoubleBarrierSpec& s) {
    return s.shape1.kind == ShapeKind::gaussian && s.shape2.kind == ShapeKind::gaussian &&
           s.v1 > 0 && s.v2 > 0;
}

} // namespace

std::vector<double> find_turning_points(const Potential& p, double energy_ev) {
    std::vector<double> roots;
    if (p.empty()) return roots;
    // scan a hair past the support so crossings sitting exactly on
    // rectangular edges at the boundary are bracketed
    const double margin = 1e-3 * (p.x_max() - p.x_min()) + 1e-9;
    const double lo = p.x_min() - margin, hi = p.x_max() + margin;
    const double step = (hi - lo) / scan_cells;
    double xa = lo, fa = p(xa) - energy_ev;
    for (int i = 1; i <= scan_cells; ++i) {
        const double xb = (i == scan_cells) ? hi : lo + i * step;
        const double fb = p(xb) - energy_ev;
        if ((fa > 0) != (fb > 0)) roots.push_back(bisect(p, energy_ev, xa, xb));
        xa = xb;
        fa = fb;
    }
    return roots;
}

TurningPoints turning_points(const Potential& p, double energy_ev, TurningPointMode mode) {
    const DoubleBarrierSpec& s = p.spec();
    require(energy_ev > 0, errc::invalid_argument, "energy must be positive");
    const double vmin = std::min(s.v1, s.v2);
    if (energy_ev >= vmin)
        fail(errc::no_turning_points,
             "no four turning points: energy at or above min(V1, V2)");

    if (mode == TurningPointMode::automatic) {
        const bool analytic_ok =
            gaussian_pair(s) && s.a - 3.0 * s.shape1.param - 3.0 * s.shape2.param > 0.0;
        mode = analytic_ok ? TurningPointMode::gaussian_analytic : TurningPointMode::numeric;
    }

    if (mode == TurningPointMode::gaussian_analytic) {
        require(gaussian_pair(s), errc::invalid_argument,
                "gaussian-analytic turning points require two gaussian barriers");
        require(s.a - 3.0 * s.shape1.param - 3.0 * s.shape2.param > 0.0,
                errc::wkb_assumption,
                "gaussian-analytic turning points require a - 3 sigma1 - 3 sigma2 > 0");
        const double r1 = s.shape1.param * std::sqrt(2.0 * std::log(s.v1 / energy_ev));
        const double r2 = s.shape2.param * std::sqrt(2.0 * std::log(s.v2 / energy_ev));
        TurningPoints tp{-r1, r1, s.a - r2, s.a + r2};
        require(tp.x2 <= tp.x3, errc::no_turning_points,
                "barriers merged at this energy: no inner well");
        return tp;
    }

    const std::vector<double> roots = find_turning_points(p, energy_ev);
    if (roots.size() != 4)
        fail(errc::no_turning_points,
             "expected 4 turning points, found " + std::to_string(roots.size()));
    return TurningPoints{roots[0], roots[1], roots[2], roots[3]};
}

double action_integral(const Potential& p, double energy_ev, double xl, double xr,
                       bool forbidden, int n_simpson) {
    require(n_simpson >= 2 && n_simpson % 2 == 0, errc::invalid_argument,
            "n_simpson must be even and >= 2");
    require(xr >= xl, errc::invalid_argument, "inverted integration bounds");
    if (xr == xl) return 0.0;

    const double c2m = two_m_over_hbar2(p.mass_factor());
    // tolerate the partner-barrier tail pushing the radicand slightly negative
    // at analytic turning points
    const double rad_tol = 1e-7 * c2m * std::max(energy_ev, p.v_max());

    const double xm = 0.5 * (xl + xr);
    const double xh = 0.5 * (xr - xl);
    // keep evaluations strictly inside the interval: turning points resolved
    // on a rectangular edge may land a rounding error outside the barrier
    const double nudge = 1e-12 * (xr - xl);
    auto integrand = [&](double u) {
        // x = xm + xh sin(pi u / 2) turns the sqrt turning-point zeros into
        // smooth ones, restoring Simpson's n^-4 convergence
        const double su = std::sin(0.5 * M_PI * u);
        const double cu = std::cos(0.5 * M_PI * u);
        const double x = std::clamp(xm + xh * su, xl + nudge, xr - nudge);
        double rad = c2m * (p(x) - energy_ev);
        if (!forbidden) rad = -rad;
        if (rad < 0) {
            require(rad > -rad_tol, errc::numeric_failure,
                    "negative radicand: turning points inconsistent with the potential");
            rad = 0;
        }
        return std::sqrt(rad) * xh * 0.5 * M_PI * cu;
    };

    const double du = 2.0 / n_simpson;
    double sum = integrand(-1.0) + integrand(1.0);
    for (int i = 1; i < n_simpson; ++i)
        sum += integrand(-1.0 + i * du) * ((i % 2) ? 4.0 : 2.0);
    return sum * du / 3.0;
}

WkbFactors wkb_factors(const Potential& p, double energy_ev, const TurningPoints& tp,
                       int n_simpson) {
    require(tp.x1 < tp.x2 && tp.x2 <= tp.x3 && tp.x3 < tp.x4, errc::invalid_argument,
            "turning points out of order");
    WkbFactors f;
    f.t3 = std::exp(-action_integral(p, energy_ev, tp.x1, tp.x2, true, n_simpson));
    f.t2 = action_integral(p, energy_ev, tp.x2, tp.x3, false, n_simpson);
    f.t1 = std::exp(-action_integral(p, energy_ev, tp.x3, tp.x4, true, n_simpson));
    return f;
}

double wkb_transmission(const WkbFactors& f) {
    require(f.t1 > 0 && f.t1 <= 1.0 + 1e-12 && f.t3 > 0 && f.t3 <= 1.0 + 1e-12,
            errc::invalid_argument, "barrier factors must lie in (0, 1]");
    // |D|^2 with D = T3 (C4 - C3)/4 + (C3 + C4)/T3,
    //   C3 = (1/T1 - T1/4) e^{iT2},  C4 = (1/T1 + T1/4) e^{-iT2}
    // assembled from the log opacities so opaque barriers cannot overflow:
    //   Re D = cos T2 (2 e^L + e^-L / 8),  Im D = -sin T2 cosh(S1 - S3)
    // with L = S1 + S3.
    const double s1 = -std::log(f.t1), s3 = -std::log(f.t3);
    const double L = s1 + s3;
    const double c = std::cos(f.t2), s = std::sin(f.t2);
    // ln|D|^2 = 2L + ln[c^2 (2 + e^{-2L}/8)^2 + s^2 ((e^{-2 s1} + e^{-2 s3})/2)^2]
    const double re_scaled = c * (2.0 + std::exp(-2.0 * L) / 8.0);
    const double im_scaled = -s * 0.5 * (std::exp(-2.0 * s1) + std::exp(-2.0 * s3));
    const double log_d2 = 2.0 * L + std::log(re_scaled * re_scaled + im_scaled * im_scaled);
    return std::exp(-log_d2);
}

WkbSingleResult wkb_single_transmission(const Potential& p, double energy_ev,
                                        int n_simpson) {
    const std::vector<double> roots = find_turning_points(p, energy_ev);
    if (roots.size() != 2)
        fail(errc::no_turning_points,
             "single-hump WKB expects exactly 2 turning points, found " +
                 std::to_string(roots.size()));
    const double s = action_integral(p, energy_ev, roots[0], roots[1], true, n_simpson);
    WkbSingleResult r;
    const double t = std::exp(-s);
    const double inv = 1.0 / t + t / 4.0;
    r.transmission = 1.0 / (inv * inv);
    r.transmission_t2 = std::exp(-2.0 * s);
    return r;
}

TransmissionPoint transmission_wkb(const Potential& p, double energy_ev,
                                   const WkbOptions& opts) {
    require(energy_ev > 0, errc::invalid_argument, "energy must be positive");
    TransmissionPoint pt;
    pt.energy_ev = energy_ev;
    pt.engine = Engine::wkb;
    pt.phase_rad = std::nan("");

    const DoubleBarrierSpec& s = p.spec();
    if (p.empty()) {
        pt.transmission = 1.0;
        return pt;
    }
    const bool true_double = s.v1 > 0 && s.v2 > 0;
    if (true_double && energy_ev >= std::min(s.v1, s.v2)) {
        pt.flag = PointFlag::wkb_invalid;
        pt.transmission = std::nan("");
        return pt;
    }
    try {
        if (true_double) {
            TurningPointMode mode = opts.mode;
            if (mode == TurningPointMode::automatic) {
                const bool analytic_ok =
                    gaussian_pair(s) &&
                    s.a - 3.0 * s.shape1.param - 3.0 * s.shape2.param > 0.0;
                mode = analytic_ok ? TurningPointMode::gaussian_analytic
                                   : TurningPointMode::numeric;
            }
            if (mode == TurningPointMode::numeric) {
                // merged barriers can present a single hump at this energy
                const std::vector<double> roots = find_turning_points(p, energy_ev);
                if (roots.size() == 2) {
                    pt.transmission = wkb_single_transmission(p, energy_ev, opts.n_simpson)
                                          .transmission;
                    return pt;
                }
            }
            const TurningPoints tp = turning_points(p, energy_ev, mode);
            pt.transmission =
                wkb_transmission(wkb_factors(p, energy_ev, tp, opts.n_simpson));
        } else {
            if (energy_ev >= p.v_max()) {
                pt.flag = PointFlag::wkb_invalid;
                pt.transmission = std::nan("");
                return pt;
            }
            pt.transmission =
                wkb_single_transmission(p, energy_ev, opts.n_simpson).transmission;
        }
    } catch (const Error& e) {
        pt.flag = e.code() == errc::no_turning_points ? PointFlag::no_turning_points
                                                      : PointFlag::failed;
        pt.transmission = std::nan("");
    }
    return pt;
}

} // namespace qtb
