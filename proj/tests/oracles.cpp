#include "oracles.hpp"

#include <cmath>

#include "qtb/constants.hpp"

namespace oracles {

using cplx = std::complex<double>;

Scattering transfer_matrix(const std::vector<Region>& regions, double energy_ev,
                           double mass_factor) {
    const double c2m = qtb::two_m_over_hbar2(mass_factor);
    const double k = std::sqrt(c2m * energy_ev);

    // local wavenumber in each region, principal branch (Re >= 0, Im >= 0)
    auto q_of = [&](double v) { return std::sqrt(cplx(c2m * (energy_ev - v), 0.0)); };

    // march from the transmitted side: coefficients (a, b) of
    // a e^{iq(x - xl)} + b e^{-iq(x - xl)} in each region's local frame
    const double x_end = regions.back().x1;
    cplx a_next = 1.0, b_next = 0.0; // outgoing frame anchored at x_end
    cplx q_next = cplx(k, 0.0);

    for (auto it = regions.rbegin(); it != regions.rend(); ++it) {
        const cplx q = q_of(it->v);
        const double w = it->x1 - it->x0;
        // value and derivative of the next region's wave at the interface x1
        const cplx psi = a_next + b_next;
        const cplx dpsi = cplx(0, 1) * q_next * (a_next - b_next);
        // coefficients in this region, frame at x0: at x1 the phases are e^{iqw}
        const cplx ep = std::exp(cplx(0, 1) * q * w);
        const cplx em = 1.0 / ep;
        const cplx a_here = 0.5 * (psi + dpsi / (cplx(0, 1) * q)) / ep;
        const cplx b_here = 0.5 * (psi - dpsi / (cplx(0, 1) * q)) / em;
        a_next = a_here;
        b_next = b_here;
        q_next = q;
    }

    // incident region: continue to a frame anchored at the structure start
    const double x_start = regions.front().x0;
    const cplx psi = a_next + b_next;
    const cplx dpsi = cplx(0, 1) * q_next * (a_next - b_next);
    const cplx ik(0, k);
    const cplx a_in = 0.5 * (psi + dpsi / ik);
    const cplx b_in = 0.5 * (psi - dpsi / ik);

    // convert local frames to global plane waves e^{+-ikx}
    const cplx a_glob = a_in * std::exp(cplx(0, -k * x_start));
    const cplx b_glob = b_in * std::exp(cplx(0, k * x_start));
    const cplx c_glob = std::exp(cplx(0, -k * x_end));

    Scattering s;
    s.t = c_glob / a_glob;
    s.r = b_glob / a_glob;
    return s;
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    const double tmax = 3.8;
    auto level_sum = [&](double h, bool odd_only) {
        double s = 0.0;
        const int kmax = static_cast<int>(tmax / h);
        for (int k = odd_only ? 1 : 0; k <= kmax; k += odd_only ? 2 : 1) {
            const double t = k * h;
            const double sh = 0.5 * M_PI * std::sinh(t);
            const double x = std::tanh(sh);
            const double w = 0.5 * M_PI * std::cosh(t) / std::pow(std::cosh(sh), 2);
            double part = f(c + r * x) * w;
            if (k > 0) part += f(c - r * x) * w;
            s += part;
        }
        return s;
    };
    double h = 0.5;
    double sum = level_sum(h, false);
    double integral = r * h * sum;
    for (int lvl = 0; lvl < 12; ++lvl) {
        h *= 0.5;
        sum += level_sum(h, true);
        const double next = r * h * sum;
        if (std::abs(next - integral) <= rel_tol * std::abs(next) && lvl > 2) {
            return next;
        }
        integral = next;
    }
    return integral;
}

double tsu_esaki_2d(const std::function<double(double)>& transmission, double fermi_ev,
                    double temperature_k, double mass_factor, double bias_v, int n_l,
                    int n_t) {
    using namespace qtb::constants;
    const double kt = boltzmann_ev_k * temperature_k;
    const double e_up = fermi_ev + 20.0 * kt + bias_v;
    const double k_max = qtb::wavenumber(e_up, mass_factor);

    auto fermi = [&](double e) { return 1.0 / (1.0 + std::exp((e - fermi_ev) / kt)); };

    if (n_l % 2 == 0) ++n_l;
    if (n_t % 2 == 0) ++n_t;
    const double hl = k_max / (n_l - 1);
    const double ht = k_max / (n_t - 1);

    // J = e/(4 pi^3 hbar) int dk_l int 2 pi k_t dk_t [f(E) - f(E+eVb)] T(E_l) dE/dk_l
    double outer = 0.0;
    for (int i = 0; i < n_l; ++i) {
        const double kl = i * hl;
        const double el = hbar2_over_2me / mass_factor * kl * kl;
        const double dedk = 2.0 * hbar2_over_2me / mass_factor * kl; // eV nm
        const double t = (el > 0) ? transmission(el) : 0.0;
        if (t == 0.0 || dedk == 0.0) continue;

        double inner = 0.0;
        for (int j = 0; j < n_t; ++j) {
            const double ktv = j * ht;
            const double et = hbar2_over_2me / mass_factor * ktv * ktv;
            const double window = fermi(el + et) - fermi(el + et + bias_v);
            const double wsimp = (j == 0 || j == n_t - 1) ? 1.0 : ((j % 2) ? 4.0 : 2.0);
            inner += wsimp * 2.0 * M_PI * ktv * window;
        }
        inner *= ht / 3.0;

        const double wsimp = (i == 0 || i == n_l - 1) ? 1.0 : ((i % 2) ? 4.0 : 2.0);
        outer += wsimp * t * dedk * inner;
    }
    outer *= hl / 3.0;

    const double pref =
        elementary_charge_c * 1e33 / (4.0 * M_PI * M_PI * M_PI * hbar_ev_fs);
    return pref * outer;
}

} // namespace oracles
