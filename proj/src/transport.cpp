#include "qtb/transport.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qtb/constants.hpp"
#include "qtb/error.hpp"
#include "qtb/rect.hpp"

namespace qtb {

BandOffsets band_offsets(const MaterialPair& m) {
    require(m.eg1 > 0 && m.eg2 > 0, errc::invalid_argument, "band gaps must be positive");
    BandOffsets b;
    b.dec = m.chi1 - m.chi2;
    b.dev = m.eg2 - m.eg1 - b.dec;
    return b;
}

namespace {

double softplus(double x) {
    if (x > 40.0) return x;
    if (x < -40.0) return 0.0;
    return std::log1p(std::exp(x));
}

// J [A/m^2] = e * (m kT / 2 pi^2 hbar^3) * integral, with the bracket in
// 1/(eV nm^2 fs) and the integral in eV; 1 C/(nm^2 fs) = 1e33 A/m^2.
double current_prefactor(double mass_factor, double kt_ev) {
    using namespace constants;
    return elementary_charge_c * 1e33 * mass_factor * electron_mass * kt_ev /
           (2.0 * M_PI * M_PI * hbar_ev_fs * hbar_ev_fs * hbar_ev_fs);
}

std::function<double(double)> bind_engine(const DeviceConfig& dev,
                                          const DoubleBarrierSpec& spec_in) {
    DoubleBarrierSpec spec = spec_in;
    spec.mass_factor = dev.mass_factor; // the device mass drives the engine too
    switch (dev.engine) {
    case Engine::analytic: {
        const RectDoubleParams params = RectDoubleParams::from_spec(spec);
        return [params](double e) { return rect_double_amplitude(params, e).probability(); };
    }
    case Engine::numeric: {
        const Potential p = make_potential(spec, dev.solver.eps_tail);
        const SolverOptions opts = dev.solver;
        return [p, opts](double e) { return transmission_numeric(p, e, opts).transmission; };
    }
    case Engine::wkb: {
        const Potential p = make_potential(spec, dev.solver.eps_tail);
        const WkbOptions opts = dev.wkb;
        return [p, opts](double e) {
            const TransmissionPoint pt = transmission_wkb(p, e, opts);
            return pt.flag == PointFlag::ok ? pt.transmission : 0.0;
        };
    }
    }
    return {};
}

} // namespace

double supply_function(double energy_ev, double fermi_ev, double kt_ev, double bias_v) {
    return softplus((fermi_ev - energy_ev) / kt_ev) -
           softplus((fermi_ev - energy_ev - bias_v) / kt_ev);
}

CurrentPoint tsu_esaki_current_with(const DeviceConfig& dev,
                                    const std::function<double(double)>& transmission,
                                    double bias_v) {
    require(bias_v >= 0, errc::invalid_argument, "bias must be non-negative");
    require(dev.temperature > 0, errc::invalid_argument, "temperature must be positive");
    require(dev.mass_factor > 0, errc::invalid_argument, "mass_factor must be positive");
    require(dev.n_energy >= 3, errc::invalid_argument, "n_energy too small");

    CurrentPoint out;
    out.bias_v = bias_v;
    const double kt = constants::boltzmann_ev_k * dev.temperature;
    const double e_up = dev.fermi_level + 20.0 * kt + bias_v;

    // composite Simpson over [0, e_up]; the integrand vanishes at E = 0 only
    // through T(E), so both endpoints are kept
    int n = dev.n_energy;
    if (n % 2 == 0) ++n; // odd point count = even panel count
    const double h = e_up / (n - 1);
    const double shift = dev.level_shift_alpha * bias_v;
    auto integrand = [&](double e) {
        // E = 0 carries zero incident flux
        if (e <= 0.0) return 0.0;
        return transmission(e + shift) * supply_function(e, dev.fermi_level, kt, bias_v);
    };
    double sum = integrand(0.0) + integrand(e_up);
    for (int i = 1; i + 1 < n; ++i) sum += integrand(i * h) * ((i % 2) ? 4.0 : 2.0);
    const double integral = sum * h / 3.0;

    out.current = current_prefactor(dev.mass_factor, kt) * integral;

    // tail beyond e_up: supply is Fermi-suppressed there; flag if the crude
    // bound T<=1 estimate is not negligible against the result
    const double tail = supply_function(e_up, dev.fermi_level, kt, bias_v) * kt;
    if (bias_v > 0 && tail > 1e-6 * std::abs(integral) && tail > 1e-300)
        out.flag = PointFlag::not_converged;
    if (!std::isfinite(out.current)) {
        out.flag = PointFlag::failed;
    }
    return out;
}

CurrentPoint tsu_esaki_current(const DeviceConfig& dev, const DoubleBarrierSpec& spec,
                               double bias_v) {
    return tsu_esaki_current_with(dev, bind_engine(dev, spec), bias_v);
}

std::vector<CurrentPoint> iv_curve(const DeviceConfig& dev, const DoubleBarrierSpec& spec,
                                   const std::vector<double>& biases, int threads) {
    require(!biases.empty(), errc::invalid_argument, "empty bias list");
    for (std::size_t i = 1; i < biases.size(); ++i)
        require(biases[i] > biases[i - 1], errc::invalid_argument,
                "bias list must be strictly increasing");

    const auto transmission = bind_engine(dev, spec);
    std::vector<CurrentPoint> out(biases.size());
    auto work = [&](int i) {
        try {
            out[i] = tsu_esaki_current_with(dev, transmission, biases[i]);
        } catch (const Error&) {
            out[i].bias_v = biases[i];
            out[i].current = std::nan("");
            out[i].flag = PointFlag::failed;
        }
    };
    threads = std::max(1, threads);
    if (threads == 1 || biases.size() < 2) {
        for (std::size_t i = 0; i < biases.size(); ++i) work(static_cast<int>(i));
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < biases.size(); i += threads)
                    work(static_cast<int>(i));
            });
        for (auto& th : pool) th.join();
    }
    return out;
}

} // namespace qtb
