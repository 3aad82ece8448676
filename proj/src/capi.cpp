#include "qtb.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "qtb/config.hpp"
#include "qtb/constants.hpp"
#include "qtb/delay.hpp"
#include "qtb/error.hpp"
#include "qtb/rect.hpp"
#include "qtb/run.hpp"
#include "qtb/spectrum.hpp"
#include "qtb/transport.hpp"

namespace {

thread_local std::string g_last_error;

qtb_status status_from(qtb::errc c) {
    using qtb::errc;
    switch (c) {
    case errc::ok: return QTB_OK;
    case errc::invalid_argument: return QTB_ERR_INVALID_ARGUMENT;
    case errc::degenerate_energy: return QTB_ERR_DEGENERATE_ENERGY;
    case errc::no_turning_points: return QTB_ERR_NO_TURNING_POINTS;
    case errc::wkb_assumption: return QTB_ERR_WKB_ASSUMPTION;
    case errc::overflow: return QTB_ERR_OVERFLOW;
    case errc::numeric_failure: return QTB_ERR_NUMERIC;
    case errc::grid_mismatch: return QTB_ERR_GRID_MISMATCH;
    case errc::io_error: return QTB_ERR_IO;
    }
    return QTB_ERR_UNKNOWN;
}

template <typename Fn>
qtb_status guarded(Fn&& fn) {
    try {
        fn();
        return QTB_OK;
    } catch (const qtb::Error& e) {
        g_last_error = e.what();
        return status_from(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QTB_ERR_UNKNOWN;
    } catch (...) {
        g_last_error = "unknown error";
        return QTB_ERR_UNKNOWN;
    }
}

qtb::BarrierShape to_shape(qtb_shape kind, double param) {
    qtb::BarrierShape s;
    switch (kind) {
    case QTB_SHAPE_RECTANGULAR: s.kind = qtb::ShapeKind::rectangular; break;
    case QTB_SHAPE_GAUSSIAN: s.kind = qtb::ShapeKind::gaussian; break;
    case QTB_SHAPE_LORENTZIAN: s.kind = qtb::ShapeKind::lorentzian; break;
    default: qtb::fail(qtb::errc::invalid_argument, "bad shape enum");
    }
    s.param = param;
    return s;
}

qtb::DoubleBarrierSpec to_spec(const qtb_barrier_spec& s) {
    qtb::DoubleBarrierSpec spec;
    spec.v1 = s.v1_ev;
    spec.v2 = s.v2_ev;
    spec.shape1 = to_shape(s.shape1, s.param1_nm);
    spec.shape2 = to_shape(s.shape2, s.param2_nm);
    spec.a = s.a_nm;
    spec.mass_factor = s.mass_factor;
    return spec;
}

qtb::Engine to_engine(int e) {
    switch (e) {
    case QTB_ENGINE_ANALYTIC: return qtb::Engine::analytic;
    case QTB_ENGINE_NUMERIC: return qtb::Engine::numeric;
    case QTB_ENGINE_WKB: return qtb::Engine::wkb;
    default: qtb::fail(qtb::errc::invalid_argument, "bad engine enum");
    }
}

qtb::SweepOptions to_sweep_options(const qtb_solver_options* opts, int threads) {
    qtb::SweepOptions so;
    if (opts) {
        so.solver.h = opts->h_nm;
        so.solver.max_flux_error = opts->max_flux_error;
        so.wkb.n_simpson = opts->n_simpson;
        switch (opts->turning_point_mode) {
        case 0: so.wkb.mode = qtb::TurningPointMode::automatic; break;
        case 1: so.wkb.mode = qtb::TurningPointMode::gaussian_analytic; break;
        case 2: so.wkb.mode = qtb::TurningPointMode::numeric; break;
        default: qtb::fail(qtb::errc::invalid_argument, "bad turning_point_mode");
        }
    }
    so.threads = threads;
    return so;
}

qtb_point to_point(const qtb::TransmissionPoint& p) {
    qtb_point out;
    out.energy_ev = p.energy_ev;
    out.transmission = p.transmission;
    out.phase_rad = p.phase_rad;
    out.engine = static_cast<int>(p.engine);
    out.flag = static_cast<int>(p.flag);
    return out;
}

qtb_delay to_delay(const qtb::GroupDelay& g) {
    qtb_delay out;
    out.tau_fs = g.tau_fs;
    out.energy_ev = g.energy_ev;
    out.classification = static_cast<int>(g.classification);
    out.flag = static_cast<int>(g.flag);
    return out;
}

void require_out(const void* p) {
    qtb::require(p != nullptr, qtb::errc::invalid_argument, "null output pointer");
}

} // namespace

struct qtb_potential {
    qtb::Potential impl;
};

extern "C" {

const char* qtb_version(void) { return qtb::version_string; }

const char* qtb_status_message(qtb_status status) {
    switch (status) {
    case QTB_OK: return "ok";
    case QTB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QTB_ERR_DEGENERATE_ENERGY: return "degenerate energy";
    case QTB_ERR_NO_TURNING_POINTS: return "no turning points";
    case QTB_ERR_WKB_ASSUMPTION: return "wkb assumption violated";
    case QTB_ERR_OVERFLOW: return "overflow";
    case QTB_ERR_NUMERIC: return "numerical failure";
    case QTB_ERR_GRID_MISMATCH: return "grid mismatch";
    case QTB_ERR_IO: return "i/o error";
    case QTB_ERR_UNKNOWN: return "unknown error";
    }
    return "unknown error";
}

const char* qtb_last_error(void) { return g_last_error.c_str(); }

void qtb_constants(double* hbar2_over_2me_ev_nm2, double* hbar_ev_fs) {
    if (hbar2_over_2me_ev_nm2) *hbar2_over_2me_ev_nm2 = qtb::constants::hbar2_over_2me;
    if (hbar_ev_fs) *hbar_ev_fs = qtb::constants::hbar_ev_fs;
}

void qtb_default_solver_options(qtb_solver_options* opts) {
    if (!opts) return;
    opts->h_nm = 1e-4;
    opts->max_flux_error = 1e-6;
    opts->n_simpson = 512;
    opts->turning_point_mode = 0;
}

qtb_status qtb_potential_create(const qtb_barrier_spec* spec, double eps_tail_ev,
                                qtb_potential** out) {
    return guarded([&] {
        require_out(out);
        require_out(spec);
        auto* h = new qtb_potential{qtb::make_potential(to_spec(*spec), eps_tail_ev)};
        *out = h;
    });
}

void qtb_potential_destroy(qtb_potential* p) { delete p; }

double qtb_potential_eval(const qtb_potential* p, double x_nm) {
    return p ? p->impl(x_nm) : 0.0;
}

qtb_status qtb_potential_info(const qtb_potential* p, double* x_min_nm, double* x_max_nm,
                              double* v_max_ev) {
    return guarded([&] {
        require_out(p);
        if (x_min_nm) *x_min_nm = p->impl.x_min();
        if (x_max_nm) *x_max_nm = p->impl.x_max();
        if (v_max_ev) *v_max_ev = p->impl.v_max();
    });
}

double qtb_equivalent_gaussian_separation(double w1_nm, double w2_nm, double a_rect_nm) {
    try {
        return qtb::equivalent_gaussian_separation(w1_nm, w2_nm, a_rect_nm);
    } catch (...) {
        return -1.0;
    }
}

qtb_status qtb_transmission(const qtb_potential* p, qtb_engine engine, double energy_ev,
                            const qtb_solver_options* opts, qtb_point* out) {
    return guarded([&] {
        require_out(p);
        require_out(out);
        const qtb::SweepOptions so = to_sweep_options(opts, 1);
        qtb::TransmissionPoint pt;
        switch (to_engine(engine)) {
        case qtb::Engine::analytic:
            pt = qtb::rect_double_transmission(
                qtb::RectDoubleParams::from_spec(p->impl.spec()), energy_ev);
            break;
        case qtb::Engine::numeric:
            pt = qtb::transmission_numeric(p->impl, energy_ev, so.solver);
            break;
        case qtb::Engine::wkb:
            pt = qtb::transmission_wkb(p->impl, energy_ev, so.wkb);
            break;
        }
        *out = to_point(pt);
    });
}

qtb_status qtb_sweep(const qtb_potential* p, qtb_engine engine, double e_min_ev,
                     double e_max_ev, int n, const qtb_solver_options* opts, int threads,
                     qtb_point* out) {
    return guarded([&] {
        require_out(p);
        require_out(out);
        qtb::EnergyGrid grid{e_min_ev, e_max_ev, n};
        const qtb::TransmissionCurve curve =
            qtb::sweep(p->impl, grid, to_engine(engine), to_sweep_options(opts, threads));
        for (int i = 0; i < n; ++i) out[i] = to_point(curve.points[i]);
    });
}

qtb_status qtb_find_resonances(const qtb_point* curve, int n, double prominence,
                               qtb_resonance* out, int capacity, int* n_found) {
    return guarded([&] {
        require_out(curve);
        require_out(out);
        require_out(n_found);
        qtb::require(n >= 0 && capacity >= 0, qtb::errc::invalid_argument, "bad sizes");
        qtb::TransmissionCurve c;
        c.points.reserve(n);
        for (int i = 0; i < n; ++i) {
            qtb::TransmissionPoint pt;
            pt.energy_ev = curve[i].energy_ev;
            pt.transmission = curve[i].transmission;
            pt.phase_rad = curve[i].phase_rad;
            pt.engine = static_cast<qtb::Engine>(curve[i].engine);
            pt.flag = static_cast<qtb::PointFlag>(curve[i].flag);
            c.points.push_back(pt);
        }
        const auto peaks = qtb::find_resonances(c, prominence);
        *n_found = static_cast<int>(peaks.size());
        for (int i = 0; i < capacity && i < *n_found; ++i) {
            out[i].e_peak_ev = peaks[i].e_peak;
            out[i].t_peak = peaks[i].t_peak;
            out[i].fwhm_ev = peaks[i].fwhm;
            out[i].censored = static_cast<int>(peaks[i].censored);
        }
    });
}

qtb_status qtb_phase_time_rect(double v1_ev, double v2_ev, double w1_nm, double w2_nm,
                               double well_nm, double mass_factor, double energy_ev,
                               double de_ev, qtb_delay* out) {
    return guarded([&] {
        require_out(out);
        qtb::RectDoubleParams p{v1_ev, v2_ev, w1_nm, w2_nm, well_nm, mass_factor};
        *out = to_delay(qtb::phase_time_rect_double(p, energy_ev, de_ev));
    });
}

qtb_status qtb_phase_time_rect_single(double v0_ev, double l_nm, double energy_ev,
                                      double de_ev, double mass_factor, qtb_delay* out) {
    return guarded([&] {
        require_out(out);
        *out = to_delay(
            qtb::phase_time_rect_single(v0_ev, l_nm, energy_ev, de_ev, mass_factor));
    });
}

qtb_status qtb_phase_time_wkb(const qtb_potential* p, double energy_ev, double de_ev,
                              const qtb_solver_options* opts, qtb_delay* out) {
    return guarded([&] {
        require_out(p);
        require_out(out);
        const qtb::SweepOptions so = to_sweep_options(opts, 1);
        *out = to_delay(qtb::phase_time_wkb(p->impl, energy_ev, de_ev, so.wkb));
    });
}

qtb_status qtb_hartman_limit(double energy_ev, double v_ev, double mass_factor,
                             double* tau_fs) {
    return guarded([&] {
        require_out(tau_fs);
        *tau_fs = qtb::hartman_limit(energy_ev, v_ev, mass_factor);
    });
}

qtb_status qtb_band_offsets(double chi1_ev, double chi2_ev, double eg1_ev, double eg2_ev,
                            double* dec_ev, double* dev_ev) {
    return guarded([&] {
        const qtb::BandOffsets b = qtb::band_offsets({chi1_ev, chi2_ev, eg1_ev, eg2_ev});
        if (dec_ev) *dec_ev = b.dec;
        if (dev_ev) *dev_ev = b.dev;
    });
}

namespace {

qtb::DeviceConfig to_device(const qtb_device& d) {
    qtb::DeviceConfig dev;
    dev.fermi_level = d.fermi_level_ev;
    dev.temperature = d.temperature_k;
    dev.mass_factor = d.mass_factor;
    dev.engine = to_engine(d.engine);
    if (d.n_energy > 0) dev.n_energy = d.n_energy;
    dev.level_shift_alpha = d.level_shift_alpha;
    return dev;
}

} // namespace

qtb_status qtb_tsu_esaki_current(const qtb_device* dev, const qtb_barrier_spec* spec,
                                 double bias_v, double* current_a_per_m2, int* flag) {
    return guarded([&] {
        require_out(dev);
        require_out(spec);
        require_out(current_a_per_m2);
        const qtb::CurrentPoint pt =
            qtb::tsu_esaki_current(to_device(*dev), to_spec(*spec), bias_v);
        *current_a_per_m2 = pt.current;
        if (flag) *flag = static_cast<int>(pt.flag);
    });
}

qtb_status qtb_iv_curve(const qtb_device* dev, const qtb_barrier_spec* spec,
                        const double* biases_v, int n, int threads,
                        double* currents_a_per_m2, int* flags) {
    return guarded([&] {
        require_out(dev);
        require_out(spec);
        require_out(biases_v);
        require_out(currents_a_per_m2);
        std::vector<double> biases(biases_v, biases_v + n);
        const auto pts = qtb::iv_curve(to_device(*dev), to_spec(*spec), biases, threads);
        for (int i = 0; i < n; ++i) {
            currents_a_per_m2[i] = pts[i].current;
            if (flags) flags[i] = static_cast<int>(pts[i].flag);
        }
    });
}

qtb_status qtb_run(const char* command, const char* config_path, const char* out_dir,
                   const char* engine1, const char* engine2, int threads) {
    return guarded([&] {
        require_out(command);
        require_out(config_path);
        require_out(out_dir);
        std::ifstream in(config_path, std::ios::binary);
        qtb::require(in.good(), qtb::errc::io_error,
                     std::string("cannot open config file: ") + config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        const std::string raw = ss.str();
        const qtb::RunConfig cfg = qtb::parse_config(raw);
        std::vector<std::string> engines;
        if (engine1) engines.push_back(engine1);
        if (engine2) engines.push_back(engine2);
        const qtb::RunResult res =
            qtb::run_command(command, cfg, raw, out_dir, engines, threads);
        if (res.exit_code == 2) qtb::fail(qtb::errc::numeric_failure, res.message);
        if (res.exit_code != 0) qtb::fail(qtb::errc::invalid_argument, res.message);
    });
}

} // extern "C"
