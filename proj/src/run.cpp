#include "qtb/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qtb/constants.hpp"
#include "qtb/delay.hpp"
#include "qtb/error.hpp"
#include "qtb/rect.hpp"

namespace qtb {

namespace {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return buf;
}

Engine parse_engine(const std::string& name) {
    if (name == "analytic") return Engine::analytic;
    if (name == "numeric") return Engine::numeric;
    if (name == "wkb") return Engine::wkb;
    fail(errc::invalid_argument, "unknown engine: " + name);
}

bool analytic_applicable(const DoubleBarrierSpec& s) {
    return s.shape1.kind == ShapeKind::rectangular &&
           s.shape2.kind == ShapeKind::rectangular && s.a >= s.shape1.param;
}

struct Emitter {
    std::filesystem::path dir;
    std::string prefix;
    std::vector<std::string> written;

    std::ofstream open(const std::string& name, std::string* rel = nullptr) {
        const std::string file = prefix.empty() ? name : prefix + "_" + name;
        std::ofstream out(dir / file, std::ios::binary);
        require(out.good(), errc::io_error, "cannot write " + (dir / file).string());
        written.push_back(file);
        if (rel) *rel = file;
        return out;
    }
};

void write_transmission_csv(std::ofstream& out, const std::vector<TransmissionPoint>& pts) {
    out << "energy_ev,transmission,phase_rad,engine,flag\n";
    for (const auto& p : pts)
        out << sci(p.energy_ev) << ',' << sci(p.transmission) << ',' << sci(p.phase_rad)
            << ',' << engine_name(p.engine) << ',' << flag_name(p.flag) << '\n';
}

void write_resonances_csv(std::ofstream& out, const std::vector<ResonancePeak>& peaks) {
    out << "e_peak_ev,t_peak,fwhm_ev,censored\n";
    for (const auto& p : peaks)
        out << sci(p.e_peak) << ',' << sci(p.t_peak) << ',' << sci(p.fwhm) << ','
            << censoring_name(p.censored) << '\n';
}

struct DelayRow {
    double x = 0.0;
    GroupDelay g;
};

void write_delay_csv(std::ofstream& out, const std::vector<DelayRow>& rows) {
    out << "x_value,tau_fs,classification,flag\n";
    for (const auto& r : rows)
        out << sci(r.x) << ',' << sci(r.g.tau_fs) << ','
            << resonance_class_name(r.g.classification) << ',' << flag_name(r.g.flag)
            << '\n';
}

void write_iv_csv(std::ofstream& out, const std::vector<CurrentPoint>& pts) {
    out << "bias_v,current_a_per_m2,flag\n";
    for (const auto& p : pts)
        out << sci(p.bias_v) << ',' << sci(p.current) << ',' << flag_name(p.flag) << '\n';
}

EnergyGrid resolve_grid(const RunConfig& cfg, const Potential& pot) {
    EnergyGrid g = cfg.grid ? *cfg.grid : EnergyGrid::default_for(pot);
    if (g.e_max <= 0) g.e_max = pot.v_max() > 0 ? 2.0 * pot.v_max() : 1.0;
    if (g.e_min <= 0) g.e_min = g.e_max / g.n;
    g.validate();
    return g;
}

GroupDelay delay_at(const RunConfig& cfg, const DoubleBarrierSpec& spec, double e,
                    DelayMethod method) {
    const double de = cfg.delay.de_rel * e;
    if (method == DelayMethod::automatic)
        method = analytic_applicable(spec) ? DelayMethod::rect : DelayMethod::wkb;
    if (method == DelayMethod::rect)
        return phase_time_rect_double(RectDoubleParams::from_spec(spec), e, de);
    const Potential pot = make_potential(spec, cfg.eps_tail);
    return phase_time_wkb(pot, e, de, cfg.wkb);
}

std::vector<DelayRow> delay_sweep(const RunConfig& cfg) {
    std::vector<DelayRow> rows;
    auto guarded = [&](double x, const DoubleBarrierSpec& spec, double e) {
        DelayRow row;
        row.x = x;
        try {
            row.g = delay_at(cfg, spec, e, cfg.delay.method);
        } catch (const Error& err) {
            row.g.tau_fs = std::nan("");
            row.g.flag = err.code() == errc::no_turning_points
                             ? PointFlag::no_turning_points
                             : PointFlag::failed;
        }
        rows.push_back(row);
    };

    if (cfg.delay.axis == DelayAxis::energy) {
        const Potential pot = make_potential(cfg.spec, cfg.eps_tail);
        const EnergyGrid grid = resolve_grid(cfg, pot);
        for (int i = 0; i < grid.n; ++i) guarded(grid.at(i), cfg.spec, grid.at(i));
        return rows;
    }

    require(cfg.delay.energy_ev > 0, errc::invalid_argument,
            "[delay] energy_ev required for sigma/separation sweeps");
    require(cfg.delay.x_max > cfg.delay.x_min && cfg.delay.x_min > 0,
            errc::invalid_argument, "[delay] x_min/x_max range invalid");
    require(cfg.delay.n >= 2, errc::invalid_argument, "[delay] n must be >= 2");
    for (int i = 0; i < cfg.delay.n; ++i) {
        const double x =
            cfg.delay.x_min + (cfg.delay.x_max - cfg.delay.x_min) * i / (cfg.delay.n - 1);
        DoubleBarrierSpec spec = cfg.spec;
        if (cfg.delay.axis == DelayAxis::sigma) {
            require(spec.shape1.kind != ShapeKind::rectangular &&
                        spec.shape2.kind != ShapeKind::rectangular,
                    errc::invalid_argument, "sigma sweep needs smooth shapes");
            spec.shape1.param = x;
            spec.shape2.param = x;
        } else {
            spec.a = x;
        }
        guarded(x, spec, cfg.delay.energy_ev);
    }
    return rows;
}

void write_manifest(Emitter& em, const std::string& command, const std::string& raw_config,
                    const std::vector<std::string>& engine_args, int threads) {
    auto out = em.open("run_manifest.txt");
    out << "tool = qtb " << version_string << "\n";
    out << "command = " << command << "\n";
    for (const auto& e : engine_args) out << "engine_arg = " << e << "\n";
    out << "threads = " << threads << "\n";
    out << "config_fnv1a64 = " << config_hash(raw_config) << "\n";
    out << "hbar2_over_2me_ev_nm2 = " << sci(constants::hbar2_over_2me) << "\n";
    out << "hbar_ev_fs = " << sci(constants::hbar_ev_fs) << "\n";
    out << "boltzmann_ev_k = " << sci(constants::boltzmann_ev_k) << "\n";
}

void write_plot_script(Emitter& em) {
    const std::vector<std::string> files = em.written; // before the script itself
    auto out = em.open("plot.gp");
    out << "# gnuplot script over the emitted CSV files\n";
    out << "set datafile separator ','\n";
    out << "set key autotitle columnhead\n";
    out << "set logscale y\n";
    for (const auto& f : files) {
        if (f.find(".csv") == std::string::npos) continue;
        out << "# plot '" << f << "' using 1:2 with lines\n";
    }
    out << "plot ";
    bool first = true;
    for (const auto& f : files) {
        if (f.find(".csv") == std::string::npos) continue;
        if (!first) out << ", ";
        out << "'" << f << "' using 1:2 with lines";
        first = false;
    }
    if (first) out << "0";
    out << "\n";
}

} // namespace

RunResult run_command(const std::string& command, const RunConfig& cfg,
                      const std::string& raw_config, const std::string& out_dir,
                      const std::vector<std::string>& engine_args, int threads) {
    RunResult res;
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    require(!ec, errc::io_error, "cannot create output directory: " + out_dir);

    Emitter em{out_dir, cfg.output.prefix, {}};
    SweepOptions sweep_opts{cfg.solver, cfg.wkb, threads};

    const Potential pot = make_potential(cfg.spec, cfg.eps_tail);

    auto engines_for_run = [&]() -> std::vector<Engine> {
        if (!engine_args.empty()) return {parse_engine(engine_args[0])};
        std::vector<Engine> es;
        if (analytic_applicable(cfg.spec)) es.push_back(Engine::analytic);
        es.push_back(Engine::numeric);
        es.push_back(Engine::wkb);
        return es;
    };

    if (command == "transmit") {
        require(cfg.energy_ev.has_value(), errc::invalid_argument,
                "transmit requires [grid] energy_ev");
        const double e = *cfg.energy_ev;
        require(e > 0, errc::invalid_argument, "transmit energy must be positive");
        std::vector<TransmissionPoint> pts;
        EnergyGrid one{e, e * (1 + 1e-9), 2};
        for (Engine eng : engines_for_run()) {
            TransmissionCurve c = sweep(pot, one, eng, sweep_opts);
            pts.push_back(c.points.front());
        }
        bool all_failed = true;
        for (const auto& p : pts)
            if (p.flag == PointFlag::ok || p.flag == PointFlag::flux_violation)
                all_failed = false;
        auto out = em.open("transmit.csv");
        write_transmission_csv(out, pts);
        if (all_failed) {
            res.exit_code = 2;
            res.message = "transmit: every engine failed at E = " + sci(e);
        }
    } else if (command == "sweep") {
        const EnergyGrid grid = resolve_grid(cfg, pot);
        for (Engine eng : engines_for_run()) {
            TransmissionCurve c = sweep(pot, grid, eng, sweep_opts);
            auto out = em.open(std::string("sweep_") + engine_name(eng) + ".csv");
            write_transmission_csv(out, c.points);
        }
    } else if (command == "resonances") {
        const EnergyGrid grid = resolve_grid(cfg, pot);
        const Engine eng =
            engine_args.empty() ? Engine::numeric : parse_engine(engine_args[0]);
        TransmissionCurve c = sweep(pot, grid, eng, sweep_opts);
        {
            auto out = em.open(std::string("sweep_") + engine_name(eng) + ".csv");
            write_transmission_csv(out, c.points);
        }
        auto out = em.open("resonances.csv");
        write_resonances_csv(out, find_resonances(c));
    } else if (command == "compare") {
        require(engine_args.size() == 2, errc::invalid_argument,
                "compare needs two engine names");
        const EnergyGrid grid = resolve_grid(cfg, pot);
        const Engine ea = parse_engine(engine_args[0]);
        const Engine eb = parse_engine(engine_args[1]);
        TransmissionCurve ca = sweep(pot, grid, ea, sweep_opts);
        TransmissionCurve cb = sweep(pot, grid, eb, sweep_opts);
        {
            auto out = em.open(std::string("sweep_") + engine_name(ea) + ".csv");
            write_transmission_csv(out, ca.points);
        }
        {
            auto out = em.open(std::string("sweep_") + engine_name(eb) + ".csv");
            write_transmission_csv(out, cb.points);
        }
        auto out = em.open("compare_report.txt");
        out << "engine_a = " << engine_name(ea) << "\n";
        out << "engine_b = " << engine_name(eb) << "\n";
        out << format_report(compare(ca, cb));
    } else if (command == "time") {
        auto out = em.open("delay.csv");
        write_delay_csv(out, delay_sweep(cfg));
    } else if (command == "iv") {
        require(cfg.transport.has_value(), errc::invalid_argument,
                "iv requires a [transport] section");
        const TransportConfig& t = *cfg.transport;
        std::vector<double> biases;
        for (int i = 0; i < t.n_bias; ++i)
            biases.push_back(t.n_bias == 1 ? t.bias_min
                                           : t.bias_min + (t.bias_max - t.bias_min) * i /
                                                              (t.n_bias - 1));
        auto out = em.open("iv.csv");
        write_iv_csv(out, iv_curve(t.device, cfg.spec, biases, threads));
    } else {
        fail(errc::invalid_argument, "unknown command: " + command);
    }

    if (cfg.output.plot_script) write_plot_script(em);
    write_manifest(em, command, raw_config, engine_args, threads);
    res.artifacts = em.written;
    return res;
}

} // namespace qtb
