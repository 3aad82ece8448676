#include "qtb/config.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "qtb/error.hpp"

namespace qtb {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

using Section = std::map<std::string, std::string>;

std::map<std::string, Section> parse_ini(const std::string& text) {
    std::map<std::string, Section> out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            require(line.back() == ']', errc::invalid_argument,
                    "config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            out[section];
            continue;
        }
        const auto eq = line.find('=');
        require(eq != std::string::npos, errc::invalid_argument,
                "config line " + std::to_string(lineno) + ": expected key = value");
        require(!section.empty(), errc::invalid_argument,
                "config line " + std::to_string(lineno) + ": key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        require(!key.empty() && !val.empty(), errc::invalid_argument,
                "config line " + std::to_string(lineno) + ": empty key or value");
        out[section][key] = val;
    }
    return out;
}

class SectionReader {
public:
    SectionReader(const std::string& name, const Section& s) : name_(name), sec_(s) {}

    double number(const std::string& key) {
        const std::string& v = raw(key);
        char* end = nullptr;
        const double x = std::strtod(v.c_str(), &end);
        require(end && *end == '\0', errc::invalid_argument,
                "[" + name_ + "] " + key + ": not a number: " + v);
        return x;
    }
    double number(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }
    int integer(const std::string& key, int fallback) {
        if (!has(key)) return fallback;
        const double x = number(key);
        const int i = static_cast<int>(x);
        require(x == i, errc::invalid_argument, "[" + name_ + "] " + key + ": not an integer");
        return i;
    }
    std::string text(const std::string& key, const std::string& fallback = "") {
        if (!has(key)) return fallback;
        return raw(key);
    }
    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const std::string v = raw(key);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        fail(errc::invalid_argument, "[" + name_ + "] " + key + ": expected true/false");
    }
    bool has(const std::string& key) const { return sec_.count(key) > 0; }

    void finish() const {
        for (const auto& [k, v] : sec_)
            require(seen_.count(k) > 0, errc::invalid_argument,
                    "[" + name_ + "] unknown key: " + k);
    }

private:
    const std::string& raw(const std::string& key) {
        auto it = sec_.find(key);
        require(it != sec_.end(), errc::invalid_argument,
                "[" + name_ + "] missing required key: " + key);
        seen_.insert({key, true}).first;
        return it->second;
    }

    std::string name_;
    const Section& sec_;
    mutable std::map<std::string, bool> seen_;
};

BarrierShape read_shape(SectionReader& r, int idx) {
    const std::string suffix = std::to_string(idx);
    const std::string kind = r.text("shape" + suffix, "gaussian");
    BarrierShape s;
    if (kind == "rectangular") {
        s.kind = ShapeKind::rectangular;
        s.param = r.number("width" + suffix + "_nm");
    } else if (kind == "gaussian") {
        s.kind = ShapeKind::gaussian;
        s.param = r.number("sigma" + suffix + "_nm");
    } else if (kind == "lorentzian") {
        s.kind = ShapeKind::lorentzian;
        s.param = r.number("gamma" + suffix + "_nm");
    } else {
        fail(errc::invalid_argument, "unknown shape: " + kind);
    }
    return s;
}

Engine read_engine(const std::string& name) {
    if (name == "analytic") return Engine::analytic;
    if (name == "numeric") return Engine::numeric;
    if (name == "wkb") return Engine::wkb;
    fail(errc::invalid_argument, "unknown engine: " + name);
}

} // namespace

RunConfig parse_config(const std::string& text) {
    const auto ini = parse_ini(text);
    for (const auto& [name, _] : ini)
        require(name == "barrier" || name == "grid" || name == "solver" ||
                    name == "delay" || name == "transport" || name == "output",
                errc::invalid_argument, "unknown config section: [" + name + "]");

    RunConfig cfg;
    require(ini.count("barrier") > 0, errc::invalid_argument,
            "config must contain a [barrier] section");

    {
        SectionReader r("barrier", ini.at("barrier"));
        cfg.spec.v1 = r.number("v1_ev");
        cfg.spec.v2 = r.number("v2_ev");
        cfg.spec.shape1 = read_shape(r, 1);
        cfg.spec.shape2 = read_shape(r, 2);
        cfg.spec.a = r.number("a_nm");
        cfg.spec.mass_factor = r.number("mass_factor", 1.0);
        cfg.eps_tail = r.number("eps_tail_ev", 1e-6);
        r.finish();
    }
    if (ini.count("grid")) {
        SectionReader r("grid", ini.at("grid"));
        if (r.has("energy_ev")) cfg.energy_ev = r.number("energy_ev");
        const bool any = r.has("e_min_ev") || r.has("e_max_ev") || r.has("n");
        if (any) {
            EnergyGrid g;
            g.n = r.integer("n", 2000);
            g.e_max = r.number("e_max_ev", 0.0);
            g.e_min = r.number("e_min_ev", 0.0);
            cfg.grid = g; // zero bounds resolved against v_max at run time
        }
        r.finish();
    }
    if (ini.count("solver")) {
        SectionReader r("solver", ini.at("solver"));
        cfg.solver.h = r.number("h_nm", 1e-4);
        cfg.solver.max_flux_error = r.number("max_flux_error", 1e-6);
        cfg.solver.eps_tail = cfg.eps_tail;
        cfg.wkb.n_simpson = r.integer("n_simpson", 512);
        const std::string tp = r.text("turning_points", "auto");
        if (tp == "auto") cfg.wkb.mode = TurningPointMode::automatic;
        else if (tp == "analytic") cfg.wkb.mode = TurningPointMode::gaussian_analytic;
        else if (tp == "numeric") cfg.wkb.mode = TurningPointMode::numeric;
        else fail(errc::invalid_argument, "[solver] turning_points: " + tp);
        r.finish();
    } else {
        cfg.solver.eps_tail = cfg.eps_tail;
    }
    if (ini.count("delay")) {
        SectionReader r("delay", ini.at("delay"));
        const std::string axis = r.text("axis", "energy");
        if (axis == "energy") cfg.delay.axis = DelayAxis::energy;
        else if (axis == "sigma") cfg.delay.axis = DelayAxis::sigma;
        else if (axis == "separation") cfg.delay.axis = DelayAxis::separation;
        else fail(errc::invalid_argument, "[delay] axis: " + axis);
        const std::string method = r.text("method", "auto");
        if (method == "auto") cfg.delay.method = DelayMethod::automatic;
        else if (method == "rect") cfg.delay.method = DelayMethod::rect;
        else if (method == "wkb") cfg.delay.method = DelayMethod::wkb;
        else fail(errc::invalid_argument, "[delay] method: " + method);
        cfg.delay.de_rel = r.number("de_rel", 1e-4);
        cfg.delay.energy_ev = r.number("energy_ev", 0.0);
        cfg.delay.x_min = r.number("x_min", 0.0);
        cfg.delay.x_max = r.number("x_max", 0.0);
        cfg.delay.n = r.integer("n", 50);
        require(cfg.delay.de_rel > 0, errc::invalid_argument, "[delay] de_rel must be > 0");
        r.finish();
    }
    if (ini.count("transport")) {
        SectionReader r("transport", ini.at("transport"));
        TransportConfig t;
        t.device.fermi_level = r.number("fermi_level_ev");
        t.device.temperature = r.number("temperature_k", 300.0);
        t.device.mass_factor = r.number("mass_factor", cfg.spec.mass_factor);
        t.device.engine = read_engine(r.text("engine", "analytic"));
        t.device.n_energy = r.integer("n_energy", 8001);
        t.device.level_shift_alpha = r.number("level_shift_alpha", 0.0);
        require(t.device.level_shift_alpha >= 0 && t.device.level_shift_alpha <= 1,
                errc::invalid_argument, "[transport] level_shift_alpha must be in [0, 1]");
        t.device.solver = cfg.solver;
        t.device.wkb = cfg.wkb;
        t.bias_min = r.number("bias_min_v", 0.0);
        t.bias_max = r.number("bias_max_v", 0.0);
        t.n_bias = r.integer("n_bias", 2);
        require(t.bias_min >= 0 && t.bias_max >= t.bias_min, errc::invalid_argument,
                "[transport] bias range invalid");
        require(t.n_bias >= 1, errc::invalid_argument, "[transport] n_bias must be >= 1");
        cfg.transport = t;
        r.finish();
    }
    if (ini.count("output")) {
        SectionReader r("output", ini.at("output"));
        cfg.output.prefix = r.text("prefix", "");
        cfg.output.plot_script = r.boolean("plot_script", true);
        r.finish();
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), errc::io_error, "cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace qtb
