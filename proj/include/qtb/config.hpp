#ifndef QTB_CONFIG_HPP
#define QTB_CONFIG_HPP

#include <optional>
#include <string>

#include "qtb/potential.hpp"
#include "qtb/spectrum.hpp"
#include "qtb/transport.hpp"

namespace qtb {

enum class DelayAxis { energy, sigma, separation };
enum class DelayMethod { automatic, rect, wkb };

struct DelayConfig {
    DelayAxis axis = DelayAxis::energy;
    DelayMethod method = DelayMethod::automatic;
    double de_rel = 1e-4;              // dE = de_rel * E
    double energy_ev = 0.0;            // fixed E for sigma/separation sweeps
    double x_min = 0.0, x_max = 0.0;   // sigma or separation range
    int n = 50;
};

struct TransportConfig {
    DeviceConfig device;
    double bias_min = 0.0;
    double bias_max = 0.0;
    int n_bias = 2;
};

struct OutputConfig {
    std::string prefix;
    bool plot_script = true;
};

/// Everything a CLI run needs, parsed from the line-oriented
/// `key = value` / `[section]` config format.
struct RunConfig {
    DoubleBarrierSpec spec;
    double eps_tail = 1e-6;
    std::optional<EnergyGrid> grid;      // default: (0, 2 v_max], 2000 points
    std::optional<double> energy_ev;     // single-point energy for `transmit`
    SolverOptions solver;
    WkbOptions wkb;
    DelayConfig delay;
    std::optional<TransportConfig> transport;
    OutputConfig output;
};

/// Parses and validates config text. Unknown sections or keys are errors.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

/// FNV-1a hash of the raw config bytes, for the run manifest.
std::string config_hash(const std::string& text);

} // namespace qtb

#endif
