#ifndef QTB_RUN_HPP
#define QTB_RUN_HPP

#include <string>
#include <vector>

#include "qtb/config.hpp"

namespace qtb {

inline constexpr const char* version_string = "0.2.0";

struct RunResult {
    int exit_code = 0; // 0 ok, 1 validation, 2 numerical failure
    std::string message; // diagnostic for the error stream
    std::vector<std::string> artifacts; // files written, relative to out_dir
};

/// Executes one CLI command: transmit, sweep, resonances, compare, time, iv.
/// `engine_args` carries the --engine selection (one name) or, for compare,
/// the two positional engine names. Writes CSV artifacts plus a run manifest
/// into out_dir; flagged points never abort a sweep.
RunResult run_command(const std::string& command, const RunConfig& cfg,
                      const std::string& raw_config, const std::string& out_dir,
                      const std::vector<std::string>& engine_args, int threads);

} // namespace qtb

#endif
