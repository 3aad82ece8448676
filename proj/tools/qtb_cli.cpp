// qtb command-line front end. Thin shell over the C API: parses flags,
// dispatches to qtb_run, maps statuses to exit codes.
//
//   qtb <command> [engine [engine]] --config PATH [--out DIR]
//       [--engine NAME] [--threads N]
//
// Commands: transmit, sweep, resonances, compare, time, iv.
// Exit codes: 0 success, 1 validation/config error, 2 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "qtb.h"

namespace {

void usage(std::FILE* to) {
    std::fprintf(to,
                 "usage: qtb <command> [engines...] --config PATH [--out DIR]\n"
                 "           [--engine NAME] [--threads N]\n"
                 "\n"
                 "commands:\n"
                 "  transmit    transmission at a single energy, all applicable engines\n"
                 "  sweep       transmission curve per engine over the energy grid\n"
                 "  resonances  sweep + peak table (energy, height, FWHM)\n"
                 "  compare A B two-engine sweep with a comparison report\n"
                 "  time        group delay vs energy, sigma or separation\n"
                 "  iv          Tsu-Esaki current-voltage curve\n"
                 "\n"
                 "engines: analytic | numeric | wkb\n"
                 "qtb %s\n",
                 qtb_version());
}

int exit_code_for(qtb_status s) {
    switch (s) {
    case QTB_OK: return 0;
    case QTB_ERR_INVALID_ARGUMENT:
    case QTB_ERR_IO:
    case QTB_ERR_GRID_MISMATCH: return 1;
    default: return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        usage(stderr);
        return 1;
    }
    const std::string command = argv[1];
    if (command == "--help" || command == "-h" || command == "help") {
        usage(stdout);
        return 0;
    }

    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> engines;
    long threads = 1;

    for (int i = 2; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&]() -> const char* {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "qtb: %s needs a value\n", arg.c_str());
                std::exit(1);
            }
            return argv[++i];
        };
        if (arg == "--config") {
            config_path = next();
        } else if (arg == "--out") {
            out_dir = next();
        } else if (arg == "--engine") {
            engines.push_back(next());
        } else if (arg == "--threads") {
            char* end = nullptr;
            threads = std::strtol(next(), &end, 10);
            if (!end || *end || threads < 1) {
                std::fprintf(stderr, "qtb: --threads expects a positive integer\n");
                return 1;
            }
        } else if (arg == "--help" || arg == "-h") {
            usage(stdout);
            return 0;
        } else if (!arg.empty() && arg[0] != '-') {
            engines.push_back(arg); // positional engine names (compare)
        } else {
            std::fprintf(stderr, "qtb: unknown flag %s\n", arg.c_str());
            return 1;
        }
    }

    if (config_path.empty()) {
        std::fprintf(stderr, "qtb: --config PATH is required\n");
        return 1;
    }
    if (engines.size() > 2) {
        std::fprintf(stderr, "qtb: at most two engine names\n");
        return 1;
    }

    const qtb_status st = qtb_run(command.c_str(), config_path.c_str(), out_dir.c_str(),
                                  engines.size() > 0 ? engines[0].c_str() : nullptr,
                                  engines.size() > 1 ? engines[1].c_str() : nullptr,
                                  static_cast<int>(threads));
    if (st != QTB_OK) {
        std::fprintf(stderr, "qtb: %s: %s\n", qtb_status_message(st), qtb_last_error());
        return exit_code_for(st);
    }
    return 0;
}
