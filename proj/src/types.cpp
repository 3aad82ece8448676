#include "qtb/types.hpp"

namespace qtb {

const char* engine_name(Engine e) {
    switch (e) {
    case Engine::analytic: return "analytic";
    case Engine::numeric: return "numeric";
    case Engine::wkb: return "wkb";
    }
    return "numeric";
}

const char* flag_name(PointFlag f) {
    switch (f) {
    case PointFlag::ok: return "";
    case PointFlag::degenerate: return "degenerate";
    case PointFlag::wkb_invalid: return "wkb_invalid";
    case PointFlag::no_turning_points: return "no_turning_points";
    case PointFlag::flux_violation: return "flux_violation";
    case PointFlag::overflow: return "overflow";
    case PointFlag::unwrap_failure: return "unwrap_failure";
    case PointFlag::not_converged: return "not_converged";
    case PointFlag::failed: return "failed";
    }
    return "";
}

} // namespace qtb
