#ifndef QTB_TYPES_HPP
#define QTB_TYPES_HPP

namespace qtb {

enum class Engine { analytic, numeric, wkb };

enum class PointFlag {
    ok = 0,
    degenerate,        // energy within eps of a barrier height
    wkb_invalid,       // E >= min(V1,V2), four-turning-point formula inapplicable
    no_turning_points, // no classically forbidden region at this energy
    flux_violation,    // |A|^2 != |B|^2 + |C|^2 beyond tolerance
    overflow,          // integration magnitude guard tripped
    unwrap_failure,    // phase branch tracking failed across the stencil
    not_converged,     // quadrature tail estimate above tolerance
    failed,            // generic numerical failure
};

const char* engine_name(Engine e);
const char* flag_name(PointFlag f); // empty string for ok

/// One sample of a transmission spectrum: the unit every sweep produces.
struct TransmissionPoint {
    double energy_ev = 0.0;
    double transmission = 0.0;
    double phase_rad = 0.0; // phase of the global transmission amplitude
    Engine engine = Engine::numeric;
    PointFlag flag = PointFlag::ok;
};

} // namespace qtb

#endif
