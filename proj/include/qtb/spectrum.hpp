#ifndef QTB_SPECTRUM_HPP
#define QTB_SPECTRUM_HPP

#include <string>
#include <vector>

#include "qtb/potential.hpp"
#include "qtb/solver.hpp"
#include "qtb/types.hpp"
#include "qtb/wkb.hpp"

namespace qtb {

struct EnergyGrid {
    double e_min = 0.0; // eV, > 0
    double e_max = 0.0; // eV
    int n = 2;          // >= 2, linear spacing

    double at(int i) const { return e_min + (e_max - e_min) * i / (n - 1); }
    double spacing() const { return (e_max - e_min) / (n - 1); }
    void validate() const;

    /// Default sweep range for a potential: (0, 2 v_max] with n points.
    static EnergyGrid default_for(const Potential& p, int n = 2000);
};

struct TransmissionCurve {
    Engine engine = Engine::numeric;
    EnergyGrid grid;
    DoubleBarrierSpec spec; // provenance
    std::vector<TransmissionPoint> points; // strictly increasing energies
};

struct SweepOptions {
    SolverOptions solver;
    WkbOptions wkb;
    int threads = 1;
};

/// One TransmissionPoint per grid energy; per-point failures are recorded as
/// flags, never dropped. Points are computed independently (parallel when
/// threads > 1) and emitted in grid order regardless of scheduling.
TransmissionCurve sweep(const Potential& p, const EnergyGrid& grid, Engine engine,
                        const SweepOptions& opts = {});

enum class Censoring { none, left, right, both };

struct ResonancePeak {
    double e_peak = 0.0;
    double t_peak = 0.0;
    double fwhm = 0.0; // eV
    Censoring censored = Censoring::none;
};

const char* censoring_name(Censoring c);

/// Interior strict maxima with prominence above `prominence` over the
/// surrounding minima; half-maximum crossings located by linear
/// interpolation, censored when the curve never crosses t_peak/2 on a side.
std::vector<ResonancePeak> find_resonances(const TransmissionCurve& curve,
                                           double prominence = 0.05);

struct PeakOffset {
    double e_a = 0.0;
    double e_b = 0.0;
    double offset = 0.0;
};

struct ComparisonReport {
    int n_points = 0;
    int n_valid_both = 0;
    double ratio_min = 0.0; // extremes of T_a / T_b over mutually valid points
    double ratio_max = 0.0;
    // max |log10(T_a/T_b)| restricted to E < 0.5 min(V1, V2)
    double max_abs_log10_ratio_low_e = 0.0;
    double low_e_cutoff = 0.0;
    std::vector<PeakOffset> peak_offsets;
    double wkb_invalid_above = 0.0; // min(V1, V2) when a WKB curve is involved, else 0
    int n_invalid_points = 0;
};

/// Pointwise comparison of two curves on identical grids.
ComparisonReport compare(const TransmissionCurve& a, const TransmissionCurve& b);

std::string format_report(const ComparisonReport& r);

} // namespace qtb

#endif
