#include "qtb/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

#include "qtb/error.hpp"
#include "qtb/rect.hpp"

namespace qtb {

void EnergyGrid::validate() const {
    require(e_min > 0, errc::invalid_argument, "grid e_min must be positive");
    require(e_max > e_min, errc::invalid_argument, "grid e_max must exceed e_min");
    require(n >= 2, errc::invalid_argument, "grid needs at least 2 points");
}

EnergyGrid EnergyGrid::default_for(const Potential& p, int n) {
    EnergyGrid g;
    g.n = n;
    g.e_max = p.v_max() > 0 ? 2.0 * p.v_max() : 1.0;
    g.e_min = g.e_max / n;
    return g;
}

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || n < 2) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([=, &fn] {
            for (int i = t; i < n; i += threads) fn(i);
        });
    for (auto& th : pool) th.join();
}

TransmissionPoint one_point(const Potential& p, double e, Engine engine,
                            const SweepOptions& opts) {
    try {
        switch (engine) {
        case Engine::analytic:
            return rect_double_transmission(RectDoubleParams::from_spec(p.spec()), e);
        case Engine::numeric:
            return transmission_numeric(p, e, opts.solver);
        case Engine::wkb:
            return transmission_wkb(p, e, opts.wkb);
        }
    } catch (const Error& err) {
        TransmissionPoint pt;
        pt.energy_ev = e;
        pt.engine = engine;
        pt.transmission = std::nan("");
        pt.phase_rad = std::nan("");
        switch (err.code()) {
        case errc::degenerate_energy: pt.flag = PointFlag::degenerate; break;
        case errc::no_turning_points: pt.flag = PointFlag::no_turning_points; break;
        case errc::overflow: pt.flag = PointFlag::overflow; break;
        default: pt.flag = PointFlag::failed; break;
        }
        return pt;
    }
    return {};
}

} // namespace

TransmissionCurve sweep(const Potential& p, const EnergyGrid& grid, Engine engine,
                        const SweepOptions& opts) {
    grid.validate();
    if (engine == Engine::analytic)
        RectDoubleParams::from_spec(p.spec()); // applicability check up front

    TransmissionCurve curve;
    curve.engine = engine;
    curve.grid = grid;
    curve.spec = p.spec();
    curve.points.resize(grid.n);
    parallel_for(grid.n, opts.threads,
                 [&](int i) { curve.points[i] = one_point(p, grid.at(i), engine, opts); });
    return curve;
}

const char* censoring_name(Censoring c) {
    switch (c) {
    case Censoring::none: return "";
    case Censoring::left: return "left";
    case Censoring::right: return "right";
    case Censoring::both: return "both";
    }
    return "";
}

namespace {

bool valid_point(const TransmissionPoint& p) {
    return p.flag == PointFlag::ok || p.flag == PointFlag::flux_violation;
}

// half-maximum crossing on one side of peak i; returns censored = true when
// the walk hits the curve boundary or a higher sample before crossing
std::pair<double, bool> half_crossing(const std::vector<TransmissionPoint>& pts, int i,
                                      int dir, double level) {
    const double t_peak = pts[i].transmission;
    int j = i;
    while (true) {
        const int k = j + dir;
        if (k < 0 || k >= static_cast<int>(pts.size()) || !valid_point(pts[k]))
            return {pts[j].energy_ev, true};
        if (pts[k].transmission > t_peak) return {pts[j].energy_ev, true};
        if (pts[k].transmission <= level) {
            // linear interpolation between samples j and k
            const double t0 = pts[j].transmission, t1 = pts[k].transmission;
            const double e0 = pts[j].energy_ev, e1 = pts[k].energy_ev;
            const double frac = (t0 - level) / (t0 - t1);
            return {e0 + frac * (e1 - e0), false};
        }
        j = k;
    }
}

double surrounding_minimum(const std::vector<TransmissionPoint>& pts, int i, int dir) {
    const double t_peak = pts[i].transmission;
    double m = t_peak;
    int j = i + dir;
    while (j >= 0 && j < static_cast<int>(pts.size()) && valid_point(pts[j]) &&
           pts[j].transmission <= t_peak) {
        m = std::min(m, pts[j].transmission);
        j += dir;
    }
    return m;
}

} // namespace

std::vector<ResonancePeak> find_resonances(const TransmissionCurve& curve,
                                           double prominence) {
    std::vector<ResonancePeak> peaks;
    const auto& pts = curve.points;
    if (pts.size() < 3) return peaks;
    for (int i = 1; i + 1 < static_cast<int>(pts.size()); ++i) {
        if (!valid_point(pts[i]) || !valid_point(pts[i - 1]) || !valid_point(pts[i + 1]))
            continue;
        const double t = pts[i].transmission;
        if (!(t > pts[i - 1].transmission && t > pts[i + 1].transmission)) continue;
        const double floor_level =
            std::max(surrounding_minimum(pts, i, -1), surrounding_minimum(pts, i, +1));
        if (t - floor_level < prominence) continue;

        ResonancePeak pk;
        pk.e_peak = pts[i].energy_ev;
        pk.t_peak = t;
        const double level = 0.5 * t;
        auto [e_left, cl] = half_crossing(pts, i, -1, level);
        auto [e_right, cr] = half_crossing(pts, i, +1, level);
        pk.fwhm = e_right - e_left;
        pk.censored = cl ? (cr ? Censoring::both : Censoring::left)
                         : (cr ? Censoring::right : Censoring::none);
        peaks.push_back(pk);
    }
    return peaks;
}

ComparisonReport compare(const TransmissionCurve& a, const TransmissionCurve& b) {
    require(a.points.size() == b.points.size(), errc::grid_mismatch,
            "curves have different lengths");
    for (std::size_t i = 0; i < a.points.size(); ++i)
        require(a.points[i].energy_ev == b.points[i].energy_ev, errc::grid_mismatch,
                "curves sampled on different energy grids");

    ComparisonReport r;
    r.n_points = static_cast<int>(a.points.size());
    const double vmin = std::min(a.spec.v1, a.spec.v2);
    r.low_e_cutoff = 0.5 * vmin;
    if (a.engine == Engine::wkb || b.engine == Engine::wkb) {
        r.wkb_invalid_above = vmin;
        for (const auto& pt : a.points)
            if (pt.energy_ev > vmin) ++r.n_invalid_points;
    }

    bool have_ratio = false;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const auto& pa = a.points[i];
        const auto& pb = b.points[i];
        if (!valid_point(pa) || !valid_point(pb)) continue;
        if (!(pa.transmission > 0) || !(pb.transmission > 0)) continue;
        ++r.n_valid_both;
        const double ratio = pa.transmission / pb.transmission;
        if (!have_ratio) {
            r.ratio_min = r.ratio_max = ratio;
            have_ratio = true;
        } else {
            r.ratio_min = std::min(r.ratio_min, ratio);
            r.ratio_max = std::max(r.ratio_max, ratio);
        }
        if (pa.energy_ev < r.low_e_cutoff)
            r.max_abs_log10_ratio_low_e =
                std::max(r.max_abs_log10_ratio_low_e, std::abs(std::log10(ratio)));
    }

    // pair sub-barrier peaks by order of appearance
    const auto peaks_a = find_resonances(a);
    const auto peaks_b = find_resonances(b);
    const std::size_t n_pairs = std::min(peaks_a.size(), peaks_b.size());
    for (std::size_t i = 0; i < n_pairs; ++i)
        r.peak_offsets.push_back(
            {peaks_a[i].e_peak, peaks_b[i].e_peak, peaks_a[i].e_peak - peaks_b[i].e_peak});
    return r;
}

std::string format_report(const ComparisonReport& r) {
    char buf[512];
    std::string out;
    std::snprintf(buf, sizeof buf, "points = %d\n", r.n_points);
    out += buf;
    std::snprintf(buf, sizeof buf, "valid_both = %d\n", r.n_valid_both);
    out += buf;
    std::snprintf(buf, sizeof buf, "ratio_min = %.11e\n", r.ratio_min);
    out += buf;
    std::snprintf(buf, sizeof buf, "ratio_max = %.11e\n", r.ratio_max);
    out += buf;
    std::snprintf(buf, sizeof buf, "low_e_cutoff_ev = %.11e\n", r.low_e_cutoff);
    out += buf;
    std::snprintf(buf, sizeof buf, "max_abs_log10_ratio_low_e = %.11e\n",
                  r.max_abs_log10_ratio_low_e);
    out += buf;
    std::snprintf(buf, sizeof buf, "wkb_invalid_above_ev = %.11e\n", r.wkb_invalid_above);
    out += buf;
    std::snprintf(buf, sizeof buf, "wkb_invalid_points = %d\n", r.n_invalid_points);
    out += buf;
    for (const auto& po : r.peak_offsets) {
        std::snprintf(buf, sizeof buf, "peak_offset = %.11e %.11e %.11e\n", po.e_a, po.e_b,
                      po.offset);
        out += buf;
    }
    return out;
}

} // namespace qtb
