#include <cmath>

#include "doctest.h"
#include "measure.hpp"
#include "qtb/rect.hpp"
#include "qtb/spectrum.hpp"

using namespace qtb;

namespace {

DoubleBarrierSpec gauss_pair(double v, double sigma, double a) {
    DoubleBarrierSpec s;
    s.v1 = s.v2 = v;
    s.shape1 = {ShapeKind::gaussian, sigma};
    s.shape2 = {ShapeKind::gaussian, sigma};
    s.a = a;
    return s;
}

DoubleBarrierSpec rect_pair(double v, double w, double a) {
    DoubleBarrierSpec s;
    s.v1 = s.v2 = v;
    s.shape1 = {ShapeKind::rectangular, w};
    s.shape2 = {ShapeKind::rectangular, w};
    s.a = a;
    return s;
}

TransmissionCurve synthetic_curve(const std::vector<double>& t) {
    TransmissionCurve c;
    c.grid = {1.0, 1.0 + 0.1 * (t.size() - 1), static_cast<int>(t.size())};
    for (std::size_t i = 0; i < t.size(); ++i) {
        TransmissionPoint p;
        p.energy_ev = 1.0 + 0.1 * i;
        p.transmission = t[i];
        c.points.push_back(p);
    }
    return c;
}

int peaks_below(const TransmissionCurve& c, double emax) {
    int n = 0;
    for (const auto& p : find_resonances(c))
        if (p.e_peak < emax) ++n;
    return n;
}

} // namespace

TEST_SUITE_BEGIN("spectrum");

TEST_CASE("grid validation and defaults") {
    CHECK_THROWS_AS((EnergyGrid{0.0, 1.0, 10}.validate()), Error);
    CHECK_THROWS_AS((EnergyGrid{1.0, 0.5, 10}.validate()), Error);
    CHECK_THROWS_AS((EnergyGrid{0.1, 1.0, 1}.validate()), Error);
    const Potential p = make_potential(gauss_pair(4.0, 0.2, 1.0));
    const EnergyGrid g = EnergyGrid::default_for(p);
    CHECK(g.n == 2000);
    CHECK(g.e_max == doctest::Approx(2.0 * p.v_max()));
    CHECK(g.e_min > 0.0);
}

TEST_CASE("sweep emits one point per grid energy in order") {
    const Potential p = make_potential(gauss_pair(4.0, 0.2, 1.0));
    const EnergyGrid g{0.5, 6.5, 25};
    const TransmissionCurve c = sweep(p, g, Engine::numeric);
    REQUIRE(c.points.size() == 25);
    for (int i = 0; i < g.n; ++i) {
        CHECK(c.points[i].energy_ev == doctest::Approx(g.at(i)));
        CHECK(c.points[i].engine == Engine::numeric);
        if (i) CHECK(c.points[i].energy_ev > c.points[i - 1].energy_ev);
    }
}

TEST_CASE("threaded sweep is identical to serial") {
    const Potential p = make_potential(gauss_pair(4.0, 0.2, 1.0));
    const EnergyGrid g{0.5, 6.5, 64};
    SweepOptions serial, parallel;
    parallel.threads = 8;
    const TransmissionCurve a = sweep(p, g, Engine::numeric, serial);
    const TransmissionCurve b = sweep(p, g, Engine::numeric, parallel);
    for (int i = 0; i < g.n; ++i) {
        CHECK(a.points[i].transmission == b.points[i].transmission);
        CHECK(a.points[i].phase_rad == b.points[i].phase_rad);
    }
}

TEST_CASE("wkb sweep flags the invalid region instead of dropping points") {
    const Potential p = make_potential(gauss_pair(4.0, 0.2, 4.0));
    const EnergyGrid g{0.5, 7.5, 15};
    const TransmissionCurve c = sweep(p, g, Engine::wkb);
    REQUIRE(c.points.size() == 15);
    int flagged = 0;
    for (const auto& pt : c.points) {
        if (pt.energy_ev >= 4.0) {
            CHECK(pt.flag == PointFlag::wkb_invalid);
            ++flagged;
        } else {
            CHECK(pt.flag == PointFlag::ok);
        }
    }
    CHECK(flagged > 0);
}

TEST_CASE("analytic sweep requires rectangular shapes") {
    const Potential p = make_potential(gauss_pair(4.0, 0.2, 1.0));
    CHECK_THROWS_AS(sweep(p, EnergyGrid{0.5, 6.5, 10}, Engine::analytic), Error);
}

TEST_CASE("degenerate analytic point is flagged, not fatal") {
    const Potential p = make_potential(rect_pair(4.0, 0.6, 0.75));
    // grid hits E = 4 eV exactly
    const EnergyGrid g{2.0, 6.0, 3};
    const TransmissionCurve c = sweep(p, g, Engine::analytic);
    CHECK(c.points[1].flag == PointFlag::degenerate);
    CHECK(std::isnan(c.points[1].transmission));
    CHECK(c.points[0].flag == PointFlag::ok);
    CHECK(c.points[2].flag == PointFlag::ok);
}

TEST_CASE("trivial two-point sweep of the free potential") {
    DoubleBarrierSpec s = gauss_pair(0.0, 0.2, 0.0);
    const Potential p = make_potential(s);
    const TransmissionCurve c = sweep(p, EnergyGrid{0.5, 1.0, 2}, Engine::numeric);
    CHECK(c.points[0].transmission == doctest::Approx(1.0));
    CHECK(c.points[1].transmission == doctest::Approx(1.0));
}

TEST_CASE("monotone curve has no resonances") {
    const TransmissionCurve c = synthetic_curve({0.1, 0.2, 0.3, 0.4, 0.5, 0.8});
    CHECK(find_resonances(c).empty());
}

TEST_CASE("synthetic peak: interpolated half-maximum crossings") {
    // triangle peak: 0, 0.5, 1.0, 0.5, 0 with spacing 0.1; half level 0.5
    // crossed exactly at the neighbouring samples
    const TransmissionCurve c = synthetic_curve({0.0, 0.5, 1.0, 0.5, 0.0});
    const auto peaks = find_resonances(c);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].e_peak == doctest::Approx(1.2));
    CHECK(peaks[0].t_peak == doctest::Approx(1.0));
    CHECK(peaks[0].fwhm == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(peaks[0].censored == Censoring::none);
}

TEST_CASE("prominence floor suppresses ripple") {
    const TransmissionCurve c = synthetic_curve({0.50, 0.52, 0.50, 0.52, 0.50});
    CHECK(find_resonances(c).empty()); // 0.02 prominence < 0.05 floor
    CHECK(find_resonances(c, 0.01).size() == 2);
}

TEST_CASE("censoring when the half level is never crossed") {
    const TransmissionCurve c = synthetic_curve({0.8, 0.9, 1.0, 0.9, 0.8});
    const auto peaks = find_resonances(c, 0.05);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].censored == Censoring::both);
}

TEST_CASE("rect peak energies match the unit-transmission resonance condition") {
    const DoubleBarrierSpec s = rect_pair(4.0, 0.6, 0.75);
    const Potential p = make_potential(s);
    const RectDoubleParams params = RectDoubleParams::from_spec(s);
    const EnergyGrid g = EnergyGrid::default_for(p);
    const TransmissionCurve c = sweep(p, g, Engine::analytic);
    const auto peaks = find_resonances(c);
    REQUIRE(!peaks.empty());
    auto t_of = [&](double e) { return rect_double_amplitude(params, e).probability(); };
    for (const auto& pk : peaks) {
        if (pk.e_peak > 4.0) continue; // above-barrier oscillations
        const measure::RefinedPeak rp =
            measure::refine_peak(t_of, pk.e_peak - g.spacing(), pk.e_peak + g.spacing());
        CHECK(std::abs(rp.e_peak - pk.e_peak) <= g.spacing());
        CHECK(rp.t_peak == doctest::Approx(1.0).epsilon(1e-6)); // |T| = 1 at resonance
    }
}

TEST_CASE("resonance heights: symmetric structures reach unity, asymmetric stay below") {
    SolverOptions sopts;
    // mirror symmetry equalizes the two partial widths, so the refined peak
    // of a symmetric pair tops out at 1 even for smooth barriers
    const DoubleBarrierSpec sym = gauss_pair(4.0, 0.2, 3.0);
    const Potential psym = make_potential(sym);
    auto tsym = [&](double e) { return transmission_numeric(psym, e, sopts).transmission; };
    const TransmissionCurve cg =
        sweep(psym, EnergyGrid::default_for(psym, 400), Engine::numeric);
    const auto peaks = find_resonances(cg);
    REQUIRE(!peaks.empty());
    int checked = 0;
    for (const auto& pk : peaks) {
        if (pk.e_peak >= 4.0 || pk.e_peak < 2.0) continue;
        const measure::RefinedPeak rp =
            measure::refine_peak(tsym, pk.e_peak - 0.02, pk.e_peak + 0.02);
        CHECK(rp.t_peak == doctest::Approx(1.0).epsilon(1e-6));
        // but the sampled curve never visits the razor top
        CHECK(pk.t_peak < 1.0);
        ++checked;
    }
    CHECK(checked > 0);

    // unequal barriers: the peak is strictly below unity
    DoubleBarrierSpec asym = gauss_pair(4.0, 0.2, 3.0);
    asym.v1 = 1.0;
    asym.shape1.param = 0.4; // V1 sigma1 = V2 sigma2 but different opacities
    asym.shape2.param = 0.1;
    const Potential pasym = make_potential(asym);
    auto tasym = [&](double e) {
        return transmission_numeric(pasym, e, sopts).transmission;
    };
    const TransmissionCurve ca =
        sweep(pasym, EnergyGrid{0.02, 0.98, 400}, Engine::numeric);
    const auto apeaks = find_resonances(ca, 0.01);
    REQUIRE(!apeaks.empty());
    double lowest = 1.0;
    for (const auto& pk : apeaks) {
        const measure::RefinedPeak rp =
            measure::refine_peak(tasym, pk.e_peak - 0.02, pk.e_peak + 0.02);
        CHECK(rp.t_peak < 1.0 - 1e-4);
        lowest = std::min(lowest, rp.t_peak);
    }
    CHECK(lowest < 0.5); // mismatched partial widths suppress at least one peak
}

TEST_CASE("resonance count grows with separation") {
    SweepOptions opts;
    int prev = -1;
    for (double a : {1.0, 2.0, 3.0, 4.0}) {
        const Potential p = make_potential(gauss_pair(4.0, 0.2, a));
        const TransmissionCurve c = sweep(p, EnergyGrid::default_for(p), Engine::numeric, opts);
        const int n = peaks_below(c, 4.0);
        CHECK(n >= prev);
        prev = n;
    }
    CHECK(prev >= 4);
}

TEST_CASE("compare: curve against itself") {
    const Potential p = make_potential(gauss_pair(4.0, 0.2, 1.0));
    const TransmissionCurve c = sweep(p, EnergyGrid{0.5, 6.5, 40}, Engine::numeric);
    const ComparisonReport r = compare(c, c);
    CHECK(r.n_points == 40);
    CHECK(r.n_valid_both == 40);
    CHECK(r.ratio_min == doctest::Approx(1.0));
    CHECK(r.ratio_max == doctest::Approx(1.0));
    CHECK(r.max_abs_log10_ratio_low_e == doctest::Approx(0.0));
    for (const auto& po : r.peak_offsets) CHECK(po.offset == doctest::Approx(0.0));
}

TEST_CASE("compare: annotated wkb-invalid region and grid mismatch") {
    const Potential p = make_potential(gauss_pair(4.0, 0.2, 4.0));
    const EnergyGrid g{0.5, 7.5, 29};
    const TransmissionCurve cn = sweep(p, g, Engine::numeric);
    const TransmissionCurve cw = sweep(p, g, Engine::wkb);
    const ComparisonReport r = compare(cw, cn);
    CHECK(r.wkb_invalid_above == doctest::Approx(4.0));
    CHECK(r.n_invalid_points > 0);
    CHECK(r.low_e_cutoff == doctest::Approx(2.0));
    CHECK(r.n_valid_both > 0);
    CHECK(r.n_valid_both < r.n_points);

    const TransmissionCurve other = sweep(p, EnergyGrid{0.5, 7.5, 28}, Engine::numeric);
    CHECK_THROWS_AS(compare(cw, other), Error);
    const std::string text = format_report(r);
    CHECK(text.find("wkb_invalid_above_ev") != std::string::npos);
}

TEST_SUITE_END();
