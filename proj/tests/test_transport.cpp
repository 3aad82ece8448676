#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qtb/constants.hpp"
#include "qtb/rect.hpp"
#include "qtb/transport.hpp"

using namespace qtb;

namespace {

DoubleBarrierSpec rtd_spec() {
    DoubleBarrierSpec s;
    s.v1 = s.v2 = 0.3;
    s.shape1 = {ShapeKind::rectangular, 2.0};
    s.shape2 = {ShapeKind::rectangular, 2.0};
    s.a = 8.0; // 6 nm well
    s.mass_factor = 0.067;
    return s;
}

DeviceConfig rtd_device() {
    DeviceConfig d;
    d.fermi_level = 0.05;
    d.temperature = 300.0;
    d.mass_factor = 0.067;
    d.engine = Engine::analytic;
    d.n_energy = 20001;
    return d;
}

std::function<double(double)> bound_transmission(const DoubleBarrierSpec& spec,
                                                 double mass) {
    DoubleBarrierSpec s = spec;
    s.mass_factor = mass;
    const RectDoubleParams p = RectDoubleParams::from_spec(s);
    return [p](double e) { return rect_double_amplitude(p, e).probability(); };
}

} // namespace

TEST_SUITE_BEGIN("transport");

TEST_CASE("band offsets") {
    CHECK(band_offsets({4.0, 4.0, 1.0, 1.5}).dec == doctest::Approx(0.0));
    const BandOffsets same = band_offsets({4.05, 4.05, 1.12, 1.12});
    CHECK(same.dec == doctest::Approx(0.0));
    CHECK(same.dev == doctest::Approx(0.0));
    // GaAs / Al0.3GaAs-like affinities and gaps
    const BandOffsets b = band_offsets({4.07, 3.74, 1.42, 1.80});
    CHECK(b.dec == doctest::Approx(0.33).epsilon(1e-12));
    CHECK(b.dev == doctest::Approx(0.05).epsilon(1e-9));
    CHECK_THROWS_AS(band_offsets({4.0, 4.0, 0.0, 1.0}), Error);
}

TEST_CASE("supply function limits") {
    const double kt = constants::boltzmann_ev_k * 300.0;
    // zero bias: identical softplus terms cancel exactly
    CHECK(supply_function(0.123, 0.05, kt, 0.0) == 0.0);
    // degenerate limit: S -> (EF - E)/kT for E well below EF at large bias
    CHECK(supply_function(0.01, 0.2, kt, 1.0) ==
          doctest::Approx((0.2 - 0.01) / kt).epsilon(1e-3));
    // far above EF the supply vanishes
    CHECK(supply_function(1.0, 0.05, kt, 0.2) < 1e-12);
}

TEST_CASE("zero bias gives exactly zero current") {
    const CurrentPoint cp = tsu_esaki_current(rtd_device(), rtd_spec(), 0.0);
    CHECK(cp.current == 0.0);
    CHECK(cp.flag == PointFlag::ok);
}

TEST_CASE("zero transmission gives zero current") {
    const CurrentPoint cp =
        tsu_esaki_current_with(rtd_device(), [](double) { return 0.0; }, 0.1);
    CHECK(cp.current == 0.0);
}

TEST_CASE("reduced integral matches the two-momentum oracle") {
    struct Device {
        DoubleBarrierSpec spec;
        DeviceConfig dev;
        double bias;
    };
    // three devices: symmetric RTD, asymmetric barriers, single barrier
    Device d1{rtd_spec(), rtd_device(), 0.08};
    Device d2{rtd_spec(), rtd_device(), 0.05};
    d2.spec.v2 = 0.4;
    d2.spec.shape2.param = 1.0;
    d2.dev.fermi_level = 0.08;
    Device d3{rtd_spec(), rtd_device(), 0.12};
    d3.spec.v2 = 0.0;
    d3.dev.temperature = 150.0;
    for (const auto& d : {d1, d2, d3}) {
        const auto t = bound_transmission(d.spec, d.dev.mass_factor);
        const CurrentPoint cp = tsu_esaki_current(d.dev, d.spec, d.bias);
        const double j2 = oracles::tsu_esaki_2d(t, d.dev.fermi_level, d.dev.temperature,
                                                d.dev.mass_factor, d.bias, 20001, 301);
        CHECK(std::abs(cp.current - j2) / std::abs(j2) < 1e-3);
    }
}

TEST_CASE("current is continuous in bias") {
    const DeviceConfig dev = rtd_device();
    const DoubleBarrierSpec spec = rtd_spec();
    const double j0 = tsu_esaki_current(dev, spec, 0.100).current;
    for (double delta : {1e-3, 1e-4, 1e-5}) {
        const double j1 = tsu_esaki_current(dev, spec, 0.100 + delta).current;
        CHECK(std::abs(j1 - j0) / std::abs(j0) < 50.0 * delta / 0.1);
    }
}

TEST_CASE("low-temperature limit approaches the sharp-cutoff window") {
    DeviceConfig dev = rtd_device();
    dev.temperature = 1.0;
    dev.n_energy = 40001;
    const double bias = 0.06;
    const auto t = bound_transmission(rtd_spec(), dev.mass_factor);
    const CurrentPoint cp = tsu_esaki_current(dev, rtd_spec(), bias);

    // T = 0 analog: kT S(E) -> (EF - E)^+ - (EF - eVb - E)^+
    const double ef = dev.fermi_level;
    auto sharp = [&](double e) {
        const double a = std::max(ef - e, 0.0);
        const double b = std::max(ef - bias - e, 0.0);
        return a - b;
    };
    const int n = 200001;
    const double e_up = ef + bias;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = e_up * (i + 0.5) / n;
        sum += t(e) * sharp(e);
    }
    sum *= e_up / n;
    using namespace constants;
    const double j_sharp = elementary_charge_c * 1e33 * dev.mass_factor * electron_mass /
                           (2.0 * M_PI * M_PI * hbar_ev_fs * hbar_ev_fs * hbar_ev_fs) * sum;
    CHECK(std::abs(cp.current - j_sharp) / std::abs(j_sharp) < 1e-2);
}

TEST_CASE("iv curve mapping and flags") {
    DeviceConfig dev = rtd_device();
    dev.n_energy = 8001;
    const DoubleBarrierSpec spec = rtd_spec();
    SUBCASE("singleton equals the single-point op") {
        const auto pts = iv_curve(dev, spec, {0.05});
        REQUIRE(pts.size() == 1);
        CHECK(pts[0].current ==
              doctest::Approx(tsu_esaki_current(dev, spec, 0.05).current));
    }
    SUBCASE("all-zero biases require strict monotonicity") {
        CHECK_THROWS_AS(iv_curve(dev, spec, {0.0, 0.0}), Error);
        CHECK_THROWS_AS(iv_curve(dev, spec, {0.1, 0.05}), Error);
        CHECK_THROWS_AS(iv_curve(dev, spec, {}), Error);
    }
    SUBCASE("zero-bias point is exactly zero inside a sweep") {
        const auto pts = iv_curve(dev, spec, {0.0, 0.05, 0.1});
        CHECK(pts[0].current == 0.0);
        CHECK(pts[1].current > 0.0);
    }
    SUBCASE("threaded sweep equals serial") {
        std::vector<double> biases;
        for (int i = 0; i <= 8; ++i) biases.push_back(0.02 * i);
        const auto serial = iv_curve(dev, spec, biases, 1);
        const auto threaded = iv_curve(dev, spec, biases, 4);
        for (std::size_t i = 0; i < biases.size(); ++i)
            CHECK(serial[i].current == threaded[i].current);
    }
}

TEST_CASE("level shift produces negative differential resistance") {
    DeviceConfig dev = rtd_device();
    dev.level_shift_alpha = 0.5;
    const DoubleBarrierSpec spec = rtd_spec();
    std::vector<double> biases;
    for (int i = 0; i <= 30; ++i) biases.push_back(0.01 * i);
    const auto pts = iv_curve(dev, spec, biases, 1);
    // a strict interior maximum followed by a deep valley
    double peak = 0, valley = 1e300;
    int peak_at = -1;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i].current > peak) {
            peak = pts[i].current;
            peak_at = static_cast<int>(i);
        }
    REQUIRE(peak_at > 0);
    REQUIRE(peak_at < static_cast<int>(pts.size()) - 1);
    for (std::size_t i = peak_at; i < pts.size(); ++i)
        valley = std::min(valley, pts[i].current);
    CHECK(valley < 0.5 * peak);

    // the plain window-only model is monotone in bias
    dev.level_shift_alpha = 0.0;
    const auto mono = iv_curve(dev, spec, biases, 1);
    for (std::size_t i = 1; i < mono.size(); ++i)
        CHECK(mono[i].current >= mono[i - 1].current - 1e-9 * peak);
}

TEST_CASE("validation") {
    DeviceConfig dev = rtd_device();
    CHECK_THROWS_AS(tsu_esaki_current(dev, rtd_spec(), -0.1), Error);
    dev.temperature = 0.0;
    CHECK_THROWS_AS(tsu_esaki_current(dev, rtd_spec(), 0.1), Error);
}

TEST_SUITE_END();
