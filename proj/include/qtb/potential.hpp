#ifndef QTB_POTENTIAL_HPP
#define QTB_POTENTIAL_HPP

#include <vector>

#include "qtb/error.hpp"

namespace qtb {

enum class ShapeKind { rectangular, gaussian, lorentzian };

/// One barrier hump. The length parameter is the width (rectangular,
/// occupying [0, w) from its anchor), sigma (gaussian, centered on its
/// anchor) or gamma (lorentzian, V/(1+x^2/gamma^2), centered).
struct BarrierShape {
    ShapeKind kind = ShapeKind::gaussian;
    double param = 0.0; // nm
};

/// Two-hump potential: shape1 anchored at x = 0, shape2 anchored at x = a.
/// For rectangular shapes the anchor is the left edge, for smooth shapes
/// the center.
struct DoubleBarrierSpec {
    double v1 = 0.0; // eV
    double v2 = 0.0; // eV
    BarrierShape shape1;
    BarrierShape shape2;
    double a = 0.0;           // nm
    double mass_factor = 1.0; // m*/m_e
};

/// Value of a single hump anchored at the origin.
double shape_value(const BarrierShape& s, double height, double x);

/// Evaluable double-barrier potential with tail-support metadata.
/// Immutable after construction; evaluation is pure.
class Potential {
public:
    double operator()(double x) const {
        return shape_value(spec_.shape1, spec_.v1, x) +
               shape_value(spec_.shape2, spec_.v2, x - spec_.a);
    }

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double v_max() const { return v_max_; }
    double eps_tail() const { return eps_tail_; }
    double mass_factor() const { return spec_.mass_factor; }
    const DoubleBarrierSpec& spec() const { return spec_; }

    /// Interior discontinuities (rectangular edges) inside [x_min, x_max].
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    bool empty() const { return x_max_ <= x_min_; }

private:
    friend Potential make_potential(const DoubleBarrierSpec&, double);

    DoubleBarrierSpec spec_;
    double eps_tail_ = 0.0;
    double x_min_ = 0.0;
    double x_max_ = 0.0;
    double v_max_ = 0.0;
    std::vector<double> breakpoints_;
};

/// Builds the potential and its support bounds: |V(x)| < eps_tail outside
/// [x_min, x_max]. Both heights zero gives the valid empty potential with
/// x_min = x_max = 0.
Potential make_potential(const DoubleBarrierSpec& spec, double eps_tail = 1e-6);

/// Separation mapping used when comparing rectangular and gaussian barriers:
/// a_gauss = 3 w1 + 3 w2 + a_rect.
double equivalent_gaussian_separation(double w1, double w2, double a_rect);

} // namespace qtb

#endif
