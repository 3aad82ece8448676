#include "qtb/potential.hpp"

#include <algorithm>
#include <cmath>

#include "qtb/constants.hpp"

namespace qtb {

double shape_value(const BarrierShape& s, double height, double x) {
    if (height == 0.0) return 0.0;
    switch (s.kind) {
    case ShapeKind::rectangular:
        return (x >= 0.0 && x < s.param) ? height : 0.0;
    case ShapeKind::gaussian:
        return height * std::exp(-x * x / (2.0 * s.param * s.param));
    case ShapeKind::lorentzian:
        return height / (1.0 + x * x / (s.param * s.param));
    }
    return 0.0;
}

double equivalent_gaussian_separation(double w1, double w2, double a_rect) {
    require(w1 >= 0 && w2 >= 0 && a_rect >= 0, errc::invalid_argument,
            "equivalent_gaussian_separation: negative input");
    return 3.0 * w1 + 3.0 * w2 + a_rect;
}

namespace {

// Half-width of the region where a single hump stays >= eps.
double support_radius(const BarrierShape& s, double height, double eps) {
    if (height <= eps) return 0.0;
    switch (s.kind) {
    case ShapeKind::rectangular:
        return s.param; // handled asymmetrically by the caller
    case ShapeKind::gaussian:
        return s.param * std::sqrt(2.0 * std::log(height / eps));
    case ShapeKind::lorentzian:
        return s.param * std::sqrt(height / eps - 1.0);
    }
    return 0.0;
}

void validate(const DoubleBarrierSpec& spec, double eps_tail) {
    require(eps_tail > 0, errc::invalid_argument, "eps_tail must be positive");
    require(spec.v1 >= 0 && spec.v2 >= 0, errc::invalid_argument,
            "barrier heights must be non-negative");
    require(spec.a >= 0, errc::invalid_argument, "separation must be non-negative");
    require(spec.mass_factor > 0, errc::invalid_argument, "mass_factor must be positive");
    require(spec.shape1.param > 0 && spec.shape2.param > 0, errc::invalid_argument,
            "shape width/sigma/gamma must be positive");
    const double vmax = std::max(spec.v1, spec.v2);
    if (vmax > 0)
        require(eps_tail < vmax, errc::invalid_argument,
                "eps_tail must be below the tallest barrier");
}

} // namespace

Potential make_potential(const DoubleBarrierSpec& spec, double eps_tail) {
    validate(spec, eps_tail);

    Potential p;
    p.spec_ = spec;
    p.eps_tail_ = eps_tail;

    if (spec.v1 == 0.0 && spec.v2 == 0.0) {
        p.x_min_ = p.x_max_ = 0.0;
        p.v_max_ = 0.0;
        return p;
    }

    // Each hump is cut where it alone falls below eps/2, so the sum stays
    // below eps outside [x_min, x_max].
    const double half_eps = 0.5 * eps_tail;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    auto extend = [&](const BarrierShape& s, double height, double anchor) {
        if (height <= half_eps) return;
        double l, r;
        if (s.kind == ShapeKind::rectangular) {
            l = anchor;
            r = anchor + s.param;
        } else {
            const double rad = support_radius(s, height, half_eps);
            l = anchor - rad;
            r = anchor + rad;
        }
        if (first) {
            lo = l;
            hi = r;
            first = false;
        } else {
            lo = std::min(lo, l);
            hi = std::max(hi, r);
        }
    };
    extend(spec.shape1, spec.v1, 0.0);
    extend(spec.shape2, spec.v2, spec.a);
    if (first) {
        // both humps below the tail threshold: treat as empty
        p.x_min_ = p.x_max_ = 0.0;
        p.v_max_ = 0.0;
        return p;
    }
    p.x_min_ = lo;
    p.x_max_ = hi;

    auto add_edges = [&](const BarrierShape& s, double height, double anchor) {
        if (s.kind != ShapeKind::rectangular || height == 0.0) return;
        for (double e : {anchor, anchor + s.param})
            if (e > p.x_min_ && e < p.x_max_) p.breakpoints_.push_back(e);
    };
    add_edges(spec.shape1, spec.v1, 0.0);
    add_edges(spec.shape2, spec.v2, spec.a);
    std::sort(p.breakpoints_.begin(), p.breakpoints_.end());
    p.breakpoints_.erase(std::unique(p.breakpoints_.begin(), p.breakpoints_.end()),
                         p.breakpoints_.end());

    // Global maximum. Rectangular-only specs are piecewise constant, so
    // interval midpoints are exact; smooth specs get a dense scan plus a
    // short golden-section refinement around the best cell.
    const bool pure_rect = spec.shape1.kind == ShapeKind::rectangular &&
                           spec.shape2.kind == ShapeKind::rectangular;
    if (pure_rect) {
        std::vector<double> cuts{p.x_min_};
        cuts.insert(cuts.end(), p.breakpoints_.begin(), p.breakpoints_.end());
        cuts.push_back(p.x_max_);
        double best = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            best = std::max(best, p(0.5 * (cuts[i] + cuts[i + 1])));
        p.v_max_ = best;
    } else {
        const int n = 20000;
        const double span = p.x_max_ - p.x_min_;
        double best_x = p.x_min_, best_v = -1.0;
        for (int i = 0; i <= n; ++i) {
            const double x = p.x_min_ + span * i / n;
            const double v = p(x);
            if (v > best_v) {
                best_v = v;
                best_x = x;
            }
        }
        double a = best_x - span / n, b = best_x + span / n;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - gr * (b - a), d = a + gr * (b - a);
        for (int it = 0; it < 80; ++it) {
            if (p(c) < p(d)) {
                a = c;
                c = d;
                d = a + gr * (b - a);
            } else {
                b = d;
                d = c;
                c = b - gr * (b - a);
            }
        }
        p.v_max_ = std::max(best_v, p(0.5 * (a + b)));
    }
    return p;
}

} // namespace qtb
