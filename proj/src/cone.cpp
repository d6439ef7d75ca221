#include "shadowfold/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shadowfold {

namespace {
constexpr double kPi = std::numbers::pi;
}

double angle_at_apex(const MetricGraph& g, const ConeVector& v, const ConeVector& w) {
    if (v.is_apex() || w.is_apex())
        fail(ErrorCode::domain, "angle_at_apex: undefined for the apex");
    return std::min(g.distance(v.dir, w.dir), kPi);
}

double inner_product(const MetricGraph& g, const ConeVector& v, const ConeVector& w) {
    if (v.is_apex() || w.is_apex()) return 0.0;
    if (v.dir == w.dir) return v.norm * w.norm;
    return v.norm * w.norm * std::cos(angle_at_apex(g, v, w));
}

double cone_distance(const MetricGraph& g, const ConeVector& v, const ConeVector& w) {
    if (v.is_apex()) return w.norm;
    if (w.is_apex()) return v.norm;
    if (v.dir == w.dir) return std::abs(v.norm - w.norm);
    double ds = g.distance(v.dir, w.dir);
    if (ds >= kPi) return v.norm + w.norm;
    // Law of cosines in the cancellation-free half-angle form: nearby points
    // would otherwise lose half the mantissa under the square root.
    double chord = 2.0 * std::sqrt(v.norm * w.norm) * std::sin(0.5 * ds);
    return std::hypot(v.norm - w.norm, chord);
}

ConeGeodesic::ConeGeodesic(const MetricGraph& g, const ConeVector& a, const ConeVector& b)
    : graph_(&g), a_(a), b_(b) {
    length_ = cone_distance(g, a, b);
    if (a.is_apex() || b.is_apex() || a.dir == b.dir || length_ == 0.0) {
        kind_ = Kind::straight;
        const GraphPoint d = b.is_apex() ? a.dir : b.dir;
        dirpath_.start = dirpath_.end = d;
        theta_ = 0.0;
        ax_ = a.norm;
        bx_ = b.norm;
        by_ = 0.0;
        if (a.is_apex() && b.is_apex()) ax_ = bx_ = 0.0;
        // a.dir == b.dir with both non-apex: a radial segment, handled by the
        // same development (collinear points on the x-axis).
        return;
    }
    double ds = g.distance(a.dir, b.dir);
    if (ds >= kPi) {
        kind_ = Kind::through_apex;
        theta_ = kPi;
        return;
    }
    kind_ = Kind::straight;
    dirpath_ = g.witness_path(a.dir, b.dir);
    theta_ = ds;
    ax_ = a.norm;
    bx_ = b.norm * std::cos(theta_);
    by_ = b.norm * std::sin(theta_);
}

ConeVector ConeGeodesic::eval(double t) const {
    if (!(t >= 0.0) || t > 1.0) fail(ErrorCode::invalid_argument, "eval: t outside [0, 1]");
    if (kind_ == Kind::through_apex) {
        double s = t * length_;
        if (s < a_.norm) return make_vector(a_.dir, a_.norm - s);
        if (s == a_.norm) return ConeVector::apex();
        return make_vector(b_.dir, s - a_.norm);
    }
    double x = (1.0 - t) * ax_ + t * bx_;
    double y = t * by_;
    double r = std::hypot(x, y);
    if (r == 0.0) return ConeVector::apex();
    if (theta_ == 0.0) return make_vector(dirpath_.start, r);
    double arc = std::clamp(std::atan2(y, x), 0.0, theta_);
    return make_vector(graph_->point_along(dirpath_, arc), r);
}

double ConeGeodesic::direction_arc_at(double t) const {
    if (kind_ != Kind::straight) fail(ErrorCode::domain, "direction_arc_at: through-apex geodesic");
    double x = (1.0 - t) * ax_ + t * bx_;
    double y = t * by_;
    if (x == 0.0 && y == 0.0) return 0.0;
    return std::clamp(std::atan2(y, x), 0.0, theta_);
}

double ConeGeodesic::param_of_arc(double arc) const {
    if (kind_ != Kind::straight) fail(ErrorCode::domain, "param_of_arc: through-apex geodesic");
    if (arc <= 0.0) return 0.0;
    if (arc >= theta_) return 1.0;
    // Solve cross(P(t), u) = 0 for the ray u at polar angle `arc`.
    double ux = std::cos(arc), uy = std::sin(arc);
    double ca = ax_ * uy;                    // cross(A, u), A = (ax, 0)
    double cb = bx_ * uy - by_ * ux;         // cross(B, u)
    double denom = ca - cb;
    if (denom == 0.0) return 0.0;
    return std::clamp(ca / denom, 0.0, 1.0);
}

ScalingCheck scaled_geodesic_check(const MetricGraph& g, const ConeVector& v, const ConeVector& w,
                                   double t) {
    if (!(t >= 0.0) || t > 1.0)
        fail(ErrorCode::invalid_argument, "scaled_geodesic_check: t outside [0, 1]");
    ScalingCheck out;
    ConeVector tv = scale(v, t), tw = scale(w, t);
    double left = cone_distance(g, tv, tw);
    double right = t * cone_distance(g, v, w);
    out.max_distance_error = std::abs(left - right);
    ConeGeodesic base(g, v, w), scaled_geo(g, tv, tw);
    for (int i = 0; i <= 8; ++i) {
        double s = static_cast<double>(i) / 8.0;
        ConeVector expect = scale(base.eval(s), t);
        ConeVector got = scaled_geo.eval(s);
        out.max_point_error = std::max(out.max_point_error, cone_distance(g, expect, got));
    }
    return out;
}

ComparisonTrial comparison_trial(const MetricGraph& g, const ConeVector& x, const ConeVector& y,
                                 const ConeVector& z, double t) {
    ComparisonTrial trial;
    trial.x = x;
    trial.y = y;
    trial.z = z;
    trial.t = t;
    double a = cone_distance(g, y, z);
    double b = cone_distance(g, x, y);
    double c = cone_distance(g, x, z);
    ConeGeodesic gamma(g, y, z);
    trial.cone_side = cone_distance(g, x, gamma.eval(t));
    // Comparison triangle in the plane: y' at the origin, z' at (a, 0).
    double px, py;
    if (a == 0.0) {
        px = b;
        py = 0.0;
    } else {
        px = (b * b + a * a - c * c) / (2.0 * a);
        py = std::sqrt(std::max(0.0, b * b - px * px));
    }
    trial.comparison_side = std::hypot(px - t * a, py);
    trial.excess = trial.cone_side - trial.comparison_side;
    return trial;
}

}  // namespace shadowfold
