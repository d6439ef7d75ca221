#pragma once

#include <optional>
#include <string>

#include "shadowfold/metric_graph.hpp"

namespace shadowfold {

/// A point of the cone over the direction graph, doubling as a tangent
/// vector at the apex: a direction and a radius. Radius 0 is the apex; the
/// direction is then ignored.
struct ConeVector {
    GraphPoint dir;
    double norm = 0.0;

    bool is_apex() const { return norm == 0.0; }
    static ConeVector apex() { return ConeVector{}; }

    friend bool operator==(const ConeVector& a, const ConeVector& b) {
        if (a.is_apex() || b.is_apex()) return a.is_apex() && b.is_apex();
        return a.dir == b.dir && a.norm == b.norm;
    }
};

inline ConeVector make_vector(const GraphPoint& dir, double norm) {
    if (!(norm >= 0.0)) fail(ErrorCode::invalid_argument, "cone vector norm must be >= 0");
    if (norm == 0.0) return ConeVector::apex();
    return ConeVector{dir, norm};
}

inline ConeVector scale(const ConeVector& v, double c) {
    if (!(c >= 0.0)) fail(ErrorCode::invalid_argument, "scale factor must be >= 0");
    return make_vector(v.dir, c * v.norm);
}

/// Apex angle in [0, pi]: the angular distance of the two directions capped
/// at pi. Undefined when either input is the apex.
double angle_at_apex(const MetricGraph& g, const ConeVector& v, const ConeVector& w);

/// <v,w> = |v||w| cos(angle); 0 when either input is the apex.
double inner_product(const MetricGraph& g, const ConeVector& v, const ConeVector& w);

/// Law-of-cosines metric on the cone.
double cone_distance(const MetricGraph& g, const ConeVector& v, const ConeVector& w);

/// Constant-speed geodesic between two cone points. Angles below pi are
/// realized by developing the sector over the direction path into the plane
/// and folding the chord back; angle exactly pi passes through the apex.
class ConeGeodesic {
public:
    enum class Kind { straight, through_apex };

    ConeGeodesic(const MetricGraph& g, const ConeVector& a, const ConeVector& b);

    Kind kind() const { return kind_; }
    double length() const { return length_; }
    const ConeVector& endpoint_a() const { return a_; }
    const ConeVector& endpoint_b() const { return b_; }
    /// Opening angle of the planar development (straight kind).
    double development_angle() const { return theta_; }
    const GraphPath& direction_path() const { return dirpath_; }

    ConeVector eval(double t) const;  // t in [0, 1]

    /// For the straight kind: the polar angle swept in the development at
    /// parameter t, increasing from 0 (at a) to the development angle (at b).
    double direction_arc_at(double t) const;
    /// Inverse of direction_arc_at.
    double param_of_arc(double arc) const;

private:
    const MetricGraph* graph_;
    ConeVector a_, b_;
    Kind kind_ = Kind::straight;
    double length_ = 0.0;
    double theta_ = 0.0;       // development opening angle, in [0, pi)
    double ax_ = 0.0;          // a at (ax, 0) in the development
    double bx_ = 0.0, by_ = 0.0;
    GraphPath dirpath_;        // direction path from dir(a) to dir(b)
};

/// Report for the scaling identities d(tV,tW) = t d(V,W) and
/// t.geodesic(V,W) = geodesic(tV,tW), evaluated on a sample grid.
struct ScalingCheck {
    double max_distance_error = 0.0;
    double max_point_error = 0.0;
};
ScalingCheck scaled_geodesic_check(const MetricGraph& g, const ConeVector& v, const ConeVector& w,
                                   double t);

/// The log map at the apex. The cone is its own tangent cone at the apex, so
/// this is the identity on the representation; it exists to make the
/// basepoint explicit at call sites.
inline ConeVector log_apex(const ConeVector& x) { return x; }

/// One CAT(0) comparison-triangle trial: d(x, geodesic_yz(t)) must not
/// exceed the matching distance in the planar comparison triangle.
struct ComparisonTrial {
    ConeVector x, y, z;
    double t = 0.0;
    double cone_side = 0.0;        // d(x, gamma(t))
    double comparison_side = 0.0;  // Euclidean counterpart
    double excess = 0.0;           // cone_side - comparison_side
};
ComparisonTrial comparison_trial(const MetricGraph& g, const ConeVector& x, const ConeVector& y,
                                 const ConeVector& z, double t);

}  // namespace shadowfold
