#pragma once

#include <utility>
#include <vector>

#include "shadowfold/tangent.hpp"

namespace shadowfold {

/// The shadow of Z: all directions at angular distance >= pi from dir(Z),
/// as maximal disjoint closed sub-arcs per edge (single points allowed).
struct ShadowRegions {
    GraphPoint z_dir;
    std::vector<std::vector<std::pair<double, double>>> per_edge;  // [lo, hi] offsets
    double total_measure = 0.0;

    bool empty() const;
};

ShadowRegions shadow(const MetricGraph& g, const ConeVector& z);

/// d_s(dir v, dir z) >= pi, exact closed comparison.
bool in_shadow(const MetricGraph& g, const ConeVector& v, const ConeVector& z);

/// A vector of the limit tangent cone along Z: a page index into the
/// carrier's arcs, the angle from the outward spine, and a norm. The spine
/// vectors are page-free (page = -1 at phi in {0, pi} and for the zero
/// vector).
struct LimitVector {
    int page = -1;
    double phi = 0.0;   // [0, pi]
    double norm = 0.0;

    friend bool operator==(const LimitVector& a, const LimitVector& b) {
        if (a.norm == 0.0 || b.norm == 0.0) return a.norm == b.norm;
        return a.page == b.page && a.phi == b.phi && a.norm == b.norm;
    }
};

/// The limit tangent cone along Z: the cone over a theta graph with one arc
/// per edge germ at dir(Z). +spine is the image of Z/|Z| (outward pole);
/// -spine points back toward the apex (inward pole).
struct LimitCone {
    ConeVector z;
    TangentSphere sphere;

    const MetricGraph& carrier() const { return *sphere.graph; }
    ConeVector carrier_vector(const LimitVector& v) const;
    ConeVector spine_plus(double norm) const;
    ConeVector spine_minus(double norm) const;
    double carrier_distance(const LimitVector& a, const LimitVector& b) const;
    double carrier_angle(const LimitVector& a, const LimitVector& b) const;
};

LimitCone limit_tangent_cone(const MetricGraph& g, const ConeVector& z);

/// The limit log map along Z. Norm preserving; the whole shadow collapses
/// onto the inward spine, everything else keeps its angle to Z and the germ
/// of its direction path.
LimitVector limit_log(const MetricGraph& g, const ConeVector& z, const ConeVector& v);

/// How the geodesic VW meets the shadow of Z. "segment" covers every
/// intersection larger than a single point, including a second component.
/// "apex_passing_miss" flags the through-apex geodesic whose two legs both
/// avoid the shadow; no isometry statement covers that regime.
enum class ShadowClass { disjoint, endpoint_touch, one_interior_point, segment, apex_passing_miss };

const char* to_string(ShadowClass c);

ShadowClass geodesic_shadow_classification(const MetricGraph& g, const ConeVector& v,
                                           const ConeVector& w, const ConeVector& z);

/// True when the direction path of the geodesic VW makes a closest approach
/// to dir(Z) at strictly positive angular distance and moves away again. The
/// limit log then folds the two sides of the approach onto one page (on an
/// open book, the pages beyond Z's page land on top of each other), so no
/// isometry statement covers the pair even if it never meets the shadow.
/// Impossible on circles and segments; needs a branch vertex.
bool geodesic_folds_across(const MetricGraph& g, const ConeVector& v, const ConeVector& w,
                           const ConeVector& z);

/// Checks below return defect reports; callers assert against their
/// tolerances. Each one mirrors a statement proved for the limit log map.
struct SumPiReport {
    double to_plus = 0.0;    // angle(+spine, w)
    double to_minus = 0.0;   // angle(w, -spine)
    double defect = 0.0;     // |to_plus + to_minus - pi|
};
SumPiReport check_sum_pi(const LimitCone& lc, const LimitVector& w);

struct AngleToZReport {
    double source = 0.0;   // angle(v, z) upstairs
    double image = 0.0;    // angle(L v, +spine) downstairs
    double defect = 0.0;
};
AngleToZReport check_angle_to_z(const MetricGraph& g, const LimitCone& lc, const ConeVector& v);

struct ContractionReport {
    double angle_excess = 0.0;     // image angle - source angle (positive is bad)
    double distance_excess = 0.0;  // image distance - source distance
};
ContractionReport check_contraction(const MetricGraph& g, const LimitCone& lc,
                                    const ConeVector& v, const ConeVector& w);

struct IsometryReport {
    ShadowClass regime;
    double distance_defect = 0.0;   // |d(v,w) - d(Lv,Lw)|
    double max_pointwise = 0.0;     // geodesic image vs image geodesic, 32 samples
};
/// Raises a hypothesis error unless the classification is one the isometry
/// statements cover (disjoint, endpoint touch, or a single interior point).
IsometryReport check_isometry(const MetricGraph& g, const LimitCone& lc, const ConeVector& v,
                              const ConeVector& w);

struct ContinuityReport {
    std::vector<double> offsets;
    std::vector<double> gaps;  // carrier distance of the image to -spine
    bool monotone = false;
};
/// Images of unit directions approaching a shadow boundary point from
/// outside must converge to the image of the boundary point itself.
ContinuityReport check_continuity(const MetricGraph& g, const LimitCone& lc,
                                  const GraphPoint& boundary, const EdgeGerm& outward,
                                  const std::vector<double>& offsets);

struct BoundaryApproach {
    GraphPoint boundary;
    EdgeGerm outward;  // germ at `boundary` pointing out of the shadow
};
/// A shadow boundary point with at least `room` of non-shadow arc behind it,
/// if one exists.
std::vector<BoundaryApproach> boundary_approaches(const MetricGraph& g, const ConeVector& z,
                                                  double room);

/// Discretized geodesically convex cone hull of the directions of S: cells
/// of size delta, closed under witnessed shortest direction paths between
/// region endpoints until a fixed point.
struct Hull {
    double delta = 0.0;
    std::vector<std::vector<std::pair<double, double>>> per_edge;  // closed arcs

    double total_measure() const;
    /// d_s from a direction to the hull's direction set.
    double direction_gap(const MetricGraph& g, const GraphPoint& p) const;
    std::vector<GraphPoint> sample_directions(const MetricGraph& g) const;
};

Hull hull(const MetricGraph& g, const std::vector<ConeVector>& s, double delta);

struct HullSubcommuteReport {
    double max_gap = 0.0;  // worst carrier-direction gap of an image sample
    int samples = 0;
};
HullSubcommuteReport check_hull_subcommute(const MetricGraph& g, const LimitCone& lc,
                                           const std::vector<ConeVector>& s, double delta);

}  // namespace shadowfold
