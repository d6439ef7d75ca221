#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "shadowfold/cone.hpp"

namespace shadowfold {

/// A tangent vector at a non-apex point, in open-book polar coordinates:
/// the page (edge germ at the base direction), the polar angle from the
/// outward radial direction, and the magnitude. phi = 0 points away from the
/// apex, phi = pi toward it; at those values the page collapses to "radial"
/// (no page stored). The zero vector stores neither page nor angle.
struct TangentVector {
    ConeVector base;
    std::optional<EdgeGerm> page;  // nullopt = radial
    double phi = 0.0;              // [0, pi]
    double magnitude = 0.0;        // >= 0

    bool is_radial() const { return !page.has_value(); }
};

TangentVector make_tangent(const ConeVector& base, std::optional<EdgeGerm> page, double phi,
                           double magnitude);

/// The unit tangent sphere at a non-apex point: two poles (outward and
/// inward radial) joined by one arc of length pi per edge germ at the base
/// direction. For k >= 2 germs every pair of arcs closes a 2 pi cycle.
struct TangentSphere {
    std::shared_ptr<const MetricGraph> graph;  // the theta graph
    std::vector<EdgeGerm> germs;               // germ of page i, arcs oriented out -> in
    VertexId pole_out = 0;
    VertexId pole_in = 1;

    int page_count() const { return static_cast<int>(germs.size()); }
    int page_of(const EdgeGerm& germ) const;
    /// Point of the theta graph for a tangent germ/angle pair.
    GraphPoint embed(const std::optional<EdgeGerm>& page, double phi) const;
};

TangentSphere tangent_sphere_at(const MetricGraph& g, const ConeVector& z);

/// Angle between two tangent vectors at the same base, in [0, pi].
double angle_between(const MetricGraph& g, const TangentVector& u1, const TangentVector& u2);

/// Tangent at z of the geodesic from z to w, with magnitude d(z, w).
TangentVector log_at(const MetricGraph& g, const ConeVector& z, const ConeVector& w);

/// Partial inverse of log_at. The developed segment must stay inside the
/// flat sector over the page germ (no branch or leaf crossing) and must not
/// run past the apex; outside that region a range error is raised.
ConeVector exp_at(const MetricGraph& g, const TangentVector& u);

/// The unique unit-speed ray from z parallel to the ray through V. Below
/// angle pi it is the straight ray inside the developed flat strip; at pi
/// and beyond it runs through the apex and continues along V.
class ParallelRay {
public:
    ParallelRay(const MetricGraph& g, const ConeVector& z, const ConeVector& v);

    ConeVector eval(double t) const;
    TangentVector initial_tangent() const;
    bool bends_through_apex() const { return bent_; }
    const ConeVector& start() const { return z_; }

private:
    const MetricGraph* graph_;
    ConeVector z_, v_;
    bool bent_ = false;
    double theta_ = 0.0;
    GraphPath dirpath_;
};

/// Sampled distance profile f(t) = d(ray_z(t), ray_ref(t)) between the
/// parallel ray from z and the reference parallel ray from `reference`
/// (the ray through V itself when the reference is the apex).
struct DistanceProfile {
    std::vector<double> t;
    std::vector<double> f;
    double max = 0.0, min = 0.0;
    bool constant = false;  // max - min <= 1e-9
};
DistanceProfile parallel_distance_profile(const MetricGraph& g, const ConeVector& z,
                                          const ConeVector& v, double t_max, int samples,
                                          const ConeVector& reference = ConeVector::apex());

/// Radial transport along the common ray of the base of u and z: identical
/// open-book coordinates re-based at z. Involutive by construction; that it
/// is an isometry is checked independently by the chord oracle.
TangentVector radial_transport(const MetricGraph& g, const TangentVector& u, const ConeVector& z);

/// Radial transport from the apex to z = exp_O(Z). Directions at angular
/// distance >= pi from Z (the shadow) all map to the inward radial vector;
/// norms are always preserved.
TangentVector radial_transport_from_apex(const MetricGraph& g, const ConeVector& z,
                                         const ConeVector& v);

/// Chord construction at scale s: the angle between u1 and u2 recovered
/// from the three exact cone distances of the exponentiated triangle. Flat
/// apex triangles make this independent of s, so it serves as an oracle for
/// both the open-book angle formula and transport isometry.
double chord_angle(const MetricGraph& g, const TangentVector& u1, const TangentVector& u2,
                   double s);

struct FirstVariationReport {
    double derivative = 0.0;  // one-sided finite difference
    double expected = 0.0;    // -cos(angle(log_q p, u))
    double h = 0.0;           // step actually used
    double error = 0.0;
};
FirstVariationReport first_variation_check(const MetricGraph& g, const ConeVector& p,
                                           const ConeVector& q, const TangentVector& u,
                                           double h_min);

}  // namespace shadowfold
