#include "shadowfold/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shadowfold {

namespace {
constexpr double kPi = std::numbers::pi;

void require_non_apex(const ConeVector& z, const char* who) {
    if (z.is_apex()) fail(ErrorCode::domain, std::string(who) + ": base must not be the apex");
}
}  // namespace

TangentVector make_tangent(const ConeVector& base, std::optional<EdgeGerm> page, double phi,
                           double magnitude) {
    require_non_apex(base, "make_tangent");
    if (!(magnitude >= 0.0)) fail(ErrorCode::invalid_argument, "tangent magnitude must be >= 0");
    if (!(phi >= 0.0) || phi > kPi)
        fail(ErrorCode::invalid_argument, "tangent angle must lie in [0, pi]");
    TangentVector u;
    u.base = base;
    if (magnitude == 0.0) return u;
    u.magnitude = magnitude;
    u.phi = phi;
    if (phi == 0.0 || phi == kPi)
        u.page.reset();
    else
        u.page = page;
    if (u.phi != 0.0 && u.phi != kPi && !u.page)
        fail(ErrorCode::invalid_argument, "non-radial tangent needs a page");
    return u;
}

int TangentSphere::page_of(const EdgeGerm& germ) const {
    for (std::size_t i = 0; i < germs.size(); ++i)
        if (germs[i] == germ) return static_cast<int>(i);
    fail(ErrorCode::invalid_argument, "germ is not a page of this tangent sphere");
}

GraphPoint TangentSphere::embed(const std::optional<EdgeGerm>& page, double phi) const {
    if (!page) {
        if (phi == 0.0) return graph->vertex_point(pole_out);
        if (phi == kPi) return graph->vertex_point(pole_in);
        fail(ErrorCode::invalid_argument, "radial embedding needs phi in {0, pi}");
    }
    return graph->edge_point(static_cast<EdgeId>(page_of(*page)), phi);
}

TangentSphere tangent_sphere_at(const MetricGraph& g, const ConeVector& z) {
    require_non_apex(z, "tangent_sphere_at");
    TangentSphere sphere;
    sphere.germs = g.germs_at(z.dir);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < sphere.germs.size(); ++i)
        edges.push_back(Edge{"p" + std::to_string(i), 0, 1, kPi});
    sphere.graph = std::make_shared<MetricGraph>(std::vector<std::string>{"out", "in"},
                                                 std::move(edges));
    return sphere;
}

double angle_between(const MetricGraph& g, const TangentVector& u1, const TangentVector& u2) {
    (void)g;
    if (!(u1.base == u2.base))
        fail(ErrorCode::invalid_argument, "angle_between: mismatched base points");
    if (u1.magnitude == 0.0 || u2.magnitude == 0.0)
        fail(ErrorCode::domain, "angle_between: zero vector has no angle");
    double d;
    if (!u1.page || !u2.page || *u1.page == *u2.page)
        d = std::abs(u1.phi - u2.phi);
    else
        d = std::min(u1.phi + u2.phi, 2.0 * kPi - u1.phi - u2.phi);
    return std::min(d, kPi);
}

TangentVector log_at(const MetricGraph& g, const ConeVector& z, const ConeVector& w) {
    require_non_apex(z, "log_at");
    if (w == z) fail(ErrorCode::domain, "log_at: log of the base point is undefined");
    if (w.is_apex()) return make_tangent(z, std::nullopt, kPi, z.norm);
    if (w.dir == z.dir) {
        if (w.norm > z.norm) return make_tangent(z, std::nullopt, 0.0, w.norm - z.norm);
        return make_tangent(z, std::nullopt, kPi, z.norm - w.norm);
    }
    double ds = g.distance(z.dir, w.dir);
    if (ds >= kPi) return make_tangent(z, std::nullopt, kPi, z.norm + w.norm);
    GraphPath path = g.witness_path(z.dir, w.dir);
    // Develop the sector: z at (|z|, 0), w at polar angle ds.
    double wx = w.norm * std::cos(ds) - z.norm;
    double wy = w.norm * std::sin(ds);
    double phi = std::atan2(wy, wx);  // in (0, pi) since wy > 0
    double m = std::hypot(wx, wy);
    return make_tangent(z, initial_direction(path), phi, m);
}

ConeVector exp_at(const MetricGraph& g, const TangentVector& u) {
    require_non_apex(u.base, "exp_at");
    if (u.magnitude == 0.0) return u.base;
    const double r = u.base.norm;
    if (!u.page) {
        if (u.phi == 0.0) return make_vector(u.base.dir, r + u.magnitude);
        // phi == pi: toward the apex
        if (u.magnitude > r)
            fail(ErrorCode::range, "exp_at: segment runs past the apex");
        return make_vector(u.base.dir, r - u.magnitude);
    }
    double ex = r + u.magnitude * std::cos(u.phi);
    double ey = u.magnitude * std::sin(u.phi);
    double arc = std::atan2(ey, ex);  // polar angle swept, in (0, pi)
    double reach = g.germ_reach(u.base.dir, *u.page, kPi);
    if (arc > reach)
        fail(ErrorCode::range, "exp_at: developed segment leaves the flat sector");
    double radius = std::hypot(ex, ey);
    if (radius == 0.0) return ConeVector::apex();
    return make_vector(g.walk(u.base.dir, *u.page, arc), radius);
}

ParallelRay::ParallelRay(const MetricGraph& g, const ConeVector& z, const ConeVector& v)
    : graph_(&g), z_(z), v_(v) {
    require_non_apex(z, "parallel_ray_from");
    if (v.is_apex()) fail(ErrorCode::domain, "parallel_ray_from: direction must not be the apex");
    if (std::abs(v.norm - 1.0) > 1e-12)
        fail(ErrorCode::invalid_argument, "parallel_ray_from: direction vector must be unit");
    if (v.dir == z.dir) {
        theta_ = 0.0;
        dirpath_.start = dirpath_.end = z.dir;
        return;
    }
    theta_ = g.distance(z.dir, v.dir);
    if (theta_ >= kPi) {
        bent_ = true;
        return;
    }
    dirpath_ = g.witness_path(z.dir, v.dir);
}

ConeVector ParallelRay::eval(double t) const {
    if (!(t >= 0.0)) fail(ErrorCode::invalid_argument, "ray parameter must be >= 0");
    if (bent_) {
        if (t < z_.norm) return make_vector(z_.dir, z_.norm - t);
        if (t == z_.norm) return ConeVector::apex();
        return make_vector(v_.dir, t - z_.norm);
    }
    double x = z_.norm + t * std::cos(theta_);
    double y = t * std::sin(theta_);
    double r = std::hypot(x, y);
    if (theta_ == 0.0) return make_vector(z_.dir, r);
    double arc = std::clamp(std::atan2(y, x), 0.0, theta_);
    return make_vector(graph_->point_along(dirpath_, arc), r);
}

TangentVector ParallelRay::initial_tangent() const {
    if (bent_) return make_tangent(z_, std::nullopt, kPi, 1.0);
    if (theta_ == 0.0) return make_tangent(z_, std::nullopt, 0.0, 1.0);
    return make_tangent(z_, initial_direction(dirpath_), theta_, 1.0);
}

DistanceProfile parallel_distance_profile(const MetricGraph& g, const ConeVector& z,
                                          const ConeVector& v, double t_max, int samples,
                                          const ConeVector& reference) {
    if (samples < 2) fail(ErrorCode::invalid_argument, "profile needs at least 2 samples");
    if (!(t_max > 0.0)) fail(ErrorCode::invalid_argument, "profile needs t_max > 0");
    ParallelRay ray(g, z, v);
    std::optional<ParallelRay> ref_ray;
    if (!reference.is_apex()) ref_ray.emplace(g, reference, v);
    DistanceProfile out;
    out.max = 0.0;
    out.min = kInfiniteLength;
    for (int i = 0; i < samples; ++i) {
        double t = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
        ConeVector a = ray.eval(t);
        ConeVector b = ref_ray ? ref_ray->eval(t) : make_vector(v.dir, t);
        double f = cone_distance(g, a, b);
        out.t.push_back(t);
        out.f.push_back(f);
        out.max = std::max(out.max, f);
        out.min = std::min(out.min, f);
    }
    out.constant = (out.max - out.min) <= 1e-9;
    return out;
}

TangentVector radial_transport(const MetricGraph& g, const TangentVector& u,
                               const ConeVector& z) {
    (void)g;
    require_non_apex(u.base, "radial_transport");
    if (z.is_apex())
        fail(ErrorCode::domain,
             "radial_transport: apex endpoint (use radial_transport_from_apex)");
    if (!(u.base.dir == z.dir))
        fail(ErrorCode::invalid_argument, "radial_transport: points are not on the same ray");
    TangentVector out = u;
    out.base = z;
    return out;
}

TangentVector radial_transport_from_apex(const MetricGraph& g, const ConeVector& z,
                                         const ConeVector& v) {
    require_non_apex(z, "radial_transport_from_apex");
    if (v.is_apex()) fail(ErrorCode::domain, "radial_transport_from_apex: zero vector");
    if (v.dir == z.dir) return make_tangent(z, std::nullopt, 0.0, v.norm);
    double ds = g.distance(z.dir, v.dir);
    if (ds >= kPi) return make_tangent(z, std::nullopt, kPi, v.norm);
    GraphPath path = g.witness_path(z.dir, v.dir);
    return make_tangent(z, initial_direction(path), ds, v.norm);
}

double chord_angle(const MetricGraph& g, const TangentVector& u1, const TangentVector& u2,
                   double s) {
    if (!(u1.base == u2.base)) fail(ErrorCode::invalid_argument, "chord_angle: mismatched bases");
    if (!(s > 0.0)) fail(ErrorCode::invalid_argument, "chord_angle: scale must be positive");
    TangentVector a = u1, b = u2;
    a.magnitude = s;
    b.magnitude = s;
    ConeVector va = exp_at(g, a);
    ConeVector vb = exp_at(g, b);
    double c = cone_distance(g, va, vb);
    double cosv = (2.0 * s * s - c * c) / (2.0 * s * s);
    return std::acos(std::clamp(cosv, -1.0, 1.0));
}

FirstVariationReport first_variation_check(const MetricGraph& g, const ConeVector& p,
                                           const ConeVector& q, const TangentVector& u,
                                           double h_min) {
    require_non_apex(q, "first_variation_check");
    if (p == q) fail(ErrorCode::domain, "first_variation_check: p equals q");
    if (std::abs(u.magnitude - 1.0) > 1e-9)
        fail(ErrorCode::invalid_argument, "first_variation_check: u must be unit");
    if (!(h_min > 0.0)) fail(ErrorCode::invalid_argument, "first_variation_check: h_min > 0");

    FirstVariationReport report;
    report.expected = -std::cos(angle_between(g, log_at(g, q, p), u));

    double h = h_min;
    ConeVector moved;
    for (int attempt = 0;; ++attempt) {
        try {
            TangentVector step = u;
            step.magnitude = h;
            moved = exp_at(g, step);
            break;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::range || attempt >= 60)
                fail(ErrorCode::hypothesis, "first_variation_check: no valid step size");
            h *= 0.5;
        }
    }
    double l0 = cone_distance(g, p, q);
    double lh = cone_distance(g, p, moved);
    report.derivative = (lh - l0) / h;
    report.h = h;
    report.error = std::abs(report.derivative - report.expected);
    return report;
}

}  // namespace shadowfold
