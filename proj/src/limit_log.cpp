#include "shadowfold/limit_log.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace shadowfold {

namespace {

constexpr double kPi = std::numbers::pi;

using IntervalList = std::vector<std::pair<double, double>>;

IntervalList intersect(const IntervalList& a, const IntervalList& b) {
    IntervalList out;
    for (const auto& [alo, ahi] : a)
        for (const auto& [blo, bhi] : b) {
            double lo = std::max(alo, blo), hi = std::min(ahi, bhi);
            if (lo <= hi) out.emplace_back(lo, hi);
        }
    std::sort(out.begin(), out.end());
    return out;
}

void require_nonzero(const ConeVector& v, const char* who) {
    if (v.is_apex()) fail(ErrorCode::domain, std::string(who) + ": zero vector");
}

}  // namespace

bool ShadowRegions::empty() const {
    for (const auto& edge : per_edge)
        if (!edge.empty()) return false;
    return true;
}

ShadowRegions shadow(const MetricGraph& g, const ConeVector& z) {
    require_nonzero(z, "shadow");
    ShadowRegions out;
    out.z_dir = z.dir;
    out.per_edge.resize(g.edge_count());
    std::vector<double> dz = g.distances_to_vertices(z.dir);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        // Distance from dir(z) to offset x on this edge is the lower envelope
        // of du + x, dv + (len - x) and, on z's own edge, |x - s|. All pieces
        // have slope +-1, so the shadow condition d >= pi intersects to at
        // most two closed intervals.
        IntervalList keep{{0.0, ed.length}};
        keep = intersect(keep, {{kPi - dz[ed.u], kInfiniteLength}});
        keep = intersect(keep, {{-kInfiniteLength, dz[ed.v] + ed.length - kPi}});
        if (!z.dir.is_vertex && z.dir.edge == e) {
            double s = z.dir.offset;
            keep = intersect(keep, {{-kInfiniteLength, s - kPi}, {s + kPi, kInfiniteLength}});
        }
        out.per_edge[e] = keep;
        for (const auto& [lo, hi] : keep) out.total_measure += hi - lo;
    }
    return out;
}

bool in_shadow(const MetricGraph& g, const ConeVector& v, const ConeVector& z) {
    require_nonzero(v, "in_shadow");
    require_nonzero(z, "in_shadow");
    return g.distance(v.dir, z.dir) >= kPi;
}

ConeVector LimitCone::carrier_vector(const LimitVector& v) const {
    if (v.norm == 0.0) return ConeVector::apex();
    if (v.page < 0) {
        if (v.phi == 0.0) return spine_plus(v.norm);
        if (v.phi == kPi) return spine_minus(v.norm);
        fail(ErrorCode::invalid_argument, "spine vector needs phi in {0, pi}");
    }
    return make_vector(carrier().edge_point(static_cast<EdgeId>(v.page), v.phi), v.norm);
}

ConeVector LimitCone::spine_plus(double norm) const {
    return make_vector(carrier().vertex_point(sphere.pole_out), norm);
}

ConeVector LimitCone::spine_minus(double norm) const {
    return make_vector(carrier().vertex_point(sphere.pole_in), norm);
}

double LimitCone::carrier_distance(const LimitVector& a, const LimitVector& b) const {
    return cone_distance(carrier(), carrier_vector(a), carrier_vector(b));
}

double LimitCone::carrier_angle(const LimitVector& a, const LimitVector& b) const {
    return angle_at_apex(carrier(), carrier_vector(a), carrier_vector(b));
}

LimitCone limit_tangent_cone(const MetricGraph& g, const ConeVector& z) {
    require_nonzero(z, "limit_tangent_cone");
    LimitCone lc;
    lc.z = z;
    lc.sphere = tangent_sphere_at(g, z);
    return lc;
}

LimitVector limit_log(const MetricGraph& g, const ConeVector& z, const ConeVector& v) {
    require_nonzero(z, "limit_log");
    LimitVector out;
    if (v.is_apex()) return out;
    out.norm = v.norm;
    if (v.dir == z.dir) {
        out.phi = 0.0;
        return out;
    }
    double ds = g.distance(z.dir, v.dir);
    if (ds >= kPi) {
        out.phi = kPi;
        return out;
    }
    GraphPath path = g.witness_path(z.dir, v.dir);
    EdgeGerm germ = initial_direction(path);
    const auto germs = g.germs_at(z.dir);
    for (std::size_t i = 0; i < germs.size(); ++i)
        if (germs[i] == germ) {
            out.page = static_cast<int>(i);
            break;
        }
    out.phi = ds;
    return out;
}

const char* to_string(ShadowClass c) {
    switch (c) {
        case ShadowClass::disjoint: return "disjoint";
        case ShadowClass::endpoint_touch: return "endpoint-touch";
        case ShadowClass::one_interior_point: return "one-interior-point";
        case ShadowClass::segment: return "segment";
        case ShadowClass::apex_passing_miss: return "apex-passing-miss";
    }
    return "?";
}

ShadowClass geodesic_shadow_classification(const MetricGraph& g, const ConeVector& v,
                                           const ConeVector& w, const ConeVector& z) {
    require_nonzero(v, "geodesic_shadow_classification");
    require_nonzero(w, "geodesic_shadow_classification");
    require_nonzero(z, "geodesic_shadow_classification");
    if (v == w)
        return in_shadow(g, v, z) ? ShadowClass::endpoint_touch : ShadowClass::disjoint;

    double ds = g.distance(v.dir, w.dir);
    if (v.dir == w.dir) ds = 0.0;
    if (ds >= kPi) {
        // Through the apex: only the two radial legs can meet the shadow,
        // and each leg is in it exactly when its direction is.
        bool v_in = in_shadow(g, v, z), w_in = in_shadow(g, w, z);
        if (v_in || w_in) return ShadowClass::segment;
        return ShadowClass::apex_passing_miss;
    }

    // Straight geodesic: directions sweep the shortest path from dir(v) to
    // dir(w); intersect the per-edge shadow arcs with the traversed sub-arcs.
    GraphPath path = (v.dir == w.dir) ? GraphPath{} : g.witness_path(v.dir, w.dir);
    ShadowRegions sh = shadow(g, z);
    IntervalList hits;
    double acc = 0.0;
    for (const PathSegment& seg : path.segments) {
        double lo = std::min(seg.from, seg.to), hi = std::max(seg.from, seg.to);
        for (const auto& [rlo, rhi] : sh.per_edge[seg.edge]) {
            double ilo = std::max(lo, rlo), ihi = std::min(hi, rhi);
            if (ilo > ihi) continue;
            double a0, a1;
            if (seg.forward()) {
                a0 = acc + (ilo - seg.from);
                a1 = acc + (ihi - seg.from);
            } else {
                a0 = acc + (seg.from - ihi);
                a1 = acc + (seg.from - ilo);
            }
            hits.emplace_back(a0, a1);
        }
        acc += seg.length();
    }
    if (v.dir == w.dir && in_shadow(g, v, z)) hits.emplace_back(0.0, 0.0);
    if (hits.empty()) return ShadowClass::disjoint;
    std::sort(hits.begin(), hits.end());
    IntervalList merged{hits.front()};
    for (std::size_t i = 1; i < hits.size(); ++i) {
        if (hits[i].first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, hits[i].second);
        else
            merged.push_back(hits[i]);
    }
    bool positive = false;
    for (const auto& [lo, hi] : merged) positive |= hi > lo;
    if (positive || merged.size() > 1) return ShadowClass::segment;
    double point = merged.front().first;
    double total = path.length;
    if (point == 0.0 || point == total) return ShadowClass::endpoint_touch;
    return ShadowClass::one_interior_point;
}

bool geodesic_folds_across(const MetricGraph& g, const ConeVector& v, const ConeVector& w,
                           const ConeVector& z) {
    require_nonzero(v, "geodesic_folds_across");
    require_nonzero(w, "geodesic_folds_across");
    require_nonzero(z, "geodesic_folds_across");
    if (v.dir == w.dir) return false;
    if (g.distance(v.dir, w.dir) >= kPi) return false;  // radial legs keep their pages

    GraphPath path = g.witness_path(v.dir, w.dir);
    std::vector<double> dz = g.distances_to_vertices(z.dir);

    // Piecewise-linear profile of d_s(dir z, .) along the path. All pieces
    // have slope +-1, so kinks sit at candidate crossings; collect them and
    // scan for an interior local minimum at positive height.
    std::vector<std::pair<double, double>> profile;  // (arc, h)
    double acc = 0.0;
    for (const PathSegment& seg : path.segments) {
        const Edge& ed = g.edge(seg.edge);
        double du = dz[ed.u], dv = dz[ed.v];
        bool z_here = !z.dir.is_vertex && z.dir.edge == seg.edge;
        double s = z_here ? z.dir.offset : 0.0;
        auto h_at = [&](double x) {
            double h = std::min(du + x, dv + ed.length - x);
            if (z_here) h = std::min(h, std::abs(x - s));
            return h;
        };
        double xlo = std::min(seg.from, seg.to), xhi = std::max(seg.from, seg.to);
        std::vector<double> xs{xlo, xhi};
        auto push = [&](double x) {
            if (x > xlo && x < xhi) xs.push_back(x);
        };
        push((dv + ed.length - du) / 2.0);
        if (z_here) {
            push(s);
            push((s - du) / 2.0);
            push((dv + ed.length + s) / 2.0);
        }
        std::sort(xs.begin(), xs.end());
        if (!seg.forward()) std::reverse(xs.begin(), xs.end());
        for (double x : xs) {
            double arc = acc + std::abs(x - seg.from);
            if (!profile.empty() && profile.back().first == arc) continue;
            profile.emplace_back(arc, h_at(x));
        }
        acc += seg.length();
    }
    for (std::size_t i = 1; i + 1 < profile.size(); ++i)
        if (profile[i].second > 0.0 && profile[i - 1].second > profile[i].second &&
            profile[i + 1].second > profile[i].second)
            return true;
    return false;
}

SumPiReport check_sum_pi(const LimitCone& lc, const LimitVector& w) {
    if (w.norm == 0.0) fail(ErrorCode::domain, "check_sum_pi: zero vector");
    SumPiReport r;
    ConeVector cw = lc.carrier_vector(w);
    r.to_plus = angle_at_apex(lc.carrier(), lc.spine_plus(1.0), cw);
    r.to_minus = angle_at_apex(lc.carrier(), cw, lc.spine_minus(1.0));
    r.defect = std::abs(r.to_plus + r.to_minus - kPi);
    return r;
}

AngleToZReport check_angle_to_z(const MetricGraph& g, const LimitCone& lc, const ConeVector& v) {
    require_nonzero(v, "check_angle_to_z");
    AngleToZReport r;
    r.source = angle_at_apex(g, v, lc.z);
    ConeVector img = lc.carrier_vector(limit_log(g, lc.z, v));
    r.image = angle_at_apex(lc.carrier(), img, lc.spine_plus(1.0));
    r.defect = std::abs(r.source - r.image);
    return r;
}

ContractionReport check_contraction(const MetricGraph& g, const LimitCone& lc,
                                    const ConeVector& v, const ConeVector& w) {
    ContractionReport r;
    ConeVector iv = lc.carrier_vector(limit_log(g, lc.z, v));
    ConeVector iw = lc.carrier_vector(limit_log(g, lc.z, w));
    if (!v.is_apex() && !w.is_apex())
        r.angle_excess =
            angle_at_apex(lc.carrier(), iv, iw) - angle_at_apex(g, v, w);
    r.distance_excess = cone_distance(lc.carrier(), iv, iw) - cone_distance(g, v, w);
    return r;
}

IsometryReport check_isometry(const MetricGraph& g, const LimitCone& lc, const ConeVector& v,
                              const ConeVector& w) {
    ShadowClass c = geodesic_shadow_classification(g, v, w, lc.z);
    if (c != ShadowClass::disjoint && c != ShadowClass::endpoint_touch &&
        c != ShadowClass::one_interior_point)
        fail(ErrorCode::hypothesis,
             std::string("check_isometry: classification '") + to_string(c) +
                 "' is outside the isometry hypotheses");
    if (geodesic_folds_across(g, v, w, lc.z))
        fail(ErrorCode::hypothesis,
             "check_isometry: the direction path folds across dir(Z); only the contraction "
             "statement covers this pair");
    IsometryReport r;
    r.regime = c;
    ConeVector iv = lc.carrier_vector(limit_log(g, lc.z, v));
    ConeVector iw = lc.carrier_vector(limit_log(g, lc.z, w));
    r.distance_defect =
        std::abs(cone_distance(g, v, w) - cone_distance(lc.carrier(), iv, iw));
    ConeGeodesic up(g, v, w);
    ConeGeodesic down(lc.carrier(), iv, iw);
    for (int i = 0; i <= 31; ++i) {
        double t = static_cast<double>(i) / 31.0;
        ConeVector img_of_point = lc.carrier_vector(limit_log(g, lc.z, up.eval(t)));
        double gap = cone_distance(lc.carrier(), img_of_point, down.eval(t));
        r.max_pointwise = std::max(r.max_pointwise, gap);
    }
    return r;
}

ContinuityReport check_continuity(const MetricGraph& g, const LimitCone& lc,
                                  const GraphPoint& boundary, const EdgeGerm& outward,
                                  const std::vector<double>& offsets) {
    ContinuityReport r;
    ConeVector target = lc.carrier_vector(limit_log(g, lc.z, make_vector(boundary, 1.0)));
    r.monotone = true;
    double prev = kInfiniteLength;
    for (double eps : offsets) {
        GraphPoint probe = g.walk(boundary, outward, eps);
        ConeVector img = lc.carrier_vector(limit_log(g, lc.z, make_vector(probe, 1.0)));
        double gap = cone_distance(lc.carrier(), img, target);
        if (gap >= prev) r.monotone = false;
        prev = gap;
        r.offsets.push_back(eps);
        r.gaps.push_back(gap);
    }
    return r;
}

std::vector<BoundaryApproach> boundary_approaches(const MetricGraph& g, const ConeVector& z,
                                                  double room) {
    ShadowRegions sh = shadow(g, z);
    std::vector<BoundaryApproach> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& regions = sh.per_edge[e];
        double len = g.edge(e).length;
        for (std::size_t i = 0; i < regions.size(); ++i) {
            auto [lo, hi] = regions[i];
            double left_free = (i == 0) ? lo : lo - regions[i - 1].second;
            if (lo - room >= 0.0 && left_free >= room)
                out.push_back(BoundaryApproach{g.edge_point(e, lo), EdgeGerm{e, false}});
            double right_free = (i + 1 == regions.size()) ? len - hi : regions[i + 1].first - hi;
            if (hi + room <= len && right_free >= room)
                out.push_back(BoundaryApproach{g.edge_point(e, hi), EdgeGerm{e, true}});
        }
    }
    return out;
}

double Hull::total_measure() const {
    double m = 0.0;
    for (const auto& edge : per_edge)
        for (const auto& [lo, hi] : edge) m += hi - lo;
    return m;
}

double Hull::direction_gap(const MetricGraph& g, const GraphPoint& p) const {
    std::vector<double> dp = g.distances_to_vertices(p);
    double best = kInfiniteLength;
    for (EdgeId e = 0; e < per_edge.size(); ++e) {
        const Edge& ed = g.edge(e);
        for (const auto& [lo, hi] : per_edge[e]) {
            best = std::min(best, dp[ed.u] + lo);
            best = std::min(best, dp[ed.v] + ed.length - hi);
            if (!p.is_vertex && p.edge == e)
                best = std::min(best, std::abs(p.offset - std::clamp(p.offset, lo, hi)));
        }
    }
    return best;
}

std::vector<GraphPoint> Hull::sample_directions(const MetricGraph& g) const {
    std::vector<GraphPoint> out;
    for (EdgeId e = 0; e < per_edge.size(); ++e)
        for (const auto& [lo, hi] : per_edge[e]) {
            for (double x = lo; x < hi; x += delta) out.push_back(g.edge_point(e, x));
            out.push_back(g.edge_point(e, hi));
        }
    return out;
}

namespace {

struct CellSet {
    double delta;
    std::vector<std::vector<char>> cells;  // per edge
    std::size_t marked = 0;

    CellSet(const MetricGraph& g, double delta_) : delta(delta_) {
        cells.resize(g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            std::size_t n =
                static_cast<std::size_t>(std::ceil(g.edge(e).length / delta)) + 1;
            cells[e].assign(n, 0);
        }
    }

    void mark_range(const MetricGraph& g, EdgeId e, double lo, double hi) {
        double len = g.edge(e).length;
        lo = std::clamp(lo, 0.0, len);
        hi = std::clamp(hi, 0.0, len);
        auto& row = cells[e];
        std::size_t i0 = static_cast<std::size_t>(lo / delta);
        std::size_t i1 = std::min(static_cast<std::size_t>(hi / delta), row.size() - 1);
        for (std::size_t i = i0; i <= i1; ++i)
            if (!row[i]) {
                row[i] = 1;
                ++marked;
            }
    }

    void mark_point(const MetricGraph& g, const GraphPoint& p) {
        if (p.is_vertex) {
            // every incident edge end owns the vertex
            for (const EdgeGerm& germ : g.germs_at(p)) {
                double off = germ.forward ? 0.0 : g.edge(germ.edge).length;
                mark_range(g, germ.edge, off, off);
            }
        } else {
            mark_range(g, p.edge, p.offset, p.offset);
        }
    }

    void mark_path(const MetricGraph& g, const GraphPath& path) {
        for (const PathSegment& s : path.segments)
            mark_range(g, s.edge, std::min(s.from, s.to), std::max(s.from, s.to));
    }

    std::vector<std::vector<std::pair<double, double>>> runs(const MetricGraph& g) const {
        std::vector<std::vector<std::pair<double, double>>> out(cells.size());
        for (EdgeId e = 0; e < cells.size(); ++e) {
            const auto& row = cells[e];
            double len = g.edge(e).length;
            std::size_t i = 0;
            while (i < row.size()) {
                if (!row[i]) {
                    ++i;
                    continue;
                }
                std::size_t j = i;
                while (j + 1 < row.size() && row[j + 1]) ++j;
                double lo = std::min(static_cast<double>(i) * delta, len);
                double hi = std::min(static_cast<double>(j + 1) * delta, len);
                out[e].emplace_back(lo, hi);
                i = j + 1;
            }
        }
        return out;
    }
};

}  // namespace

Hull hull(const MetricGraph& g, const std::vector<ConeVector>& s, double delta) {
    if (!(delta > 0.0)) fail(ErrorCode::invalid_argument, "hull: delta must be positive");
    CellSet cells(g, delta);
    std::vector<GraphPoint> seeds;
    for (const ConeVector& v : s)
        if (!v.is_apex()) {
            seeds.push_back(v.dir);
            cells.mark_point(g, v.dir);
        }

    std::size_t cell_bound = 0;
    for (const auto& row : cells.cells) cell_bound += row.size();

    for (std::size_t round = 0; round <= cell_bound + 1; ++round) {
        std::size_t before = cells.marked;
        std::vector<GraphPoint> generators = seeds;
        auto runs = cells.runs(g);
        for (EdgeId e = 0; e < runs.size(); ++e)
            for (const auto& [lo, hi] : runs[e]) {
                generators.push_back(g.edge_point(e, lo));
                generators.push_back(g.edge_point(e, hi));
            }
        for (std::size_t i = 0; i < generators.size(); ++i)
            for (std::size_t j = i + 1; j < generators.size(); ++j) {
                double d = g.distance(generators[i], generators[j]);
                if (d <= 0.0 || d >= kPi) continue;  // apex routes add no directions
                cells.mark_path(g, g.witness_path(generators[i], generators[j]));
            }
        if (cells.marked == before) break;
    }

    Hull out;
    out.delta = delta;
    out.per_edge = cells.runs(g);
    return out;
}

HullSubcommuteReport check_hull_subcommute(const MetricGraph& g, const LimitCone& lc,
                                           const std::vector<ConeVector>& s, double delta) {
    HullSubcommuteReport r;
    Hull upstairs = hull(g, s, delta);
    std::vector<ConeVector> images;
    for (const ConeVector& v : s)
        if (!v.is_apex()) images.push_back(lc.carrier_vector(limit_log(g, lc.z, v)));
    Hull downstairs = hull(lc.carrier(), images, delta);
    for (const GraphPoint& d : upstairs.sample_directions(g)) {
        ConeVector img = lc.carrier_vector(limit_log(g, lc.z, make_vector(d, 1.0)));
        double gap = downstairs.direction_gap(lc.carrier(), img.dir);
        r.max_gap = std::max(r.max_gap, gap);
        ++r.samples;
    }
    return r;
}

}  // namespace shadowfold
