#include "shadowfold/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "shadowfold/rng.hpp"

namespace shadowfold {

namespace {
constexpr double kPi = std::numbers::pi;
}

double WeightedConfiguration::total_weight() const {
    double w = 0.0;
    for (const WeightedPoint& m : masses) w += m.weight;
    return w;
}

double WeightedConfiguration::max_radius() const {
    double r = 0.0;
    for (const WeightedPoint& m : masses) r = std::max(r, m.point.norm);
    return r;
}

double WeightedConfiguration::diameter(const MetricGraph& g) const {
    double d = 0.0;
    for (std::size_t i = 0; i < masses.size(); ++i)
        for (std::size_t j = i + 1; j < masses.size(); ++j)
            d = std::max(d, cone_distance(g, masses[i].point, masses[j].point));
    return d;
}

void WeightedConfiguration::validate() const {
    if (masses.empty()) fail(ErrorCode::invalid_argument, "configuration is empty");
    for (const WeightedPoint& m : masses)
        if (!(m.weight > 0.0) || !std::isfinite(m.weight))
            fail(ErrorCode::invalid_argument, "configuration weights must be positive and finite");
}

double objective(const MetricGraph& g, const ConeVector& x, const WeightedConfiguration& cfg) {
    double f = 0.0;
    for (const WeightedPoint& m : cfg.masses) {
        double d = cone_distance(g, x, m.point);
        f += m.weight * d * d;
    }
    return f;
}

SolverReport frechet_mean_sturm(const MetricGraph& g, const WeightedConfiguration& cfg,
                                long iterations, std::uint64_t seed) {
    cfg.validate();
    if (iterations < 1) fail(ErrorCode::invalid_argument, "frechet_mean_sturm: iterations >= 1");
    Rng rng(seed);
    std::vector<double> cumulative;
    double total = 0.0;
    for (const WeightedPoint& m : cfg.masses) {
        total += m.weight;
        cumulative.push_back(total);
    }
    auto sample = [&]() -> const WeightedPoint& {
        double u = rng.next_double() * total;
        std::size_t i =
            std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
        return cfg.masses[std::min(i, cfg.masses.size() - 1)];
    };

    const WeightedPoint& first = sample();
    ConeVector x = first.point;
    double running_weight = first.weight;
    for (long k = 1; k < iterations; ++k) {
        const WeightedPoint& xi = sample();
        double t = xi.weight / (running_weight + xi.weight);
        x = ConeGeodesic(g, x, xi.point).eval(t);
        running_weight += xi.weight;
    }
    SolverReport r;
    r.mean = x;
    r.objective_value = objective(g, x, cfg);
    r.iterations = iterations;
    r.gap = std::numeric_limits<double>::quiet_NaN();
    return r;
}

SolverReport frechet_mean_grid(const MetricGraph& g, const WeightedConfiguration& cfg,
                               double delta, const std::vector<ConeVector>& extra) {
    cfg.validate();
    if (!(delta > 0.0)) fail(ErrorCode::invalid_argument, "frechet_mean_grid: delta > 0");

    const std::size_t n = cfg.masses.size();
    double r_max = cfg.max_radius();
    for (const ConeVector& v : extra) r_max = std::max(r_max, v.norm);

    // The mean lies in the closed ball around the apex through the farthest
    // mass, so the radius grid stops there.
    double best_obj = objective(g, ConeVector::apex(), cfg);
    ConeVector best = ConeVector::apex();
    auto consider = [&](const ConeVector& x) {
        double f = objective(g, x, cfg);
        if (f < best_obj) {
            best_obj = f;
            best = x;
        }
    };
    for (const WeightedPoint& m : cfg.masses) consider(m.point);
    for (const ConeVector& v : extra) consider(v);

    // Direction x radius sweep; per-direction angle table keeps the inner
    // radius loop flat.
    const double dir_step = delta * 0.5;
    const double rad_step = delta * 0.5;
    std::vector<std::vector<double>> vert_dist(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!cfg.masses[i].point.is_apex())
            vert_dist[i] = g.distances_to_vertices(cfg.masses[i].point.dir);

    std::vector<double> cos_angle(n), radius(n), weight(n);
    for (std::size_t i = 0; i < n; ++i) {
        radius[i] = cfg.masses[i].point.norm;
        weight[i] = cfg.masses[i].weight;
    }
    long n_rad = static_cast<long>(std::floor(r_max / rad_step)) + 1;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        long n_dir = static_cast<long>(std::floor(ed.length / dir_step));
        for (long k = 0; k <= n_dir; ++k) {
            double x = std::min(static_cast<double>(k) * dir_step, ed.length);
            for (std::size_t i = 0; i < n; ++i) {
                const ConeVector& p = cfg.masses[i].point;
                if (p.is_apex()) {
                    cos_angle[i] = 1.0;  // unused: distance is just the radius
                    continue;
                }
                double ds = std::min(vert_dist[i][ed.u] + x, vert_dist[i][ed.v] + ed.length - x);
                if (!p.dir.is_vertex && p.dir.edge == e)
                    ds = std::min(ds, std::abs(p.dir.offset - x));
                cos_angle[i] = std::cos(std::min(ds, kPi));
            }
            for (long jr = 1; jr <= n_rad; ++jr) {
                double r = std::min(static_cast<double>(jr) * rad_step, r_max);
                double f = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    double d2 = cfg.masses[i].point.is_apex()
                                    ? r * r
                                    : r * r + radius[i] * radius[i] -
                                          2.0 * r * radius[i] * cos_angle[i];
                    f += weight[i] * std::max(0.0, d2);
                }
                if (f < best_obj) {
                    best_obj = f;
                    best = make_vector(g.edge_point(e, x), r);
                }
            }
        }
    }

    SolverReport r;
    r.mean = best;
    r.objective_value = best_obj;
    r.iterations = 0;
    r.gap = 0.0;
    return r;
}

DragReport shadow_drag_experiment(const MetricGraph& g, const WeightedConfiguration& cfg,
                                  const ConeVector& added, double weight, double delta) {
    cfg.validate();
    if (weight < 0.0) fail(ErrorCode::invalid_argument, "shadow_drag: weight must be >= 0");
    if (added.is_apex()) fail(ErrorCode::invalid_argument, "shadow_drag: added mass at the apex");

    std::vector<ConeVector> candidates{added};
    SolverReport before = frechet_mean_grid(g, cfg, delta, candidates);
    if (before.mean.is_apex())
        fail(ErrorCode::domain, "shadow_drag: the configuration mean is the apex");
    if (weight > 0.0 && !in_shadow(g, added, before.mean))
        fail(ErrorCode::hypothesis, "shadow_drag: added direction is not in the mean's shadow");

    WeightedConfiguration larger = cfg;
    if (weight > 0.0) larger.masses.push_back(WeightedPoint{added, weight});
    SolverReport after = frechet_mean_grid(g, larger, delta, candidates);
    if (after.mean.is_apex())
        fail(ErrorCode::hypothesis, "shadow_drag: added mass pushed the mean to the apex");

    DragReport r;
    r.old_mean = before.mean;
    r.new_mean = after.mean;
    r.direction_deviation = g.distance(before.mean.dir, after.mean.dir);
    r.radius_drop = before.mean.norm - after.mean.norm;
    r.delta = delta;
    return r;
}

}  // namespace shadowfold
