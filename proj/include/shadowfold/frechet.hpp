#pragma once

#include <cstdint>
#include <vector>

#include "shadowfold/limit_log.hpp"

namespace shadowfold {

struct WeightedPoint {
    ConeVector point;
    double weight = 1.0;  // > 0
};

struct WeightedConfiguration {
    std::vector<WeightedPoint> masses;

    double total_weight() const;
    double max_radius() const;
    double diameter(const MetricGraph& g) const;  // max pairwise cone distance
    void validate() const;
};

/// Weighted sum of squared cone distances.
double objective(const MetricGraph& g, const ConeVector& x, const WeightedConfiguration& cfg);

struct SolverReport {
    ConeVector mean;
    double objective_value = 0.0;
    long iterations = 0;
    /// Objective excess over the best oracle candidate; NaN when the solver
    /// ran without an oracle.
    double gap = 0.0;
};

/// Inductive mean: walk from the current iterate toward a weight-sampled
/// configuration point, stepping w / (W + w) of the way. Needs only
/// geodesics, so it is total even where exp is partial.
SolverReport frechet_mean_sturm(const MetricGraph& g, const WeightedConfiguration& cfg,
                                long iterations, std::uint64_t seed);

/// Brute-force oracle: exhaustive argmin over the apex, the configuration
/// points, `extra` and a direction x radius grid at resolution delta.
SolverReport frechet_mean_grid(const MetricGraph& g, const WeightedConfiguration& cfg,
                               double delta, const std::vector<ConeVector>& extra = {});

struct DragReport {
    ConeVector old_mean, new_mean;
    double direction_deviation = 0.0;  // d_s(dir m, dir m')
    double radius_drop = 0.0;          // |m| - |m'|
    double delta = 0.0;
};

/// Adding mass in the shadow of the mean direction must pull the mean
/// straight down its own ray. Both means come from the grid oracle over the
/// same candidate set, so zero added weight reproduces the old mean exactly.
DragReport shadow_drag_experiment(const MetricGraph& g, const WeightedConfiguration& cfg,
                                  const ConeVector& added, double weight, double delta);

}  // namespace shadowfold
