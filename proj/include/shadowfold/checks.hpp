#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shadowfold/bundles.hpp"
#include "shadowfold/rng.hpp"

namespace shadowfold {

struct SuiteParams {
    long trials = -1;          // -1: suite default
    std::uint64_t seed = 0;
    double tol = -1.0;         // -1: suite default
    long replay = -1;          // >= 0: run only this trial, verbosely
};

struct Failure {
    long trial = 0;
    std::string witness;
};

struct SuiteResult {
    std::string suite;
    std::string space;
    long trials = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    long checked = 0;              // assertions actually evaluated
    long failure_count = 0;
    std::vector<Failure> failures; // first few, with replayable witnesses
    std::vector<std::pair<std::string, std::string>> extra;
    double elapsed_s = 0.0;
    std::string verbose;           // replay dump
    long replay = -1;              // carried through to the trial runner

    bool pass() const { return failure_count == 0; }
    std::string report() const;    // line-oriented key=value
};

std::vector<std::string> suite_names();

/// Run one named verification suite against a space. Deterministic for a
/// fixed seed; trials run in parallel with per-trial derived streams.
SuiteResult run_check(const Space& space, const std::string& suite, const SuiteParams& params);

// Sampling helpers shared by suites and tests.
GraphPoint random_graph_point(const MetricGraph& g, Rng& rng);
ConeVector random_cone_vector(const MetricGraph& g, Rng& rng, double r_min, double r_max);
/// A direction inside the shadow of z, when the shadow is nonempty.
std::optional<GraphPoint> random_shadow_direction(const MetricGraph& g, const ShadowRegions& sh,
                                                  Rng& rng);

/// The angle-jump table: at each basepoint down the 5pi/4 ray of the
/// quadrant plane, the boundary-parallel germ pair meets at exactly pi/2,
/// while the limits of those germs (the two boundary rays) meet at the apex
/// at exactly pi.
struct AngleJumpRow {
    double radius = 0.0;
    double phi_east = 0.0;       // germ running parallel to the horizontal boundary
    double phi_north = 0.0;      // tangent of the parallel ray toward the vertical boundary
    double angle = 0.0;          // angle between the two germs
    double max_extension = 0.0;  // how far the east germ exponentiates before the boundary
};
struct AngleJumpDemo {
    std::vector<AngleJumpRow> rows;
    double apex_angle = 0.0;
    double jump = 0.0;
    bool pass = false;
};
AngleJumpDemo angle_discontinuity_demo(const MetricGraph& quadrant, int row_count);

}  // namespace shadowfold
