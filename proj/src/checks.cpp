#include "shadowfold/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

#include "shadowfold/rng.hpp"

namespace shadowfold {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxStoredFailures = 8;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Trial body: returns a witness string on failure, increments `checked` for
// every assertion it evaluates. `verbose` collects a dump during replay.
using TrialFn = std::function<std::optional<std::string>(long trial, Rng& rng, long& checked,
                                                         std::string* verbose)>;

void run_trials(SuiteResult& result, long trials, TrialFn fn) {
    if (result.tol < 0.0) fail(ErrorCode::invalid_argument, "suite tolerance unset");
    if (result.suite.empty()) fail(ErrorCode::invalid_argument, "suite name unset");
    const std::uint64_t seed = result.seed;
    result.trials = trials;

    if (trials <= 0) return;

    struct Chunk {
        long begin = 0, end = 0;
        long checked = 0;
        std::vector<Failure> failures;
        long failure_count = 0;
    };
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    long per = std::max<long>(1, (trials + workers - 1) / workers);
    std::vector<Chunk> chunks;
    for (long b = 0; b < trials; b += per) chunks.push_back(Chunk{b, std::min(trials, b + per), 0, {}, 0});

    auto work = [&](Chunk& c) {
        for (long trial = c.begin; trial < c.end; ++trial) {
            Rng rng = trial_rng(seed, static_cast<std::uint64_t>(trial));
            std::optional<std::string> witness = fn(trial, rng, c.checked, nullptr);
            if (witness) {
                ++c.failure_count;
                if (c.failures.size() < kMaxStoredFailures)
                    c.failures.push_back(Failure{trial, *witness});
            }
        }
    };
    std::vector<std::future<void>> futures;
    for (std::size_t i = 1; i < chunks.size(); ++i)
        futures.push_back(std::async(std::launch::async, work, std::ref(chunks[i])));
    work(chunks[0]);
    for (auto& f : futures) f.get();

    for (const Chunk& c : chunks) {
        result.checked += c.checked;
        result.failure_count += c.failure_count;
        for (const Failure& f : c.failures)
            if (result.failures.size() < kMaxStoredFailures) result.failures.push_back(f);
    }
}

void run_replay(SuiteResult& result, long trials, TrialFn fn, long replay) {
    if (replay < 0 || replay >= trials)
        fail(ErrorCode::invalid_argument, "replay trial outside [0, trials)");
    result.trials = trials;
    Rng rng = trial_rng(result.seed, static_cast<std::uint64_t>(replay));
    std::string verbose;
    std::optional<std::string> witness = fn(replay, rng, result.checked, &verbose);
    result.verbose = verbose;
    if (witness) {
        result.failure_count = 1;
        result.failures.push_back(Failure{replay, *witness});
    }
}

void note(std::string* verbose, const std::string& line) {
    if (verbose) *verbose += line + "\n";
}

}  // namespace

std::string SuiteResult::report() const {
    std::ostringstream out;
    out << "suite=" << suite << "\n";
    out << "space=" << space << "\n";
    out << "trials=" << trials << "\n";
    out << "seed=" << seed << "\n";
    out << "tol=" << fmt(tol) << "\n";
    out << "checked=" << checked << "\n";
    out << "failures=" << failure_count << "\n";
    for (const auto& [k, v] : extra) out << k << "=" << v << "\n";
    for (const Failure& f : failures)
        out << "witness=" << suite << "/" << space << "/" << seed << "/" << f.trial << " "
            << f.witness << "\n";
    out << "elapsed_s=" << fmt(elapsed_s) << "\n";
    out << "result=" << (pass() ? "pass" : "FAIL") << "\n";
    if (!verbose.empty()) out << verbose;
    return out.str();
}

GraphPoint random_graph_point(const MetricGraph& g, Rng& rng) {
    double target = rng.next_double() * g.total_length();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (target <= ed.length) return g.edge_point(e, std::min(target, ed.length));
        target -= ed.length;
    }
    return g.edge_point(static_cast<EdgeId>(g.edge_count() - 1),
                        g.edge(static_cast<EdgeId>(g.edge_count() - 1)).length);
}

ConeVector random_cone_vector(const MetricGraph& g, Rng& rng, double r_min, double r_max) {
    GraphPoint dir = random_graph_point(g, rng);
    double r = rng.uniform(r_min, r_max);
    if (r <= 0.0) return ConeVector::apex();
    return make_vector(dir, r);
}

std::optional<GraphPoint> random_shadow_direction(const MetricGraph& g, const ShadowRegions& sh,
                                                  Rng& rng) {
    if (sh.empty()) return std::nullopt;
    if (sh.total_measure > 0.0) {
        double target = rng.next_double() * sh.total_measure;
        for (EdgeId e = 0; e < sh.per_edge.size(); ++e)
            for (const auto& [lo, hi] : sh.per_edge[e]) {
                if (target <= hi - lo) return g.edge_point(e, std::min(lo + target, hi));
                target -= hi - lo;
            }
    }
    // Only degenerate regions: pick one point uniformly.
    std::vector<GraphPoint> points;
    for (EdgeId e = 0; e < sh.per_edge.size(); ++e)
        for (const auto& [lo, hi] : sh.per_edge[e]) points.push_back(g.edge_point(e, lo));
    if (points.empty()) return std::nullopt;
    return points[rng.next_below(points.size())];
}

namespace {

// ---------------------------------------------------------------- metric --

SuiteResult suite_metric(const Space& space, SuiteResult r) {
    const MetricGraph& g = *space.graph;
    bool cat1 = g.validate_cat1().pass;
    TrialFn fn = [&g, cat1, tol = r.tol](long, Rng& rng, long& checked,
                                         std::string* verbose) -> std::optional<std::string> {
        GraphPoint a = random_graph_point(g, rng);
        GraphPoint b = random_graph_point(g, rng);
        GraphPoint c = random_graph_point(g, rng);
        note(verbose, "a=" + g.describe_point(a) + " b=" + g.describe_point(b) +
                          " c=" + g.describe_point(c));
        double ab = g.distance(a, b), ba = g.distance(b, a);
        double bc = g.distance(b, c), ac = g.distance(a, c);
        checked += 4;
        if (!(ab >= 0.0)) return "negative distance ab=" + fmt(ab);
        if (std::abs(ab - ba) > tol) return "asymmetric ab=" + fmt(ab) + " ba=" + fmt(ba);
        if (g.distance(a, a) != 0.0) return "d(a,a) != 0";
        if (ac > ab + bc + tol)
            return "triangle violated ac=" + fmt(ac) + " ab+bc=" + fmt(ab + bc);

        ConeVector v = random_cone_vector(g, rng, 0.0, 2.0);
        ConeVector w = random_cone_vector(g, rng, 0.0, 2.0);
        ConeVector x = random_cone_vector(g, rng, 0.0, 2.0);
        double vw = cone_distance(g, v, w), wv = cone_distance(g, w, v);
        double wx = cone_distance(g, w, x), vx = cone_distance(g, v, x);
        checked += 4;
        if (!(vw >= 0.0)) return "negative cone distance";
        if (std::abs(vw - wv) > tol) return "cone metric asymmetric";
        if (cone_distance(g, v, v) != 0.0) return "cone d(v,v) != 0";
        if (vx > vw + wx + tol)
            return "cone triangle violated vx=" + fmt(vx) + " vw+wx=" + fmt(vw + wx);

        if (cat1) {
            // short pairs never tie on a CAT(1) graph
            for (int attempt = 0; attempt < 8; ++attempt) {
                GraphPoint p = random_graph_point(g, rng);
                GraphPoint q = random_graph_point(g, rng);
                if (g.distance(p, q) >= kPi || p == q) continue;
                checked += 1;
                GraphPath path = g.shortest_path(p, q);
                if (path.tie)
                    return "unexpected tie " + g.describe_point(p) + " " + g.describe_point(q);
                break;
            }
        }
        return std::nullopt;
    };
    if (r.replay >= 0)
        run_replay(r, r.trials, fn, r.replay);
    else
        run_trials(r, r.trials, fn);
    return r;
}

// ------------------------------------------------------------------ cat0 --

SuiteResult suite_cat0(const Space& space, SuiteResult r) {
    const MetricGraph& g = *space.graph;
    const bool expect_cat0 = space.expect_cat0.value_or(g.validate_cat1().pass);
    TrialFn fn = [&g, expect_cat0, tol = r.tol](long, Rng& rng, long& checked,
                                                std::string* verbose) -> std::optional<std::string> {
        ConeVector x = random_cone_vector(g, rng, 0.0, 2.0);
        ConeVector y = random_cone_vector(g, rng, 0.0, 2.0);
        ConeVector z = random_cone_vector(g, rng, 0.0, 2.0);
        double t = rng.next_double();
        ComparisonTrial trial = comparison_trial(g, x, y, z, t);
        checked += 1;
        note(verbose, "x=" + g.describe_point(x.dir) + "@" + fmt(x.norm) +
                          " y=" + g.describe_point(y.dir) + "@" + fmt(y.norm) +
                          " z=" + g.describe_point(z.dir) + "@" + fmt(z.norm) + " t=" + fmt(t) +
                          " cone=" + fmt(trial.cone_side) + " cmp=" + fmt(trial.comparison_side));
        bool violated = trial.excess > tol;
        if (expect_cat0 && violated)
            return "comparison violated excess=" + fmt(trial.excess) + " t=" + fmt(t);
        if (!expect_cat0 && violated)
            return "violation-witness excess=" + fmt(trial.excess);  // counted, see below
        return std::nullopt;
    };
    if (r.replay >= 0) {
        run_replay(r, r.trials, fn, r.replay);
        return r;
    }
    run_trials(r, r.trials, fn);
    if (!expect_cat0) {
        // The negative control passes when violations are found and
        // witnessed; each "failure" above is such a witness.
        r.extra.emplace_back("violations_found", std::to_string(r.failure_count));
        long found = r.failure_count;
        r.failure_count = found > 0 ? 0 : 1;
        if (found == 0) r.failures.push_back(Failure{0, "no comparison violation found"});
    }
    return r;
}

// ----------------------------------------------------------- homogeneity --

SuiteResult suite_homogeneity(const Space& space, SuiteResult r) {
    const MetricGraph& g = *space.graph;
    TrialFn fn = [&g, tol = r.tol](long, Rng& rng, long& checked,
                                   std::string* verbose) -> std::optional<std::string> {
        ConeVector v = random_cone_vector(g, rng, 0.0, 2.0);
        ConeVector w = random_cone_vector(g, rng, 0.0, 2.0);
        double t = rng.next_double();
        ScalingCheck check = scaled_geodesic_check(g, v, w, t);
        checked += 2;
        note(verbose, "v=" + g.describe_point(v.dir) + "@" + fmt(v.norm) + " w=" +
                          g.describe_point(w.dir) + "@" + fmt(w.norm) + " t=" + fmt(t) +
                          " derr=" + fmt(check.max_distance_error) +
                          " perr=" + fmt(check.max_point_error));
        if (check.max_distance_error > tol)
            return "homogeneity distance error " + fmt(check.max_distance_error);
        if (check.max_point_error > tol)
            return "scaled geodesic error " + fmt(check.max_point_error);
        return std::nullopt;
    };
    if (r.replay >= 0)
        run_replay(r, r.trials, fn, r.replay);
    else
        run_trials(r, r.trials, fn);
    return r;
}

// -------------------------------------------------------- first variation --

SuiteResult suite_firstvar(const Space& space, SuiteResult r) {
    const MetricGraph& g = *space.graph;
    TrialFn fn = [&g, tol = r.tol](long, Rng& rng, long& checked,
                                   std::string* verbose) -> std::optional<std::string> {
        ConeVector q = random_cone_vector(g, rng, 0.2, 2.0);
        ConeVector p;
        for (int attempt = 0;; ++attempt) {
            p = random_cone_vector(g, rng, 0.2, 2.0);
            if (cone_distance(g, p, q) > 0.05) break;
            if (attempt > 32) return std::nullopt;
        }
        auto germs = g.germs_at(q.dir);
        TangentVector u;
        double pick = rng.next_double();
        if (pick < 0.05)
            u = make_tangent(q, std::nullopt, 0.0, 1.0);
        else if (pick < 0.1)
            u = make_tangent(q, std::nullopt, kPi, 1.0);
        else
            u = make_tangent(q, germs[rng.next_below(germs.size())], rng.uniform(0.05, kPi - 0.05),
                             1.0);
        FirstVariationReport report = first_variation_check(g, p, q, u, 1e-6);
        checked += 1;
        note(verbose, "p=" + g.describe_point(p.dir) + "@" + fmt(p.norm) + " q=" +
                          g.describe_point(q.dir) + "@" + fmt(q.norm) + " phi=" + fmt(u.phi) +
                          " fd=" + fmt(report.derivative) + " expected=" + fmt(report.expected));
        if (report.error > tol)
            return "first variation error " + fmt(report.error) + " expected " +
                   fmt(report.expected) + " fd " + fmt(report.derivative);
        return std::nullopt;
    };
    if (r.replay >= 0)
        run_replay(r, r.trials, fn, r.replay);
    else
        run_trials(r, r.trials, fn);
    return r;
}

// ------------------------------------------------------- radial transport --

SuiteResult suite_transport(const Space& space, SuiteResult r) {
    const MetricGraph& g = *space.graph;
    TrialFn fn = [&g, tol = r.tol](long, Rng& rng, long& checked,
                                   std::string* verbose) -> std::optional<std::string> {
        GraphPoint dir = random_graph_point(g, rng);
        double r_q = rng.uniform(0.3, 2.5);
        double r_z = rng.uniform(0.3, 2.5);
        ConeVector q = make_vector(dir, r_q);
        ConeVector z = make_vector(dir, r_z);
        auto germs = g.germs_at(dir);

        TangentVector u1, u2;
        double formula = 0.0;
        bool found = false;
        for (int attempt = 0; attempt < 24 && !found; ++attempt) {
            u1 = make_tangent(q, germs[rng.next_below(germs.size())], rng.uniform(0.08, kPi - 0.08),
                              1.0);
            u2 = make_tangent(q, germs[rng.next_below(germs.size())], rng.uniform(0.08, kPi - 0.08),
                              1.0);
            formula = angle_between(g, u1, u2);
            // keep acos well conditioned in the oracle
            found = formula > 0.05 && formula < kPi - 0.05;
        }
        if (!found) return std::nullopt;

        TangentVector t1 = radial_transport(g, u1, z);
        TangentVector t2 = radial_transport(g, u2, z);
        checked += 3;
        if (angle_between(g, t1, t2) != formula) return "transport changed the coordinate angle";

        // chord oracle at both basepoints, scales in the ratio |Oq| : |Oz|
        double s_z = 0.2 * std::min(r_q, r_z);
        for (int attempt = 0;; ++attempt) {
            try {
                double s_q = s_z * (r_q / r_z);
                double at_q = chord_angle(g, u1, u2, s_q);
                double at_z = chord_angle(g, t1, t2, s_z);
                note(verbose, "dir=" + g.describe_point(dir) + " r_q=" + fmt(r_q) + " r_z=" +
                                  fmt(r_z) + " formula=" + fmt(formula) + " chord_q=" +
                                  fmt(at_q) + " chord_z=" + fmt(at_z));
                if (std::abs(at_q - formula) > tol)
                    return "chord oracle at q deviates by " + fmt(std::abs(at_q - formula));
                if (std::abs(at_z - at_q) > tol)
                    return "transport is not an isometry: " + fmt(std::abs(at_z - at_q));
                break;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::range || attempt > 40) throw;
                s_z *= 0.5;
            }
        }
        return std::nullopt;
    };
    if (r.replay >= 0)
        run_replay(r, r.trials, fn, r.replay);
    else
        run_trials(r, r.trials, fn);
    return r;
}

// -------------------------------------------------------------- limitlog --

enum LimitLogChecks : unsigned {
    kNorm = 1,
    kAngleZ = 2,
    kSumPi = 4,
    kContraction = 8,
    kCollapse = 16,
    kIsometry = 32,
    kAllLimitLog = 63,
};

SuiteResult suite_limitlog(const Space& space, SuiteResult r, unsigned mask) {
    const MetricGraph& g = *space.graph;
    double angle_tol = 1e-12;
    TrialFn fn = [&g, mask, angle_tol, tol = r.tol](
                     long, Rng& rng, long& checked,
                     std::string* verbose) -> std::optional<std::string> {
        ConeVector z = random_cone_vector(g, rng, 0.3, 2.0);
        ConeVector v = rng.next_double() < 0.05 ? ConeVector::apex()
                                                : random_cone_vector(g, rng, 0.0, 2.0);
        ConeVector w = random_cone_vector(g, rng, 0.0, 2.0);
        LimitCone lc = limit_tangent_cone(g, z);
        LimitVector iv = limit_log(g, z, v);
        note(verbose, "z=" + g.describe_point(z.dir) + "@" + fmt(z.norm) + " v=" +
                          (v.is_apex() ? "apex" : g.describe_point(v.dir) + "@" + fmt(v.norm)) +
                          " w=" + g.describe_point(w.dir) + "@" + fmt(w.norm));

        if (mask & kNorm) {
            checked += 1;
            if (iv.norm != v.norm) return "norm not preserved";
        }
        if ((mask & kAngleZ) && !v.is_apex()) {
            AngleToZReport a = check_angle_to_z(g, lc, v);
            checked += 1;
            if (a.defect > angle_tol) return "angle to Z drifted by " + fmt(a.defect);
        }
        if ((mask & kSumPi) && iv.norm > 0.0) {
            SumPiReport s = check_sum_pi(lc, iv);
            checked += 1;
            if (s.defect > angle_tol) return "sum-pi defect " + fmt(s.defect);
        }
        if (mask & kContraction) {
            ContractionReport c = check_contraction(g, lc, v, w);
            checked += 2;
            if (c.angle_excess > tol) return "angle expanded by " + fmt(c.angle_excess);
            if (c.distance_excess > tol) return "distance expanded by " + fmt(c.distance_excess);
        }
        if (mask & kCollapse) {
            ShadowRegions sh = shadow(g, z);
            auto d1 = random_shadow_direction(g, sh, rng);
            auto d2 = random_shadow_direction(g, sh, rng);
            // Region endpoints are solved in different arithmetic than the
            // membership predicate; only exact members are in scope.
            if (d1 && d2 && in_shadow(g, make_vector(*d1, 1.0), z) &&
                in_shadow(g, make_vector(*d2, 1.0), z)) {
                double norm = rng.uniform(0.2, 2.0);
                LimitVector i1 = limit_log(g, z, make_vector(*d1, norm));
                LimitVector i2 = limit_log(g, z, make_vector(*d2, norm));
                checked += 1;
                if (!(i1 == i2) || i1.phi != kPi) return "shadow did not collapse to -spine";
            }
        }
        if ((mask & kIsometry) && !v.is_apex() && !w.is_apex()) {
            ShadowClass cls = geodesic_shadow_classification(g, v, w, z);
            if ((cls == ShadowClass::disjoint || cls == ShadowClass::endpoint_touch ||
                 cls == ShadowClass::one_interior_point) &&
                !geodesic_folds_across(g, v, w, z)) {
                IsometryReport iso = check_isometry(g, lc, v, w);
                checked += 2;
                note(verbose, std::string("classification=") + to_string(cls));
                if (iso.distance_defect > tol)
                    return std::string("isometry distance defect ") + fmt(iso.distance_defect) +
                           " in regime " + to_string(cls);
                if (iso.max_pointwise > tol)
                    return std::string("geodesic image defect ") + fmt(iso.max_pointwise) +
                           " in regime " + to_string(cls);
            }
        }
        return std::nullopt;
    };
    if (r.replay >= 0)
        run_replay(r, r.trials, fn, r.replay);
    else
        run_trials(r, r.trials, fn);
    return r;
}

// ------------------------------------------------------------ continuity --

SuiteResult suite_continuity(const Space& space, SuiteResult r) {
    const MetricGraph& g = *space.graph;
    const std::vector<double> offsets{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
    TrialFn fn = [&g, &offsets, tol = r.tol](long, Rng& rng, long& checked,
                                             std::string* verbose) -> std::optional<std::string> {
        ConeVector z;
        std::vector<BoundaryApproach> approaches;
        for (int attempt = 0; attempt < 32 && approaches.empty(); ++attempt) {
            z = random_cone_vector(g, rng, 0.5, 1.5);
            approaches = boundary_approaches(g, z, 0.12);
        }
        // On trees the shadow is nonempty only from leaf directions; fall
        // back to vertex directions so the suite is never vacuous.
        for (VertexId vtx = 0; approaches.empty() && vtx < g.vertex_count(); ++vtx) {
            z = make_vector(g.vertex_point(vtx), 1.0);
            approaches = boundary_approaches(g, z, 0.12);
        }
        if (approaches.empty()) return std::nullopt;
        const BoundaryApproach& ap = approaches[rng.next_below(approaches.size())];
        LimitCone lc = limit_tangent_cone(g, z);
        ContinuityReport rep = check_continuity(g, lc, ap.boundary, ap.outward, offsets);
        checked += 2;
        note(verbose, "z=" + g.describe_point(z.dir) + " boundary=" +
                          g.describe_point(ap.boundary) + " final_gap=" + fmt(rep.gaps.back()));
        if (!rep.monotone) return "image gaps not monotonically shrinking";
        if (!(rep.gaps.back() < tol)) return "final gap " + fmt(rep.gaps.back());
        return std::nullopt;
    };
    if (r.replay >= 0)
        run_replay(r, r.trials, fn, r.replay);
    else
        run_trials(r, r.trials, fn);
    return r;
}

// -------------------------------------------------------------- hullsub ---

SuiteResult suite_hullsub(const Space& space, SuiteResult r, double delta) {
    const MetricGraph& g = *space.graph;
    TrialFn fn = [&g, delta](long, Rng& rng, long& checked,
                             std::string* verbose) -> std::optional<std::string> {
        ConeVector z = random_cone_vector(g, rng, 0.5, 1.5);
        std::size_t n = 2 + rng.next_below(4);
        std::vector<ConeVector> s;
        for (std::size_t i = 0; i < n; ++i) s.push_back(random_cone_vector(g, rng, 0.3, 1.5));
        LimitCone lc = limit_tangent_cone(g, z);
        HullSubcommuteReport rep = check_hull_subcommute(g, lc, s, delta);
        checked += 1;
        note(verbose, "z=" + g.describe_point(z.dir) + " n=" + std::to_string(n) + " samples=" +
                          std::to_string(rep.samples) + " max_gap=" + fmt(rep.max_gap));
        if (rep.max_gap > 2.0 * delta)
            return "hull subcommutation gap " + fmt(rep.max_gap) + " > 2 delta";
        return std::nullopt;
    };
    if (r.replay >= 0)
        run_replay(r, r.trials, fn, r.replay);
    else
        run_trials(r, r.trials, fn);
    return r;
}

// ------------------------------------------------------------- convexity --

SuiteResult suite_convexity(const Space& space, SuiteResult r) {
    const MetricGraph& g = *space.graph;
    TrialFn fn = [&g, tol = r.tol](long, Rng& rng, long& checked,
                                   std::string* verbose) -> std::optional<std::string> {
        std::size_t n = 2 + rng.next_below(5);
        WeightedConfiguration cfg;
        for (std::size_t i = 0; i < n; ++i)
            cfg.masses.push_back(
                WeightedPoint{random_cone_vector(g, rng, 0.2, 1.8), rng.uniform(0.5, 2.0)});
        ConeVector x = random_cone_vector(g, rng, 0.0, 2.0);
        ConeVector y = random_cone_vector(g, rng, 0.0, 2.0);
        ConeVector mid = ConeGeodesic(g, x, y).eval(0.5);
        double fx = objective(g, x, cfg), fy = objective(g, y, cfg);
        double fm = objective(g, mid, cfg);
        checked += 1;
        note(verbose, "f(x)=" + fmt(fx) + " f(y)=" + fmt(fy) + " f(mid)=" + fmt(fm));
        if (fm > 0.5 * (fx + fy) + tol)
            return "objective not midpoint-convex: " + fmt(fm - 0.5 * (fx + fy));
        return std::nullopt;
    };
    if (r.replay >= 0)
        run_replay(r, r.trials, fn, r.replay);
    else
        run_trials(r, r.trials, fn);
    return r;
}

// --------------------------------------------------------------- frechet --

WeightedConfiguration random_configuration(const MetricGraph& g, Rng& rng, std::size_t min_n,
                                           std::size_t max_n) {
    WeightedConfiguration cfg;
    std::size_t n = min_n + rng.next_below(max_n - min_n + 1);
    for (std::size_t i = 0; i < n; ++i)
        cfg.masses.push_back(
            WeightedPoint{random_cone_vector(g, rng, 0.3, 1.8), rng.uniform(0.5, 2.0)});
    return cfg;
}

SuiteResult suite_frechet(const Space& space, SuiteResult r) {
    const MetricGraph& g = *space.graph;
    TrialFn fn = [&g](long, Rng& rng, long& checked,
                      std::string* verbose) -> std::optional<std::string> {
        WeightedConfiguration cfg = random_configuration(g, rng, 3, 7);
        double delta = 0.01 * std::max(cfg.diameter(g), 0.5);
        SolverReport grid = frechet_mean_grid(g, cfg, delta);
        // best of four short chains; the objective orders them
        SolverReport best;
        best.objective_value = kInfiniteLength;
        long chain_iterations = 15000;
        for (int chain = 0; chain < 4; ++chain) {
            SolverReport s = frechet_mean_sturm(g, cfg, chain_iterations, rng.next_u64());
            if (s.objective_value < best.objective_value) best = s;
        }
        double gap = cone_distance(g, best.mean, grid.mean);
        checked += 1;
        note(verbose, "n=" + std::to_string(cfg.masses.size()) + " delta=" + fmt(delta) +
                          " grid_obj=" + fmt(grid.objective_value) + " sturm_obj=" +
                          fmt(best.objective_value) + " gap=" + fmt(gap));
        if (gap > 2.0 * delta)
            return "sturm/grid disagreement " + fmt(gap) + " > " + fmt(2.0 * delta);
        return std::nullopt;
    };
    if (r.replay >= 0)
        run_replay(r, r.trials, fn, r.replay);
    else
        run_trials(r, r.trials, fn);
    return r;
}

// ------------------------------------------------------------------ drag --

SuiteResult suite_drag(const Space& space, SuiteResult r) {
    const MetricGraph& g = *space.graph;
    TrialFn fn = [&g](long, Rng& rng, long& checked,
                      std::string* verbose) -> std::optional<std::string> {
        // Configurations concentrated on a sub-arc so the mean stays off the
        // apex and its shadow has positive measure.
        for (int attempt = 0; attempt < 12; ++attempt) {
            WeightedConfiguration cfg;
            GraphPoint center = random_graph_point(g, rng);
            std::size_t n = 3 + rng.next_below(3);
            auto germs = g.germs_at(center);
            for (std::size_t i = 0; i < n; ++i) {
                double spread = rng.uniform(0.0, 0.35);
                GraphPoint dir = center;
                if (spread > 0.0) {
                    EdgeGerm germ = germs[rng.next_below(germs.size())];
                    double reach = g.germ_reach(center, germ, 0.35);
                    if (reach > 0.0) dir = g.walk(center, germ, std::min(spread, reach));
                }
                cfg.masses.push_back(
                    WeightedPoint{make_vector(dir, rng.uniform(0.8, 1.5)), rng.uniform(0.7, 1.3)});
            }
            double delta = 1e-3 * std::max(cfg.diameter(g), 1.0);
            SolverReport before = frechet_mean_grid(g, cfg, delta);
            if (before.mean.is_apex()) continue;
            ShadowRegions sh = shadow(g, before.mean);
            if (sh.total_measure <= 0.0) continue;
            auto shadow_dir = random_shadow_direction(g, sh, rng);
            if (!shadow_dir) continue;
            ConeVector added = make_vector(*shadow_dir, rng.uniform(0.5, 1.5));
            double w = rng.uniform(0.03, 0.12) * cfg.total_weight();
            DragReport drag;
            try {
                drag = shadow_drag_experiment(g, cfg, added, w, delta);
            } catch (const Error& e) {
                if (e.code() == ErrorCode::hypothesis) continue;  // mean hit the apex; resample
                throw;
            }
            checked += 2;
            note(verbose, "mean=" + g.describe_point(drag.old_mean.dir) + "@" +
                              fmt(drag.old_mean.norm) + " new=" +
                              g.describe_point(drag.new_mean.dir) + "@" + fmt(drag.new_mean.norm) +
                              " deviation=" + fmt(drag.direction_deviation) + " drop=" +
                              fmt(drag.radius_drop));
            if (drag.direction_deviation > 2.0 * delta)
                return "mean direction moved by " + fmt(drag.direction_deviation);
            if (!(drag.radius_drop > 0.0)) return "mean radius did not decrease";
            return std::nullopt;
        }
        return std::nullopt;  // no admissible instance sampled; not a failure
    };
    if (r.replay >= 0)
        run_replay(r, r.trials, fn, r.replay);
    else
        run_trials(r, r.trials, fn);
    if (r.replay < 0 && r.checked == 0) {
        r.failure_count += 1;
        r.failures.push_back(Failure{0, "no admissible drag instance on this space"});
    }
    return r;
}

// ------------------------------------------------------------- angledemo --

SuiteResult suite_angledemo(const Space& space, SuiteResult r) {
    auto t0 = std::chrono::steady_clock::now();
    AngleJumpDemo demo = angle_discontinuity_demo(*space.graph, 9);
    r.trials = static_cast<long>(demo.rows.size());
    r.checked = static_cast<long>(demo.rows.size()) + 2;
    for (const AngleJumpRow& row : demo.rows)
        if (std::abs(row.angle - kPi / 2.0) > r.tol) {
            ++r.failure_count;
            r.failures.push_back(
                Failure{0, "row r=" + fmt(row.radius) + " angle=" + fmt(row.angle)});
        }
    if (std::abs(demo.apex_angle - kPi) > r.tol) {
        ++r.failure_count;
        r.failures.push_back(Failure{0, "apex angle " + fmt(demo.apex_angle)});
    }
    if (std::abs(demo.jump - kPi / 2.0) > r.tol) {
        ++r.failure_count;
        r.failures.push_back(Failure{0, "jump " + fmt(demo.jump)});
    }
    r.extra.emplace_back("apex_angle", fmt(demo.apex_angle));
    r.extra.emplace_back("jump", fmt(demo.jump));
    for (const AngleJumpRow& row : demo.rows)
        r.extra.emplace_back("row_r" + fmt(row.radius),
                             "angle=" + fmt(row.angle) + " ext=" + fmt(row.max_extension));
    r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// ----------------------------------------------------------------- noray --

SuiteResult suite_noray(const Space& space, SuiteResult r) {
    const MetricGraph& g = *space.graph;
    auto t0 = std::chrono::steady_clock::now();
    if (g.edge_count() != 1 || g.girth() < 2.0 * kPi + 1.0)
        fail(ErrorCode::hypothesis, "noray expects the kale3pi space");
    EdgeId loop = 0;

    // The counterexample configuration: a ray bent through the apex and the
    // parallel ray from a point in its shadow. Their distance profile is
    // bounded and provably non-constant.
    ConeVector v_dir = make_vector(g.edge_point(loop, 0.5 + 1.5 * kPi), 1.0);  // continuation w
    ConeVector ref = make_vector(g.edge_point(loop, 0.5), 1.5);               // original ray point
    ConeVector q = make_vector(g.edge_point(loop, 0.5 + 1.25 * kPi), 1.0);    // shadow point

    if (!in_shadow(g, q, ref)) fail(ErrorCode::hypothesis, "q is not in the shadow");
    DistanceProfile profile = parallel_distance_profile(g, q, v_dir, 4.0, 64, ref);
    r.trials = 1;
    r.checked = 4;
    double expected_start = q.norm + ref.norm;
    double expected_plateau = std::sqrt(q.norm * q.norm + ref.norm * ref.norm +
                                        2.0 * q.norm * ref.norm * std::cos(kPi / 4.0));
    if (std::abs(profile.f.front() - expected_start) > 1e-12) {
        ++r.failure_count;
        r.failures.push_back(Failure{0, "f(0)=" + fmt(profile.f.front())});
    }
    if (std::abs(profile.f.back() - expected_plateau) > 1e-9) {
        ++r.failure_count;
        r.failures.push_back(Failure{0, "plateau=" + fmt(profile.f.back())});
    }
    if (profile.constant || profile.max - profile.min <= 1e-3) {
        ++r.failure_count;
        r.failures.push_back(Failure{0, "profile unexpectedly constant"});
    }
    if (!(profile.max <= expected_start + 1e-9)) {
        ++r.failure_count;
        r.failures.push_back(Failure{0, "profile not bounded by f(0)"});
    }
    r.extra.emplace_back("max", fmt(profile.max));
    r.extra.emplace_back("min", fmt(profile.min));
    r.extra.emplace_back("spread", fmt(profile.max - profile.min));
    r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// -------------------------------------------------------------- boundary --

SuiteResult suite_boundary(const Space& space, SuiteResult r) {
    const MetricGraph& g = *space.graph;
    auto t0 = std::chrono::steady_clock::now();
    auto arc = g.find_edge("arc");
    if (!arc) fail(ErrorCode::hypothesis, "boundary regression expects the quadrant plane");
    const double eps = 0.1;
    ConeVector z = make_vector(g.edge_point(*arc, 1.25 * kPi), 1.0);
    ConeVector v = make_vector(g.edge_point(*arc, 0.25 * kPi + eps), 1.0);
    ConeVector w = make_vector(g.vertex_point(*g.find_vertex("oy")), 1.0);

    r.trials = 1;
    r.checked = 5;
    ShadowClass cls = geodesic_shadow_classification(g, v, w, z);
    if (cls != ShadowClass::apex_passing_miss) {
        ++r.failure_count;
        r.failures.push_back(Failure{0, std::string("classification=") + to_string(cls)});
    }
    if (angle_at_apex(g, v, w) != kPi) {
        ++r.failure_count;
        r.failures.push_back(Failure{0, "source angle is not pi"});
    }
    LimitCone lc = limit_tangent_cone(g, z);
    double image_angle =
        lc.carrier_angle(limit_log(g, z, v), limit_log(g, z, w));
    double expected = 0.75 * kPi + eps;
    if (std::abs(image_angle - expected) > 1e-12) {
        ++r.failure_count;
        r.failures.push_back(Failure{0, "image angle " + fmt(image_angle)});
    }
    ContractionReport c = check_contraction(g, lc, v, w);
    if (c.angle_excess > 1e-12 || c.distance_excess > 1e-12) {
        ++r.failure_count;
        r.failures.push_back(Failure{0, "contraction violated"});
    }
    bool refused = false;
    try {
        check_isometry(g, lc, v, w);
    } catch (const Error& e) {
        refused = e.code() == ErrorCode::hypothesis;
    }
    if (!refused) {
        ++r.failure_count;
        r.failures.push_back(Failure{0, "isometry check did not refuse the regime"});
    }
    r.extra.emplace_back("image_angle", fmt(image_angle));
    r.extra.emplace_back("source_angle", fmt(kPi));
    r.extra.emplace_back("contraction_by", fmt(kPi - image_angle));
    r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

struct SuiteSpec {
    const char* name;
    long default_trials;
    double default_tol;
};

const SuiteSpec kSuites[] = {
    {"metric", 2000, 1e-12},   {"cat0", 10000, 1e-9},      {"homogeneity", 10000, 1e-12},
    {"firstvar", 1000, 1e-3},  {"transport", 1000, 1e-12}, {"limitlog", 10000, 1e-9},
    {"norm", 10000, 1e-9},     {"anglez", 10000, 1e-12},   {"sumpi", 10000, 1e-12},
    {"contraction", 10000, 1e-9}, {"collapse", 10000, 1e-9}, {"isometry", 10000, 1e-9},
    {"continuity", 20, 1e-6},  {"hullsub", 100, 2e-3},     {"convexity", 2000, 1e-9},
    {"frechet", 100, 2e-2},    {"drag", 50, 2e-3},         {"angledemo", 9, 1e-9},
    {"noray", 1, 1e-3},        {"boundary", 1, 1e-12},
};

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const SuiteSpec& s : kSuites) out.push_back(s.name);
    return out;
}

SuiteResult run_check(const Space& space, const std::string& suite, const SuiteParams& params) {
    const SuiteSpec* spec = nullptr;
    for (const SuiteSpec& s : kSuites)
        if (suite == s.name) spec = &s;
    if (!spec) fail(ErrorCode::invalid_argument, "unknown suite '" + suite + "'");

    SuiteResult r;
    r.suite = suite;
    r.space = space.name.empty() ? "space" : space.name;
    r.seed = params.seed;
    r.trials = params.trials >= 0 ? params.trials : spec->default_trials;
    r.tol = params.tol >= 0.0 ? params.tol : spec->default_tol;
    r.replay = params.replay;

    auto t0 = std::chrono::steady_clock::now();
    SuiteResult out;
    if (suite == "metric") out = suite_metric(space, r);
    else if (suite == "cat0") out = suite_cat0(space, r);
    else if (suite == "homogeneity") out = suite_homogeneity(space, r);
    else if (suite == "firstvar") out = suite_firstvar(space, r);
    else if (suite == "transport") out = suite_transport(space, r);
    else if (suite == "limitlog") out = suite_limitlog(space, r, kAllLimitLog);
    else if (suite == "norm") out = suite_limitlog(space, r, kNorm);
    else if (suite == "anglez") out = suite_limitlog(space, r, kAngleZ);
    else if (suite == "sumpi") out = suite_limitlog(space, r, kSumPi);
    else if (suite == "contraction") out = suite_limitlog(space, r, kContraction);
    else if (suite == "collapse") out = suite_limitlog(space, r, kCollapse);
    else if (suite == "isometry") out = suite_limitlog(space, r, kIsometry);
    else if (suite == "continuity") out = suite_continuity(space, r);
    else if (suite == "hullsub") out = suite_hullsub(space, r, r.tol / 2.0);
    else if (suite == "convexity") out = suite_convexity(space, r);
    else if (suite == "frechet") out = suite_frechet(space, r);
    else if (suite == "drag") out = suite_drag(space, r);
    else if (suite == "angledemo") out = suite_angledemo(space, r);
    else if (suite == "noray") out = suite_noray(space, r);
    else if (suite == "boundary") out = suite_boundary(space, r);
    if (out.elapsed_s == 0.0)
        out.elapsed_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

AngleJumpDemo angle_discontinuity_demo(const MetricGraph& quadrant, int row_count) {
    auto arc = quadrant.find_edge("arc");
    auto ox = quadrant.find_vertex("ox");
    auto oy = quadrant.find_vertex("oy");
    if (!arc || !ox || !oy)
        fail(ErrorCode::hypothesis, "angle demo expects the quadrant plane space");
    ConeVector ox_hat = make_vector(quadrant.vertex_point(*ox), 1.0);
    ConeVector oy_hat = make_vector(quadrant.vertex_point(*oy), 1.0);
    GraphPoint diag = quadrant.edge_point(*arc, 1.25 * kPi);

    AngleJumpDemo demo;
    for (int k = 0; k < row_count; ++k) {
        AngleJumpRow row;
        row.radius = std::pow(2.0, -k);
        ConeVector p = make_vector(diag, row.radius);
        // Tangent of the parallel ray aimed at the vertical boundary.
        TangentVector north = ParallelRay(quadrant, p, oy_hat).initial_tangent();
        row.phi_north = north.phi;
        // The germ running parallel to the horizontal boundary: perpendicular
        // to `north` on the same page, opening away from the radial
        // direction. Its exponential sweeps the flat strip along that
        // boundary and cannot be extended past it (the extension figure).
        TangentVector east = make_tangent(p, north.page, north.phi + kPi / 2.0, 1.0);
        row.phi_east = east.phi;
        row.angle = angle_between(quadrant, east, north);
        // Bisect for the largest exponentiable magnitude.
        double lo = 0.0, hi = 4.0 * row.radius;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            TangentVector probe = east;
            probe.magnitude = mid;
            try {
                exp_at(quadrant, probe);
                lo = mid;
            } catch (const Error&) {
                hi = mid;
            }
        }
        row.max_extension = lo;
        demo.rows.push_back(row);
    }
    demo.apex_angle = angle_at_apex(quadrant, ox_hat, oy_hat);
    demo.jump = demo.apex_angle - demo.rows.front().angle;
    demo.pass = true;
    for (const AngleJumpRow& row : demo.rows)
        demo.pass = demo.pass && std::abs(row.angle - kPi / 2.0) <= 1e-9;
    demo.pass = demo.pass && std::abs(demo.apex_angle - kPi) <= 1e-9 &&
                std::abs(demo.jump - kPi / 2.0) <= 1e-9;
    return demo;
}

}  // namespace shadowfold
