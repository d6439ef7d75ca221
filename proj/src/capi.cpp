#include "shadowfold.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "shadowfold/bundles.hpp"
#include "shadowfold/checks.hpp"
#include "shadowfold/export.hpp"
#include "shadowfold/space_io.hpp"

using namespace shadowfold;

struct sf_space {
    Space space;
};

namespace {

thread_local std::string g_last_error;

sf_status code_of(const Error& e) {
    switch (e.code()) {
        case ErrorCode::parse: return SF_ERROR_PARSE;
        case ErrorCode::invalid_argument: return SF_ERROR_INVALID_ARGUMENT;
        case ErrorCode::domain: return SF_ERROR_DOMAIN;
        case ErrorCode::range: return SF_ERROR_RANGE;
        case ErrorCode::hypothesis: return SF_ERROR_HYPOTHESIS;
        case ErrorCode::io: return SF_ERROR_IO;
    }
    return SF_ERROR_INTERNAL;
}

template <class Fn>
sf_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SF_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return code_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SF_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return SF_ERROR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

const MetricGraph& graph_of(const sf_space* space) {
    if (!space) fail(ErrorCode::invalid_argument, "null space handle");
    return *space->space.graph;
}

std::vector<ConeVector> parse_vector_list(const MetricGraph& g, const char* text) {
    std::vector<ConeVector> out;
    if (!text) return out;
    std::string s(text);
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t sep = s.find(';', pos);
        std::string item =
            sep == std::string::npos ? s.substr(pos) : s.substr(pos, sep - pos);
        if (!item.empty()) out.push_back(parse_cone_vector(g, item));
        if (sep == std::string::npos) break;
        pos = sep + 1;
    }
    return out;
}

std::string fmt17(double x) { return format_double(x); }

}  // namespace

extern "C" {

const char* sf_status_name(sf_status status) {
    switch (status) {
        case SF_OK: return "ok";
        case SF_ERROR_PARSE: return "parse-error";
        case SF_ERROR_INVALID_ARGUMENT: return "invalid-argument";
        case SF_ERROR_DOMAIN: return "domain-error";
        case SF_ERROR_RANGE: return "range-error";
        case SF_ERROR_HYPOTHESIS: return "hypothesis-error";
        case SF_ERROR_IO: return "io-error";
        case SF_ERROR_INTERNAL: return "internal-error";
    }
    return "?";
}

const char* sf_last_error(void) { return g_last_error.c_str(); }

const char* sf_version(void) { return "shadowfold 1.0.0"; }

void sf_string_free(char* s) { std::free(s); }

sf_status sf_space_load_file(const char* path, sf_space** out) {
    return guarded([&] {
        if (!path || !out) fail(ErrorCode::invalid_argument, "null argument");
        *out = new sf_space{load_space(path)};
    });
}

sf_status sf_space_load_text(const char* text, sf_space** out) {
    return guarded([&] {
        if (!text || !out) fail(ErrorCode::invalid_argument, "null argument");
        *out = new sf_space{parse_space(text)};
    });
}

sf_status sf_space_open_bundled(const char* name, sf_space** out) {
    return guarded([&] {
        if (!name || !out) fail(ErrorCode::invalid_argument, "null argument");
        *out = new sf_space{bundled_space(name)};
    });
}

void sf_space_free(sf_space* space) { delete space; }

const char* sf_bundled_names(void) {
    static std::string names = [] {
        std::string s;
        for (const std::string& n : bundled_space_names()) {
            if (!s.empty()) s += ",";
            s += n;
        }
        return s;
    }();
    return names.c_str();
}

sf_status sf_space_serialize(const sf_space* space, char** out) {
    return guarded([&] {
        if (!out) fail(ErrorCode::invalid_argument, "null output");
        *out = dup_string(serialize_space(space->space));
    });
}

sf_status sf_space_info(const sf_space* space, char** out) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        auto report = g.validate_cat1();
        std::ostringstream s;
        s << "name=" << (space->space.name.empty() ? "space" : space->space.name) << "\n"
          << "vertices=" << g.vertex_count() << "\n"
          << "edges=" << g.edge_count() << "\n"
          << "total_length=" << fmt17(g.total_length()) << "\n"
          << "girth=" << fmt17(report.girth) << "\n"
          << "cat1=" << (report.pass ? "pass" : "fail") << "\n"
          << "masses=" << space->space.config.masses.size() << "\n";
        *out = dup_string(s.str());
    });
}

sf_status sf_space_validate(const sf_space* space, double* girth, int* cat1_pass) {
    return guarded([&] {
        auto report = graph_of(space).validate_cat1();
        if (girth) *girth = report.girth;
        if (cat1_pass) *cat1_pass = report.pass ? 1 : 0;
    });
}

sf_status sf_graph_distance(const sf_space* space, const char* a, const char* b, double* out) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        *out = g.distance(parse_graph_point(g, a), parse_graph_point(g, b));
    });
}

sf_status sf_shortest_path(const sf_space* space, const char* a, const char* b, double* length,
                           int* tie, char** description) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        GraphPath path = g.shortest_path(parse_graph_point(g, a), parse_graph_point(g, b));
        if (length) *length = path.length;
        if (tie) *tie = path.tie ? 1 : 0;
        if (description) *description = dup_string(g.describe_path(path));
    });
}

sf_status sf_local_degree(const sf_space* space, const char* point, int* out) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        *out = g.local_degree(parse_graph_point(g, point));
    });
}

sf_status sf_angle(const sf_space* space, const char* v, const char* w, double* out) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        *out = angle_at_apex(g, parse_cone_vector(g, v), parse_cone_vector(g, w));
    });
}

sf_status sf_inner_product(const sf_space* space, const char* v, const char* w, double* out) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        *out = inner_product(g, parse_cone_vector(g, v), parse_cone_vector(g, w));
    });
}

sf_status sf_cone_distance(const sf_space* space, const char* v, const char* w, double* out) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        *out = cone_distance(g, parse_cone_vector(g, v), parse_cone_vector(g, w));
    });
}

sf_status sf_geodesic_eval(const sf_space* space, const char* v, const char* w, double t,
                           int* kind, char** point) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        ConeGeodesic geo(g, parse_cone_vector(g, v), parse_cone_vector(g, w));
        if (kind) *kind = geo.kind() == ConeGeodesic::Kind::through_apex ? 1 : 0;
        if (point) *point = dup_string(format_cone_vector(g, geo.eval(t)));
    });
}

sf_status sf_log_at(const sf_space* space, const char* z, const char* w, char** tangent) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        TangentVector u = log_at(g, parse_cone_vector(g, z), parse_cone_vector(g, w));
        *tangent = dup_string(format_tangent(g, u));
    });
}

sf_status sf_exp_at(const sf_space* space, const char* tangent, char** point) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        ConeVector x = exp_at(g, parse_tangent(g, tangent));
        *point = dup_string(format_cone_vector(g, x));
    });
}

sf_status sf_radial_transport(const sf_space* space, const char* tangent, const char* target,
                              char** out) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        TangentVector u =
            radial_transport(g, parse_tangent(g, tangent), parse_cone_vector(g, target));
        *out = dup_string(format_tangent(g, u));
    });
}

sf_status sf_radial_transport_from_apex(const sf_space* space, const char* z, const char* v,
                                        char** out) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        TangentVector u =
            radial_transport_from_apex(g, parse_cone_vector(g, z), parse_cone_vector(g, v));
        *out = dup_string(format_tangent(g, u));
    });
}

sf_status sf_parallel_ray_eval(const sf_space* space, const char* z, const char* v, double t,
                               char** point) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        ParallelRay ray(g, parse_cone_vector(g, z), parse_cone_vector(g, v));
        *point = dup_string(format_cone_vector(g, ray.eval(t)));
    });
}

sf_status sf_parallel_profile(const sf_space* space, const char* z, const char* v,
                              const char* reference, double t_max, int samples, char** csv,
                              double* f_max, double* f_min, int* constant) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        ConeVector ref = reference && *reference ? parse_cone_vector(g, reference)
                                                 : ConeVector::apex();
        DistanceProfile profile = parallel_distance_profile(
            g, parse_cone_vector(g, z), parse_cone_vector(g, v), t_max, samples, ref);
        if (csv) *csv = dup_string(profile_csv(profile));
        if (f_max) *f_max = profile.max;
        if (f_min) *f_min = profile.min;
        if (constant) *constant = profile.constant ? 1 : 0;
    });
}

sf_status sf_shadow_csv(const sf_space* space, const char* z, char** csv) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        *csv = dup_string(shadow_csv(g, shadow(g, parse_cone_vector(g, z))));
    });
}

sf_status sf_in_shadow(const sf_space* space, const char* v, const char* z, int* out) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        *out = in_shadow(g, parse_cone_vector(g, v), parse_cone_vector(g, z)) ? 1 : 0;
    });
}

sf_status sf_limit_log(const sf_space* space, const char* z, const char* v, char** image) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        ConeVector zz = parse_cone_vector(g, z);
        LimitCone lc = limit_tangent_cone(g, zz);
        LimitVector img = limit_log(g, zz, parse_cone_vector(g, v));
        *image = dup_string(format_limit_vector(lc, img));
    });
}

sf_status sf_classify(const sf_space* space, const char* v, const char* w, const char* z,
                      char** classification) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        ShadowClass c = geodesic_shadow_classification(g, parse_cone_vector(g, v),
                                                       parse_cone_vector(g, w),
                                                       parse_cone_vector(g, z));
        *classification = dup_string(to_string(c));
    });
}

sf_status sf_hull_csv(const sf_space* space, const char* points, double delta, char** csv) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        Hull h = hull(g, parse_vector_list(g, points), delta);
        *csv = dup_string(hull_csv(g, h));
    });
}

sf_status sf_frechet_mean(const sf_space* space, long iterations, unsigned long long seed,
                          double oracle_delta, char** report) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        const WeightedConfiguration& cfg = space->space.config;
        SolverReport sturm = frechet_mean_sturm(g, cfg, iterations, seed);
        std::ostringstream out;
        out << "mean=" << format_cone_vector(g, sturm.mean) << "\n"
            << "objective=" << fmt17(sturm.objective_value) << "\n"
            << "iterations=" << sturm.iterations << "\n";
        if (oracle_delta > 0.0) {
            SolverReport grid = frechet_mean_grid(g, cfg, oracle_delta);
            out << "oracle_mean=" << format_cone_vector(g, grid.mean) << "\n"
                << "oracle_objective=" << fmt17(grid.objective_value) << "\n"
                << "oracle_delta=" << fmt17(oracle_delta) << "\n"
                << "distance_to_oracle=" << fmt17(cone_distance(g, sturm.mean, grid.mean)) << "\n"
                << "gap=" << fmt17(std::max(0.0, sturm.objective_value - grid.objective_value))
                << "\n";
        }
        *report = dup_string(out.str());
    });
}

sf_status sf_shadow_drag(const sf_space* space, const char* added, double weight, double delta,
                         char** report) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        DragReport drag = shadow_drag_experiment(g, space->space.config,
                                                 parse_cone_vector(g, added), weight, delta);
        std::ostringstream out;
        out << "old_mean=" << format_cone_vector(g, drag.old_mean) << "\n"
            << "new_mean=" << format_cone_vector(g, drag.new_mean) << "\n"
            << "direction_deviation=" << fmt17(drag.direction_deviation) << "\n"
            << "radius_drop=" << fmt17(drag.radius_drop) << "\n"
            << "delta=" << fmt17(drag.delta) << "\n"
            << "direction_preserved=" << (drag.direction_deviation <= 2.0 * delta ? "yes" : "no")
            << "\n"
            << "radius_decreased=" << (drag.radius_drop > 0.0 ? "yes" : "no") << "\n";
        *report = dup_string(out.str());
    });
}

sf_status sf_check(const sf_space* space, const char* suite, long trials,
                   unsigned long long seed, double tol, long replay_trial, char** report,
                   int* pass) {
    return guarded([&] {
        if (!suite) fail(ErrorCode::invalid_argument, "null suite name");
        SuiteParams params;
        params.trials = trials;
        params.seed = seed;
        params.tol = tol;
        params.replay = replay_trial;
        SuiteResult result = run_check(space->space, suite, params);
        if (report) *report = dup_string(result.report());
        if (pass) *pass = result.pass() ? 1 : 0;
    });
}

const char* sf_suite_names(void) {
    static std::string names = [] {
        std::string s;
        for (const std::string& n : suite_names()) {
            if (!s.empty()) s += ",";
            s += n;
        }
        return s;
    }();
    return names.c_str();
}

sf_status sf_export_svg(const sf_space* space, const char* z, const char* points, char** svg) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        ConeVector zz = z && *z ? parse_cone_vector(g, z) : ConeVector::apex();
        *svg = dup_string(export_svg(g, zz, parse_vector_list(g, points)));
    });
}

sf_status sf_export_csv(const sf_space* space, const char* what, const char* z,
                        const char* points, double delta, char** csv) {
    return guarded([&] {
        const MetricGraph& g = graph_of(space);
        std::string kind = what ? what : "";
        if (kind == "shadow") {
            *csv = dup_string(shadow_csv(g, shadow(g, parse_cone_vector(g, z))));
        } else if (kind == "limitlog") {
            *csv = dup_string(
                limit_log_csv(g, parse_cone_vector(g, z), parse_vector_list(g, points)));
        } else if (kind == "hull") {
            *csv = dup_string(
                hull_csv(g, hull(g, parse_vector_list(g, points), delta > 0 ? delta : 1e-3)));
        } else {
            fail(ErrorCode::invalid_argument, "export kind must be shadow, limitlog or hull");
        }
    });
}

}  // extern "C"
