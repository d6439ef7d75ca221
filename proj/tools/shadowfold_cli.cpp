// Command line frontend for the shadowfold shared library. Links only the
// C API. Reports are line-oriented key=value; exit codes: 0 pass, 1
// assertion failure, 2 usage or validation error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shadowfold.h"

namespace {

struct Owned {
    char* s = nullptr;
    ~Owned() { sf_string_free(s); }
    const char* get() const { return s ? s : ""; }
};

struct SpaceHandle {
    sf_space* p = nullptr;
    ~SpaceHandle() { sf_space_free(p); }
};

[[noreturn]] void die(sf_status status) {
    std::fprintf(stderr, "error: %s: %s\n", sf_status_name(status), sf_last_error());
    std::exit(2);
}

void check_ok(sf_status status) {
    if (status != SF_OK) die(status);
}

SpaceHandle open_space(const std::string& spec) {
    SpaceHandle h;
    std::string names = sf_bundled_names();
    bool bundled = false;
    std::size_t pos = 0;
    while (pos <= names.size()) {
        std::size_t sep = names.find(',', pos);
        std::string n = sep == std::string::npos ? names.substr(pos) : names.substr(pos, sep - pos);
        if (n == spec) bundled = true;
        if (sep == std::string::npos) break;
        pos = sep + 1;
    }
    check_ok(bundled ? sf_space_open_bundled(spec.c_str(), &h.p)
                     : sf_space_load_file(spec.c_str(), &h.p));
    return h;
}

unsigned long long default_seed() {
    const char* env = std::getenv("SHADOWFOLD_SEED");
    if (!env || !*env) return 0;
    return std::strtoull(env, nullptr, 10);
}

void write_or_print(const std::string& out_path, const char* content) {
    if (out_path.empty()) {
        std::fputs(content, stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
        std::exit(2);
    }
    out << content;
    std::printf("written=%s\n", out_path.c_str());
}

std::string join(const std::vector<std::string>& items, char sep) {
    std::string out;
    for (const std::string& s : items) {
        if (!out.empty()) out += sep;
        out += s;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shadowfold: cones over metric graphs - geodesics, radial transport, "
                 "shadows, limit logarithms, Frechet means"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(sf_version()));

    std::string space_arg, a_arg, b_arg, c_arg, out_path;

    auto* validate = app.add_subcommand("validate", "girth and CAT(1) verdict of a space");
    validate->add_option("space", space_arg)->required();

    auto* dist = app.add_subcommand("dist", "distance between two cone vectors or graph points");
    dist->add_option("space", space_arg)->required();
    dist->add_option("a", a_arg)->required();
    dist->add_option("b", b_arg)->required();

    auto* angle = app.add_subcommand("angle", "apex angle between two cone vectors");
    angle->add_option("space", space_arg)->required();
    angle->add_option("v", a_arg)->required();
    angle->add_option("w", b_arg)->required();

    double t_param = 0.5;
    auto* geodesic = app.add_subcommand("geodesic", "evaluate the geodesic between cone vectors");
    geodesic->add_option("space", space_arg)->required();
    geodesic->add_option("v", a_arg)->required();
    geodesic->add_option("w", b_arg)->required();
    geodesic->add_option("-t,--at", t_param, "parameter in [0,1]");

    auto* logcmd = app.add_subcommand("log", "tangent at z of the geodesic z -> w");
    logcmd->add_option("space", space_arg)->required();
    logcmd->add_option("z", a_arg)->required();
    logcmd->add_option("w", b_arg)->required();

    auto* expcmd = app.add_subcommand("exp", "exponentiate a tangent vector");
    expcmd->add_option("space", space_arg)->required();
    expcmd->add_option("tangent", a_arg)->required();

    auto* transport = app.add_subcommand("transport", "radial transport of a tangent vector");
    transport->add_option("space", space_arg)->required();
    transport->add_option("tangent", a_arg, "tangent, or Z when --from-apex")->required();
    transport->add_option("target", b_arg, "target point on the same ray, or V when --from-apex")
        ->required();
    bool from_apex = false;
    transport->add_flag("--from-apex", from_apex, "transport V from the apex along Z");

    double t_max = 5.0;
    int samples = 33;
    std::string ref_arg;
    auto* parallel = app.add_subcommand("parallel", "parallel ray from z and distance profile");
    parallel->add_option("space", space_arg)->required();
    parallel->add_option("z", a_arg)->required();
    parallel->add_option("v", b_arg, "unit cone vector")->required();
    parallel->add_option("--t-max", t_max);
    parallel->add_option("--samples", samples);
    parallel->add_option("--ref", ref_arg, "basepoint of the reference parallel ray");

    auto* shadow = app.add_subcommand("shadow", "shadow arcs of Z");
    shadow->add_option("space", space_arg)->required();
    shadow->add_option("z", a_arg)->required();

    auto* limitlog = app.add_subcommand("limitlog", "limit log image of V along Z");
    limitlog->add_option("space", space_arg)->required();
    limitlog->add_option("z", a_arg)->required();
    limitlog->add_option("v", b_arg)->required();

    auto* classify = app.add_subcommand("classify", "how the geodesic VW meets the shadow of Z");
    classify->add_option("space", space_arg)->required();
    classify->add_option("v", a_arg)->required();
    classify->add_option("w", b_arg)->required();
    classify->add_option("z", c_arg)->required();

    double delta = 1e-3;
    std::vector<std::string> point_list;
    auto* hull = app.add_subcommand("hull", "discretized convex cone hull of directions");
    hull->add_option("space", space_arg)->required();
    hull->add_option("points", point_list, "cone vectors")->required();
    hull->add_option("--delta", delta);

    long iterations = 40000;
    unsigned long long seed = default_seed();
    double oracle = 0.0;
    auto* frechet = app.add_subcommand("frechet", "Frechet mean of the file's mass lines");
    frechet->add_option("--config,config", space_arg, "space file with m lines")->required();
    frechet->add_option("--iterations", iterations);
    frechet->add_option("--seed", seed);
    frechet->add_option("--oracle", oracle, "grid oracle resolution");

    std::string add_arg;
    double weight = 0.1;
    auto* drag = app.add_subcommand("drag", "shadow drag experiment on the file's masses");
    drag->add_option("--config,config", space_arg)->required();
    drag->add_option("--add", add_arg, "cone vector to add")->required();
    drag->add_option("--weight", weight);
    drag->add_option("--delta", delta);

    std::string suite;
    long trials = -1;
    double tol = -1.0;
    long replay = -1;
    auto* check = app.add_subcommand("check", "run a verification suite");
    check->add_option("suite", suite,
                      std::string("one of: ") + sf_suite_names() + ", or 'all'")
        ->required();
    check->add_option("--space", space_arg)->required();
    check->add_option("--trials", trials);
    check->add_option("--seed", seed);
    check->add_option("--tol", tol);
    check->add_option("--replay", replay, "re-run one trial verbosely");

    auto* svg = app.add_subcommand("export-svg", "draw the space, shadow and limit-log images");
    svg->add_option("--space", space_arg)->required();
    svg->add_option("--z", a_arg);
    svg->add_option("--points", point_list);
    svg->add_option("-o,--out", out_path);

    std::string what;
    auto* csv = app.add_subcommand("export-csv", "CSV exports: shadow, limitlog, hull");
    csv->add_option("what", what)->required();
    csv->add_option("--space", space_arg)->required();
    csv->add_option("--z", a_arg);
    csv->add_option("--points", point_list);
    csv->add_option("--delta", delta);
    csv->add_option("-o,--out", out_path);

    auto* spaces = app.add_subcommand("spaces", "list bundled spaces");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (spaces->parsed()) {
        std::printf("%s\n", sf_bundled_names());
        return 0;
    }

    SpaceHandle space = open_space(space_arg);

    if (validate->parsed()) {
        double girth = 0.0;
        int pass = 0;
        check_ok(sf_space_validate(space.p, &girth, &pass));
        Owned info;
        check_ok(sf_space_info(space.p, &info.s));
        std::fputs(info.get(), stdout);
        return pass ? 0 : 1;
    }
    if (dist->parsed()) {
        double d = 0.0;
        sf_status st = sf_cone_distance(space.p, a_arg.c_str(), b_arg.c_str(), &d);
        if (st == SF_ERROR_PARSE && a_arg.find('@') == std::string::npos)
            st = sf_graph_distance(space.p, a_arg.c_str(), b_arg.c_str(), &d);
        check_ok(st);
        std::printf("distance=%.17g\n", d);
        return 0;
    }
    if (angle->parsed()) {
        double v = 0.0;
        check_ok(sf_angle(space.p, a_arg.c_str(), b_arg.c_str(), &v));
        std::printf("angle=%.17g\n", v);
        return 0;
    }
    if (geodesic->parsed()) {
        int kind = 0;
        Owned point;
        check_ok(sf_geodesic_eval(space.p, a_arg.c_str(), b_arg.c_str(), t_param, &kind, &point.s));
        double d = 0.0;
        check_ok(sf_cone_distance(space.p, a_arg.c_str(), b_arg.c_str(), &d));
        std::printf("kind=%s\nlength=%.17g\nt=%.17g\npoint=%s\n",
                    kind ? "through-apex" : "straight", d, t_param, point.get());
        return 0;
    }
    if (logcmd->parsed()) {
        Owned tangent;
        check_ok(sf_log_at(space.p, a_arg.c_str(), b_arg.c_str(), &tangent.s));
        std::printf("tangent=%s\n", tangent.get());
        return 0;
    }
    if (expcmd->parsed()) {
        Owned point;
        check_ok(sf_exp_at(space.p, a_arg.c_str(), &point.s));
        std::printf("point=%s\n", point.get());
        return 0;
    }
    if (transport->parsed()) {
        Owned moved;
        check_ok(from_apex
                     ? sf_radial_transport_from_apex(space.p, a_arg.c_str(), b_arg.c_str(),
                                                     &moved.s)
                     : sf_radial_transport(space.p, a_arg.c_str(), b_arg.c_str(), &moved.s));
        std::printf("tangent=%s\n", moved.get());
        return 0;
    }
    if (parallel->parsed()) {
        Owned csv_text;
        double fmax = 0.0, fmin = 0.0;
        int constant = 0;
        check_ok(sf_parallel_profile(space.p, a_arg.c_str(), b_arg.c_str(),
                                     ref_arg.empty() ? nullptr : ref_arg.c_str(), t_max, samples,
                                     &csv_text.s, &fmax, &fmin, &constant));
        std::printf("max=%.17g\nmin=%.17g\nconstant=%s\n", fmax, fmin, constant ? "yes" : "no");
        std::fputs(csv_text.get(), stdout);
        return 0;
    }
    if (shadow->parsed()) {
        Owned csv_text;
        check_ok(sf_shadow_csv(space.p, a_arg.c_str(), &csv_text.s));
        std::fputs(csv_text.get(), stdout);
        return 0;
    }
    if (limitlog->parsed()) {
        Owned image;
        check_ok(sf_limit_log(space.p, a_arg.c_str(), b_arg.c_str(), &image.s));
        std::printf("image=%s\n", image.get());
        return 0;
    }
    if (classify->parsed()) {
        Owned cls;
        check_ok(sf_classify(space.p, a_arg.c_str(), b_arg.c_str(), c_arg.c_str(), &cls.s));
        std::printf("classification=%s\n", cls.get());
        return 0;
    }
    if (hull->parsed()) {
        Owned csv_text;
        check_ok(sf_hull_csv(space.p, join(point_list, ';').c_str(), delta, &csv_text.s));
        std::fputs(csv_text.get(), stdout);
        return 0;
    }
    if (frechet->parsed()) {
        Owned report;
        check_ok(sf_frechet_mean(space.p, iterations, seed, oracle, &report.s));
        std::fputs(report.get(), stdout);
        return 0;
    }
    if (drag->parsed()) {
        Owned report;
        check_ok(sf_shadow_drag(space.p, add_arg.c_str(), weight, delta, &report.s));
        std::fputs(report.get(), stdout);
        return 0;
    }
    if (check->parsed()) {
        std::vector<std::string> suites;
        if (suite == "all") {
            std::string names = sf_suite_names();
            std::size_t pos = 0;
            while (pos <= names.size()) {
                std::size_t sep = names.find(',', pos);
                suites.push_back(sep == std::string::npos ? names.substr(pos)
                                                          : names.substr(pos, sep - pos));
                if (sep == std::string::npos) break;
                pos = sep + 1;
            }
        } else {
            suites.push_back(suite);
        }
        bool all_pass = true;
        for (const std::string& s : suites) {
            Owned report;
            int pass = 0;
            sf_status st =
                sf_check(space.p, s.c_str(), trials, seed, tol, replay, &report.s, &pass);
            if (st == SF_ERROR_HYPOTHESIS) {
                // suite not applicable to this space (figure-specific demos)
                std::printf("suite=%s\nresult=skipped (%s)\n", s.c_str(), sf_last_error());
                continue;
            }
            check_ok(st);
            std::fputs(report.get(), stdout);
            all_pass = all_pass && pass;
        }
        return all_pass ? 0 : 1;
    }
    if (svg->parsed()) {
        Owned content;
        check_ok(sf_export_svg(space.p, a_arg.empty() ? nullptr : a_arg.c_str(),
                               join(point_list, ';').c_str(), &content.s));
        write_or_print(out_path, content.get());
        return 0;
    }
    if (csv->parsed()) {
        Owned content;
        check_ok(sf_export_csv(space.p, what.c_str(), a_arg.empty() ? nullptr : a_arg.c_str(),
                               join(point_list, ';').c_str(), delta, &content.s));
        write_or_print(out_path, content.get());
        return 0;
    }
    return 2;
}
