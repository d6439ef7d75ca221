#include "shadowfold/export.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "shadowfold/space_io.hpp"

namespace shadowfold {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    bool quote = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!quote) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct Point2 {
    double x = 0.0, y = 0.0;
};

// Deterministic layout: vertices on a circle, edges as lines or, for
// self-loops and parallel edges, quadratic lobes. Every drawn edge exposes a
// parametrization so shadow arcs land on the same curve.
struct Layout {
    std::vector<Point2> vertex;
    std::vector<int> lobe_index;  // per edge: 0 straight, else lobe rank

    explicit Layout(const MetricGraph& g) {
        std::size_t n = g.vertex_count();
        vertex.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(n, 1)) - kPi / 2.0;
            vertex[i] = {250.0 + 170.0 * std::cos(a), 250.0 + 170.0 * std::sin(a)};
        }
        if (n == 1) vertex[0] = {250.0, 250.0};
        lobe_index.assign(g.edge_count(), 0);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            int rank = 0;
            for (EdgeId f = 0; f < e; ++f) {
                const Edge& a = g.edge(f);
                const Edge& b = g.edge(e);
                if ((a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u)) ++rank;
            }
            const Edge& ed = g.edge(e);
            if (ed.u == ed.v)
                lobe_index[e] = rank + 1;
            else
                lobe_index[e] = rank;
        }
    }

    Point2 along(const MetricGraph& g, EdgeId e, double offset) const {
        const Edge& ed = g.edge(e);
        double t = offset / ed.length;
        Point2 a = vertex[ed.u], b = vertex[ed.v];
        if (ed.u == ed.v) {
            // self-loop: circle of radius depending on the lobe rank
            double r = 60.0 + 35.0 * lobe_index[e];
            double ang = 2.0 * kPi * t - kPi / 2.0;
            return {a.x + r * std::cos(ang), a.y + r + r * std::sin(ang)};
        }
        Point2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
        if (lobe_index[e] > 0) {
            double nx = -(b.y - a.y), ny = b.x - a.x;
            double len = std::hypot(nx, ny);
            double push = 28.0 * lobe_index[e] / std::max(len, 1.0);
            mid.x += nx * push;
            mid.y += ny * push;
        }
        // quadratic bezier through mid
        double u = 1.0 - t;
        return {u * u * a.x + 2.0 * u * t * mid.x + t * t * b.x,
                u * u * a.y + 2.0 * u * t * mid.y + t * t * b.y};
    }

    std::string polyline(const MetricGraph& g, EdgeId e, double lo, double hi) const {
        std::ostringstream out;
        int steps = 24;
        for (int i = 0; i <= steps; ++i) {
            double off = lo + (hi - lo) * static_cast<double>(i) / steps;
            Point2 p = along(g, e, off);
            out << (i ? " " : "") << num(p.x) << "," << num(p.y);
        }
        return out.str();
    }
};

}  // namespace

std::string export_svg(const MetricGraph& g, const ConeVector& z,
                       const std::vector<ConeVector>& points) {
    Layout layout(g);
    bool with_panel = !z.is_apex();
    int width = with_panel ? 1000 : 520;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"520\" viewBox=\"0 0 " << width << " 520\">\n";
    svg << "<rect width=\"" << width << "\" height=\"520\" fill=\"white\"/>\n";
    svg << "<text x=\"16\" y=\"24\" font-size=\"14\">direction graph</text>\n";

    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        svg << "<polyline fill=\"none\" stroke=\"#444\" stroke-width=\"1.5\" points=\""
            << layout.polyline(g, e, 0.0, g.edge(e).length) << "\"/>\n";
        Point2 label = layout.along(g, e, 0.5 * g.edge(e).length);
        svg << "<text x=\"" << num(label.x + 4) << "\" y=\"" << num(label.y - 4)
            << "\" font-size=\"11\" fill=\"#666\">" << g.edge(e).name << "</text>\n";
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        Point2 p = layout.vertex[v];
        svg << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y)
            << "\" r=\"3.5\" fill=\"#222\"/>\n";
        svg << "<text x=\"" << num(p.x + 6) << "\" y=\"" << num(p.y + 4)
            << "\" font-size=\"12\">" << g.vertex_name(v) << "</text>\n";
    }

    if (with_panel) {
        ShadowRegions sh = shadow(g, z);
        for (EdgeId e = 0; e < sh.per_edge.size(); ++e)
            for (const auto& [lo, hi] : sh.per_edge[e]) {
                if (hi > lo)
                    svg << "<polyline fill=\"none\" stroke=\"#c22\" stroke-width=\"4\" "
                           "stroke-linecap=\"round\" points=\""
                        << layout.polyline(g, e, lo, hi) << "\"/>\n";
                Point2 p = layout.along(g, e, lo);
                svg << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y)
                    << "\" r=\"4\" fill=\"#c22\"/>\n";
            }
        if (!z.dir.is_vertex) {
            Point2 p = layout.along(g, z.dir.edge, z.dir.offset);
            svg << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y)
                << "\" r=\"4.5\" fill=\"#06c\"/>\n";
            svg << "<text x=\"" << num(p.x + 6) << "\" y=\"" << num(p.y - 6)
                << "\" font-size=\"12\" fill=\"#06c\">Z</text>\n";
        } else {
            Point2 p = layout.vertex[z.dir.vertex];
            svg << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y)
                << "\" r=\"4.5\" fill=\"#06c\"/>\n";
        }

        // Right panel: the limit tangent cone, pages as arcs between poles.
        LimitCone lc = limit_tangent_cone(g, z);
        int k = lc.sphere.page_count();
        Point2 out{600.0, 260.0}, in{940.0, 260.0};
        svg << "<text x=\"560\" y=\"24\" font-size=\"14\">limit tangent cone (pages: " << k
            << ")</text>\n";
        svg << "<circle cx=\"600\" cy=\"260\" r=\"4\" fill=\"#222\"/>"
            << "<text x=\"566\" y=\"250\" font-size=\"12\">+spine</text>\n";
        svg << "<circle cx=\"940\" cy=\"260\" r=\"4\" fill=\"#222\"/>"
            << "<text x=\"912\" y=\"250\" font-size=\"12\">-spine</text>\n";
        auto page_point = [&](int page, double phi) -> Point2 {
            double t = phi / kPi;
            double bulge = (page + 1.0) * 60.0 * (page % 2 == 0 ? 1.0 : -1.0);
            Point2 mid{0.5 * (out.x + in.x), 260.0 + bulge};
            double u = 1.0 - t;
            return {u * u * out.x + 2.0 * u * t * mid.x + t * t * in.x,
                    u * u * out.y + 2.0 * u * t * mid.y + t * t * in.y};
        };
        for (int page = 0; page < k; ++page) {
            std::ostringstream pts;
            for (int i = 0; i <= 24; ++i) {
                Point2 p = page_point(page, kPi * i / 24.0);
                pts << (i ? " " : "") << num(p.x) << "," << num(p.y);
            }
            svg << "<polyline fill=\"none\" stroke=\"#888\" stroke-width=\"1.2\" points=\""
                << pts.str() << "\"/>\n";
        }
        int idx = 0;
        for (const ConeVector& v : points) {
            LimitVector img = limit_log(g, z, v);
            Point2 p = img.norm == 0.0
                           ? out
                           : page_point(std::max(img.page, 0), img.phi);
            if (img.page < 0 && img.phi == kPi) p = in;
            svg << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y)
                << "\" r=\"4\" fill=\"#092\"/>\n";
            svg << "<text x=\"" << num(p.x + 6) << "\" y=\"" << num(p.y - 4)
                << "\" font-size=\"11\" fill=\"#092\">V" << idx++ << " ("
                << num(img.norm) << ")</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string shadow_csv(const MetricGraph& g, const ShadowRegions& sh) {
    std::ostringstream out;
    out << "edge,lo,hi\r\n";
    for (EdgeId e = 0; e < sh.per_edge.size(); ++e)
        for (const auto& [lo, hi] : sh.per_edge[e])
            out << csv_field(g.edge(e).name) << "," << format_double(lo) << ","
                << format_double(hi) << "\r\n";
    return out.str();
}

std::string limit_log_csv(const MetricGraph& g, const ConeVector& z,
                          const std::vector<ConeVector>& points) {
    std::ostringstream out;
    out << "input,page,phi,norm\r\n";
    LimitCone lc = limit_tangent_cone(g, z);
    for (const ConeVector& v : points) {
        LimitVector img = limit_log(g, z, v);
        std::string page = img.page >= 0 ? "p" + std::to_string(img.page) : "spine";
        out << csv_field(format_cone_vector(g, v)) << "," << page << "," << format_double(img.phi)
            << "," << format_double(img.norm) << "\r\n";
    }
    return out.str();
}

std::string profile_csv(const DistanceProfile& profile) {
    std::ostringstream out;
    out << "t,f\r\n";
    for (std::size_t i = 0; i < profile.t.size(); ++i)
        out << format_double(profile.t[i]) << "," << format_double(profile.f[i]) << "\r\n";
    return out.str();
}

std::string hull_csv(const MetricGraph& g, const Hull& h) {
    std::ostringstream out;
    out << "edge,lo,hi\r\n";
    for (EdgeId e = 0; e < h.per_edge.size(); ++e)
        for (const auto& [lo, hi] : h.per_edge[e])
            out << csv_field(g.edge(e).name) << "," << format_double(lo) << ","
                << format_double(hi) << "\r\n";
    return out.str();
}

}  // namespace shadowfold
