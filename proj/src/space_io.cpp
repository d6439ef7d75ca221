#include "shadowfold/space_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace shadowfold {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

void check_name(const std::string& name, const char* what) {
    if (name.empty()) fail(ErrorCode::parse, std::string(what) + " name is empty");
    if (name == "v") fail(ErrorCode::parse, "'v' is reserved and cannot name an edge or vertex");
    for (char c : name)
        if (c == ':' || c == '@' || c == '|' || c == ',' || c == ';' || std::isspace(c))
            fail(ErrorCode::parse, std::string(what) + " name '" + name + "' contains ':@|,; ' ");
}

}  // namespace

double parse_length(const std::string& token) {
    std::string t = trim(token);
    double factor = 1.0;
    if (t.size() >= 2 && t.substr(t.size() - 2) == "pi") {
        factor = kPi;
        t = t.substr(0, t.size() - 2);
        if (t.empty() || t == "-") t += "1";
    }
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        fail(ErrorCode::parse, "bad number: '" + token + "'");
    return v * factor;
}

Space parse_space(const std::string& text) {
    Space space;
    std::vector<std::string> vertices;
    std::unordered_map<std::string, VertexId> vertex_index;
    std::vector<Edge> edges;
    struct PendingMass {
        std::string vec;
        double weight;
    };
    std::vector<PendingMass> masses;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            std::string body = trim(t.substr(1));
            auto grab = [&](const char* key) -> std::optional<std::string> {
                std::string k = std::string(key) + ":";
                if (body.rfind(k, 0) == 0) return trim(body.substr(k.size()));
                return std::nullopt;
            };
            if (auto v = grab("name")) space.name = *v;
            else if (auto d = grab("description")) space.description = *d;
            else if (auto e = grab("expect-cat0")) {
                if (*e == "pass") space.expect_cat0 = true;
                else if (*e == "fail") space.expect_cat0 = false;
                else fail(ErrorCode::parse, "expect-cat0 must be pass or fail");
            }
            continue;
        }
        std::vector<std::string> tok = split_ws(t);
        if (tok[0] == "v") {
            if (tok.size() != 2)
                fail(ErrorCode::parse, "line " + std::to_string(lineno) + ": v <name>");
            check_name(tok[1], "vertex");
            if (vertex_index.count(tok[1]))
                fail(ErrorCode::parse, "duplicate vertex " + tok[1]);
            vertex_index[tok[1]] = static_cast<VertexId>(vertices.size());
            vertices.push_back(tok[1]);
        } else if (tok[0] == "e") {
            if (tok.size() != 5)
                fail(ErrorCode::parse,
                     "line " + std::to_string(lineno) + ": e <id> <u> <v> <length>");
            check_name(tok[1], "edge");
            auto u = vertex_index.find(tok[2]);
            auto v = vertex_index.find(tok[3]);
            if (u == vertex_index.end() || v == vertex_index.end())
                fail(ErrorCode::parse, "line " + std::to_string(lineno) + ": unknown vertex");
            edges.push_back(Edge{tok[1], u->second, v->second, parse_length(tok[4])});
        } else if (tok[0] == "m") {
            if (tok.size() != 3)
                fail(ErrorCode::parse,
                     "line " + std::to_string(lineno) + ": m <conevector> <weight>");
            masses.push_back(PendingMass{tok[1], parse_length(tok[2])});
        } else {
            fail(ErrorCode::parse,
                 "line " + std::to_string(lineno) + ": unknown record '" + tok[0] + "'");
        }
    }
    space.graph = std::make_shared<MetricGraph>(std::move(vertices), std::move(edges));
    for (const PendingMass& m : masses)
        space.config.masses.push_back(
            WeightedPoint{parse_cone_vector(*space.graph, m.vec), m.weight});
    if (!space.config.masses.empty()) space.config.validate();
    return space;
}

Space load_space(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_space(buf.str());
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string serialize_space(const Space& space) {
    const MetricGraph& g = *space.graph;
    std::string out;
    if (!space.name.empty()) out += "# name: " + space.name + "\n";
    if (!space.description.empty()) out += "# description: " + space.description + "\n";
    if (space.expect_cat0) out += std::string("# expect-cat0: ") + (*space.expect_cat0 ? "pass" : "fail") + "\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) out += "v " + g.vertex_name(v) + "\n";
    for (const Edge& e : g.edges())
        out += "e " + e.name + " " + g.vertex_name(e.u) + " " + g.vertex_name(e.v) + " " +
               format_double(e.length) + "\n";
    for (const WeightedPoint& m : space.config.masses)
        out += "m " + format_cone_vector(g, m.point) + " " + format_double(m.weight) + "\n";
    return out;
}

GraphPoint parse_graph_point(const MetricGraph& g, const std::string& text) {
    std::string t = trim(text);
    std::size_t colon = t.find(':');
    if (colon == std::string::npos)
        fail(ErrorCode::parse, "graph point needs 'v:<name>' or '<edge>:<offset>': " + text);
    std::string head = t.substr(0, colon), tail = t.substr(colon + 1);
    if (head == "v") {
        auto v = g.find_vertex(tail);
        if (!v) fail(ErrorCode::parse, "unknown vertex '" + tail + "'");
        return g.vertex_point(*v);
    }
    auto e = g.find_edge(head);
    if (!e) fail(ErrorCode::parse, "unknown edge '" + head + "'");
    return g.edge_point(*e, parse_length(tail));
}

ConeVector parse_cone_vector(const MetricGraph& g, const std::string& text) {
    std::string t = trim(text);
    std::size_t at = t.rfind('@');
    if (at == std::string::npos)
        fail(ErrorCode::parse, "cone vector needs '<graphpoint>@<radius>': " + text);
    double r = parse_length(t.substr(at + 1));
    if (r == 0.0) return ConeVector::apex();
    return make_vector(parse_graph_point(g, t.substr(0, at)), r);
}

namespace {

EdgeGerm parse_page(const MetricGraph& g, const GraphPoint& base_dir, const std::string& text) {
    std::string t = trim(text);
    std::optional<bool> forward;
    if (!t.empty() && (t.back() == '+' || t.back() == '-')) {
        forward = t.back() == '+';
        t.pop_back();
    }
    auto e = g.find_edge(t);
    if (!e) fail(ErrorCode::parse, "unknown page edge '" + t + "'");
    std::vector<EdgeGerm> germs = g.germs_at(base_dir);
    std::vector<EdgeGerm> matching;
    for (const EdgeGerm& germ : germs)
        if (germ.edge == *e && (!forward || germ.forward == *forward)) matching.push_back(germ);
    if (matching.empty())
        fail(ErrorCode::parse, "edge '" + text + "' is not a page at this base point");
    if (matching.size() > 1)
        fail(ErrorCode::parse, "page '" + text + "' is ambiguous here; use '" + t + "+' or '" +
                                   t + "-'");
    return matching.front();
}

}  // namespace

TangentVector parse_tangent(const MetricGraph& g, const std::string& text) {
    std::string t = trim(text);
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t bar = t.find('|', pos);
        if (bar == std::string::npos) {
            parts.push_back(t.substr(pos));
            break;
        }
        parts.push_back(t.substr(pos, bar - pos));
        pos = bar + 1;
    }
    if (parts.size() != 4)
        fail(ErrorCode::parse, "tangent needs '<conevector>|<page>|<phi>|<magnitude>': " + text);
    ConeVector base = parse_cone_vector(g, parts[0]);
    if (base.is_apex()) fail(ErrorCode::parse, "tangent base must not be the apex");
    double phi = parse_length(parts[2]);
    double m = parse_length(parts[3]);
    std::string page = trim(parts[1]);
    if (page == "radial") {
        if (phi != 0.0 && phi != kPi && m != 0.0)
            fail(ErrorCode::parse, "radial tangents need phi of 0 or pi");
        return make_tangent(base, std::nullopt, phi, m);
    }
    return make_tangent(base, parse_page(g, base.dir, page), phi, m);
}

std::string format_graph_point(const MetricGraph& g, const GraphPoint& p) {
    if (p.is_vertex) return "v:" + g.vertex_name(p.vertex);
    return g.edge(p.edge).name + ":" + format_double(p.offset);
}

std::string format_cone_vector(const MetricGraph& g, const ConeVector& v) {
    if (v.is_apex()) return "v:" + g.vertex_name(0) + "@0";
    return format_graph_point(g, v.dir) + "@" + format_double(v.norm);
}

std::string format_tangent(const MetricGraph& g, const TangentVector& u) {
    std::string page = "radial";
    if (u.page) page = g.edge(u.page->edge).name + (u.page->forward ? "+" : "-");
    return format_cone_vector(g, u.base) + "|" + page + "|" + format_double(u.phi) + "|" +
           format_double(u.magnitude);
}

std::string format_limit_vector(const LimitCone& lc, const LimitVector& v) {
    (void)lc;
    std::string page = "spine";
    if (v.page >= 0) page = "p" + std::to_string(v.page);
    return page + "|" + format_double(v.phi) + "|" + format_double(v.norm);
}

}  // namespace shadowfold
