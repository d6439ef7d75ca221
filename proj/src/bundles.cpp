#include "shadowfold/bundles.hpp"

#include <numbers>

namespace shadowfold {

namespace {

constexpr double kPi = std::numbers::pi;

Space build(const std::string& name, const std::string& description, bool cat0,
            std::vector<std::string> vertices, std::vector<Edge> edges) {
    Space s;
    s.name = name;
    s.description = description;
    s.expect_cat0 = cat0;
    s.graph = std::make_shared<MetricGraph>(std::move(vertices), std::move(edges));
    return s;
}

Space circle(const std::string& name, const std::string& description, double circumference,
             bool cat0) {
    return build(name, description, cat0, {"o"}, {Edge{"c", 0, 0, circumference}});
}

}  // namespace

std::vector<std::string> bundled_space_names() {
    return {"plane",  "quadrantplane", "kale2.5pi", "kale3pi",
            "cone1.5pi", "tripod",     "openbook3", "bhvt4link"};
}

bool is_bundled(const std::string& name) {
    for (const std::string& n : bundled_space_names())
        if (n == name) return true;
    return false;
}

Space bundled_space(const std::string& name) {
    if (name == "plane")
        return circle("plane", "flat plane: circle of circumference 2pi", 2.0 * kPi, true);
    if (name == "kale2.5pi")
        return circle("kale2.5pi", "kale with central angle 5pi/2", 2.5 * kPi, true);
    if (name == "kale3pi")
        return circle("kale3pi", "kale with central angle 3pi", 3.0 * kPi, true);
    if (name == "cone1.5pi")
        return circle("cone1.5pi", "cone of total angle 3pi/2; positively curved apex",
                      1.5 * kPi, false);
    if (name == "quadrantplane")
        return build("quadrantplane", "plane with the open first quadrant removed", true,
                     {"ox", "oy"}, {Edge{"arc", 0, 1, 1.5 * kPi}});
    if (name == "tripod")
        return build("tripod", "three quarter-plane sectors sharing one boundary ray", true,
                     {"c", "l0", "l1", "l2"},
                     {Edge{"s0", 0, 1, kPi / 2.0}, Edge{"s1", 0, 2, kPi / 2.0},
                      Edge{"s2", 0, 3, kPi / 2.0}});
    if (name == "openbook3")
        return build("openbook3", "open book with three half-plane pages", true, {"n", "s"},
                     {Edge{"a0", 0, 1, kPi}, Edge{"a1", 0, 1, kPi}, Edge{"a2", 0, 1, kPi}});
    if (name == "bhvt4link") {
        // Petersen graph with every edge of length pi/2: the link of the
        // origin in the space of 4-leaf phylogenetic trees. Girth 5 pi/2.
        std::vector<std::string> vs;
        for (int i = 0; i < 10; ++i) vs.push_back("t" + std::to_string(i));
        std::vector<Edge> es;
        auto add = [&](int a, int b) {
            es.push_back(Edge{"e" + std::to_string(es.size()), static_cast<VertexId>(a),
                              static_cast<VertexId>(b), kPi / 2.0});
        };
        for (int i = 0; i < 5; ++i) add(i, (i + 1) % 5);      // outer cycle
        for (int i = 0; i < 5; ++i) add(i, i + 5);            // spokes
        for (int i = 0; i < 5; ++i) add(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        return build("bhvt4link", "Petersen graph, every edge length pi/2", true, std::move(vs),
                     std::move(es));
    }
    fail(ErrorCode::invalid_argument, "unknown bundled space '" + name + "'");
}

}  // namespace shadowfold
