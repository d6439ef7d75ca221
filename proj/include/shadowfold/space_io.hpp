#pragma once

#include <memory>
#include <optional>
#include <string>

#include "shadowfold/frechet.hpp"

namespace shadowfold {

/// A parsed space file: the direction graph, optional metadata carried in
/// structured comments, and any mass configuration lines.
struct Space {
    std::shared_ptr<const MetricGraph> graph;
    std::string name;
    std::string description;
    std::optional<bool> expect_cat0;
    WeightedConfiguration config;
};

Space parse_space(const std::string& text);
Space load_space(const std::string& path);

/// Canonical text form; parsing it back reproduces the space losslessly.
std::string serialize_space(const Space& space);

// Point syntax used by the CLI and the C API.
//   graph point   v:<name>            e.g. v:center
//                 <edge>:<offset>     e.g. arc:0.75pi
//   cone vector   <graphpoint>@<r>    e.g. arc:0.75pi@2
//   tangent       <conevector>|<page>|<phi>|<magnitude>
// Pages name an edge germ: e0+ walks toward increasing offset, e0- the
// other way; "radial" for phi in {0, pi}. A bare edge id is accepted at a
// vertex incident to exactly one of its ends. Numbers may carry a "pi"
// suffix (0.75pi).
double parse_length(const std::string& token);
GraphPoint parse_graph_point(const MetricGraph& g, const std::string& text);
ConeVector parse_cone_vector(const MetricGraph& g, const std::string& text);
TangentVector parse_tangent(const MetricGraph& g, const std::string& text);

std::string format_double(double x);  // %.17g
std::string format_graph_point(const MetricGraph& g, const GraphPoint& p);
std::string format_cone_vector(const MetricGraph& g, const ConeVector& v);
std::string format_tangent(const MetricGraph& g, const TangentVector& u);
std::string format_limit_vector(const LimitCone& lc, const LimitVector& v);

}  // namespace shadowfold
