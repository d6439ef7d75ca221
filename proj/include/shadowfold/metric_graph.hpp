#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "shadowfold/error.hpp"

namespace shadowfold {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
    std::string name;
    VertexId u = 0;
    VertexId v = 0;
    double length = 0.0;  // radians, > 0
};

/// A point of the direction graph in canonical form: either a vertex, or a
/// point strictly inside an edge (0 < offset < length). Offsets are arc
/// length from the edge's u endpoint.
struct GraphPoint {
    bool is_vertex = true;
    VertexId vertex = 0;
    EdgeId edge = 0;
    double offset = 0.0;

    friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
        if (a.is_vertex != b.is_vertex) return false;
        if (a.is_vertex) return a.vertex == b.vertex;
        return a.edge == b.edge && a.offset == b.offset;
    }
};

/// An edge germ at a point: the branch taken when leaving the point through
/// `edge`, walking toward increasing offset (forward) or decreasing offset.
struct EdgeGerm {
    EdgeId edge = 0;
    bool forward = true;

    friend bool operator==(const EdgeGerm& a, const EdgeGerm& b) {
        return a.edge == b.edge && a.forward == b.forward;
    }
};

/// One traversed sub-arc of an edge, from offset `from` to offset `to`.
struct PathSegment {
    EdgeId edge = 0;
    double from = 0.0;
    double to = 0.0;

    bool forward() const { return to >= from; }
    double length() const { return to >= from ? to - from : from - to; }
};

struct GraphPath {
    GraphPoint start, end;
    std::vector<PathSegment> segments;
    double length = 0.0;
    bool tie = false;  // another distinct path of equal length exists
};

EdgeGerm initial_direction(const GraphPath& path);

constexpr double kInfiniteLength = std::numeric_limits<double>::infinity();

/// The space of directions: a finite connected multigraph with positive edge
/// lengths carrying its intrinsic length metric. Self-loops and parallel
/// edges are allowed. Immutable after construction; all queries are pure.
class MetricGraph {
public:
    MetricGraph(std::vector<std::string> vertex_names, std::vector<Edge> edges);

    std::size_t vertex_count() const { return vertex_names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::optional<VertexId> find_vertex(const std::string& name) const;
    std::optional<EdgeId> find_edge(const std::string& name) const;

    double total_length() const { return total_length_; }

    GraphPoint vertex_point(VertexId v) const;
    /// Canonicalizes: offset 0 or length collapses to the vertex form.
    GraphPoint edge_point(EdgeId e, double offset) const;

    /// Length-metric distance between two points.
    double distance(const GraphPoint& a, const GraphPoint& b) const;

    /// One shortest path witness; `tie` is set when a distinct path of the
    /// same length exists. Deterministic for fixed inputs.
    GraphPath shortest_path(const GraphPoint& a, const GraphPoint& b) const;

    /// Same witness without the tie scan; for inner loops.
    GraphPath witness_path(const GraphPoint& a, const GraphPoint& b) const;

    /// Point at arc length s along a path (0 <= s <= path.length).
    GraphPoint point_along(const GraphPath& path, double s) const;

    /// Distances from a point to every vertex.
    std::vector<double> distances_to_vertices(const GraphPoint& p) const;

    /// Length of the shortest cycle; +infinity for forests.
    double girth() const { return girth_; }

    struct Cat1Report {
        double girth = 0.0;
        bool pass = false;  // girth >= 2*pi, exact comparison
    };
    Cat1Report validate_cat1() const;

    /// Edge germs at a point; 2 for interior points, one per incident edge
    /// end at a vertex (a self-loop contributes two).
    std::vector<EdgeGerm> germs_at(const GraphPoint& p) const;
    int local_degree(const GraphPoint& p) const { return static_cast<int>(germs_at(p).size()); }
    int vertex_degree(VertexId v) const { return static_cast<int>(vertex_germs_[v].size()); }

    /// Arc length from p along the germ until the walk hits a vertex of
    /// degree != 2, capped at `cap`. Degree-2 vertices are walked through.
    double germ_reach(const GraphPoint& p, const EdgeGerm& germ, double cap) const;

    /// Follow the germ for `arc` length. Fails with a range error if a
    /// branch or leaf vertex is struck before the arc is used up (landing
    /// exactly on one is allowed).
    GraphPoint walk(const GraphPoint& p, const EdgeGerm& germ, double arc) const;

    /// Pure refinements used by tests: neither may change any distance.
    MetricGraph subdivided(EdgeId e, double offset, const std::string& new_vertex,
                           const std::string& left_edge, const std::string& right_edge) const;
    MetricGraph scaled(double factor) const;

    std::string describe_point(const GraphPoint& p) const;
    std::string describe_path(const GraphPath& path) const;

private:
    struct Exit {
        VertexId vertex;
        double dist;                    // arc from the point to this endpoint
        std::optional<EdgeGerm> germ;   // germ taken at the point, if interior
    };

    std::vector<Exit> exits(const GraphPoint& p) const;
    GraphPath build_path(const GraphPoint& a, const GraphPoint& b, bool count_ties) const;
    void dijkstra(VertexId source, std::vector<double>& dist, std::vector<std::int64_t>& parent_edge,
                  std::optional<EdgeId> skip_edge = std::nullopt) const;
    std::vector<double> count_shortest(VertexId source, const std::vector<double>& dist) const;
    double compute_girth() const;

    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeGerm>> vertex_germs_;
    std::vector<std::vector<double>> apsp_;  // all-pairs vertex distances
    double total_length_ = 0.0;
    double girth_ = kInfiniteLength;
};

}  // namespace shadowfold
