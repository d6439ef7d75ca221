#pragma once

#include <string>
#include <vector>

#include "shadowfold/limit_log.hpp"
#include "shadowfold/tangent.hpp"

namespace shadowfold {

/// SVG 1.1 drawing of the space with deterministic layout: vertices on a
/// circle, self-loops as lobes. When z is nonzero the shadow arcs are
/// overlaid in red and a right-hand panel shows the limit tangent cone with
/// the images of `points`.
std::string export_svg(const MetricGraph& g, const ConeVector& z,
                       const std::vector<ConeVector>& points);

// RFC 4180 CSV exports (CRLF line endings, quoted where needed).
std::string shadow_csv(const MetricGraph& g, const ShadowRegions& sh);
std::string limit_log_csv(const MetricGraph& g, const ConeVector& z,
                          const std::vector<ConeVector>& points);
std::string profile_csv(const DistanceProfile& profile);
std::string hull_csv(const MetricGraph& g, const Hull& h);

}  // namespace shadowfold
