#pragma once

#include <string>
#include <vector>

#include "shadowfold/space_io.hpp"

namespace shadowfold {

/// Built-in example spaces. All but cone1.5pi have girth >= 2 pi, so their
/// cones are globally nonpositively curved; cone1.5pi is the negative
/// control with a positively curved apex.
std::vector<std::string> bundled_space_names();
Space bundled_space(const std::string& name);
bool is_bundled(const std::string& name);

}  // namespace shadowfold
