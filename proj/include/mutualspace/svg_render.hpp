#pragma once

#include <string>

#include "mutualspace/floorplan.hpp"
#include "mutualspace/subspace.hpp"

namespace mutualspace::svg {

// Deterministic SVG with a fixed per-label palette; identical input yields
// byte-identical output.
std::string render_floorplan(const plan::Floorplan& fp);
std::string render_mutual_space(const subspace::MutualSpace& ms);

}  // namespace mutualspace::svg
