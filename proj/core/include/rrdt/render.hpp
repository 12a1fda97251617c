#pragma once

#include <optional>
#include <span>
#include <string>

#include "rrdt/configuration.hpp"
#include "rrdt/environment.hpp"
#include "rrdt/forest.hpp"
#include "rrdt/snapshot.hpp"

namespace rrdt {

/// SVG picture of a 2-D world: obstacle cells (merged into runs along x), one
/// `class="edge"` polyline per graph edge coloured by group, the path and the
/// arm positions. Output depends only on the inputs.
/// Throws std::invalid_argument for environments that are not 2-D.
std::string render_svg(const Environment& env, const GraphSnapshot& graph, const std::optional<Path>& path,
                       std::span<const Configuration> arms);

}  // namespace rrdt
