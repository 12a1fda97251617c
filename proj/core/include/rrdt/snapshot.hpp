#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rrdt {

/// Read-only copy of a planner graph for rendering. Edges join vertex
/// indices; `group` labels each vertex (tree id for forests).
struct GraphSnapshot {
  std::size_t dimension = 0;
  std::vector<double> coords;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> group;

  std::size_t size() const noexcept { return dimension == 0 ? 0 : coords.size() / dimension; }
  std::span<const double> point(std::size_t i) const { return {coords.data() + i * dimension, dimension}; }
};

}  // namespace rrdt
