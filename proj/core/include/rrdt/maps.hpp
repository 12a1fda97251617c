#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rrdt/environment.hpp"

namespace rrdt {

enum class BundledMap { room, maze, clutter };

inline constexpr BundledMap kBundledMaps[] = {BundledMap::room, BundledMap::maze, BundledMap::clutter};

std::string_view bundled_map_name(BundledMap map) noexcept;
std::optional<BundledMap> parse_bundled_map(std::string_view name) noexcept;

/// 400x400 reconstructions, generated procedurally from fixed seeds:
///  - room: 3x3 rooms separated by thin walls with one doorway per wall
///  - maze: perfect 12x12 maze carved by depth-first search
///  - clutter: random rectangles until about 45% of the cells are blocked
Environment make_bundled_map(BundledMap map);

/// Connected components of the free cells under face adjacency (grid BFS).
/// Obstacle cells get label -1.
std::vector<std::int32_t> free_components(const Environment& env);

/// True when both points are free and their cells share a component.
bool grid_connected(const Environment& env, std::span<const std::int32_t> components, std::span<const double> a,
                    std::span<const double> b);

/// Size of a greedy packing of disjoint epsilon/2 balls centred on free cell
/// centres, scanned in flat cell order: a centre is kept when it lies more
/// than epsilon from every centre kept before it.
std::size_t greedy_packing_count(const Environment& env, double epsilon);

}  // namespace rrdt
