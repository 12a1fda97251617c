#include "rrdt/maps.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>

#include "rrdt/nn_index.hpp"
#include "rrdt/rng.hpp"

namespace rrdt {

namespace {

constexpr std::size_t kSide = 400;

class Canvas {
 public:
  Canvas() : cells_(kSide * kSide, 0) {}

  // Fills [x0, x1) x [y0, y1), clipped to the canvas.
  void fill(long x0, long y0, long x1, long y1) {
    x0 = std::clamp<long>(x0, 0, kSide);
    x1 = std::clamp<long>(x1, 0, kSide);
    y0 = std::clamp<long>(y0, 0, kSide);
    y1 = std::clamp<long>(y1, 0, kSide);
    for (long y = y0; y < y1; ++y)
      for (long x = x0; x < x1; ++x) cells_[static_cast<std::size_t>(y) * kSide + static_cast<std::size_t>(x)] = 1;
  }
  void clear(long x0, long y0, long x1, long y1) {
    for (long y = std::max(0L, y0); y < std::min<long>(kSide, y1); ++y)
      for (long x = std::max(0L, x0); x < std::min<long>(kSide, x1); ++x)
        cells_[static_cast<std::size_t>(y) * kSide + static_cast<std::size_t>(x)] = 0;
  }
  double occupancy() const {
    return static_cast<double>(std::count(cells_.begin(), cells_.end(), 1)) / static_cast<double>(cells_.size());
  }
  Environment finish() && {
    return Environment({kSide, kSide}, {1.0, 1.0}, {0.0, 0.0}, std::move(cells_));
  }

 private:
  std::vector<std::uint8_t> cells_;
};

Environment make_room() {
  Canvas c;
  constexpr long kWall = 6;
  constexpr long kDoor = 40;
  constexpr long kPitch = kSide / 3;
  for (long k = 1; k < 3; ++k) {
    const long at = k * kPitch - kWall / 2;
    c.fill(at, 0, at + kWall, kSide);
    c.fill(0, at, kSide, at + kWall);
  }
  // One doorway in every wall segment between neighbouring rooms.
  for (long k = 1; k < 3; ++k) {
    const long at = k * kPitch - kWall / 2;
    for (long r = 0; r < 3; ++r) {
      const long mid = r * kPitch + kPitch / 2 + (r - 1) * 20;
      c.clear(at, mid - kDoor / 2, at + kWall, mid + kDoor / 2);
      c.clear(mid - kDoor / 2, at, mid + kDoor / 2, at + kWall);
    }
  }
  return std::move(c).finish();
}

Environment make_maze() {
  constexpr long kCells = 12;
  constexpr long kWall = 8;
  auto line = [](long k) { return k * static_cast<long>(kSide) / kCells; };
  // east[r][c] / south[r][c]: wall on that side of cell (r, c).
  std::array<std::array<bool, kCells>, kCells> east{}, south{}, seen{};
  for (auto& row : east) row.fill(true);
  for (auto& row : south) row.fill(true);

  RandomStream rng(hash_string("maze"));
  std::vector<std::pair<long, long>> stack{{0, 0}};
  seen[0][0] = true;
  while (!stack.empty()) {
    const auto [r, col] = stack.back();
    std::array<std::pair<long, long>, 4> options;
    std::size_t n = 0;
    constexpr std::array<std::pair<long, long>, 4> kSteps{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
    for (const auto& [dr, dc] : kSteps) {
      const long nr = r + dr, nc = col + dc;
      if (nr >= 0 && nr < kCells && nc >= 0 && nc < kCells && !seen[nr][nc]) options[n++] = {nr, nc};
    }
    if (n == 0) {
      stack.pop_back();
      continue;
    }
    const auto [nr, nc] = options[rng.below(n)];
    if (nr == r) east[r][std::min(col, nc)] = false;
    else south[std::min(r, nr)][col] = false;
    seen[nr][nc] = true;
    stack.emplace_back(nr, nc);
  }

  Canvas c;
  for (long r = 0; r < kCells; ++r) {
    for (long col = 0; col < kCells; ++col) {
      const long x = line(col + 1), y = line(r + 1);
      if (col + 1 < kCells && east[r][col]) c.fill(x - kWall / 2, line(r) - kWall / 2, x + kWall / 2, y + kWall / 2);
      if (r + 1 < kCells && south[r][col]) c.fill(line(col) - kWall / 2, y - kWall / 2, x + kWall / 2, y + kWall / 2);
    }
  }
  return std::move(c).finish();
}

Environment make_clutter() {
  Canvas c;
  RandomStream rng(hash_string("clutter"));
  while (c.occupancy() < 0.45) {
    const long w = 8 + static_cast<long>(rng.below(33));
    const long h = 8 + static_cast<long>(rng.below(33));
    const long x = static_cast<long>(rng.below(kSide));
    const long y = static_cast<long>(rng.below(kSide));
    c.fill(x, y, x + w, y + h);
  }
  return std::move(c).finish();
}

}  // namespace

std::string_view bundled_map_name(BundledMap map) noexcept {
  switch (map) {
    case BundledMap::room: return "room";
    case BundledMap::maze: return "maze";
    case BundledMap::clutter: return "clutter";
  }
  return "?";
}

std::optional<BundledMap> parse_bundled_map(std::string_view name) noexcept {
  for (auto m : kBundledMaps)
    if (bundled_map_name(m) == name) return m;
  return std::nullopt;
}

Environment make_bundled_map(BundledMap map) {
  switch (map) {
    case BundledMap::room: return make_room();
    case BundledMap::maze: return make_maze();
    case BundledMap::clutter: return make_clutter();
  }
  throw std::invalid_argument("unknown bundled map");
}

std::vector<std::int32_t> free_components(const Environment& env) {
  const std::size_t n = env.total_cells();
  const std::size_t d = env.dimension();
  std::vector<std::int32_t> label(n, -1);
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t i = 1; i < d; ++i) stride[i] = stride[i - 1] * env.cell_count(i - 1);

  std::int32_t next = 0;
  std::deque<std::size_t> queue;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (env.cell_occupied(seed) || label[seed] >= 0) continue;
    label[seed] = next;
    queue.push_back(seed);
    while (!queue.empty()) {
      const std::size_t cell = queue.front();
      queue.pop_front();
      for (std::size_t axis = 0; axis < d; ++axis) {
        const std::size_t coord = (cell / stride[axis]) % env.cell_count(axis);
        if (coord > 0) {
          const std::size_t nb = cell - stride[axis];
          if (!env.cell_occupied(nb) && label[nb] < 0) {
            label[nb] = next;
            queue.push_back(nb);
          }
        }
        if (coord + 1 < env.cell_count(axis)) {
          const std::size_t nb = cell + stride[axis];
          if (!env.cell_occupied(nb) && label[nb] < 0) {
            label[nb] = next;
            queue.push_back(nb);
          }
        }
      }
    }
    ++next;
  }
  return label;
}

namespace {
std::size_t containing_cell(const Environment& env, std::span<const double> q) {
  std::vector<std::size_t> idx(env.dimension());
  for (std::size_t i = 0; i < idx.size(); ++i)
    idx[i] = std::min(env.cell_count(i) - 1,
                      static_cast<std::size_t>((q[i] - env.lower(i)) / env.cell_size(i)));
  return env.cell_index(idx);
}
}  // namespace

bool grid_connected(const Environment& env, std::span<const std::int32_t> components, std::span<const double> a,
                    std::span<const double> b) {
  if (!env.is_free(a) || !env.is_free(b)) return false;
  return components[containing_cell(env, a)] == components[containing_cell(env, b)];
}

std::size_t greedy_packing_count(const Environment& env, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("packing radius must be positive");
  NearestIndex kept(env.dimension());
  const double eps2 = epsilon * epsilon;
  for (std::size_t cell = 0; cell < env.total_cells(); ++cell) {
    if (env.cell_occupied(cell)) continue;
    const Configuration c = env.cell_center(cell);
    const auto near = kept.nearest(c);
    if (!near || squared_distance(kept.point(*near), c) > eps2) kept.insert(c);
  }
  return kept.size();
}

}  // namespace rrdt
