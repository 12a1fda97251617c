#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "rrdt/configuration.hpp"
#include "rrdt/rng.hpp"

namespace rrdt {

/// A uniformly drawn free configuration plus the number of in-obstacle draws
/// that were rejected before it.
struct FreeSample {
  Configuration q;
  std::size_t rejections = 0;
};

/// Bounded, axis-aligned occupancy-grid world. Immutable after construction.
///
/// Axis 0 varies fastest in the flat cell layout, so a raster image maps to
/// axis 0 = column (x) and axis 1 = row (y). Every axis spans [lo, hi); a
/// point exactly on an upper bound is outside the world.
class Environment {
 public:
  /// `occupancy` holds one byte per cell, nonzero meaning obstacle.
  Environment(std::vector<std::size_t> cell_counts, std::vector<double> cell_size,
              std::vector<double> lower, std::vector<std::uint8_t> occupancy,
              double obstacle_threshold = 0.5);

  /// Obstacle-free world with unit cells.
  static Environment empty(std::vector<std::size_t> cell_counts);

  std::size_t dimension() const noexcept { return counts_.size(); }
  double lower(std::size_t axis) const { return lower_[axis]; }
  double upper(std::size_t axis) const { return upper_[axis]; }
  double extent(std::size_t axis) const { return upper_[axis] - lower_[axis]; }
  std::size_t cell_count(std::size_t axis) const { return counts_[axis]; }
  double cell_size(std::size_t axis) const { return cell_size_[axis]; }
  double min_cell_size() const noexcept;
  double obstacle_threshold() const noexcept { return threshold_; }
  double diagonal() const noexcept;

  std::size_t total_cells() const noexcept { return occupancy_.size(); }
  std::size_t free_cells() const noexcept { return free_cells_; }
  std::size_t obstacle_cells() const noexcept { return occupancy_.size() - free_cells_; }
  double bounds_volume() const noexcept;
  double free_volume() const noexcept;
  double free_fraction() const noexcept;

  /// Flat cell index from per-axis indices.
  std::size_t cell_index(std::span<const std::size_t> idx) const;
  bool cell_occupied(std::size_t flat) const { return occupancy_[flat] != 0; }
  bool cell_occupied(std::span<const std::size_t> idx) const { return cell_occupied(cell_index(idx)); }
  std::vector<std::size_t> cell_coords(std::size_t flat) const;
  Configuration cell_center(std::size_t flat) const;
  std::span<const std::uint8_t> occupancy() const noexcept { return occupancy_; }

  bool in_bounds(std::span<const double> q) const;

  /// True iff q is inside the bounds and its containing cell is free.
  /// Throws std::invalid_argument on dimension mismatch.
  bool is_free(std::span<const double> q) const;

  /// True iff both endpoints and ceil(len/resolution)+1 equally spaced
  /// points along ab are free. Exactly symmetric in (a, b).
  bool segment_free(std::span<const double> a, std::span<const double> b, double resolution) const;

  Configuration uniform_in_bounds(RandomStream& rng) const;

  /// Rejection sampling from the bounds. Throws std::runtime_error after
  /// 10^6 consecutive rejections.
  FreeSample sample_free(RandomStream& rng) const;

 private:
  bool free_unchecked(const double* q) const noexcept;
  void check_dimension(std::span<const double> q) const;

  std::vector<std::size_t> counts_;
  std::vector<double> cell_size_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::size_t> strides_;
  std::vector<std::uint8_t> occupancy_;
  std::size_t free_cells_ = 0;
  double threshold_ = 0.5;
};

/// Volume of the unit ball in R^d.
double unit_ball_volume(std::size_t d) noexcept;

/// Loads a PGM (P2/P5), PNG, or binary n-d grid. Raster pixels whose
/// normalized intensity is below `obstacle_threshold` become obstacles.
/// Throws InputError for unreadable, unsupported or all-obstacle maps.
Environment load_map(const std::filesystem::path& path, double obstacle_threshold = 0.5);

/// Binary n-d grid: little-endian u32 dim, u32 per-axis counts, then one byte
/// per cell (0 free, 1 obstacle) with axis 0 varying fastest.
Environment load_grid(const std::filesystem::path& path);
void save_grid(const Environment& env, const std::filesystem::path& path);

/// Binary PGM (P5): free cells white, obstacles black. 2-D only.
void save_pgm(const Environment& env, const std::filesystem::path& path);

}  // namespace rrdt
