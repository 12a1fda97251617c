#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rrdt {

/// A point in d-dimensional C-space with the Euclidean metric.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<double> coords) : coords_(std::move(coords)) {}
  Configuration(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Configuration(std::span<const double> coords) : coords_(coords.begin(), coords.end()) {}

  std::size_t dimension() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }
  operator std::span<const double>() const noexcept { return coords_; }

  bool is_finite() const noexcept {
    for (double c : coords_)
      if (!std::isfinite(c)) return false;
    return true;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<double> coords_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double distance(std::span<const double> a, std::span<const double> b) noexcept {
  return std::sqrt(squared_distance(a, b));
}

}  // namespace rrdt
