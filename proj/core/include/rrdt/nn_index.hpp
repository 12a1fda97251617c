#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rrdt/configuration.hpp"

namespace rrdt {

/// Exact Euclidean nearest-neighbour index over densely numbered points.
///
/// Points are appended with consecutive ids 0, 1, 2, ... and never removed.
/// A balanced kd-tree covers the first `indexed_` points; newer points sit in
/// a side buffer that queries scan linearly. The tree is rebuilt in bulk once
/// the buffer exceeds max(64, 25% of the indexed size).
class NearestIndex {
 public:
  using Id = std::uint32_t;

  explicit NearestIndex(std::size_t dimension) : dim_(dimension) {}

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size() / dim_; }
  bool empty() const noexcept { return points_.empty(); }

  /// Appends a point; returns its id.
  Id insert(std::span<const double> p);

  std::span<const double> point(Id id) const { return {points_.data() + std::size_t{id} * dim_, dim_}; }

  /// Nearest point accepted by `pred`; ties broken by lowest id.
  template <class Pred>
  std::optional<Id> nearest_if(std::span<const double> q, Pred&& pred) const;

  std::optional<Id> nearest(std::span<const double> q) const {
    return nearest_if(q, [](Id) { return true; });
  }

  /// All ids accepted by `pred` within the closed ball of radius r, ascending.
  template <class Pred>
  std::vector<Id> within_radius_if(std::span<const double> q, double r, Pred&& pred) const;

  std::vector<Id> within_radius(std::span<const double> q, double r) const {
    return within_radius_if(q, r, [](Id) { return true; });
  }

 private:
  struct Best {
    double d2 = std::numeric_limits<double>::infinity();
    Id id = std::numeric_limits<Id>::max();
    bool better(double cand_d2, Id cand) const noexcept { return cand_d2 < d2 || (cand_d2 == d2 && cand < id); }
  };

  void rebuild();
  void build(std::size_t lo, std::size_t hi);

  template <class Pred>
  void nearest_rec(std::size_t lo, std::size_t hi, std::span<const double> q, Pred& pred, Best& best) const;
  template <class Pred>
  void radius_rec(std::size_t lo, std::size_t hi, std::span<const double> q, double r2, Pred& pred,
                  std::vector<Id>& out) const;

  std::size_t dim_;
  std::vector<double> points_;
  std::vector<Id> perm_;                    // kd-tree order over ids [0, indexed_)
  std::vector<std::uint8_t> split_axis_;    // split axis of the node stored at perm_[mid]
  std::size_t indexed_ = 0;
};

template <class Pred>
std::optional<NearestIndex::Id> NearestIndex::nearest_if(std::span<const double> q, Pred&& pred) const {
  Best best;
  nearest_rec(0, indexed_, q, pred, best);
  for (std::size_t i = indexed_; i < size(); ++i) {
    const Id id = static_cast<Id>(i);
    const double d2 = squared_distance(q, point(id));
    if (best.better(d2, id) && pred(id)) {
      best.d2 = d2;
      best.id = id;
    }
  }
  if (best.id == std::numeric_limits<Id>::max()) return std::nullopt;
  return best.id;
}

template <class Pred>
void NearestIndex::nearest_rec(std::size_t lo, std::size_t hi, std::span<const double> q, Pred& pred,
                               Best& best) const {
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const Id id = perm_[mid];
    const auto p = point(id);
    const double d2 = squared_distance(q, p);
    if (best.better(d2, id) && pred(id)) {
      best.d2 = d2;
      best.id = id;
    }
    const std::size_t axis = split_axis_[mid];
    const double diff = q[axis] - p[axis];
    std::size_t near_lo = lo, near_hi = mid, far_lo = mid + 1, far_hi = hi;
    if (diff > 0) {
      std::swap(near_lo, far_lo);
      std::swap(near_hi, far_hi);
    }
    nearest_rec(near_lo, near_hi, q, pred, best);
    // Equal distances must still be explored for the lowest-id tie-break.
    if (diff * diff > best.d2) return;
    lo = far_lo;
    hi = far_hi;
  }
}

template <class Pred>
std::vector<NearestIndex::Id> NearestIndex::within_radius_if(std::span<const double> q, double r,
                                                             Pred&& pred) const {
  std::vector<Id> out;
  if (!(r >= 0.0)) return out;
  const double r2 = r * r;
  radius_rec(0, indexed_, q, r2, pred, out);
  for (std::size_t i = indexed_; i < size(); ++i) {
    const Id id = static_cast<Id>(i);
    if (squared_distance(q, point(id)) <= r2 && pred(id)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class Pred>
void NearestIndex::radius_rec(std::size_t lo, std::size_t hi, std::span<const double> q, double r2, Pred& pred,
                              std::vector<Id>& out) const {
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const Id id = perm_[mid];
    const auto p = point(id);
    if (squared_distance(q, p) <= r2 && pred(id)) out.push_back(id);
    const std::size_t axis = split_axis_[mid];
    const double diff = q[axis] - p[axis];
    if (diff <= 0 || diff * diff <= r2) radius_rec(lo, mid, q, r2, pred, out);
    if (diff >= 0 || diff * diff <= r2) {
      lo = mid + 1;
    } else {
      return;
    }
  }
}

}  // namespace rrdt
