#include "rrdt/nn_index.hpp"

#include <numeric>
#include <stdexcept>

namespace rrdt {

NearestIndex::Id NearestIndex::insert(std::span<const double> p) {
  if (p.size() != dim_) throw std::invalid_argument("point dimension does not match index");
  const auto id = static_cast<Id>(size());
  points_.insert(points_.end(), p.begin(), p.end());
  const std::size_t buffered = size() - indexed_;
  if (buffered > std::max<std::size_t>(64, indexed_ / 4)) rebuild();
  return id;
}

void NearestIndex::rebuild() {
  indexed_ = size();
  perm_.resize(indexed_);
  std::iota(perm_.begin(), perm_.end(), Id{0});
  split_axis_.assign(indexed_, 0);
  build(0, indexed_);
}

void NearestIndex::build(std::size_t lo, std::size_t hi) {
  while (hi - lo > 1) {
    // Split on the axis of widest spread.
    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t a = 0; a < dim_; ++a) {
      double mn = std::numeric_limits<double>::infinity();
      double mx = -mn;
      for (std::size_t i = lo; i < hi; ++i) {
        const double v = points_[std::size_t{perm_[i]} * dim_ + a];
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
      if (mx - mn > widest) {
        widest = mx - mn;
        axis = a;
      }
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    auto key = [&](Id id) { return points_[std::size_t{id} * dim_ + axis]; };
    std::nth_element(perm_.begin() + static_cast<std::ptrdiff_t>(lo), perm_.begin() + static_cast<std::ptrdiff_t>(mid),
                     perm_.begin() + static_cast<std::ptrdiff_t>(hi),
                     [&](Id a, Id b) { return key(a) < key(b); });
    split_axis_[mid] = static_cast<std::uint8_t>(axis);
    build(lo, mid);
    lo = mid + 1;
  }
}

}  // namespace rrdt
