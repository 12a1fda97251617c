#pragma once

#include <boost/math/distributions/chi_squared.hpp>

#include <cstddef>
#include <numeric>
#include <span>

namespace rrdt::test {

/// Pearson statistic of observed counts against expected counts.
inline double pearson(std::span<const double> observed, std::span<const double> expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  return stat;
}

/// Upper-tail critical value of chi-square with `dof` degrees of freedom.
inline double chi_square_critical(std::size_t dof, double alpha) {
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(static_cast<double>(dof)), alpha));
}

}  // namespace rrdt::test
