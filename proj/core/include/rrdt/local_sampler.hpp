#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rrdt/configuration.hpp"
#include "rrdt/rng.hpp"

namespace rrdt {

/// von Mises-Fisher distribution on the unit sphere S^(d-1).
struct DirectionDistribution {
  std::vector<double> mean_direction;  // unit length
  double kappa = 0.0;                  // 0 is uniform

  std::size_t dimension() const noexcept { return mean_direction.size(); }
};

/// Uniformly distributed unit vector in R^d.
std::vector<double> uniform_direction(std::size_t d, RandomStream& rng);

/// Exact vMF draw in any d >= 2: Wood's rejection sampler for the cosine to
/// the mean, combined with a uniform direction in the orthogonal complement.
std::vector<double> sample_vmf(const DirectionDistribution& dist, RandomStream& rng);

/// Mean resultant length A_d(kappa) = I_{d/2}(kappa) / I_{d/2-1}(kappa).
double vmf_mean_resultant_length(std::size_t d, double kappa);

struct SamplerConfig {
  double base_kappa = 2.0;      // concentration on creation, restart and after success
  double failure_relax = 0.8;   // kappa multiplier per failed proposal

  void validate() const;
};

/// MCMC random walker: proposes fixed-length steps whose direction follows a
/// vMF centred on the last successful move.
class LocalSampler {
 public:
  /// Starts at `position` with a uniformly random mean direction.
  LocalSampler(Configuration position, const SamplerConfig& config, RandomStream& rng);

  const Configuration& position() const noexcept { return position_; }
  const DirectionDistribution& proposal() const noexcept { return proposal_; }
  std::size_t consecutive_failures() const noexcept { return failures_; }

  /// position + epsilon * v with v ~ vMF(proposal). Does not change state.
  Configuration propose(double epsilon, RandomStream& rng) const;

  /// Moves to q_new and points the proposal along the step just taken.
  /// Throws std::invalid_argument for a zero-length step.
  void report_success(const Configuration& q_new);

  /// Keeps the position; widens the proposal by failure_relax.
  void report_failure();

  /// Fresh state at a new position, as on creation.
  void relocate(Configuration position, RandomStream& rng);

  void set_kappa(double kappa) noexcept { proposal_.kappa = kappa; }

 private:
  Configuration position_;
  DirectionDistribution proposal_;
  SamplerConfig config_;
  std::size_t failures_ = 0;
};

}  // namespace rrdt
