#include "rrdt/local_sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace rrdt {

namespace {

void normalize(std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  for (double& x : v) x /= n;
}

// Ratio I_{nu+1}(x) / I_nu(x) by the Gauss continued fraction, evaluated
// backwards from a fixed depth.
double bessel_ratio(double nu, double x) {
  if (x == 0.0) return 0.0;
  const int depth = 200 + static_cast<int>(4.0 * x);
  double r = 0.0;
  for (int k = depth; k >= 1; --k) r = 1.0 / (2.0 * (nu + k) / x + r);
  return r;
}

}  // namespace

std::vector<double> uniform_direction(std::size_t d, RandomStream& rng) {
  std::vector<double> v(d);
  for (;;) {
    double n2 = 0.0;
    for (double& x : v) {
      x = rng.normal();
      n2 += x * x;
    }
    if (n2 > 1e-300) break;
  }
  normalize(v);
  return v;
}

std::vector<double> sample_vmf(const DirectionDistribution& dist, RandomStream& rng) {
  const std::size_t d = dist.dimension();
  if (dist.kappa <= 0.0) return uniform_direction(d, rng);

  const double kappa = dist.kappa;
  const double m1 = static_cast<double>(d - 1);
  // b = (-2k + sqrt(4k^2 + m1^2)) / m1, written to avoid cancellation.
  const double b = m1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + m1 * m1));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + m1 * std::log(1.0 - x0 * x0);

  double w = 0.0;
  for (;;) {
    const double z = rng.beta(m1 / 2.0, m1 / 2.0);
    w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    const double u = rng.uniform();
    if (kappa * w + m1 * std::log(1.0 - x0 * w) - c >= std::log(u)) break;
  }
  w = std::clamp(w, -1.0, 1.0);

  // Uniform tangent direction: Gaussian vector with the mean component removed.
  const auto& mu = dist.mean_direction;
  std::vector<double> t(d);
  double tn = 0.0;
  do {
    double dot = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      t[i] = rng.normal();
      dot += t[i] * mu[i];
    }
    tn = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      t[i] -= dot * mu[i];
      tn += t[i] * t[i];
    }
  } while (tn < 1e-300);
  tn = std::sqrt(tn);

  const double s = std::sqrt(std::max(0.0, 1.0 - w * w));
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = w * mu[i] + s * t[i] / tn;
  normalize(out);
  return out;
}

double vmf_mean_resultant_length(std::size_t d, double kappa) {
  return bessel_ratio(static_cast<double>(d) / 2.0 - 1.0, kappa);
}

void SamplerConfig::validate() const {
  if (!(base_kappa >= 0.0) || !std::isfinite(base_kappa)) throw std::invalid_argument("base kappa must be >= 0");
  if (!(failure_relax > 0.0 && failure_relax < 1.0)) throw std::invalid_argument("failure_relax must lie in (0,1)");
}

LocalSampler::LocalSampler(Configuration position, const SamplerConfig& config, RandomStream& rng)
    : config_(config) {
  relocate(std::move(position), rng);
}

Configuration LocalSampler::propose(double epsilon, RandomStream& rng) const {
  const auto dir = sample_vmf(proposal_, rng);
  Configuration q = position_;
  for (std::size_t i = 0; i < q.dimension(); ++i) q[i] += epsilon * dir[i];
  return q;
}

void LocalSampler::report_success(const Configuration& q_new) {
  if (q_new.dimension() != position_.dimension()) throw std::invalid_argument("dimension mismatch");
  std::vector<double> step(q_new.dimension());
  double n2 = 0.0;
  for (std::size_t i = 0; i < step.size(); ++i) {
    step[i] = q_new[i] - position_[i];
    n2 += step[i] * step[i];
  }
  if (n2 == 0.0) throw std::invalid_argument("successful step has zero length");
  normalize(step);
  proposal_.mean_direction = std::move(step);
  proposal_.kappa = config_.base_kappa;
  position_ = q_new;
  failures_ = 0;
}

void LocalSampler::report_failure() {
  ++failures_;
  proposal_.kappa *= config_.failure_relax;
}

void LocalSampler::relocate(Configuration position, RandomStream& rng) {
  proposal_.mean_direction = uniform_direction(position.dimension(), rng);
  proposal_.kappa = config_.base_kappa;
  position_ = std::move(position);
  failures_ = 0;
}

}  // namespace rrdt
