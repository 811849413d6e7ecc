#include "hmmlab/delta_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hmmlab/linalg.hpp"

namespace hmmlab {
namespace {

double checked_norm_sq(const SampleSet& samples, std::span<const double> theta_sharp) {
  if (theta_sharp.size() != samples.d()) {
    throw std::invalid_argument("theta_sharp length does not match sample dimension");
  }
  const double sq = dot(theta_sharp, theta_sharp);
  if (!(sq > 0.0)) throw std::invalid_argument("theta_sharp must be nonzero");
  return sq;
}

DeltaEstimate finish(double pair_sum, std::size_t pairs, double theta_sq, ClampRange clamp) {
  DeltaEstimate out;
  out.pairs_used = pairs;
  // (2/n') * sum == sum / pairs
  out.rho_raw = pair_sum / (static_cast<double>(pairs) * theta_sq);
  out.delta_raw = (1.0 - out.rho_raw) / 2.0;
  out.delta_clamped = std::clamp(out.delta_raw, clamp.lo, clamp.hi);
  return out;
}

DeltaEstimate estimate_impl(const SampleSet& samples, std::span<const double> theta_sharp,
                            RngStream* rng, ClampRange clamp) {
  const double theta_sq = checked_norm_sq(samples, theta_sharp);
  if (samples.n() < 2) throw std::invalid_argument("estimate_rho: need at least 2 samples");
  if (clamp.lo > clamp.hi) throw std::invalid_argument("estimate_rho: empty clamp range");
  const std::size_t pairs = samples.n() / 2;
  double sum = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto first = samples.row(2 * i);
    const auto second = samples.row(2 * i + 1);
    if (rng == nullptr) {
      sum += dot(second, first);
    } else {
      const double r = rng->sign();
      double s = 0.0;
      for (std::size_t c = 0; c < first.size(); ++c) s += (r * second[c]) * (r * first[c]);
      sum += s;
    }
  }
  return finish(sum, pairs, theta_sq, clamp);
}

}  // namespace

DeltaEstimate estimate_rho(const SampleSet& samples, std::span<const double> theta_sharp,
                           ClampRange clamp) {
  return estimate_impl(samples, theta_sharp, nullptr, clamp);
}

DeltaEstimate estimate_rho_randomized(const SampleSet& samples,
                                      std::span<const double> theta_sharp, RngStream& rng,
                                      ClampRange clamp) {
  return estimate_impl(samples, theta_sharp, &rng, clamp);
}

SampleSet project_onto(const SampleSet& samples, std::span<const double> theta_sharp) {
  const double theta_norm = std::sqrt(checked_norm_sq(samples, theta_sharp));
  Matrix u(samples.n(), 1);
  for (std::size_t i = 0; i < samples.n(); ++i) {
    u(i, 0) = dot(theta_sharp, samples.row(i)) / theta_norm;
  }
  return SampleSet(std::move(u), samples.provenance());
}

}  // namespace hmmlab
