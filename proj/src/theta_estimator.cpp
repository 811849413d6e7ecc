#include "hmmlab/theta_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmmlab {

double xi_k(std::size_t k, double delta) {
  if (k == 0) throw std::invalid_argument("xi_k: k must be >= 1");
  const double rho = 1.0 - 2.0 * delta;
  const double kd = static_cast<double>(k);
  double cross = 0.0;
  double rho_m = 1.0;
  for (std::size_t m = 1; m < k; ++m) {
    rho_m *= rho;
    cross += static_cast<double>(k - m) * rho_m;
  }
  return (kd + 2.0 * cross) / (kd * kd);
}

std::size_t block_length_for_delta(double delta, std::size_t n) {
  if (n == 0) throw std::invalid_argument("block_length_for_delta: n must be >= 1");
  if (delta <= 0.0) return n;
  const double raw = std::floor(1.0 / (8.0 * delta));
  if (raw >= static_cast<double>(n)) return n;
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

BlockSummary block_average(const SampleSet& samples, std::size_t k, RngStream& rng) {
  if (k == 0 || k > samples.n()) {
    throw std::invalid_argument("block_average: block length must lie in [1, n]");
  }
  const std::size_t d = samples.d();
  BlockSummary out;
  out.k = k;
  out.ell = samples.n() / k;
  out.dropped_samples = samples.n() - out.ell * k;
  out.block_means = Matrix(out.ell, d);
  const double inv_k = 1.0 / static_cast<double>(k);
  for (std::size_t b = 0; b < out.ell; ++b) {
    auto mean = out.block_means.row(b);
    for (std::size_t j = 0; j < k; ++j) {
      const auto x = samples.row(b * k + j);
      for (std::size_t c = 0; c < d; ++c) mean[c] += x[c];
    }
    const double factor = rng.sign() * inv_k;
    for (double& v : mean) v *= factor;
  }
  return out;
}

SymMatrix empirical_block_cov(const BlockSummary& blocks) {
  if (blocks.ell == 0) throw std::invalid_argument("empirical_block_cov: no blocks");
  return SymMatrix::gram(blocks.block_means, 1.0 / static_cast<double>(blocks.ell));
}

ThetaEstimate estimate_from_covariance(const SymMatrix& cov, std::size_t k, double xi,
                                       const EigenConfig& eigen_cfg, RngStream& rng) {
  if (k == 0) throw std::invalid_argument("estimate_from_covariance: k must be >= 1");
  if (!(xi > 0.0)) throw std::invalid_argument("estimate_from_covariance: xi must be > 0");
  EigenPair top = top_eigenpair(cov, eigen_cfg, rng);
  const double excess = std::max(top.value - 1.0 / static_cast<double>(k), 0.0);
  const double amplitude = std::sqrt(excess / xi);

  ThetaEstimate out;
  out.theta_hat = std::move(top.vector);
  scale(out.theta_hat, amplitude);
  out.lambda_max = top.value;
  out.k_used = k;
  out.xi_k = xi;
  out.eigen_residual = top.residual;
  return out;
}

ThetaEstimate estimate_theta_cov(const SampleSet& samples, std::size_t k, double xi,
                                 const EigenConfig& eigen_cfg, RngStream& rng) {
  RngStream sign_rng = rng.fork(1);
  RngStream eigen_rng = rng.fork(2);
  const BlockSummary blocks = block_average(samples, k, sign_rng);
  return estimate_from_covariance(empirical_block_cov(blocks), k, xi, eigen_cfg, eigen_rng);
}

ThetaEstimate estimate_theta_known_delta(const SampleSet& samples, double delta,
                                         const EigenConfig& eigen_cfg, RngStream& rng) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("estimate_theta_known_delta: delta must lie in [0, 1]");
  }
  if (delta > 0.5) {
    // X_2, X_4, ... (rows 1, 3, ... zero-based) negated turns flips into stays.
    Matrix flipped = samples.data();
    for (std::size_t i = 1; i < flipped.rows(); i += 2) scale(flipped.row(i), -1.0);
    return estimate_theta_known_delta(SampleSet(std::move(flipped), samples.provenance()),
                                      1.0 - delta, eigen_cfg, rng);
  }
  const std::size_t k = block_length_for_delta(delta, samples.n());
  return estimate_theta_cov(samples, k, xi_k(k, delta), eigen_cfg, rng);
}

double rate_beta(double n, double d, double delta) {
  return std::max(std::sqrt(d / n), std::pow(delta * d / n, 0.25));
}

double rate_psi(double n, double d, double delta, double k, double theta_norm) {
  return 2.0 * std::sqrt(delta * k * k / n) * theta_norm * theta_norm +
         2.0 * std::sqrt(d / n) * theta_norm + 13.0 * std::sqrt(d / (n * k)) + 10.0 * d / n;
}

}  // namespace hmmlab
