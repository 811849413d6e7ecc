#pragma once

#include <cstddef>

#include "hmmlab/linalg.hpp"
#include "hmmlab/model.hpp"
#include "hmmlab/rng.hpp"

namespace hmmlab {

/// Sign-randomized block means. Row i is R_i * (1/k) * sum of the k samples in
/// block i; the n - ell*k trailing samples are dropped.
struct BlockSummary {
  std::size_t k = 1;
  std::size_t ell = 0;
  Matrix block_means;
  std::size_t dropped_samples = 0;
};

struct ThetaEstimate {
  Vector theta_hat;
  double lambda_max = 0.0;
  std::size_t k_used = 1;
  double xi_k = 1.0;
  double eigen_residual = 0.0;
};

/// Second moment of the block gain, E[((1/k) sum_{j=1}^k S_j)^2], for a
/// stationary chain with flip probability delta:
///   (1/k^2) * [k + 2 sum_{m=1}^{k-1} (k - m) rho^m],  rho = 1 - 2 delta.
double xi_k(std::size_t k, double delta);

/// floor(1/(8 delta)) clamped to [1, n]; delta == 0 maps to n.
std::size_t block_length_for_delta(double delta, std::size_t n);

BlockSummary block_average(const SampleSet& samples, std::size_t k, RngStream& rng);

/// (1/ell) * sum_i Xbar_i Xbar_i^T
SymMatrix empirical_block_cov(const BlockSummary& blocks);

/// sqrt((lambda_max - 1/k)_+ / xi) * v_max for a given block covariance.
/// Exposed separately so a population covariance can be injected.
ThetaEstimate estimate_from_covariance(const SymMatrix& cov, std::size_t k, double xi,
                                       const EigenConfig& eigen_cfg, RngStream& rng);

/// Block-PCA estimate with an explicit block length and gain moment. Block
/// signs come from rng.fork(1), the power-iteration start from rng.fork(2).
ThetaEstimate estimate_theta_cov(const SampleSet& samples, std::size_t k, double xi,
                                 const EigenConfig& eigen_cfg, RngStream& rng);

/// Known-delta estimator. For delta > 1/2 the even-indexed samples
/// X_2, X_4, ... are negated and delta is replaced by 1 - delta; then
/// k = block_length_for_delta(delta, n) and xi = xi_k(k, delta).
ThetaEstimate estimate_theta_known_delta(const SampleSet& samples, double delta,
                                         const EigenConfig& eigen_cfg, RngStream& rng);

/// sqrt(d/n) v (delta d / n)^{1/4}
double rate_beta(double n, double d, double delta);

/// 2 sqrt(delta k^2/n) t^2 + 2 sqrt(d/n) t + 13 sqrt(d/(n k)) + 10 d/n
double rate_psi(double n, double d, double delta, double k, double theta_norm);

}  // namespace hmmlab
