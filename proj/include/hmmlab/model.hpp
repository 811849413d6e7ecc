#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hmmlab/linalg.hpp"
#include "hmmlab/rng.hpp"

namespace hmmlab {

/// Ground truth of the binary hidden-Markov Gaussian mean model:
/// X_i = S_i * theta_star + Z_i for i = 1..n, with S a symmetric sign chain
/// of flip probability delta.
class ModelParams {
 public:
  ModelParams(Vector theta_star, double delta, std::size_t n);

  const Vector& theta_star() const noexcept { return theta_star_; }
  double delta() const noexcept { return delta_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return theta_star_.size(); }

  /// t = ||theta_star||
  double signal_norm() const { return norm(theta_star_); }
  /// Adjacent-sign correlation 1 - 2 delta.
  double rho() const noexcept { return 1.0 - 2.0 * delta_; }

 private:
  Vector theta_star_;
  double delta_;
  std::size_t n_;
};

/// S_0..S_n. Index 0 only seeds stationarity; observations use S_1..S_n.
class SignSequence {
 public:
  explicit SignSequence(std::vector<int> values);

  std::size_t size() const noexcept { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }
  const std::vector<int>& values() const noexcept { return values_; }

 private:
  std::vector<int> values_;
};

/// n x d observations; row i (0-based) holds X_{i+1}.
class SampleSet {
 public:
  explicit SampleSet(Matrix data, std::string provenance = {});

  std::size_t n() const noexcept { return data_.rows(); }
  std::size_t d() const noexcept { return data_.cols(); }
  std::span<const double> row(std::size_t i) const { return data_.row(i); }
  const Matrix& data() const noexcept { return data_; }
  const std::string& provenance() const noexcept { return provenance_; }

  /// Rows [first, first + count) as a new sample set.
  SampleSet slice(std::size_t first, std::size_t count) const;

 private:
  Matrix data_;
  std::string provenance_;
};

struct HmmDraw {
  SignSequence signs;
  SampleSet samples;
};

SignSequence sample_sign_chain(std::size_t n, double delta, RngStream& rng);

/// Draws the hidden chain from rng.fork(1) and the noise from rng.fork(2), so
/// the sign path does not depend on the dimension.
HmmDraw sample_hmm(const ModelParams& params, RngStream& rng);

/// min(||a - b||, ||a + b||). Throws std::invalid_argument on length mismatch.
double loss(std::span<const double> a, std::span<const double> b);

/// Uniform direction on the unit sphere in R^d.
Vector random_unit_vector(std::size_t d, RngStream& rng);

}  // namespace hmmlab
