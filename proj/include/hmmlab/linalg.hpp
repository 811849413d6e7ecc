#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hmmlab/rng.hpp"

namespace hmmlab {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(std::span<double> x, double alpha);

/// Flips `v` so that its largest-magnitude coordinate is nonnegative. Ties go
/// to the lowest index.
void canonicalize_sign(std::span<double> v);

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Symmetric d x d matrix. Every mutator writes (i, j) and (j, i) from one
/// computed value, so the stored entries are exactly symmetric.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t dim);

  /// weight * sum_r r r^T over the rows of `rows`.
  static SymMatrix gram(const Matrix& rows, double weight);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  void add_outer(std::span<const double> v, double weight);
  void add_identity(double c);

  /// y = M x
  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  std::size_t dim_;
  std::vector<double> entries_;
};

struct EigenConfig {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
};

struct EigenPair {
  double value = 0.0;
  Vector vector;
  std::size_t iterations = 0;
  double residual = 0.0;

  bool converged(double tol) const { return residual <= tol; }
};

/// Top eigenpair of a symmetric PSD matrix by power iteration from a random
/// unit start drawn from `rng`. Stops when ||M v - lambda v|| <= cfg.tol or
/// after cfg.max_iter products; in the latter case the residual of the last
/// iterate is reported and exceeds the tolerance.
EigenPair top_eigenpair(const SymMatrix& m, const EigenConfig& cfg, RngStream& rng);

}  // namespace hmmlab
