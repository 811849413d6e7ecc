#include "hmmlab/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace hmmlab {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(std::span<double> x, double alpha) {
  for (double& v : x) v *= alpha;
}

void canonicalize_sign(std::span<double> v) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > best_abs) {
      best_abs = std::abs(v[i]);
      best = i;
    }
  }
  if (!v.empty() && v[best] < 0.0) scale(v, -1.0);
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw std::invalid_argument("Matrix: value count does not match rows * cols");
  }
}

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {
  if (dim == 0) throw std::invalid_argument("SymMatrix: dimension must be positive");
}

SymMatrix SymMatrix::gram(const Matrix& rows, double weight) {
  const std::size_t d = rows.cols();
  SymMatrix out(d);
  double* m = out.entries_.data();
  // Upper triangle only, four rows per pass to cut traffic on the output.
  std::size_t r = 0;
  for (; r + 4 <= rows.rows(); r += 4) {
    const double* x0 = rows.row(r).data();
    const double* x1 = rows.row(r + 1).data();
    const double* x2 = rows.row(r + 2).data();
    const double* x3 = rows.row(r + 3).data();
    for (std::size_t i = 0; i < d; ++i) {
      const double a0 = x0[i], a1 = x1[i], a2 = x2[i], a3 = x3[i];
      double* out_row = m + i * d;
      for (std::size_t j = i; j < d; ++j) {
        out_row[j] += (a0 * x0[j] + a1 * x1[j]) + (a2 * x2[j] + a3 * x3[j]);
      }
    }
  }
  for (; r < rows.rows(); ++r) {
    const double* x = rows.row(r).data();
    for (std::size_t i = 0; i < d; ++i) {
      const double xi = x[i];
      double* out_row = m + i * d;
      for (std::size_t j = i; j < d; ++j) out_row[j] += xi * x[j];
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const double v = m[i * d + j] * weight;
      m[i * d + j] = v;
      m[j * d + i] = v;
    }
  }
  return out;
}

void SymMatrix::add_outer(std::span<const double> v, double weight) {
  if (v.size() != dim_) throw std::invalid_argument("add_outer: length mismatch");
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      const double p = weight * v[i] * v[j];
      entries_[i * dim_ + j] += p;
      if (j != i) entries_[j * dim_ + i] += p;
    }
  }
}

void SymMatrix::add_identity(double c) {
  for (std::size_t i = 0; i < dim_; ++i) entries_[i * dim_ + i] += c;
}

void SymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dim_ || y.size() != dim_) {
    throw std::invalid_argument("multiply: length mismatch");
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    const double* row = entries_.data() + i * dim_;
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

EigenPair top_eigenpair(const SymMatrix& m, const EigenConfig& cfg, RngStream& rng) {
  const std::size_t d = m.dim();
  Vector v(d);
  double start_norm = 0.0;
  while (start_norm == 0.0) {
    for (double& x : v) x = rng.normal();
    start_norm = norm(v);
  }
  scale(v, 1.0 / start_norm);

  Vector w(d);
  EigenPair out;
  for (std::size_t it = 0;; ++it) {
    m.multiply(v, w);
    const double lambda = dot(v, w);
    double r2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double r = w[i] - lambda * v[i];
      r2 += r * r;
    }
    out.value = lambda;
    out.residual = std::sqrt(r2);
    out.iterations = it;
    const double wn = norm(w);
    // Zero matrix or a start orthogonal to the range: v is already an eigenvector.
    if (out.residual <= cfg.tol || it >= cfg.max_iter || wn == 0.0) break;
    for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / wn;
  }
  canonicalize_sign(v);
  out.vector = std::move(v);
  return out;
}

}  // namespace hmmlab
