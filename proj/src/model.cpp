#include "hmmlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace hmmlab {

ModelParams::ModelParams(Vector theta_star, double delta, std::size_t n)
    : theta_star_(std::move(theta_star)), delta_(delta), n_(n) {
  if (theta_star_.empty()) throw std::invalid_argument("ModelParams: d must be >= 1");
  if (!(delta_ >= 0.0 && delta_ <= 1.0)) {
    throw std::invalid_argument("ModelParams: delta must lie in [0, 1]");
  }
  if (n_ == 0) throw std::invalid_argument("ModelParams: n must be >= 1");
}

SignSequence::SignSequence(std::vector<int> values) : values_(std::move(values)) {
  for (int s : values_) {
    if (s != 1 && s != -1) throw std::invalid_argument("SignSequence: entries must be +-1");
  }
}

SampleSet::SampleSet(Matrix data, std::string provenance)
    : data_(std::move(data)), provenance_(std::move(provenance)) {
  if (data_.rows() == 0 || data_.cols() == 0) {
    throw std::invalid_argument("SampleSet: n and d must be positive");
  }
}

SampleSet SampleSet::slice(std::size_t first, std::size_t count) const {
  if (first + count > n()) throw std::out_of_range("SampleSet::slice: past the last row");
  const auto all = data_.values();
  const auto begin = all.begin() + static_cast<std::ptrdiff_t>(first * d());
  std::vector<double> values(begin, begin + static_cast<std::ptrdiff_t>(count * d()));
  return SampleSet(Matrix(count, d(), std::move(values)), provenance_);
}

SignSequence sample_sign_chain(std::size_t n, double delta, RngStream& rng) {
  std::vector<int> s(n + 1);
  s[0] = rng.sign();
  for (std::size_t i = 1; i <= n; ++i) {
    s[i] = rng.bernoulli(delta) ? -s[i - 1] : s[i - 1];
  }
  return SignSequence(std::move(s));
}

HmmDraw sample_hmm(const ModelParams& params, RngStream& rng) {
  RngStream sign_rng = rng.fork(1);
  RngStream noise_rng = rng.fork(2);
  SignSequence signs = sample_sign_chain(params.n(), params.delta(), sign_rng);

  const std::size_t n = params.n();
  const std::size_t d = params.d();
  const Vector& theta = params.theta_star();
  Matrix x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = signs[i + 1];
    auto row = x.row(i);
    for (std::size_t j = 0; j < d; ++j) row[j] = s * theta[j] + noise_rng.normal();
  }
  return HmmDraw{std::move(signs), SampleSet(std::move(x), "sample_hmm")};
}

double loss(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("loss: vectors differ in length");
  double minus = 0.0;
  double plus = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    minus += (a[i] - b[i]) * (a[i] - b[i]);
    plus += (a[i] + b[i]) * (a[i] + b[i]);
  }
  return std::sqrt(std::min(minus, plus));
}

Vector random_unit_vector(std::size_t d, RngStream& rng) {
  Vector v(d);
  double r = 0.0;
  while (r == 0.0) {
    for (double& x : v) x = rng.normal();
    r = norm(v);
  }
  scale(v, 1.0 / r);
  return v;
}

}  // namespace hmmlab
