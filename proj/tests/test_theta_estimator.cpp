#include <doctest.h>

#include <cmath>
#include <vector>

#include "hmmlab/model.hpp"
#include "hmmlab/theta_estimator.hpp"

using namespace hmmlab;

namespace {

// E[(mean of S_1..S_k)^2] summed over all 2^k paths of a stationary chain.
double xi_by_paths(std::size_t k, double delta) {
  double total = 0.0;
  for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
    double p = 0.5;
    int prev = (bits & 1u) ? 1 : -1;
    int sum = prev;
    for (std::size_t i = 1; i < k; ++i) {
      const int s = (bits >> i & 1u) ? 1 : -1;
      p *= (s == prev) ? 1.0 - delta : delta;
      sum += s;
      prev = s;
    }
    const double mean = double(sum) / double(k);
    total += p * mean * mean;
  }
  return total;
}

SymMatrix population_cov(const Vector& theta, std::size_t k, double xi) {
  SymMatrix m(theta.size());
  m.add_outer(theta, xi);
  m.add_identity(1.0 / double(k));
  return m;
}

}  // namespace

TEST_CASE("gain moment examples") {
  for (double d : {0.0, 0.1, 0.3, 0.5}) CHECK(xi_k(1, d) == 1.0);
  for (std::size_t k : {1u, 2u, 7u, 40u}) CHECK(xi_k(k, 0.0) == doctest::Approx(1.0));
  CHECK(xi_k(2, 0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(xi_k(4, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("gain moment matches path enumeration") {
  for (std::size_t k = 1; k <= 12; ++k) {
    for (int i = 0; i <= 10; ++i) {
      const double delta = 0.05 * i;
      CHECK(std::abs(xi_k(k, delta) - xi_by_paths(k, delta)) <= 1e-12);
    }
  }
}

TEST_CASE("gain moment lies in [1/k, 1]") {
  for (std::size_t k = 1; k <= 200; k += 7) {
    for (int i = 0; i <= 50; ++i) {
      const double delta = 0.01 * i;
      const double xi = xi_k(k, delta);
      CHECK(xi >= 1.0 / double(k) - 1e-15);
      CHECK(xi <= 1.0 + 1e-15);
    }
  }
}

TEST_CASE("block length rule") {
  CHECK(block_length_for_delta(0.05, 5000) == 2);
  CHECK(block_length_for_delta(0.01, 5000) == 12);
  CHECK(block_length_for_delta(0.5, 10) == 1);
  CHECK(block_length_for_delta(0.0, 37) == 37);
  CHECK(block_length_for_delta(1e-6, 30) == 30);
}

TEST_CASE("block averaging") {
  Matrix m(6, 2, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  SampleSet s(m);
  RngStream rng(1, 0);

  auto k1 = block_average(s, 1, rng);
  CHECK(k1.ell == 6);
  CHECK(k1.dropped_samples == 0);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(k1.block_means(i, j)) == m(i, j));
  }

  auto kn = block_average(s, 6, rng);
  CHECK(kn.ell == 1);
  CHECK(std::abs(kn.block_means(0, 0)) == doctest::Approx(6.0));
  CHECK(std::abs(kn.block_means(0, 1)) == doctest::Approx(7.0));

  auto k4 = block_average(s, 4, rng);
  CHECK(k4.ell == 1);
  CHECK(k4.dropped_samples == 2);
  CHECK(std::abs(k4.block_means(0, 0)) == doctest::Approx(4.0));

  CHECK_THROWS(block_average(s, 7, rng));
  CHECK_THROWS(block_average(s, 0, rng));
}

TEST_CASE("block signs are fair") {
  Matrix m(4000, 1, std::vector<double>(4000, 1.0));
  RngStream rng(2, 0);
  auto b = block_average(SampleSet(m), 1, rng);
  double sum = 0;
  for (std::size_t i = 0; i < b.ell; ++i) sum += b.block_means(i, 0);
  CHECK(std::abs(sum / 4000) <= 4.0 / std::sqrt(4000.0));
}

TEST_CASE("block covariance examples") {
  BlockSummary one{1, 1, Matrix(1, 2, {1.0, 2.0}), 0};
  auto c1 = empirical_block_cov(one);
  CHECK(c1(0, 0) == 1.0);
  CHECK(c1(0, 1) == 2.0);
  CHECK(c1(1, 1) == 4.0);

  BlockSummary pm{1, 2, Matrix(2, 2, {1.0, 2.0, -1.0, -2.0}), 0};
  auto c2 = empirical_block_cov(pm);
  CHECK(c2(0, 0) == 1.0);
  CHECK(c2(0, 1) == 2.0);
  CHECK(c2(1, 1) == 4.0);

  BlockSummary basis{1, 2, Matrix(2, 2, {1.0, 0.0, 0.0, 1.0}), 0};
  auto c3 = empirical_block_cov(basis);
  CHECK(c3(0, 0) == 0.5);
  CHECK(c3(1, 1) == 0.5);
  CHECK(c3(0, 1) == 0.0);
}

TEST_CASE("population covariance is a fixed point") {
  RngStream rng(3, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + trial % 10;
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * 20);
    const double delta = 0.5 * rng.uniform();
    Vector theta(d);
    for (auto& x : theta) x = rng.normal();
    scale(theta, (0.2 + 3.0 * rng.uniform()) / norm(theta));
    const double xi = xi_k(k, delta);
    auto est = estimate_from_covariance(population_cov(theta, k, xi), k, xi,
                                        EigenConfig{1e-13, 100000}, rng);
    CHECK(std::abs(norm(est.theta_hat) - norm(theta)) <= 1e-6 * norm(theta));
    Vector u = est.theta_hat, w = theta;
    scale(u, 1.0 / norm(u));
    scale(w, 1.0 / norm(w));
    CHECK(loss(u, w) <= 1e-6);
  }
}

TEST_CASE("small top eigenvalue maps to zero") {
  SymMatrix m(3);
  m.add_identity(0.4);
  RngStream rng(4, 0);
  auto est = estimate_from_covariance(m, 2, xi_k(2, 0.1), EigenConfig{}, rng);
  CHECK(norm(est.theta_hat) == 0.0);
}

TEST_CASE("estimate norm follows the eigenvalue") {
  RngStream rng(5, 0);
  for (int trial = 0; trial < 10; ++trial) {
    Vector theta = random_unit_vector(8, rng);
    scale(theta, 0.5 + trial * 0.3);
    const double delta = 0.02 + 0.04 * trial;
    auto draw = sample_hmm(ModelParams(theta, delta, 600), rng);
    auto est = estimate_theta_known_delta(draw.samples, delta, EigenConfig{}, rng);
    const double expect =
        std::max(est.lambda_max - 1.0 / double(est.k_used), 0.0) / est.xi_k;
    const double got = dot(est.theta_hat, est.theta_hat);
    CHECK(std::abs(got - expect) <= 1e-9 * std::max(expect, 1e-300));
    CHECK(est.k_used == block_length_for_delta(delta, 600));
    CHECK(est.xi_k == xi_k(est.k_used, delta));
  }
}

TEST_CASE("large flip probability uses the even-sample reduction") {
  RngStream rng(6, 0);
  Vector theta{1.5, -0.5, 0.25};
  auto draw = sample_hmm(ModelParams(theta, 0.9, 400), rng);

  Matrix flipped = draw.samples.data();
  for (std::size_t i = 1; i < flipped.rows(); i += 2)
    for (std::size_t j = 0; j < flipped.cols(); ++j) flipped(i, j) = -flipped(i, j);

  RngStream r1(7, 0);
  RngStream r2(7, 0);
  auto a = estimate_theta_known_delta(draw.samples, 0.9, EigenConfig{}, r1);
  auto b = estimate_theta_known_delta(SampleSet(flipped), 0.1, EigenConfig{}, r2);
  CHECK(a.k_used == b.k_used);
  CHECK(a.theta_hat == b.theta_hat);
  CHECK(loss(a.theta_hat, theta) < 1.0);
}

TEST_CASE("block signs do not change the covariance") {
  RngStream rng(8, 0);
  Vector theta = random_unit_vector(6, rng);
  auto draw = sample_hmm(ModelParams(theta, 0.05, 300), rng);
  RngStream s1(1, 1), s2(2, 2);
  auto c1 = empirical_block_cov(block_average(draw.samples, 2, s1));
  auto c2 = empirical_block_cov(block_average(draw.samples, 2, s2));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(c1(i, j) == c2(i, j));
}

TEST_CASE("desk-scale accuracy at a strong signal") {
  const std::size_t n = 5000, d = 250, trials = 50;
  double total = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng(11, t);
    Vector theta = random_unit_vector(d, rng);
    scale(theta, 5.0);
    auto draw = sample_hmm(ModelParams(theta, 0.05, n), rng);
    auto est = estimate_theta_known_delta(draw.samples, 0.05, EigenConfig{}, rng);
    total += loss(est.theta_hat, theta);
  }
  CHECK(total / trials <= 3.0 * std::sqrt(double(d) / n));
}

TEST_CASE("rate helpers") {
  CHECK(rate_beta(5000, 250, 0.05) == doctest::Approx(std::sqrt(0.05)).epsilon(1e-12));
  CHECK(rate_beta(5000, 250, 0.0) == doctest::Approx(std::sqrt(0.05)));
  CHECK(rate_beta(100, 100, 0.3) == doctest::Approx(1.0));
  CHECK(rate_psi(1000, 10, 0.1, 1, 1.0) == doctest::Approx(1.62).epsilon(1e-12));
  CHECK(rate_psi(1000, 10, 0.0, 3, 0.0) ==
        doctest::Approx(13.0 * std::sqrt(10.0 / 3000.0) + 0.1));
  double prev = rate_psi(10, 10, 0.1, 2, 1.5);
  for (double n = 20; n < 1e6; n *= 1.7) {
    const double cur = rate_psi(n, 10, 0.1, 2, 1.5);
    CHECK(cur <= prev);
    prev = cur;
  }
}
