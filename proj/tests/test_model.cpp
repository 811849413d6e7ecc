#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <stdexcept>
#include <vector>

#include "hmmlab/model.hpp"

using namespace hmmlab;

TEST_CASE("params validation") {
  CHECK_NOTHROW(ModelParams({1.0}, 0.0, 1));
  CHECK_NOTHROW(ModelParams({1.0}, 1.0, 1));
  CHECK_THROWS_AS(ModelParams({1.0}, -0.1, 5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams({1.0}, 1.5, 5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams({}, 0.1, 5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams({1.0}, 0.1, 0), std::invalid_argument);
  ModelParams p({3.0, 4.0}, 0.2, 10);
  CHECK(p.d() == 2);
  CHECK(p.signal_norm() == doctest::Approx(5.0));
  CHECK(p.rho() == doctest::Approx(0.6));
}

TEST_CASE("sign sequence rejects non-signs") {
  CHECK_NOTHROW(SignSequence({1, -1, 1}));
  CHECK_THROWS_AS(SignSequence({1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SignSequence({2}), std::invalid_argument);
}

TEST_CASE("frozen and alternating chains") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    RngStream rng(s, 0);
    auto frozen = sample_sign_chain(5, 0.0, rng);
    REQUIRE(frozen.size() == 6);
    for (std::size_t i = 1; i < frozen.size(); ++i) CHECK(frozen[i] == frozen[0]);

    auto alt = sample_sign_chain(5, 1.0, rng);
    REQUIRE(alt.size() == 6);
    for (std::size_t i = 1; i < alt.size(); ++i) CHECK(alt[i] == -alt[i - 1]);
  }
}

TEST_CASE("flip frequency") {
  RngStream rng(11, 0);
  auto s = sample_sign_chain(100000, 0.1, rng);
  std::size_t flips = 0;
  for (std::size_t i = 1; i < s.size(); ++i) flips += s[i] != s[i - 1];
  CHECK(std::abs(double(flips) / 100000 - 0.1) <= 0.01);
}

TEST_CASE("stationarity and adjacent correlation across chains") {
  const int trials = 20000;
  const std::size_t n = 8;
  const double delta = 0.2;
  std::vector<double> plus(n + 1, 0.0);
  std::vector<double> corr(n, 0.0);
  for (int t = 0; t < trials; ++t) {
    RngStream rng(77, t);
    auto s = sample_sign_chain(n, delta, rng);
    for (std::size_t i = 0; i <= n; ++i) plus[i] += s[i] == 1;
    for (std::size_t i = 0; i < n; ++i) corr[i] += s[i] * s[i + 1];
  }
  const double tol = 4.0 / std::sqrt(double(trials));
  for (double p : plus) CHECK(std::abs(p / trials - 0.5) <= tol);
  for (double c : corr) CHECK(std::abs(c / trials - (1.0 - 2.0 * delta)) <= tol);
}

TEST_CASE("pure noise rows have zero mean") {
  const std::size_t n = 4000;
  ModelParams p(Vector(3, 0.0), 0.3, n);
  RngStream rng(5, 5);
  auto draw = sample_hmm(p, rng);
  REQUIRE(draw.samples.n() == n);
  REQUIRE(draw.samples.d() == 3);
  REQUIRE(draw.signs.size() == n + 1);
  for (std::size_t j = 0; j < 3; ++j) {
    double m = 0;
    for (std::size_t i = 0; i < n; ++i) m += draw.samples.row(i)[j];
    CHECK(std::abs(m / n) <= 4.0 / std::sqrt(double(n)));
  }
}

TEST_CASE("frozen positive chain recovers the mean") {
  const std::size_t n = 4000;
  ModelParams p({3.0}, 0.0, n);
  // Find a stream whose chain starts at +1.
  std::uint64_t id = 0;
  for (;; ++id) {
    RngStream probe(1, id);
    if (sample_hmm(ModelParams({3.0}, 0.0, 1), probe).signs[0] == 1) break;
  }
  RngStream rng(1, id);
  auto draw = sample_hmm(p, rng);
  CHECK(draw.signs[0] == 1);
  double m = 0;
  for (std::size_t i = 0; i < n; ++i) m += draw.samples.row(i)[0];
  CHECK(std::abs(m / n - 3.0) <= 4.0 / std::sqrt(double(n)));
}

TEST_CASE("observations follow the hidden signs") {
  // X_i - S_i theta is the noise; with a huge signal its sign is S_i.
  ModelParams p({1000.0, 0.0}, 0.3, 200);
  RngStream rng(2, 2);
  auto draw = sample_hmm(p, rng);
  for (std::size_t i = 0; i < 200; ++i) {
    const double x = draw.samples.row(i)[0];
    CHECK((x > 0) == (draw.signs[i + 1] == 1));
  }
}

TEST_CASE("uniform-sign covariance matches the population") {
  const std::size_t n = 20000;
  ModelParams p({1.0, 0.0}, 0.5, n);
  RngStream rng(8, 1);
  auto draw = sample_hmm(p, rng);
  double c00 = 0, c01 = 0, c11 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = draw.samples.row(i);
    c00 += r[0] * r[0];
    c01 += r[0] * r[1];
    c11 += r[1] * r[1];
  }
  const double e00 = c00 / n - 2.0, e01 = c01 / n, e11 = c11 / n - 1.0;
  // Operator norm of the 2x2 symmetric error.
  const double mid = 0.5 * (e00 + e11);
  const double rad = std::sqrt(0.25 * (e00 - e11) * (e00 - e11) + e01 * e01);
  const double op = std::max(std::abs(mid + rad), std::abs(mid - rad));
  CHECK(op <= 10.0 * std::sqrt(2.0 / n));
}

TEST_CASE("sampling is deterministic per stream") {
  ModelParams p({0.5, -0.5, 1.0}, 0.1, 50);
  RngStream a(3, 9);
  RngStream b(3, 9);
  auto da = sample_hmm(p, a);
  auto db = sample_hmm(p, b);
  CHECK(da.samples.data() == db.samples.data());
  CHECK(da.signs.values() == db.signs.values());
}

TEST_CASE("loss examples") {
  const Vector v{1.0, -2.0, 0.5};
  const Vector neg{-1.0, 2.0, -0.5};
  const Vector zero(3, 0.0);
  CHECK(loss(v, neg) == 0.0);
  CHECK(loss(v, zero) == doctest::Approx(norm(v)));
  CHECK(loss(Vector{1.0, 0.0}, Vector{0.0, 1.0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(loss(Vector{1.0}, Vector{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("loss symmetry and sign invariance") {
  RngStream rng(4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    Vector a(4), b(4);
    for (auto& x : a) x = rng.normal();
    for (auto& x : b) x = rng.normal();
    Vector na = a, nb = b;
    scale(na, -1.0);
    scale(nb, -1.0);
    const double l = loss(a, b);
    CHECK(l >= 0.0);
    CHECK(l == loss(b, a));
    CHECK(l == loss(na, b));
    CHECK(l == loss(a, nb));
  }
}

TEST_CASE("random unit vector") {
  RngStream rng(6, 0);
  for (std::size_t d : {1u, 2u, 10u, 250u}) {
    auto v = random_unit_vector(d, rng);
    REQUIRE(v.size() == d);
    CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sample set slicing") {
  Matrix m(4, 2, {1, 2, 3, 4, 5, 6, 7, 8});
  SampleSet s(m, "unit");
  auto mid = s.slice(1, 2);
  CHECK(mid.n() == 2);
  CHECK(mid.row(0)[0] == 3);
  CHECK(mid.row(1)[1] == 6);
  CHECK_THROWS(s.slice(3, 2));
}
