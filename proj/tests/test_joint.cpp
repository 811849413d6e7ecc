#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hmmlab/bench.hpp"
#include "hmmlab/joint.hpp"

using namespace hmmlab;

namespace {

JointSteps fixed_steps(Vector theta_a, double delta_b, std::size_t* seen_k = nullptr) {
  JointSteps s;
  s.step_a = [theta_a] { return theta_a; };
  s.step_b = [delta_b](std::span<const double>) {
    DeltaEstimate e;
    e.delta_raw = delta_b;
    e.rho_raw = 1.0 - 2.0 * delta_b;
    e.delta_clamped = delta_b;
    e.pairs_used = 1;
    return e;
  };
  s.step_c = [seen_k](std::size_t k, double xi) {
    if (seen_k) *seen_k = k;
    ThetaEstimate t;
    t.theta_hat = Vector{0.25, 0.0};
    t.k_used = k;
    t.xi_k = xi;
    return t;
  };
  return s;
}

SampleSet draw_rows(double t, std::size_t rows, std::size_t d, double delta, RngStream& rng) {
  Vector theta = random_unit_vector(d, rng);
  scale(theta, t);
  return sample_hmm(ModelParams(theta, delta, rows), rng).samples;
}

int rank(JointBranch b) {
  switch (b) {
    case JointBranch::ReturnZero: return 0;
    case JointBranch::ReturnA_Large: return 1;
    case JointBranch::ReturnA_SmallDeltaHat: return 2;
    case JointBranch::ReturnC: return 3;
  }
  return -1;
}

void check_consistent(const JointEstimate& e) {
  switch (e.branch) {
    case JointBranch::ReturnZero:
      CHECK(norm(e.theta_hat) == 0.0);
      CHECK_FALSE(e.delta_b.has_value());
      break;
    case JointBranch::ReturnA_Large:
      CHECK(e.theta_hat == e.theta_a);
      CHECK_FALSE(e.delta_b.has_value());
      break;
    case JointBranch::ReturnA_SmallDeltaHat:
      CHECK(e.theta_hat == e.theta_a);
      CHECK(e.delta_b.has_value());
      break;
    case JointBranch::ReturnC:
      REQUIRE(e.theta_c.has_value());
      CHECK(e.theta_hat == e.theta_c->theta_hat);
      CHECK(e.delta_b.has_value());
      CHECK(e.k_c.has_value());
      break;
  }
}

}  // namespace

TEST_CASE("config validation") {
  JointConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.lambda_theta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.lambda_theta = 1.0;
  cfg.lambda_delta = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.lambda_delta = INFINITY;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("gate arithmetic") {
  JointConfig cfg;
  CHECK(step_a_zero_gate(100, 5, cfg) ==
        doctest::Approx(2.0 * std::log(100.0) * std::pow(0.05, 0.25)));
  CHECK(step_b_delta_gate(100, 5, 0.5, cfg) ==
        doctest::Approx(64.0 * std::log(100.0) / 0.25 * std::sqrt(0.05)));
  CHECK(step_c_block_length(0.4, 100, cfg) == 1);
  CHECK(step_c_block_length(0.01, 100, cfg) == 6);
  CHECK(step_c_block_length(0.0, 100, cfg) == 6);  // floored at 1/n
  CHECK(step_c_block_length(-1.0, 10, cfg) == 1);
  cfg.delta_floor = 1e-6;
  CHECK(step_c_block_length(0.0, 100, cfg) == 100);
}

TEST_CASE("injected seam reaches the last step") {
  JointConfig cfg;
  cfg.lambda_theta = 0.1;
  cfg.lambda_delta = 0.1;
  const std::size_t n = 100000000;
  std::size_t k_seen = 0;
  auto e = run_joint(n, 1, cfg, fixed_steps(Vector{0.3, 0.0}, 0.4, &k_seen));
  CHECK(e.branch == JointBranch::ReturnC);
  REQUIRE(e.k_c.has_value());
  CHECK(*e.k_c == 1);
  CHECK(k_seen == 1);
  CHECK(e.theta_c->xi_k == doctest::Approx(xi_k(1, 0.125)));
  check_consistent(e);
}

TEST_CASE("injected seam covers every branch") {
  JointConfig cfg;
  cfg.lambda_theta = 0.1;
  cfg.lambda_delta = 0.1;
  const std::size_t n = 100000000;
  auto zero = run_joint(n, 1, cfg, fixed_steps(Vector{0.01, 0.0}, 0.4));
  CHECK(zero.branch == JointBranch::ReturnZero);
  auto large = run_joint(n, 1, cfg, fixed_steps(Vector{0.6, 0.0}, 0.4));
  CHECK(large.branch == JointBranch::ReturnA_Large);
  auto small = run_joint(n, 1, cfg, fixed_steps(Vector{0.3, 0.0}, 0.01));
  CHECK(small.branch == JointBranch::ReturnA_SmallDeltaHat);
  for (const auto& e : {zero, large, small}) check_consistent(e);
}

TEST_CASE("gates move monotonically with the lambdas") {
  const std::size_t n = 100000000;
  for (double a : {0.05, 0.1, 0.2, 0.3, 0.45}) {
    for (double db : {0.0, 0.001, 0.01, 0.1, 0.4}) {
      int prev_zero = -1;
      for (double lt : {0.01, 0.05, 0.1, 0.5, 1.0, 2.0}) {
        JointConfig cfg;
        cfg.lambda_theta = lt;
        cfg.lambda_delta = 0.1;
        auto e = run_joint(n, 1, cfg, fixed_steps(Vector{a}, db));
        const int is_zero = e.branch == JointBranch::ReturnZero;
        CHECK(is_zero >= prev_zero);
        prev_zero = is_zero;
      }
      int prev_small = -1;
      for (double ld : {0.001, 0.01, 0.1, 1.0, 10.0, 100.0}) {
        JointConfig cfg;
        cfg.lambda_theta = 0.01;
        cfg.lambda_delta = ld;
        auto e = run_joint(n, 1, cfg, fixed_steps(Vector{a}, db));
        if (rank(e.branch) < 2) continue;
        const int is_small = e.branch == JointBranch::ReturnA_SmallDeltaHat;
        CHECK(is_small >= prev_small);
        prev_small = is_small;
      }
    }
  }
}

TEST_CASE("needs six rows") {
  RngStream rng(1, 0);
  JointConfig cfg;
  CHECK_THROWS_AS(algorithm1(SampleSet(Matrix(5, 2, std::vector<double>(10, 1.0))), cfg, rng),
                  std::invalid_argument);
}

TEST_CASE("all-zero data returns zero") {
  RngStream rng(2, 0);
  auto e = algorithm1(SampleSet(Matrix(30, 3)), JointConfig{}, rng);
  CHECK(e.branch == JointBranch::ReturnZero);
  check_consistent(e);
}

TEST_CASE("sample thirds are kept apart") {
  RngStream rng(3, 0);
  const std::size_t n = 200, d = 2;
  auto base = draw_rows(0.35, 3 * n, d, 0.05, rng);
  auto other = draw_rows(0.35, 3 * n, d, 0.05, rng);
  JointConfig cfg;
  cfg.lambda_theta = 0.01;
  cfg.lambda_delta = 0.01;

  auto mix = [&](bool keep_b, bool keep_c) {
    Matrix m = base.data();
    for (std::size_t i = n; i < 3 * n; ++i) {
      const bool keep = i < 2 * n ? keep_b : keep_c;
      if (keep) continue;
      for (std::size_t j = 0; j < d; ++j) m(i, j) = other.data()(i, j);
    }
    return SampleSet(m);
  };

  RngStream r0(9, 9), r1(9, 9), r2(9, 9);
  auto full = algorithm1(base, cfg, r0);
  auto new_c = algorithm1(mix(true, false), cfg, r1);
  auto new_bc = algorithm1(mix(false, false), cfg, r2);
  CHECK(full.theta_a == new_c.theta_a);
  CHECK(full.theta_a == new_bc.theta_a);
  if (full.delta_b) {
    REQUIRE(new_c.delta_b.has_value());
    CHECK(full.delta_b->rho_raw == new_c.delta_b->rho_raw);
    CHECK(full.branch == new_c.branch);
    CHECK(full.k_c == new_c.k_c);
  }
}

TEST_CASE("every branch returns its own intermediate") {
  JointConfig cfg;
  cfg.lambda_theta = 0.02;
  cfg.lambda_delta = 0.02;
  std::array<int, 4> seen{};
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    RngStream rng(4, trial);
    const double t = 0.1 + 0.6 * rng.uniform();
    const double delta = 0.5 * rng.uniform();
    auto rows = draw_rows(t, 300, 3, delta, rng);
    auto e = algorithm1(rows, cfg, rng);
    ++seen[rank(e.branch)];
    check_consistent(e);
  }
  CHECK(seen[1] > 0);
  CHECK(seen[3] > 0);
}

TEST_CASE("pure noise mostly returns zero") {
  JointConfig cfg;
  int zero = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    RngStream rng(5, trial);
    auto e = algorithm1(draw_rows(0.0, 300, 5, 0.1, rng), cfg, rng);
    zero += e.branch == JointBranch::ReturnZero;
  }
  CHECK(zero >= 90);
}

TEST_CASE("strong signal returns the first step under the calibrated gate") {
  const auto cfg = bench::preset("fig-joint").joint;
  int large = 0;
  double total = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    RngStream rng(6, trial);
    Vector theta = random_unit_vector(5, rng);
    scale(theta, 4.0);
    auto rows = sample_hmm(ModelParams(theta, 0.1, 300), rng).samples;
    auto e = algorithm1(rows, cfg, rng);
    large += e.branch == JointBranch::ReturnA_Large;
    total += loss(e.theta_hat, theta);
  }
  CHECK(large >= 90);
  CHECK(total / 100 <= 3.0 * std::sqrt(5.0 / 100.0));
}
