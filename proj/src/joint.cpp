#include "hmmlab/joint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmmlab {

void JointConfig::validate() const {
  if (!(lambda_theta > 0.0 && std::isfinite(lambda_theta)) ||
      !(lambda_delta > 0.0 && std::isfinite(lambda_delta))) {
    throw std::invalid_argument("JointConfig: lambda_theta and lambda_delta must be positive");
  }
}

std::string_view to_string(JointBranch branch) {
  switch (branch) {
    case JointBranch::ReturnZero: return "ReturnZero";
    case JointBranch::ReturnA_Large: return "ReturnA_Large";
    case JointBranch::ReturnA_SmallDeltaHat: return "ReturnA_SmallDeltaHat";
    case JointBranch::ReturnC: return "ReturnC";
  }
  return "unknown";
}

double step_a_zero_gate(std::size_t n, std::size_t d, const JointConfig& cfg) {
  const double nd = static_cast<double>(n);
  return 2.0 * cfg.lambda_theta * std::log(nd) * std::pow(static_cast<double>(d) / nd, 0.25);
}

double step_b_delta_gate(std::size_t n, std::size_t d, double theta_a_norm,
                         const JointConfig& cfg) {
  const double nd = static_cast<double>(n);
  return 64.0 * cfg.lambda_delta * cfg.lambda_theta * std::log(nd) /
         (theta_a_norm * theta_a_norm) * std::sqrt(static_cast<double>(d) / nd);
}

std::size_t step_c_block_length(double delta_hat, std::size_t n, const JointConfig& cfg) {
  const double floor_value = cfg.delta_floor > 0.0 ? cfg.delta_floor : 1.0 / static_cast<double>(n);
  const double delta = std::max(delta_hat, floor_value);
  const double raw = std::floor(1.0 / (16.0 * delta));
  if (raw >= static_cast<double>(n)) return n;
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

JointEstimate run_joint(std::size_t n, std::size_t d, const JointConfig& cfg,
                        const JointSteps& steps) {
  cfg.validate();
  JointEstimate out;
  out.theta_a = steps.step_a();
  const double a_norm = norm(out.theta_a);

  if (a_norm <= step_a_zero_gate(n, d, cfg)) {
    out.branch = JointBranch::ReturnZero;
    out.theta_hat = Vector(out.theta_a.size(), 0.0);
    return out;
  }
  if (a_norm >= 0.5) {
    out.branch = JointBranch::ReturnA_Large;
    out.theta_hat = out.theta_a;
    return out;
  }

  out.delta_b = steps.step_b(out.theta_a);
  if (out.delta_b->delta_raw <= step_b_delta_gate(n, d, a_norm, cfg)) {
    out.branch = JointBranch::ReturnA_SmallDeltaHat;
    out.theta_hat = out.theta_a;
    return out;
  }

  const std::size_t k = step_c_block_length(out.delta_b->delta_raw, n, cfg);
  out.k_c = k;
  // 1/(8k) is the largest delta for which block length k keeps xi >= 1/2.
  out.theta_c = steps.step_c(k, xi_k(k, 1.0 / (8.0 * static_cast<double>(k))));
  out.branch = JointBranch::ReturnC;
  out.theta_hat = out.theta_c->theta_hat;
  return out;
}

JointEstimate algorithm1(const SampleSet& samples, const JointConfig& cfg, RngStream& rng) {
  if (samples.n() < 6) throw std::invalid_argument("algorithm1: need at least 6 rows");
  const std::size_t n = samples.n() / 3;
  const SampleSet part_a = samples.slice(0, n);
  const SampleSet part_b = samples.slice(n, n);
  const SampleSet part_c = samples.slice(2 * n, n);
  RngStream rng_a = rng.fork(1);
  RngStream rng_c = rng.fork(3);

  JointSteps steps;
  steps.step_a = [&] { return estimate_theta_cov(part_a, 1, 1.0, cfg.eigen, rng_a).theta_hat; };
  steps.step_b = [&](std::span<const double> theta_a) { return estimate_rho(part_b, theta_a); };
  steps.step_c = [&](std::size_t k, double xi) {
    return estimate_theta_cov(part_c, k, xi, cfg.eigen, rng_c);
  };
  return run_joint(n, samples.d(), cfg, steps);
}

}  // namespace hmmlab
