#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "hmmlab/delta_estimator.hpp"
#include "hmmlab/linalg.hpp"
#include "hmmlab/model.hpp"
#include "hmmlab/rng.hpp"
#include "hmmlab/theta_estimator.hpp"

namespace hmmlab {

struct JointConfig {
  double lambda_theta = 1.0;
  double lambda_delta = 1.0;
  EigenConfig eigen;
  /// Lower bound applied to delta_hat before sizing the Step C block. When
  /// not positive, 1/n is used.
  double delta_floor = 0.0;

  /// Throws std::invalid_argument unless both lambdas are positive and finite.
  void validate() const;
};

enum class JointBranch { ReturnZero, ReturnA_Large, ReturnA_SmallDeltaHat, ReturnC };

std::string_view to_string(JointBranch branch);

struct JointEstimate {
  Vector theta_hat;
  JointBranch branch = JointBranch::ReturnZero;
  Vector theta_a;
  std::optional<DeltaEstimate> delta_b;
  std::optional<std::size_t> k_c;
  std::optional<ThetaEstimate> theta_c;
};

/// The three data-touching steps of the joint procedure. Each one sees only
/// what the previous gates pass forward.
struct JointSteps {
  std::function<Vector()> step_a;
  std::function<DeltaEstimate(std::span<const double> theta_a)> step_b;
  std::function<ThetaEstimate(std::size_t k, double xi)> step_c;
};

/// 2 lambda_theta log(n) (d/n)^{1/4}
double step_a_zero_gate(std::size_t n, std::size_t d, const JointConfig& cfg);
/// 64 lambda_delta lambda_theta log(n) / ||theta_a||^2 * sqrt(d/n)
double step_b_delta_gate(std::size_t n, std::size_t d, double theta_a_norm,
                         const JointConfig& cfg);
/// floor(1/(16 delta_hat)) clamped to [1, n], with delta_hat floored first.
std::size_t step_c_block_length(double delta_hat, std::size_t n, const JointConfig& cfg);

/// Gate logic over injected steps; n is the per-step sample count.
JointEstimate run_joint(std::size_t n, std::size_t d, const JointConfig& cfg,
                        const JointSteps& steps);

/// Mean estimation with unknown flip probability on 3n samples: rows
/// [0, n) feed Step A, [n, 2n) Step B and [2n, 3n) Step C. Trailing rows
/// beyond 3 floor(rows/3) are ignored. Throws std::invalid_argument for fewer
/// than 6 rows.
JointEstimate algorithm1(const SampleSet& samples, const JointConfig& cfg, RngStream& rng);

}  // namespace hmmlab
