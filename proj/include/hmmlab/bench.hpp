#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hmmlab/joint.hpp"
#include "hmmlab/linalg.hpp"

namespace hmmlab::bench {

enum class EstimatorKind { ThetaKnownDelta, ThetaGmmK1, DeltaMatched, DeltaMismatched, Joint };

std::string_view to_string(EstimatorKind kind);
/// Throws std::invalid_argument for an unknown name.
EstimatorKind estimator_from_string(std::string_view name);

struct ExperimentConfig {
  std::size_t n = 0;
  std::size_t d = 0;
  double delta = 0.0;
  std::vector<double> t_grid;
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  EstimatorKind estimator = EstimatorKind::ThetaKnownDelta;
  double mismatch_scale = 1.0;  // ||theta_sharp|| / ||theta_star|| for DeltaMismatched
  bool clamp_with_zero = false;
  EigenConfig eigen;
  /// Joint only; carries its own eigen settings.
  JointConfig joint;

  /// Throws std::invalid_argument when a field is out of range or the grid
  /// is not strictly increasing.
  void validate() const;
};

struct RatePoint {
  double t = 0.0;
  double mean_loss = 0.0;
  double std_loss = 0.0;
  double theory_rate = 0.0;
  std::size_t trials = 0;
  /// Per-trial losses in trial order.
  std::vector<double> losses;
  /// Joint only: losses of the Step A (k = 1) estimate on the same draw,
  /// clamped the same way as `losses`.
  std::vector<double> fallback_losses;
  /// Joint only: fractions of ReturnZero, ReturnA_Large, ReturnA_SmallDeltaHat, ReturnC.
  std::array<double, 4> branch_freq{};
  /// Delta curves only: losses of the constant estimates 0, 1/2, 1.
  std::array<double, 3> trivial_losses{};

  double standard_error() const;
};

struct RateCurve {
  std::vector<RatePoint> points;
  ExperimentConfig config;
  std::vector<std::string> warnings;
};

/// Evenly spaced grid lo, ..., hi with `intervals` steps; each point is
/// lo + (hi - lo) * i / intervals.
std::vector<double> linear_grid(double lo, double hi, std::size_t intervals);

/// t ^ sqrt(d/n)
double rate_minimax_glm(double n, double d, double t);
/// [ (1/t)(sqrt(d/n) + d/n) + sqrt(d/n) ] ^ t
double rate_minimax_gmm(double n, double d, double t);
/// [ (1/t)(sqrt(d delta/n) + d/n) + sqrt(d/n) ] ^ t
double rate_minimax_hmm(double n, double d, double delta, double t);

/// Known-mean flip-probability bound 18 log(n) / t^2 * sqrt(1/n).
double delta_matched_bound(double n, double t);
/// Mismatched bound with ||theta_sharp|| = scale * t.
double delta_mismatched_bound(double n, double d, double delta, double t, double scale);

/// Worker count from a thread setting: 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested);

RateCurve run_theta_curve(const ExperimentConfig& cfg, unsigned threads = 0);
RateCurve run_delta_curve(const ExperimentConfig& cfg, unsigned threads = 0);
RateCurve run_joint_curve(const ExperimentConfig& cfg, unsigned threads = 0);
/// Dispatches on cfg.estimator.
RateCurve run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

std::vector<std::string> preset_names();
/// fig-theta, fig-delta-mismatched, fig-delta-matched, fig-joint.
ExperimentConfig preset(std::string_view name);

}  // namespace hmmlab::bench
