#include "hmmlab/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hmmlab/delta_estimator.hpp"
#include "hmmlab/model.hpp"
#include "hmmlab/theta_estimator.hpp"

namespace hmmlab::bench {
namespace {

// Runs fn(i) for i in [0, count) on `threads` workers. Each index writes
// only its own output slot, so the result is independent of scheduling.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

void summarize(RatePoint& p) {
  p.trials = p.losses.size();
  if (p.trials == 0) return;
  double sum = 0.0;
  for (double v : p.losses) sum += v;
  p.mean_loss = sum / static_cast<double>(p.trials);
  double ss = 0.0;
  for (double v : p.losses) ss += (v - p.mean_loss) * (v - p.mean_loss);
  p.std_loss = p.trials > 1 ? std::sqrt(ss / static_cast<double>(p.trials - 1)) : 0.0;
}

RngStream trial_stream(const ExperimentConfig& cfg, std::size_t trial, std::size_t grid_index) {
  return RngStream(cfg.seed, trial).fork(grid_index);
}

Vector signal_vector(std::size_t d, double t, RngStream& rng) {
  Vector theta = random_unit_vector(d, rng);
  scale(theta, t);
  return theta;
}

double theta_theory(const ExperimentConfig& cfg, double t) {
  const double n = static_cast<double>(cfg.n);
  const double d = static_cast<double>(cfg.d);
  switch (cfg.estimator) {
    case EstimatorKind::ThetaKnownDelta: return rate_minimax_hmm(n, d, cfg.delta, t);
    default: return rate_minimax_gmm(n, d, t);
  }
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::ThetaKnownDelta: return "ThetaKnownDelta";
    case EstimatorKind::ThetaGmmK1: return "ThetaGmmK1";
    case EstimatorKind::DeltaMatched: return "DeltaMatched";
    case EstimatorKind::DeltaMismatched: return "DeltaMismatched";
    case EstimatorKind::Joint: return "Joint";
  }
  return "unknown";
}

EstimatorKind estimator_from_string(std::string_view name) {
  for (EstimatorKind k : {EstimatorKind::ThetaKnownDelta, EstimatorKind::ThetaGmmK1,
                          EstimatorKind::DeltaMatched, EstimatorKind::DeltaMismatched,
                          EstimatorKind::Joint}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown estimator: " + std::string(name));
}

void ExperimentConfig::validate() const {
  if (n == 0 || d == 0) throw std::invalid_argument("ExperimentConfig: n and d must be positive");
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("ExperimentConfig: delta must lie in [0, 1]");
  }
  if (trials == 0) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
  if (t_grid.empty()) throw std::invalid_argument("ExperimentConfig: t_grid is empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || !std::isfinite(t_grid[i])) {
      throw std::invalid_argument("ExperimentConfig: t_grid entries must be finite and >= 0");
    }
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw std::invalid_argument("ExperimentConfig: t_grid must be strictly increasing");
    }
  }
  if (estimator == EstimatorKind::DeltaMismatched && !(mismatch_scale > 0.0)) {
    throw std::invalid_argument("ExperimentConfig: mismatch_scale must be positive");
  }
  if (estimator == EstimatorKind::Joint) {
    joint.validate();
    if (n < 2) throw std::invalid_argument("ExperimentConfig: joint needs n >= 2");
  }
}

double RatePoint::standard_error() const {
  return trials > 0 ? std_loss / std::sqrt(static_cast<double>(trials)) : 0.0;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t intervals) {
  if (intervals == 0) return {lo};
  std::vector<double> grid(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(intervals);
  }
  return grid;
}

double rate_minimax_glm(double n, double d, double t) {
  if (t <= 0.0) return 0.0;
  return std::min(t, std::sqrt(d / n));
}

double rate_minimax_gmm(double n, double d, double t) {
  if (t <= 0.0) return 0.0;
  const double parametric = std::sqrt(d / n);
  return std::min((parametric + d / n) / t + parametric, t);
}

double rate_minimax_hmm(double n, double d, double delta, double t) {
  if (t <= 0.0) return 0.0;
  return std::min((std::sqrt(d * delta / n) + d / n) / t + std::sqrt(d / n), t);
}

double delta_matched_bound(double n, double t) {
  return 18.0 * std::log(n) / (t * t) * std::sqrt(1.0 / n);
}

double delta_mismatched_bound(double n, double d, double delta, double t, double scale) {
  const double sharp = scale * t;
  const double sharp_sq = sharp * sharp;
  return std::abs(t * t - sharp_sq) / sharp_sq +
         16.0 * std::log(n) *
             (std::sqrt(delta / n) + std::sqrt(1.0 / n) / sharp + std::sqrt(d / n) / sharp_sq);
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

RateCurve run_theta_curve(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  if (cfg.estimator != EstimatorKind::ThetaKnownDelta && cfg.estimator != EstimatorKind::ThetaGmmK1) {
    throw std::invalid_argument("run_theta_curve: estimator must be ThetaKnownDelta or ThetaGmmK1");
  }
  const std::size_t points = cfg.t_grid.size();
  std::vector<double> losses(points * cfg.trials);
  parallel_for(losses.size(), threads, [&](std::size_t job) {
    const std::size_t g = job / cfg.trials;
    const std::size_t trial = job % cfg.trials;
    const double t = cfg.t_grid[g];
    RngStream rng = trial_stream(cfg, trial, g);
    RngStream dir_rng = rng.fork(1);
    RngStream data_rng = rng.fork(2);
    RngStream est_rng = rng.fork(3);
    const Vector theta = signal_vector(cfg.d, t, dir_rng);
    const HmmDraw draw = sample_hmm(ModelParams(theta, cfg.delta, cfg.n), data_rng);
    const ThetaEstimate est =
        cfg.estimator == EstimatorKind::ThetaKnownDelta
            ? estimate_theta_known_delta(draw.samples, cfg.delta, cfg.eigen, est_rng)
            : estimate_theta_cov(draw.samples, 1, 1.0, cfg.eigen, est_rng);
    double l = loss(est.theta_hat, theta);
    if (cfg.clamp_with_zero) l = std::min(l, t);
    losses[job] = l;
  });

  RateCurve curve{{}, cfg, {}};
  for (std::size_t g = 0; g < points; ++g) {
    RatePoint p;
    p.t = cfg.t_grid[g];
    p.losses.assign(losses.begin() + static_cast<std::ptrdiff_t>(g * cfg.trials),
                    losses.begin() + static_cast<std::ptrdiff_t>((g + 1) * cfg.trials));
    summarize(p);
    p.theory_rate = theta_theory(cfg, p.t);
    curve.points.push_back(std::move(p));
  }
  return curve;
}

RateCurve run_delta_curve(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  if (cfg.estimator != EstimatorKind::DeltaMatched && cfg.estimator != EstimatorKind::DeltaMismatched) {
    throw std::invalid_argument("run_delta_curve: estimator must be DeltaMatched or DeltaMismatched");
  }
  RateCurve curve{{}, cfg, {}};
  std::vector<std::size_t> active;
  for (std::size_t g = 0; g < cfg.t_grid.size(); ++g) {
    if (cfg.t_grid[g] > 0.0) {
      active.push_back(g);
    } else {
      curve.warnings.push_back("skipping t = 0: theta_sharp is undefined");
    }
  }
  const bool matched = cfg.estimator == EstimatorKind::DeltaMatched;
  std::vector<double> losses(active.size() * cfg.trials);
  parallel_for(losses.size(), threads, [&](std::size_t job) {
    const std::size_t g = active[job / cfg.trials];
    const std::size_t trial = job % cfg.trials;
    const double t = cfg.t_grid[g];
    RngStream rng = trial_stream(cfg, trial, g);
    RngStream dir_rng = rng.fork(1);
    RngStream data_rng = rng.fork(2);
    const Vector theta = signal_vector(cfg.d, t, dir_rng);
    const HmmDraw draw = sample_hmm(ModelParams(theta, cfg.delta, cfg.n), data_rng);
    DeltaEstimate est;
    if (matched) {
      // One-dimensional model U_i = t S_i + W_i.
      const SampleSet projected = project_onto(draw.samples, theta);
      const Vector sharp{t};
      est = estimate_rho(projected, sharp);
    } else {
      Vector sharp = theta;
      scale(sharp, cfg.mismatch_scale);
      est = estimate_rho(draw.samples, sharp);
    }
    losses[job] = std::abs(est.delta_raw - cfg.delta);
  });

  const double n = static_cast<double>(cfg.n);
  const double d = static_cast<double>(cfg.d);
  for (std::size_t a = 0; a < active.size(); ++a) {
    RatePoint p;
    p.t = cfg.t_grid[active[a]];
    p.losses.assign(losses.begin() + static_cast<std::ptrdiff_t>(a * cfg.trials),
                    losses.begin() + static_cast<std::ptrdiff_t>((a + 1) * cfg.trials));
    summarize(p);
    p.theory_rate = matched ? delta_matched_bound(n, p.t)
                            : delta_mismatched_bound(n, d, cfg.delta, p.t, cfg.mismatch_scale);
    p.trivial_losses = {std::abs(cfg.delta), std::abs(0.5 - cfg.delta), std::abs(1.0 - cfg.delta)};
    curve.points.push_back(std::move(p));
  }
  return curve;
}

RateCurve run_joint_curve(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  if (cfg.estimator != EstimatorKind::Joint) {
    throw std::invalid_argument("run_joint_curve: estimator must be Joint");
  }
  struct TrialResult {
    double loss = 0.0;
    double fallback = 0.0;
    JointBranch branch = JointBranch::ReturnZero;
  };
  const std::size_t points = cfg.t_grid.size();
  std::vector<TrialResult> results(points * cfg.trials);
  parallel_for(results.size(), threads, [&](std::size_t job) {
    const std::size_t g = job / cfg.trials;
    const std::size_t trial = job % cfg.trials;
    const double t = cfg.t_grid[g];
    RngStream rng = trial_stream(cfg, trial, g);
    RngStream dir_rng = rng.fork(1);
    RngStream data_rng = rng.fork(2);
    RngStream est_rng = rng.fork(3);
    const Vector theta = signal_vector(cfg.d, t, dir_rng);
    const HmmDraw draw = sample_hmm(ModelParams(theta, cfg.delta, 3 * cfg.n), data_rng);
    const JointEstimate est = algorithm1(draw.samples, cfg.joint, est_rng);
    TrialResult r;
    r.loss = loss(est.theta_hat, theta);
    r.fallback = loss(est.theta_a, theta);
    if (cfg.clamp_with_zero) {
      r.loss = std::min(r.loss, t);
      r.fallback = std::min(r.fallback, t);
    }
    r.branch = est.branch;
    results[job] = r;
  });

  RateCurve curve{{}, cfg, {}};
  const double n = static_cast<double>(cfg.n);
  const double d = static_cast<double>(cfg.d);
  for (std::size_t g = 0; g < points; ++g) {
    RatePoint p;
    p.t = cfg.t_grid[g];
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      const TrialResult& r = results[g * cfg.trials + trial];
      p.losses.push_back(r.loss);
      p.fallback_losses.push_back(r.fallback);
      p.branch_freq[static_cast<std::size_t>(r.branch)] += 1.0;
    }
    for (double& f : p.branch_freq) f /= static_cast<double>(cfg.trials);
    summarize(p);
    p.theory_rate = rate_minimax_gmm(n, d, p.t);
    curve.points.push_back(std::move(p));
  }
  return curve;
}

RateCurve run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  switch (cfg.estimator) {
    case EstimatorKind::ThetaKnownDelta:
    case EstimatorKind::ThetaGmmK1: return run_theta_curve(cfg, threads);
    case EstimatorKind::DeltaMatched:
    case EstimatorKind::DeltaMismatched: return run_delta_curve(cfg, threads);
    case EstimatorKind::Joint: return run_joint_curve(cfg, threads);
  }
  throw std::invalid_argument("run_experiment: unknown estimator");
}

std::vector<std::string> preset_names() {
  return {"fig-theta", "fig-delta-mismatched", "fig-delta-matched", "fig-joint"};
}

ExperimentConfig preset(std::string_view name) {
  ExperimentConfig cfg;
  cfg.trials = 50;
  cfg.seed = 1;
  if (name == "fig-theta") {
    cfg.n = 5000;
    cfg.d = 250;
    cfg.delta = 0.05;
    cfg.t_grid = linear_grid(0.0, 5.0, 100);
    cfg.estimator = EstimatorKind::ThetaKnownDelta;
    cfg.clamp_with_zero = true;
  } else if (name == "fig-delta-mismatched" || name == "fig-delta-matched") {
    cfg.n = 500;
    cfg.d = 250;
    cfg.delta = 0.1;
    cfg.t_grid = linear_grid(0.0, 1.0, 20);
    if (name == "fig-delta-mismatched") {
      cfg.estimator = EstimatorKind::DeltaMismatched;
      cfg.mismatch_scale = 1.2;
    } else {
      cfg.estimator = EstimatorKind::DeltaMatched;
    }
  } else if (name == "fig-joint") {
    cfg.n = 100;
    cfg.d = 5;
    cfg.delta = 0.1;
    cfg.t_grid = linear_grid(0.0, 4.0, 80);
    cfg.estimator = EstimatorKind::Joint;
    cfg.clamp_with_zero = true;
    // With lambda_theta = 1 the zero gate (~4.36 here) swallows t = 4.
    // 0.2 puts it near 0.87, just above the pure-noise Step A norm.
    cfg.joint.lambda_theta = 0.2;
  } else {
    throw std::invalid_argument("unknown preset: " + std::string(name));
  }
  return cfg;
}

}  // namespace hmmlab::bench
