#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hmmlab/linalg.hpp"
#include "hmmlab/rng.hpp"

namespace hmmlab::oracle {

inline constexpr std::size_t kMaxEnumerationLength = 24;

/// Exact law of S_1..S_len for a stationary symmetric chain. Bit i of the
/// state index is 1 when S_{i+1} = +1.
struct ExactSignDistribution {
  std::size_t len = 0;
  double delta = 0.0;
  std::vector<double> pmf;

  static int sign_at(std::size_t state, std::size_t i) { return ((state >> i) & 1U) ? 1 : -1; }
};

/// Outcome of one certified inequality family.
struct CheckReport {
  explicit CheckReport(std::string check_name = {}) : name(std::move(check_name)) {}

  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> violations;
  std::vector<std::string> notes;

  bool passed() const { return violations.empty(); }
  void merge(const CheckReport& other);
};

ExactSignDistribution enumerate_sign_distribution(std::size_t len, double delta);

struct GainMoments {
  double xi = 0.0;          // E[Sbar^2]
  double deficiency = 0.0;  // E[1 - Sbar^2]
};

/// Exact moments of the block gain Sbar = (1/k) sum_{j=1}^k S_j.
GainMoments exact_gain_moments(std::size_t k, double delta);

/// delta in {0, step, 2 step, ..., 1/2}
std::vector<double> delta_grid(std::size_t intervals = 10);

/// |xi_fn(k, delta) - exact xi| <= tol for all k in [1, max_k] and the grid.
CheckReport xi_equivalence_check(const std::function<double(std::size_t, double)>& xi_fn,
                                 std::size_t max_k, std::span<const double> deltas,
                                 double tol = 1e-12);

/// E[1 - Sbar^2] <= 4 delta k on the grid.
CheckReport gain_deficiency_check(std::size_t max_k, std::span<const double> deltas);

/// Exact xi >= 1/2 at k = floor(1/(8 delta)) for delta > 0 on the grid.
/// Points with k > max_k are skipped and listed in the notes.
CheckReport gain_half_check(std::span<const double> deltas,
                            std::size_t max_k = kMaxEnumerationLength);

/// (2 delta)^ell <= p_delta(s)/p_{1/2}(s) <= (2 - 2 delta)^ell for all s.
CheckReport ratio_bounds_check(std::size_t ell, double delta);

/// With k = ceil(log(n)/delta) and delta_bar = (1 - rho^k)/2:
/// 1 - 1/n <= p_{delta_bar}(s)/p_{1/2}(s) <= 1 + 2/n. Requires ell <= n/k.
CheckReport genie_ratio_check(std::size_t n, double delta, std::size_t ell);

/// D(P||Q) <= D(P~||Q~) + log(beta_P beta_Q) for `pairs` random joint laws on
/// {0..alphabet-1}^ell. When `product_p` is set P is drawn as a product law.
CheckReport change_of_measure_kl_check(std::size_t alphabet, std::size_t ell, std::size_t pairs,
                                       RngStream& rng, bool product_p = false,
                                       double tol = 1e-9);

/// Natural-log KL divergence between two pmfs on the same support.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// Gauss-Hermite rule for weight exp(-x^2): (nodes, weights).
std::pair<Vector, Vector> gauss_hermite(std::size_t order);

struct ChiSquareResult {
  double chi2_numeric = 0.0;
  double bound = 0.0;
  bool converged = true;
  double refinement_gap = 0.0;  // |chi2(order) - chi2(order + 10)|
};

/// chi^2 between the balanced mixtures (N(theta1, s^2 I) + N(-theta1, s^2 I))/2
/// and the same with theta0, by 2-D Gauss-Hermite quadrature in the plane
/// spanned by theta0, theta1. The mixture density ratio depends on y only
/// through the projections onto that plane, so the remaining d - 2
/// coordinates integrate to one. Bound: 8 t^2 / sigma^4 * ||theta0 - theta1||^2.
ChiSquareResult chi_square_gmm(std::span<const double> theta0, std::span<const double> theta1,
                               double sigma, std::size_t quad_order);

/// Random (theta0, theta1) with equal norm t <= sigma in dimension 2..5.
CheckReport chi_square_gmm_check(std::size_t configs, std::size_t quad_order, RngStream& rng);

/// h_b(p) = -p log p - (1-p) log(1-p)
double binary_entropy(double p);

/// log 2 - h_b(1/2 - eps) <= 5 eps^2 on the grid.
CheckReport entropy_quadratic_check(std::span<const double> eps_grid);

}  // namespace hmmlab::oracle
