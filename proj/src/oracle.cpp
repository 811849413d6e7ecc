#include "hmmlab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hmmlab::oracle {
namespace {

std::string describe(std::initializer_list<std::pair<const char*, double>> fields) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [key, value] : fields) {
    if (!first) os << ' ';
    os << key << '=' << value;
    first = false;
  }
  return os.str();
}

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0, 1]");
}

// Random pmf with Dirichlet(1) weights; zero or non-finite draws are redrawn
// so every KL term stays finite.
Vector random_pmf(std::size_t size, RngStream& rng) {
  Vector p(size);
  for (;;) {
    double total = 0.0;
    bool ok = true;
    for (double& v : p) {
      v = -std::log(1.0 - rng.uniform());
      if (!(v > 0.0) || !std::isfinite(v)) ok = false;
      total += v;
    }
    if (!ok) continue;
    for (double& v : p) v /= total;
    return p;
  }
}

std::size_t int_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// marginals[i][a] = P(U_i = a)
std::vector<Vector> marginals_of(std::span<const double> joint, std::size_t alphabet,
                                 std::size_t ell) {
  std::vector<Vector> m(ell, Vector(alphabet, 0.0));
  for (std::size_t state = 0; state < joint.size(); ++state) {
    std::size_t rest = state;
    for (std::size_t i = 0; i < ell; ++i) {
      m[i][rest % alphabet] += joint[state];
      rest /= alphabet;
    }
  }
  return m;
}

Vector product_of(const std::vector<Vector>& marginals, std::size_t alphabet) {
  const std::size_t states = int_pow(alphabet, marginals.size());
  Vector out(states);
  for (std::size_t state = 0; state < states; ++state) {
    std::size_t rest = state;
    double p = 1.0;
    for (const Vector& m : marginals) {
      p *= m[rest % alphabet];
      rest /= alphabet;
    }
    out[state] = p;
  }
  return out;
}

}  // namespace

void CheckReport::merge(const CheckReport& other) {
  cases += other.cases;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

ExactSignDistribution enumerate_sign_distribution(std::size_t len, double delta) {
  if (len == 0 || len > kMaxEnumerationLength) {
    throw std::invalid_argument("enumerate_sign_distribution: length must lie in [1, 24]");
  }
  check_delta(delta);
  ExactSignDistribution out;
  out.len = len;
  out.delta = delta;
  out.pmf.assign(std::size_t{1} << len, 0.0);
  out.pmf[0] = 0.5;
  out.pmf[1] = 0.5;
  // Extend one step at a time: bit L is appended to every length-L prefix.
  for (std::size_t L = 1; L < len; ++L) {
    const std::size_t prefixes = std::size_t{1} << L;
    for (std::size_t s = 0; s < prefixes; ++s) {
      const double p = out.pmf[s];
      const std::size_t last = (s >> (L - 1)) & 1U;
      const std::size_t with_one = s | (std::size_t{1} << L);
      out.pmf[with_one] = p * (last == 1 ? 1.0 - delta : delta);
      out.pmf[s] = p * (last == 0 ? 1.0 - delta : delta);
    }
  }
  return out;
}

GainMoments exact_gain_moments(std::size_t k, double delta) {
  const ExactSignDistribution dist = enumerate_sign_distribution(k, delta);
  const double kd = static_cast<double>(k);
  GainMoments out;
  for (std::size_t s = 0; s < dist.pmf.size(); ++s) {
    const double sum = 2.0 * std::popcount(s) - kd;
    const double gain_sq = (sum / kd) * (sum / kd);
    out.xi += dist.pmf[s] * gain_sq;
    out.deficiency += dist.pmf[s] * (1.0 - gain_sq);
  }
  return out;
}

std::vector<double> delta_grid(std::size_t intervals) {
  if (intervals == 0) throw std::invalid_argument("delta_grid: need at least one interval");
  std::vector<double> grid;
  for (std::size_t i = 0; i <= intervals; ++i) {
    grid.push_back(0.5 * static_cast<double>(i) / static_cast<double>(intervals));
  }
  return grid;
}

CheckReport xi_equivalence_check(const std::function<double(std::size_t, double)>& xi_fn,
                                 std::size_t max_k, std::span<const double> deltas, double tol) {
  CheckReport report{"xi closed form vs enumeration"};
  for (std::size_t k = 1; k <= max_k; ++k) {
    for (double delta : deltas) {
      const double exact = exact_gain_moments(k, delta).xi;
      const double closed = xi_fn(k, delta);
      ++report.cases;
      if (!(std::abs(exact - closed) <= tol)) {
        report.violations.push_back(describe({{"k", double(k)}, {"delta", delta},
                                              {"exact", exact}, {"closed_form", closed}}));
      }
    }
  }
  return report;
}

CheckReport gain_deficiency_check(std::size_t max_k, std::span<const double> deltas) {
  CheckReport report{"gain deficiency E[1-Sbar^2] <= 4 delta k"};
  for (std::size_t k = 1; k <= max_k; ++k) {
    for (double delta : deltas) {
      const double deficiency = exact_gain_moments(k, delta).deficiency;
      const double bound = 4.0 * delta * static_cast<double>(k);
      ++report.cases;
      if (deficiency > bound + 1e-14) {
        report.violations.push_back(describe(
            {{"k", double(k)}, {"delta", delta}, {"deficiency", deficiency}, {"bound", bound}}));
      }
    }
  }
  return report;
}

CheckReport gain_half_check(std::span<const double> deltas, std::size_t max_k) {
  CheckReport report{"xi >= 1/2 at k = floor(1/(8 delta))"};
  for (double delta : deltas) {
    if (!(delta > 0.0)) continue;
    const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(1.0 / (8.0 * delta))));
    if (k > std::min(max_k, kMaxEnumerationLength)) {
      report.notes.push_back(describe({{"skipped_delta", delta}, {"k", double(k)}}));
      continue;
    }
    const double xi = exact_gain_moments(k, delta).xi;
    ++report.cases;
    if (xi < 0.5) {
      report.violations.push_back(describe({{"delta", delta}, {"k", double(k)}, {"xi", xi}}));
    }
  }
  return report;
}

CheckReport ratio_bounds_check(std::size_t ell, double delta) {
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw std::invalid_argument("ratio_bounds_check: delta must lie in [0, 1/2]");
  }
  CheckReport report{"Markov/uniform likelihood ratio bounds"};
  const ExactSignDistribution dist = enumerate_sign_distribution(ell, delta);
  const double e = static_cast<double>(ell);
  const double lower = std::pow(2.0 * delta, e);
  const double upper = std::pow(2.0 - 2.0 * delta, e);
  const double uniform = std::ldexp(1.0, -static_cast<int>(ell));
  for (std::size_t s = 0; s < dist.pmf.size(); ++s) {
    const double ratio = dist.pmf[s] / uniform;
    ++report.cases;
    if (ratio < lower * (1.0 - 1e-12) || ratio > upper * (1.0 + 1e-12)) {
      report.violations.push_back(describe({{"ell", e}, {"delta", delta}, {"state", double(s)},
                                            {"ratio", ratio}, {"lower", lower}, {"upper", upper}}));
    }
  }
  return report;
}

CheckReport genie_ratio_check(std::size_t n, double delta, std::size_t ell) {
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw std::invalid_argument("genie_ratio_check: delta must lie in (0, 1/2]");
  }
  const double nd = static_cast<double>(n);
  const double k = std::ceil(std::log(nd) / delta);
  if (static_cast<double>(ell) > nd / k) {
    throw std::invalid_argument("genie_ratio_check: ell must not exceed n/k");
  }
  const double rho_k = std::pow(1.0 - 2.0 * delta, k);
  const double delta_bar = (1.0 - rho_k) / 2.0;
  CheckReport report{"genie flip-probability ratio within [1-1/n, 1+2/n]"};
  const ExactSignDistribution dist = enumerate_sign_distribution(ell, delta_bar);
  const double uniform = std::ldexp(1.0, -static_cast<int>(ell));
  for (std::size_t s = 0; s < dist.pmf.size(); ++s) {
    const double ratio = dist.pmf[s] / uniform;
    ++report.cases;
    if (ratio < 1.0 - 1.0 / nd || ratio > 1.0 + 2.0 / nd) {
      report.violations.push_back(describe({{"n", nd}, {"delta", delta}, {"ell", double(ell)},
                                            {"state", double(s)}, {"ratio", ratio}}));
    }
  }
  return report;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: support mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log(p[i] / q[i]);
  }
  return d;
}

CheckReport change_of_measure_kl_check(std::size_t alphabet, std::size_t ell, std::size_t pairs,
                                       RngStream& rng, bool product_p, double tol) {
  if (alphabet < 2 || alphabet > 4 || ell < 1 || ell > 4) {
    throw std::invalid_argument("change_of_measure_kl_check: alphabet in [2,4], ell in [1,4]");
  }
  CheckReport report{"change-of-measure KL bound"};
  const std::size_t states = int_pow(alphabet, ell);
  for (std::size_t trial = 0; trial < pairs; ++trial) {
    Vector p;
    if (product_p) {
      std::vector<Vector> factors;
      for (std::size_t i = 0; i < ell; ++i) factors.push_back(random_pmf(alphabet, rng));
      p = product_of(factors, alphabet);
    } else {
      p = random_pmf(states, rng);
    }
    const Vector q = random_pmf(states, rng);
    const Vector p_tilde = product_of(marginals_of(p, alphabet, ell), alphabet);
    const Vector q_tilde = product_of(marginals_of(q, alphabet, ell), alphabet);

    double beta_p = 0.0;
    double beta_q = 0.0;
    for (std::size_t s = 0; s < states; ++s) {
      beta_p = std::max(beta_p, p[s] / p_tilde[s]);
      beta_q = std::max(beta_q, q_tilde[s] / q[s]);
    }
    const double lhs = kl_divergence(p, q);
    const double rhs = kl_divergence(p_tilde, q_tilde) + std::log(beta_p * beta_q);
    ++report.cases;
    if (lhs > rhs + tol) {
      report.violations.push_back(
          describe({{"trial", double(trial)}, {"kl", lhs}, {"bound", rhs}}));
    }
  }
  return report;
}

std::pair<Vector, Vector> gauss_hermite(std::size_t order) {
  if (order == 0) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  const std::size_t n = order;
  const double nd = static_cast<double>(n);
  Vector x(n), w(n);
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  const std::size_t half = (n + 1) / 2;
  double z = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    // Standard asymptotic starting guesses for the largest roots, then
    // extrapolation from the two previous roots.
    if (i == 0) {
      z = std::sqrt(2.0 * nd + 1.0) - 1.85575 * std::pow(2.0 * nd + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(nd, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Orthonormal Hermite recurrence.
      double p1 = pim4;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jd = static_cast<double>(j);
        p1 = z * std::sqrt(2.0 / (jd + 1.0)) * p2 - std::sqrt(jd / (jd + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * nd) * p2;
      const double step = p1 / pp;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  return {std::move(x), std::move(w)};
}

namespace {

double chi_square_plane(double a1, double a2, double b1, double b2, double t0_sq, double t1_sq,
                        double sigma, std::size_t order) {
  const auto [x, w] = gauss_hermite(order);
  const double s2 = sigma * sigma;
  const double c0 = std::exp(-t0_sq / (2.0 * s2));
  const double c1 = std::exp(-t1_sq / (2.0 * s2));
  const double scale = sigma * std::numbers::sqrt2;
  double total = 0.0;
  for (std::size_t i = 0; i < order; ++i) {
    const double y1 = scale * x[i];
    double row = 0.0;
    for (std::size_t j = 0; j < order; ++j) {
      const double y2 = scale * x[j];
      const double r0 = c0 * std::cosh((a1 * y1 + a2 * y2) / s2);
      const double r1 = c1 * std::cosh((b1 * y1 + b2 * y2) / s2);
      row += w[j] * (r1 - r0) * (r1 - r0) / r0;
    }
    total += w[i] * row;
  }
  return total / std::numbers::pi;
}

}  // namespace

ChiSquareResult chi_square_gmm(std::span<const double> theta0, std::span<const double> theta1,
                               double sigma, std::size_t quad_order) {
  if (theta0.size() != theta1.size()) throw std::invalid_argument("chi_square_gmm: length mismatch");
  if (!(sigma > 0.0)) throw std::invalid_argument("chi_square_gmm: sigma must be positive");
  const double t0 = norm(theta0);
  const double t1 = norm(theta1);
  if (std::abs(t0 - t1) > 1e-10 * std::max(1.0, t0)) {
    throw std::invalid_argument("chi_square_gmm: theta0 and theta1 must have equal norms");
  }
  if (t0 > sigma * (1.0 + 1e-10)) throw std::invalid_argument("chi_square_gmm: need t <= sigma");

  Vector diff(theta0.begin(), theta0.end());
  axpy(-1.0, theta1, diff);
  ChiSquareResult out;
  out.bound = 8.0 * t0 * t0 / (sigma * sigma * sigma * sigma) * dot(diff, diff);
  if (t0 == 0.0) return out;

  // Orthonormal basis (e1, e2) of span{theta0, theta1}.
  Vector e1(theta0.begin(), theta0.end());
  scale(e1, 1.0 / t0);
  const double b1 = dot(theta1, e1);
  Vector e2(theta1.begin(), theta1.end());
  axpy(-b1, e1, e2);
  const double b2 = norm(e2);

  const double t0_sq = t0 * t0;
  const double t1_sq = t1 * t1;
  out.chi2_numeric = chi_square_plane(t0, 0.0, b1, b2, t0_sq, t1_sq, sigma, quad_order);
  const double refined = chi_square_plane(t0, 0.0, b1, b2, t0_sq, t1_sq, sigma, quad_order + 10);
  out.refinement_gap = std::abs(refined - out.chi2_numeric);
  out.converged = out.refinement_gap <= std::max(1e-6 * std::abs(refined), 1e-14);
  return out;
}

CheckReport chi_square_gmm_check(std::size_t configs, std::size_t quad_order, RngStream& rng) {
  CheckReport report{"chi-square bound between symmetric Gaussian mixtures"};
  for (std::size_t c = 0; c < configs; ++c) {
    const std::size_t d = 2 + static_cast<std::size_t>(rng.uniform() * 4.0);
    const double sigma = 0.5 + 1.5 * rng.uniform();
    const double t = sigma * (1.0 - rng.uniform());
    Vector theta0(d), theta1(d);
    double n0 = 0.0, n1 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      theta0[i] = rng.normal();
      theta1[i] = rng.normal();
    }
    n0 = norm(theta0);
    n1 = norm(theta1);
    scale(theta0, t / n0);
    scale(theta1, t / n1);
    const ChiSquareResult r = chi_square_gmm(theta0, theta1, sigma, quad_order);
    ++report.cases;
    if (!r.converged) {
      report.notes.push_back(describe({{"config", double(c)}, {"unconverged_gap", r.refinement_gap}}));
    }
    if (r.chi2_numeric > r.bound * (1.0 + 1e-3) + 1e-15) {
      report.violations.push_back(describe({{"config", double(c)}, {"d", double(d)}, {"t", t},
                                            {"sigma", sigma}, {"chi2", r.chi2_numeric},
                                            {"bound", r.bound}}));
    }
  }
  return report;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p must lie in [0, 1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

CheckReport entropy_quadratic_check(std::span<const double> eps_grid) {
  CheckReport report{"binary entropy quadratic gap log 2 - h_b(1/2 - eps) <= 5 eps^2"};
  for (double eps : eps_grid) {
    if (!(eps >= 0.0 && eps < 0.5)) {
      throw std::invalid_argument("entropy_quadratic_check: eps must lie in [0, 1/2)");
    }
    const double gap = std::numbers::ln2 - binary_entropy(0.5 - eps);
    ++report.cases;
    if (gap > 5.0 * eps * eps + 1e-15) {
      report.violations.push_back(describe({{"eps", eps}, {"gap", gap}}));
    }
  }
  return report;
}

}  // namespace hmmlab::oracle
