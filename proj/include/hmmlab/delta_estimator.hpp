#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "hmmlab/model.hpp"
#include "hmmlab/rng.hpp"

namespace hmmlab {

struct ClampRange {
  double lo = 0.0;
  double hi = 1.0;
};

struct DeltaEstimate {
  double rho_raw = 0.0;
  double delta_raw = 0.0;  // (1 - rho_raw) / 2, never clamped
  double delta_clamped = 0.0;
  std::size_t pairs_used = 0;
};

/// Adjacent-pair correlation estimate of rho and the plug-in delta:
///   rho = (1/||theta_sharp||^2) * (2/n') * sum_{i=1}^{n'/2} X_{2i}^T X_{2i-1},
/// with n' = 2 floor(n/2) (an odd trailing sample is dropped). Throws
/// std::invalid_argument when theta_sharp is zero or n < 2.
DeltaEstimate estimate_rho(const SampleSet& samples, std::span<const double> theta_sharp,
                           ClampRange clamp = {});

/// Same estimate after multiplying each pair (X_{2i-1}, X_{2i}) by an
/// independent Rademacher sign drawn from `rng`. The pair product is
/// invariant under that sign, so the result matches estimate_rho exactly;
/// kept for experiments that mirror the independent-pairs analysis.
DeltaEstimate estimate_rho_randomized(const SampleSet& samples,
                                      std::span<const double> theta_sharp, RngStream& rng,
                                      ClampRange clamp = {});

/// U_i = theta_sharp^T X_i / ||theta_sharp|| as an n x 1 sample set.
SampleSet project_onto(const SampleSet& samples, std::span<const double> theta_sharp);

}  // namespace hmmlab
