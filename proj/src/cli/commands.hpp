#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmmlab/bench.hpp"

namespace hmmlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the hmm_lab binary and the tests. Writes results to
/// files named by --out (or to `out` when absent) and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json config_to_json(const bench::ExperimentConfig& cfg);
/// Accepts either a full config or {"preset": name, ...overrides}.
bench::ExperimentConfig config_from_json(const nlohmann::json& j);

/// Worker count from HMM_LAB_THREADS (unset or 0 means auto).
unsigned threads_from_env();

}  // namespace hmmlab::cli
