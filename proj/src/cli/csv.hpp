#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "hmmlab/bench.hpp"
#include "hmmlab/model.hpp"

namespace hmmlab::cli {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Sample CSV: optional leading "# " comment lines, a header row, then n rows
/// of d numbers. Throws std::runtime_error on empty, ragged or non-numeric input.
SampleSet read_samples_csv(std::istream& in, std::string provenance = {});
SampleSet read_samples_csv_file(const std::string& path);

/// "# config: <json>" line, header x1..xd, one row per sample.
std::string samples_to_csv(const SampleSet& samples, std::string_view config_json);

/// "# config: <json>" line, then t,mean_loss,std_loss,theory_rate,trials and,
/// for joint curves, frac_zero,frac_a,frac_a_smalldelta,frac_c.
std::string curve_to_csv(const bench::RateCurve& curve, std::string_view config_json);

inline constexpr std::string_view kConfigPrefix = "# config: ";

}  // namespace hmmlab::cli
