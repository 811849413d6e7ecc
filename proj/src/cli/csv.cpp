#include "cli/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hmmlab::cli {
namespace {

double parse_double(std::string_view field) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw std::runtime_error("not a number: '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

SampleSet read_samples_csv(std::istream& in, std::string provenance) {
  std::string line;
  bool have_header = false;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::vector<double> values;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line);
    if (!have_header) {
      have_header = true;
      cols = fields.size();
      continue;
    }
    if (fields.size() != cols) {
      throw std::runtime_error("ragged CSV: line " + std::to_string(line_no) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(cols));
    }
    for (const auto f : fields) {
      try {
        values.push_back(parse_double(f));
      } catch (const std::runtime_error& e) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    ++rows;
  }
  if (!have_header || rows == 0) throw std::runtime_error("CSV has no data rows");
  return SampleSet(Matrix(rows, cols, std::move(values)), std::move(provenance));
}

SampleSet read_samples_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_samples_csv(in, path);
}

std::string samples_to_csv(const SampleSet& samples, std::string_view config_json) {
  std::string out;
  out.reserve(samples.n() * samples.d() * 20);
  out += kConfigPrefix;
  out += config_json;
  out += '\n';
  for (std::size_t j = 0; j < samples.d(); ++j) {
    if (j) out += ',';
    out += 'x' + std::to_string(j + 1);
  }
  out += '\n';
  for (std::size_t i = 0; i < samples.n(); ++i) {
    const auto row = samples.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_double(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::string curve_to_csv(const bench::RateCurve& curve, std::string_view config_json) {
  const bool joint = curve.config.estimator == bench::EstimatorKind::Joint;
  std::ostringstream os;
  os << kConfigPrefix << config_json << '\n';
  os << "t,mean_loss,std_loss,theory_rate,trials";
  if (joint) os << ",frac_zero,frac_a,frac_a_smalldelta,frac_c";
  os << '\n';
  for (const auto& p : curve.points) {
    os << format_double(p.t) << ',' << format_double(p.mean_loss) << ','
       << format_double(p.std_loss) << ',' << format_double(p.theory_rate) << ',' << p.trials;
    if (joint) {
      for (double f : p.branch_freq) os << ',' << format_double(f);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace hmmlab::cli
