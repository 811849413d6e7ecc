#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "cli/csv.hpp"
#include "hmmlab/delta_estimator.hpp"
#include "hmmlab/joint.hpp"
#include "hmmlab/model.hpp"
#include "hmmlab/oracle.hpp"
#include "hmmlab/theta_estimator.hpp"

namespace hmmlab::cli {
namespace {

using nlohmann::json;

// Input problems detected after flag parsing; mapped to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + what + ": " + e.what());
  }
}

// Accepts [..], {"theta_star": [..]}, {"theta_hat": [..]} or {"theta": [..]}.
Vector read_vector_file(const std::string& path) {
  const json j = parse_json(read_file(path), path);
  const json* arr = &j;
  if (j.is_object()) {
    arr = nullptr;
    for (const char* key : {"theta_sharp", "theta_hat", "theta_star", "theta"}) {
      if (j.contains(key)) {
        arr = &j.at(key);
        break;
      }
    }
  }
  if (arr == nullptr || !arr->is_array() || arr->empty()) {
    throw InputError(path + ": expected a nonempty array of numbers");
  }
  Vector v;
  for (const auto& x : *arr) {
    if (!x.is_number()) throw InputError(path + ": expected a nonempty array of numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

struct Truth {
  Vector theta_star;
  double delta = 0.0;
};

Truth read_truth(const std::string& path) {
  const json j = parse_json(read_file(path), path);
  if (!j.is_object() || !j.contains("theta_star") || !j.contains("delta")) {
    throw InputError(path + ": truth sidecar needs theta_star and delta");
  }
  return Truth{j.at("theta_star").get<Vector>(), j.at("delta").get<double>()};
}

SampleSet load_samples(const std::string& path) {
  try {
    return read_samples_csv_file(path);
  } catch (const std::runtime_error& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

json eigen_json(const EigenConfig& e) {
  return {{"tol", e.tol}, {"max_iter", e.max_iter}};
}

EigenConfig eigen_from(const json& j, EigenConfig base) {
  if (j.contains("tol")) base.tol = j.at("tol").get<double>();
  if (j.contains("max_iter")) base.max_iter = j.at("max_iter").get<std::size_t>();
  return base;
}

json delta_json(const DeltaEstimate& e) {
  return {{"rho_raw", e.rho_raw},
          {"delta_raw", e.delta_raw},
          {"delta_clamped", e.delta_clamped},
          {"pairs_used", e.pairs_used}};
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::size_t n = 0;
  std::size_t d = 0;
  double delta = 0.0;
  double theta_norm = 1.0;
  std::string theta_file;
  std::uint64_t seed = 1;
  std::string out;
  std::string truth_out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  Vector theta;
  RngStream root(a.seed, 0);
  if (!a.theta_file.empty()) {
    theta = read_vector_file(a.theta_file);
    if (a.d != 0 && theta.size() != a.d) throw InputError("--theta-file length does not match --d");
  } else {
    if (a.d == 0) throw InputError("--d is required without --theta-file");
    RngStream dir_rng = root.fork(1);
    theta = random_unit_vector(a.d, dir_rng);
    scale(theta, a.theta_norm);
  }
  RngStream data_rng = root.fork(2);
  const HmmDraw draw = sample_hmm(ModelParams(theta, a.delta, a.n), data_rng);

  const json config = {{"command", "simulate"},
                       {"n", a.n},
                       {"d", theta.size()},
                       {"delta", a.delta},
                       {"theta_norm", norm(theta)},
                       {"theta_file", a.theta_file},
                       {"seed", a.seed}};
  write_output(a.out, samples_to_csv(draw.samples, config.dump()), out);

  std::vector<int> signs(draw.signs.values().begin() + 1, draw.signs.values().end());
  const json truth = {{"theta_star", theta},
                      {"delta", a.delta},
                      {"signs", signs},
                      {"initial_sign", draw.signs[0]},
                      {"config", config}};
  std::string truth_path = a.truth_out;
  if (truth_path.empty()) {
    truth_path = std::filesystem::path(a.out).replace_extension(".truth.json").string();
  }
  write_output(truth_path, truth.dump(2) + "\n", out);
  return kExitOk;
}

// ---------------------------------------------------------------- estimates

struct EstimateArgs {
  std::string in;
  std::string out;
  std::string truth;
  std::uint64_t seed = 1;
  double delta = -1.0;
  std::string theta_sharp_file;
  double lambda_theta = 1.0;
  double lambda_delta = 1.0;
  double eigen_tol = EigenConfig{}.tol;
  std::size_t eigen_max_iter = EigenConfig{}.max_iter;
};

EigenConfig eigen_of(const EstimateArgs& a) { return EigenConfig{a.eigen_tol, a.eigen_max_iter}; }

int cmd_estimate_theta(const EstimateArgs& a, std::ostream& out) {
  const SampleSet samples = load_samples(a.in);
  RngStream rng(a.seed, 0);
  const ThetaEstimate est = estimate_theta_known_delta(samples, a.delta, eigen_of(a), rng);
  json result = {{"command", "estimate-theta"},
                 {"config", {{"in", a.in}, {"delta", a.delta}, {"seed", a.seed},
                             {"eigen", eigen_json(eigen_of(a))}}},
                 {"theta_hat", est.theta_hat},
                 {"lambda_max", est.lambda_max},
                 {"k", est.k_used},
                 {"xi_k", est.xi_k},
                 {"eigen_residual", est.eigen_residual}};
  if (!a.truth.empty()) {
    const Truth t = read_truth(a.truth);
    if (t.theta_star.size() != samples.d()) throw InputError("truth dimension mismatch");
    result["loss"] = loss(est.theta_hat, t.theta_star);
  }
  write_output(a.out, result.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_estimate_delta(const EstimateArgs& a, std::ostream& out) {
  const SampleSet samples = load_samples(a.in);
  const Vector sharp = read_vector_file(a.theta_sharp_file);
  if (sharp.size() != samples.d()) throw InputError("theta-sharp length does not match data");
  if (norm(sharp) == 0.0) throw InputError("theta-sharp must be nonzero");
  if (samples.n() < 2) throw InputError("need at least 2 samples");
  const DeltaEstimate est = estimate_rho(samples, sharp);
  json result = {{"command", "estimate-delta"},
                 {"config", {{"in", a.in}, {"theta_sharp_file", a.theta_sharp_file}}},
                 {"theta_sharp", sharp}};
  result.update(delta_json(est));
  if (!a.truth.empty()) result["loss"] = std::abs(est.delta_raw - read_truth(a.truth).delta);
  write_output(a.out, result.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_joint(const EstimateArgs& a, std::ostream& out, std::ostream& err) {
  const SampleSet samples = load_samples(a.in);
  if (samples.n() < 6) throw InputError("joint estimation needs at least 6 rows");
  if (samples.n() % 3 != 0) {
    err << "warning: " << samples.n() % 3 << " trailing row(s) dropped to split into thirds\n";
  }
  JointConfig cfg;
  cfg.lambda_theta = a.lambda_theta;
  cfg.lambda_delta = a.lambda_delta;
  cfg.eigen = eigen_of(a);
  RngStream rng(a.seed, 0);
  const JointEstimate est = algorithm1(samples, cfg, rng);
  json result = {{"command", "joint"},
                 {"config", {{"in", a.in}, {"lambda_theta", a.lambda_theta},
                             {"lambda_delta", a.lambda_delta}, {"seed", a.seed},
                             {"eigen", eigen_json(cfg.eigen)}}},
                 {"theta_hat", est.theta_hat},
                 {"branch", std::string(to_string(est.branch))},
                 {"theta_a", est.theta_a},
                 {"delta_b", est.delta_b ? delta_json(*est.delta_b) : json(nullptr)},
                 {"k_c", est.k_c ? json(*est.k_c) : json(nullptr)}};
  if (!a.truth.empty()) {
    const Truth t = read_truth(a.truth);
    if (t.theta_star.size() != samples.d()) throw InputError("truth dimension mismatch");
    result["loss"] = loss(est.theta_hat, t.theta_star);
  }
  write_output(a.out, result.dump(2) + "\n", out);
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string preset;
  std::string config;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  std::string out;
};

// Config text from a JSON file, or the embedded line of a previous CSV output.
json load_config_json(const std::string& path) {
  const std::string text = read_file(path);
  if (text.starts_with(kConfigPrefix)) {
    const std::size_t eol = text.find('\n');
    return parse_json(text.substr(kConfigPrefix.size(), eol - kConfigPrefix.size()), path);
  }
  const json j = parse_json(text, path);
  if (j.is_object() && j.contains("config") && j.contains("points")) return j.at("config");
  return j;
}

json point_json(const bench::RatePoint& p, bench::EstimatorKind kind) {
  json j = {{"t", p.t}, {"mean_loss", p.mean_loss}, {"std_loss", p.std_loss},
            {"theory_rate", p.theory_rate}, {"trials", p.trials}};
  if (kind == bench::EstimatorKind::Joint) {
    j["frac_zero"] = p.branch_freq[0];
    j["frac_a"] = p.branch_freq[1];
    j["frac_a_smalldelta"] = p.branch_freq[2];
    j["frac_c"] = p.branch_freq[3];
    double fallback = 0.0;
    for (double v : p.fallback_losses) fallback += v;
    j["step_a_mean_loss"] = p.fallback_losses.empty() ? 0.0 : fallback / p.fallback_losses.size();
  }
  if (kind == bench::EstimatorKind::DeltaMatched || kind == bench::EstimatorKind::DeltaMismatched) {
    j["trivial_loss_0"] = p.trivial_losses[0];
    j["trivial_loss_half"] = p.trivial_losses[1];
    j["trivial_loss_1"] = p.trivial_losses[2];
  }
  return j;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.preset.empty() == a.config.empty()) {
    throw InputError("bench needs exactly one of --preset or --config");
  }
  bench::ExperimentConfig cfg;
  try {
    cfg = a.preset.empty() ? config_from_json(load_config_json(a.config)) : bench::preset(a.preset);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad config: ") + e.what());
  }
  if (a.trials) cfg.trials = *a.trials;
  if (a.seed) cfg.seed = *a.seed;
  cfg.validate();

  const bench::RateCurve curve = bench::run_experiment(cfg, threads_from_env());
  for (const auto& w : curve.warnings) err << "warning: " << w << '\n';
  const std::string config_text = config_to_json(cfg).dump();
  if (a.format == "json") {
    json j = {{"config", config_to_json(cfg)}, {"warnings", curve.warnings}};
    j["points"] = json::array();
    for (const auto& p : curve.points) j["points"].push_back(point_json(p, cfg.estimator));
    write_output(a.out, j.dump(2) + "\n", out);
  } else {
    write_output(a.out, curve_to_csv(curve, config_text), out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::size_t max_ell = 16;
  std::size_t quad_order = 40;
  std::size_t grid = 10;
  std::string sabotage;
  std::uint64_t seed = 7;
};

double sabotaged_xi(std::size_t k, double delta) {
  // Sign of rho flipped inside the sum.
  const double rho = -(1.0 - 2.0 * delta);
  const double kd = static_cast<double>(k);
  double cross = 0.0;
  double rho_m = 1.0;
  for (std::size_t m = 1; m < k; ++m) {
    rho_m *= rho;
    cross += static_cast<double>(k - m) * rho_m;
  }
  return (kd + 2.0 * cross) / (kd * kd);
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  using namespace oracle;
  if (!a.sabotage.empty() && a.sabotage != "xi") throw InputError("unknown --sabotage target");
  const std::vector<double> deltas = delta_grid(a.grid);
  std::vector<double> positive;
  for (double d : deltas) {
    if (d > 0.0) positive.push_back(d);
  }
  const std::size_t max_k = std::min<std::size_t>(12, a.max_ell);
  std::vector<CheckReport> reports;

  std::function<double(std::size_t, double)> xi_fn =
      a.sabotage == "xi" ? sabotaged_xi : [](std::size_t k, double d) { return xi_k(k, d); };
  reports.push_back(xi_equivalence_check(xi_fn, max_k, deltas));
  reports.push_back(gain_deficiency_check(max_k, deltas));
  std::vector<double> half_grid = positive;
  for (double d : {0.006, 0.01, 0.02, 0.03}) half_grid.push_back(d);
  reports.push_back(gain_half_check(half_grid, a.max_ell));

  CheckReport ratio{"Markov/uniform likelihood ratio bounds"};
  for (std::size_t ell = 1; ell <= a.max_ell; ++ell) {
    for (double d : deltas) ratio.merge(ratio_bounds_check(ell, d));
  }
  reports.push_back(ratio);

  CheckReport genie{"genie flip-probability ratio within [1-1/n, 1+2/n]"};
  for (std::size_t n : {100u, 1000u, 10000u}) {
    for (double d : positive) {
      const double k = std::ceil(std::log(static_cast<double>(n)) / d);
      const auto max_len = static_cast<std::size_t>(std::floor(static_cast<double>(n) / k));
      for (std::size_t ell = 1; ell <= std::min(max_len, a.max_ell); ++ell) {
        genie.merge(genie_ratio_check(n, d, ell));
      }
    }
  }
  reports.push_back(genie);

  RngStream rng(a.seed, 0);
  RngStream kl_rng = rng.fork(1);
  CheckReport kl = change_of_measure_kl_check(2, 3, 200, kl_rng);
  kl.merge(change_of_measure_kl_check(3, 2, 100, kl_rng));
  kl.merge(change_of_measure_kl_check(2, 3, 50, kl_rng, true));
  reports.push_back(kl);

  RngStream chi_rng = rng.fork(2);
  reports.push_back(chi_square_gmm_check(50, a.quad_order, chi_rng));

  std::vector<double> eps;
  for (int i = 0; i < 50; ++i) eps.push_back(0.01 * i);
  reports.push_back(entropy_quadratic_check(eps));

  bool all = true;
  for (const auto& r : reports) {
    out << (r.passed() ? "PASS" : "FAIL") << "  " << std::left << std::setw(58) << r.name
        << " cases=" << r.cases << '\n';
    for (const auto& v : r.violations) out << "    violation: " << v << '\n';
    for (const auto& n : r.notes) out << "    note: " << n << '\n';
    all = all && r.passed();
  }
  out << (all ? "all checks passed\n" : "verification FAILED\n");
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

unsigned threads_from_env() {
  const char* v = std::getenv("HMM_LAB_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  try {
    const long n = std::stol(v);
    return n > 0 ? static_cast<unsigned>(n) : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

nlohmann::json config_to_json(const bench::ExperimentConfig& cfg) {
  json j = {{"n", cfg.n},
            {"d", cfg.d},
            {"delta", cfg.delta},
            {"t_grid", cfg.t_grid},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"estimator", std::string(bench::to_string(cfg.estimator))},
            {"clamp_with_zero", cfg.clamp_with_zero},
            {"eigen", eigen_json(cfg.eigen)}};
  if (cfg.estimator == bench::EstimatorKind::DeltaMismatched) j["mismatch_scale"] = cfg.mismatch_scale;
  if (cfg.estimator == bench::EstimatorKind::Joint) {
    j["joint"] = {{"lambda_theta", cfg.joint.lambda_theta},
                  {"lambda_delta", cfg.joint.lambda_delta},
                  {"delta_floor", cfg.joint.delta_floor},
                  {"eigen", eigen_json(cfg.joint.eigen)}};
  }
  return j;
}

bench::ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  bench::ExperimentConfig cfg;
  if (j.contains("preset")) cfg = bench::preset(j.at("preset").get<std::string>());
  if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
  if (j.contains("d")) cfg.d = j.at("d").get<std::size_t>();
  if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
  if (j.contains("t_grid")) {
    const json& g = j.at("t_grid");
    if (g.is_array()) {
      cfg.t_grid = g.get<std::vector<double>>();
    } else {
      cfg.t_grid = bench::linear_grid(g.at("from").get<double>(), g.at("to").get<double>(),
                                      g.at("intervals").get<std::size_t>());
    }
  }
  if (j.contains("trials")) cfg.trials = j.at("trials").get<std::size_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("estimator")) {
    cfg.estimator = bench::estimator_from_string(j.at("estimator").get<std::string>());
  }
  if (j.contains("mismatch_scale")) cfg.mismatch_scale = j.at("mismatch_scale").get<double>();
  if (j.contains("clamp_with_zero")) cfg.clamp_with_zero = j.at("clamp_with_zero").get<bool>();
  if (j.contains("eigen")) cfg.eigen = eigen_from(j.at("eigen"), cfg.eigen);
  if (j.contains("joint")) {
    const json& jj = j.at("joint");
    if (jj.contains("lambda_theta")) cfg.joint.lambda_theta = jj.at("lambda_theta").get<double>();
    if (jj.contains("lambda_delta")) cfg.joint.lambda_delta = jj.at("lambda_delta").get<double>();
    if (jj.contains("delta_floor")) cfg.joint.delta_floor = jj.at("delta_floor").get<double>();
    if (jj.contains("eigen")) cfg.joint.eigen = eigen_from(jj.at("eigen"), cfg.joint.eigen);
  }
  return cfg;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hmm_lab: estimators for the binary hidden-Markov Gaussian mean model"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Sample the HMM and write CSV plus truth sidecar");
  simulate->add_option("--n", sim.n, "Sample count")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--d", sim.d, "Dimension (inferred from --theta-file when given)");
  simulate->add_option("--delta", sim.delta, "Flip probability")->required()->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--theta-norm", sim.theta_norm, "||theta_star|| for a random direction")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--theta-file", sim.theta_file, "JSON vector for theta_star")->check(CLI::ExistingFile);
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--out", sim.out, "Sample CSV path")->required();
  simulate->add_option("--truth-out", sim.truth_out, "Sidecar path (default <out>.truth.json)");

  EstimateArgs est;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--in", est.in, "Sample CSV")->required();
    sub->add_option("--out", est.out, "Result JSON path (default stdout)");
    sub->add_option("--truth", est.truth, "Truth sidecar; adds the realized loss");
    sub->add_option("--seed", est.seed, "RNG seed for block signs and eigen start");
    sub->add_option("--eigen-tol", est.eigen_tol, "Power-iteration residual tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--eigen-max-iter", est.eigen_max_iter, "Power-iteration cap")
        ->check(CLI::PositiveNumber);
  };
  auto* est_theta = app.add_subcommand("estimate-theta", "Block-PCA mean estimate with known delta");
  add_common(est_theta);
  est_theta->add_option("--delta", est.delta, "Known flip probability")->required()->check(CLI::Range(0.0, 1.0));

  auto* est_delta = app.add_subcommand("estimate-delta", "Adjacent-pair flip-probability estimate");
  add_common(est_delta);
  est_delta->add_option("--theta-sharp-file", est.theta_sharp_file, "JSON vector theta_sharp")->required();

  auto* joint = app.add_subcommand("joint", "Three-step estimate with unknown delta");
  add_common(joint);
  joint->add_option("--lambda-theta", est.lambda_theta, "Step A gate constant")->check(CLI::PositiveNumber);
  joint->add_option("--lambda-delta", est.lambda_delta, "Step B gate constant")->check(CLI::PositiveNumber);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Monte Carlo rate curve");
  bench_cmd->add_option("--preset", bench_args.preset, "Named preset")
      ->check(CLI::IsMember(bench::preset_names()));
  bench_cmd->add_option("--config", bench_args.config, "JSON config, or a previous CSV output");
  bench_cmd->add_option("--trials", bench_args.trials, "Override trial count")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_args.seed, "Override seed");
  bench_cmd->add_option("--format", bench_args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bench_cmd->add_option("--out", bench_args.out, "Output path (default stdout)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the exact-oracle lemma suite");
  verify->add_option("--max-ell", ver.max_ell, "Largest enumerated sequence length")
      ->check(CLI::Range(1, static_cast<int>(oracle::kMaxEnumerationLength)));
  verify->add_option("--quad-order", ver.quad_order, "Gauss-Hermite order")->check(CLI::Range(2, 400));
  verify->add_option("--grid", ver.grid, "Intervals of the delta grid on [0, 1/2]")->check(CLI::Range(1, 1000));
  verify->add_option("--sabotage", ver.sabotage, "Inject a fault to self-test the verifier (xi)");
  verify->add_option("--seed", ver.seed, "Seed for randomized checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, out);
    if (est_theta->parsed()) return cmd_estimate_theta(est, out);
    if (est_delta->parsed()) return cmd_estimate_delta(est, out);
    if (joint->parsed()) return cmd_joint(est, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench_args, out, err);
    if (verify->parsed()) return cmd_verify(ver, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hmmlab::cli
