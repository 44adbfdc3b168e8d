// Command line front end: signal detection, calibration tables, alpha
// adjustment and ROC sweeps, all reproducible from a run manifest.

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "mcssa/calibration.hpp"
#include "mcssa/detection.hpp"
#include "mcssa/io.hpp"
#include "mcssa/rng.hpp"
#include "mcssa/series_model.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct TestOptions {
  int window = 20;
  int surrogates = 400;
  double alpha = 0.2;
  std::optional<double> confidence;  // gamma = 1 - alpha, wins when given
  bool two_tailed = false;
  std::string basis = "ev";
  std::string range = "0,0.5";
  std::string model = "given";
  std::optional<double> model_phi;
  std::optional<double> model_delta;

  double effective_confidence() const {
    return confidence ? *confidence : 1.0 - alpha;
  }
};

struct DetectOptions {
  std::string input;
  bool simulate = false;
  int n = 1000;
  double phi = 0.0;
  double delta = 1.0;
  double amplitude = 0.0;
  double period = 5.5;
  double phase = 0.0;
  TestOptions test;
};

struct CalibrateOptions {
  int n = 1000;
  double phi = 0.0;
  double delta = 1.0;
  double amplitude = 0.0;
  double period = 5.5;
  double phase = 0.0;
  int replicates = 1000;
  TestOptions test;
};

struct AdjustOptions {
  CalibrateOptions scenario;
  double target = 0.2;
  double search_lo = 0.02;
  double search_hi = 0.9;
  int max_iterations = 12;
  double tolerance = 1e-3;
};

struct RocOptions {
  CalibrateOptions scenario;
  std::string levels = "0.05,0.1,0.2,0.3,0.4";
};

struct CommonOptions {
  std::uint64_t seed = 42;
  int workers = 0;
  std::string out_dir = ".";
};

mcssa::FrequencyRange parse_range(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--range", "expected LOW,HIGH");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--range", "expected LOW,HIGH");
  }
}

std::vector<double> parse_levels(const std::string& text) {
  std::vector<double> levels;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const auto comma = text.find(',', begin);
    const std::string token =
        text.substr(begin, comma == std::string::npos ? comma : comma - begin);
    try {
      levels.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--levels", "expected a comma-separated list");
    }
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return levels;
}

mcssa::TestConfig make_test_config(const TestOptions& options,
                                   double generator_phi, double generator_delta,
                                   int n, bool allow_generator_model) {
  mcssa::TestConfig config;
  config.window = options.window;
  config.surrogates = options.surrogates;
  config.confidence = options.effective_confidence();
  config.two_tailed = options.two_tailed;
  if (options.basis == "ev")
    config.basis = mcssa::BasisKind::eigenvector;
  else if (options.basis == "sin")
    config.basis = mcssa::BasisKind::sinusoid;
  else
    throw CLI::ValidationError("--basis", "must be 'ev' or 'sin'");
  config.range = parse_range(options.range);

  if (options.model == "given") {
    mcssa::Ar1Model model;
    if (options.model_phi)
      model.varphi = *options.model_phi;
    else if (allow_generator_model)
      model.varphi = generator_phi;
    else
      throw CLI::ValidationError("--model-phi",
                                 "required with --model given on file input");
    if (options.model_delta)
      model.delta = *options.model_delta;
    else if (allow_generator_model)
      model.delta = generator_delta;
    else
      throw CLI::ValidationError("--model-delta",
                                 "required with --model given on file input");
    model.n = n;
    config.model = model;
  } else if (options.model != "estimate") {
    throw CLI::ValidationError("--model", "must be 'given' or 'estimate'");
  }
  return config;
}

void add_test_flags(CLI::App* cmd, TestOptions& options) {
  cmd->add_option("-L,--window", options.window, "SSA window length");
  cmd->add_option("-G,--surrogates", options.surrogates,
                  "number of surrogate paths");
  CLI::Option* alpha =
      cmd->add_option("--alpha", options.alpha, "significance level");
  CLI::Option* confidence = cmd->add_option(
      "--confidence", options.confidence, "confidence level (1 - alpha)");
  alpha->excludes(confidence);
  confidence->excludes(alpha);
  cmd->add_flag("--two-tailed", options.two_tailed,
                "also test for unusually small projections");
  cmd->add_option("--basis", options.basis, "projection basis: ev or sin");
  cmd->add_option("--range", options.range, "frequency range LOW,HIGH");
  cmd->add_option("--model", options.model,
                  "null model source: given or estimate");
  cmd->add_option("--model-phi", options.model_phi,
                  "AR(1) coefficient of the given null model");
  cmd->add_option("--model-delta", options.model_delta,
                  "innovation scale of the given null model");
}

void add_common_flags(CLI::App* cmd, CommonOptions& options) {
  cmd->add_option("--seed", options.seed, "master seed")->envname("MCSSA_SEED");
  cmd->add_option("--workers", options.workers,
                  "worker threads (0 = all cores)");
  cmd->add_option("-o,--out", options.out_dir, "output directory");
}

void add_scenario_flags(CLI::App* cmd, CalibrateOptions& options,
                        bool with_signal) {
  cmd->add_option("--n", options.n, "series length");
  cmd->add_option("--phi", options.phi, "AR(1) coefficient of the noise");
  cmd->add_option("--delta", options.delta, "innovation scale of the noise");
  cmd->add_option("-M,--replicates", options.replicates,
                  "Monte Carlo replicates");
  if (with_signal) {
    cmd->add_option("--amplitude", options.amplitude, "signal amplitude");
    cmd->add_option("--period", options.period, "signal period in samples");
    cmd->add_option("--phase", options.phase, "signal phase in radians");
  }
  add_test_flags(cmd, options.test);
}

json test_options_to_json(const TestOptions& options) {
  json j;
  j["window"] = options.window;
  j["surrogates"] = options.surrogates;
  j["alpha"] = options.alpha;
  if (options.confidence) j["confidence"] = *options.confidence;
  j["two_tailed"] = options.two_tailed;
  j["basis"] = options.basis;
  j["range"] = options.range;
  j["model"] = options.model;
  if (options.model_phi) j["model_phi"] = *options.model_phi;
  if (options.model_delta) j["model_delta"] = *options.model_delta;
  return j;
}

TestOptions test_options_from_json(const json& j) {
  TestOptions options;
  options.window = j.at("window").get<int>();
  options.surrogates = j.at("surrogates").get<int>();
  options.alpha = j.at("alpha").get<double>();
  if (j.contains("confidence"))
    options.confidence = j["confidence"].get<double>();
  options.two_tailed = j.at("two_tailed").get<bool>();
  options.basis = j.at("basis").get<std::string>();
  options.range = j.at("range").get<std::string>();
  options.model = j.at("model").get<std::string>();
  if (j.contains("model_phi")) options.model_phi = j["model_phi"].get<double>();
  if (j.contains("model_delta"))
    options.model_delta = j["model_delta"].get<double>();
  return options;
}

json scenario_to_json(const CalibrateOptions& options) {
  json j;
  j["n"] = options.n;
  j["phi"] = options.phi;
  j["delta"] = options.delta;
  j["amplitude"] = options.amplitude;
  j["period"] = options.period;
  j["phase"] = options.phase;
  j["replicates"] = options.replicates;
  j["test"] = test_options_to_json(options.test);
  return j;
}

CalibrateOptions scenario_from_json(const json& j) {
  CalibrateOptions options;
  options.n = j.at("n").get<int>();
  options.phi = j.at("phi").get<double>();
  options.delta = j.at("delta").get<double>();
  options.amplitude = j.at("amplitude").get<double>();
  options.period = j.at("period").get<double>();
  options.phase = j.at("phase").get<double>();
  options.replicates = j.at("replicates").get<int>();
  options.test = test_options_from_json(j.at("test"));
  return options;
}

class ManifestWriter {
 public:
  ManifestWriter(std::string command, const CommonOptions& common)
      : start_(std::chrono::steady_clock::now()) {
    manifest_["command"] = std::move(command);
    manifest_["seed"] = common.seed;
    manifest_["workers"] = common.workers;
    manifest_["versions"]["mcssa"] = kVersion;
    manifest_["versions"]["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                                     std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                     std::to_string(EIGEN_MINOR_VERSION);
    manifest_["versions"]["compiler"] = __VERSION__;
  }

  json& data() { return manifest_; }

  void write(const fs::path& directory) {
    manifest_["timings"]["total_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    std::ofstream out(directory / "manifest.json");
    if (!out)
      throw mcssa::DataError("cannot open '" +
                             (directory / "manifest.json").string() +
                             "' for writing");
    out << manifest_.dump(2) << '\n';
  }

 private:
  json manifest_;
  std::chrono::steady_clock::time_point start_;
};

fs::path ensure_out_dir(const std::string& out_dir) {
  fs::path directory(out_dir);
  fs::create_directories(directory);
  return directory;
}

mcssa::Scenario build_scenario(const CalibrateOptions& options,
                               bool with_signal) {
  mcssa::Scenario scenario;
  scenario.model = mcssa::Ar1Model{options.phi, options.delta, options.n};
  scenario.signal =
      with_signal
          ? mcssa::SignalSpec{options.amplitude, options.period, options.phase}
          : mcssa::SignalSpec{0.0, 0.0, 0.0};
  scenario.config = make_test_config(options.test, options.phi, options.delta,
                                     options.n, true);
  scenario.replicates = options.replicates;
  return scenario;
}

std::string scenario_label(const CalibrateOptions& options) {
  return std::string(options.test.model == "given" ? "model" : "est") +
         " n=" + std::to_string(options.n) +
         " g=" + std::to_string(options.test.surrogates);
}

int run_detect(const DetectOptions& options, const CommonOptions& common) {
  if (options.simulate == !options.input.empty())
    throw CLI::ValidationError("detect",
                               "pass exactly one of --input and --simulate");

  ManifestWriter manifest("detect", common);

  std::optional<mcssa::TimeSeries> series;
  if (options.simulate) {
    mcssa::RngEngine engine =
        mcssa::make_engine(mcssa::derive_seed(common.seed, 0));
    series = mcssa::synthesize(
        mcssa::SignalSpec{options.amplitude, options.period, options.phase},
        options.n, mcssa::Ar1Model{options.phi, options.delta, options.n},
        engine);
  } else {
    series = mcssa::read_series(options.input);
  }

  const int n = static_cast<int>(series->size());
  const mcssa::TestConfig config = make_test_config(
      options.test, options.phi, options.delta, n, options.simulate);

  const std::uint64_t test_seed = mcssa::derive_seed(common.seed, 1);
  const mcssa::TestResult result =
      mcssa::run_mcssa(*series, config, test_seed, common.workers);

  const fs::path directory = ensure_out_dir(common.out_dir);
  mcssa::write_report(directory / "report.txt", result, config, common.seed);
  mcssa::write_spectrum_csv(directory / "spectrum.csv",
                            mcssa::spectrum_table(result, *result.null_model));

  json& j = manifest.data();
  j["options"]["input"] = options.input;
  j["options"]["simulate"] = options.simulate;
  j["options"]["n"] = options.n;
  j["options"]["phi"] = options.phi;
  j["options"]["delta"] = options.delta;
  j["options"]["amplitude"] = options.amplitude;
  j["options"]["period"] = options.period;
  j["options"]["phase"] = options.phase;
  j["options"]["test"] = test_options_to_json(options.test);
  j["density_overlay_scale"] = n;
  j["result"]["reject"] = result.reject;
  if (result.freq_max) j["result"]["freq_max"] = *result.freq_max;
  j["result"]["null_model"]["phi"] = result.null_model->varphi;
  j["result"]["null_model"]["delta"] = result.null_model->delta;
  j["outputs"] = {"report.txt", "spectrum.csv"};
  manifest.write(directory);

  std::cout << "reject: " << (result.reject ? "true" : "false") << '\n';
  if (result.freq_max)
    std::cout << "freq_max: " << mcssa::format_double(*result.freq_max) << '\n';
  return 0;
}

int run_table(const CalibrateOptions& options, const CommonOptions& common,
              bool with_signal) {
  ManifestWriter manifest(with_signal ? "power" : "calibrate", common);
  const mcssa::Scenario scenario = build_scenario(options, with_signal);
  const mcssa::ErrorEstimate estimate =
      mcssa::estimate_rejection_rate(scenario, common.seed, common.workers);

  const fs::path directory = ensure_out_dir(common.out_dir);
  mcssa::write_table_csv(directory / "table.csv",
                         {{scenario_label(options), estimate.proportion,
                           estimate.ci_low, estimate.ci_high}});

  json& j = manifest.data();
  j["options"] = scenario_to_json(options);
  j["result"]["rejections"] = estimate.rejections;
  j["result"]["replicates"] = estimate.replicates;
  j["result"]["estimate"] = estimate.proportion;
  j["result"]["ci025"] = estimate.ci_low;
  j["result"]["ci975"] = estimate.ci_high;
  j["outputs"] = {"table.csv"};
  manifest.write(directory);

  std::cout << (with_signal ? "power: " : "type_i_error: ")
            << mcssa::format_double(estimate.proportion) << " ci=("
            << mcssa::format_double(estimate.ci_low) << ","
            << mcssa::format_double(estimate.ci_high) << ")\n";
  return 0;
}

int run_adjust(const AdjustOptions& options, const CommonOptions& common) {
  ManifestWriter manifest("adjust-alpha", common);
  const mcssa::Scenario scenario = build_scenario(options.scenario, false);
  mcssa::AlphaSearch search;
  search.lower = options.search_lo;
  search.upper = options.search_hi;
  search.max_iterations = options.max_iterations;
  search.tolerance = options.tolerance;

  const mcssa::AlphaAdjustment adjustment = mcssa::adjust_alpha(
      scenario, options.target, search, common.seed, common.workers);

  const fs::path directory = ensure_out_dir(common.out_dir);
  std::vector<mcssa::TableRow> trace;
  trace.reserve(adjustment.trace.size());
  for (const auto& [level, estimate] : adjustment.trace)
    trace.push_back({"alpha=" + mcssa::format_double(level),
                     estimate.proportion, estimate.ci_low, estimate.ci_high});
  mcssa::write_table_csv(directory / "trace.csv", trace);

  std::ofstream adjusted(directory / "adjustment.csv");
  adjusted << "target,adjusted\n"
           << mcssa::format_double(adjustment.target) << ','
           << mcssa::format_double(adjustment.adjusted) << '\n';

  json& j = manifest.data();
  j["options"] = scenario_to_json(options.scenario);
  j["options"]["target"] = options.target;
  j["options"]["search_lo"] = options.search_lo;
  j["options"]["search_hi"] = options.search_hi;
  j["options"]["max_iterations"] = options.max_iterations;
  j["options"]["tolerance"] = options.tolerance;
  j["result"]["adjusted_alpha"] = adjustment.adjusted;
  j["outputs"] = {"trace.csv", "adjustment.csv"};
  manifest.write(directory);

  std::cout << "adjusted_alpha: " << mcssa::format_double(adjustment.adjusted)
            << '\n';
  return 0;
}

int run_roc(const RocOptions& options, const CommonOptions& common) {
  ManifestWriter manifest("roc", common);
  mcssa::Scenario null_scenario = build_scenario(options.scenario, false);
  const mcssa::Scenario signal_scenario = build_scenario(options.scenario, true);
  const std::vector<double> levels = parse_levels(options.levels);

  const std::vector<mcssa::RocPoint> points = mcssa::roc_sweep(
      null_scenario, signal_scenario, levels, common.seed, common.workers);

  const fs::path directory = ensure_out_dir(common.out_dir);
  mcssa::write_roc_csv(directory / "roc.csv", points);

  json& j = manifest.data();
  j["options"] = scenario_to_json(options.scenario);
  j["options"]["levels"] = options.levels;
  j["outputs"] = {"roc.csv"};
  manifest.write(directory);

  for (const mcssa::RocPoint& point : points)
    std::cout << "alpha=" << mcssa::format_double(point.alpha)
              << " fpr=" << mcssa::format_double(point.fpr.proportion)
              << " tpr=" << mcssa::format_double(point.tpr.proportion) << '\n';
  return 0;
}

int run_rerun(const std::string& manifest_path, const CommonOptions& cli_common) {
  std::ifstream in(manifest_path);
  if (!in)
    throw mcssa::DataError("cannot open '" + manifest_path + "' for reading");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw mcssa::ParseError(std::string("manifest: ") + e.what(), 0);
  }

  try {
    CommonOptions common;
    common.seed = j.at("seed").get<std::uint64_t>();
    common.workers = j.at("workers").get<int>();
    common.out_dir = cli_common.out_dir;
    const std::string command = j.at("command").get<std::string>();
    const json& opts = j.at("options");

    if (command == "detect") {
      DetectOptions options;
      options.input = opts.at("input").get<std::string>();
      options.simulate = opts.at("simulate").get<bool>();
      options.n = opts.at("n").get<int>();
      options.phi = opts.at("phi").get<double>();
      options.delta = opts.at("delta").get<double>();
      options.amplitude = opts.at("amplitude").get<double>();
      options.period = opts.at("period").get<double>();
      options.phase = opts.at("phase").get<double>();
      options.test = test_options_from_json(opts.at("test"));
      return run_detect(options, common);
    }
    if (command == "calibrate" || command == "power")
      return run_table(scenario_from_json(opts), common, command == "power");
    if (command == "adjust-alpha") {
      AdjustOptions options;
      options.scenario = scenario_from_json(opts);
      options.target = opts.at("target").get<double>();
      options.search_lo = opts.at("search_lo").get<double>();
      options.search_hi = opts.at("search_hi").get<double>();
      options.max_iterations = opts.at("max_iterations").get<int>();
      options.tolerance = opts.at("tolerance").get<double>();
      return run_adjust(options, common);
    }
    if (command == "roc") {
      RocOptions options;
      options.scenario = scenario_from_json(opts);
      options.levels = opts.at("levels").get<std::string>();
      return run_roc(options, common);
    }
    throw mcssa::ParseError("manifest: unknown command '" + command + "'", 0);
  } catch (const json::exception& e) {
    throw mcssa::ParseError(std::string("manifest: ") + e.what(), 0);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo SSA: detection of periodic signals in red noise"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  DetectOptions detect_options;
  CommonOptions detect_common;
  CLI::App* detect = app.add_subcommand(
      "detect", "test one series for periodic components");
  detect->add_option("-i,--input", detect_options.input,
                     "series file: one value per line, '#' comments");
  detect->add_flag("--simulate", detect_options.simulate,
                   "synthesize the input series instead of reading a file");
  detect->add_option("--n", detect_options.n, "length of the simulated series");
  detect->add_option("--phi", detect_options.phi, "AR(1) coefficient");
  detect->add_option("--delta", detect_options.delta, "innovation scale");
  detect->add_option("--amplitude", detect_options.amplitude,
                     "simulated signal amplitude");
  detect->add_option("--period", detect_options.period,
                     "simulated signal period");
  detect->add_option("--phase", detect_options.phase, "simulated signal phase");
  add_test_flags(detect, detect_options.test);
  add_common_flags(detect, detect_common);

  CalibrateOptions calibrate_options;
  CommonOptions calibrate_common;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "estimate the type-I error by simulation");
  add_scenario_flags(calibrate, calibrate_options, false);
  add_common_flags(calibrate, calibrate_common);

  CalibrateOptions power_options;
  CommonOptions power_common;
  CLI::App* power =
      app.add_subcommand("power", "estimate the power by simulation");
  add_scenario_flags(power, power_options, true);
  add_common_flags(power, power_common);

  AdjustOptions adjust_options;
  CommonOptions adjust_common;
  CLI::App* adjust = app.add_subcommand(
      "adjust-alpha", "search the nominal level matching a target error rate");
  add_scenario_flags(adjust, adjust_options.scenario, false);
  adjust->add_option("--target", adjust_options.target, "target type-I error");
  adjust->add_option("--search-lo", adjust_options.search_lo,
                     "lower end of the search interval");
  adjust->add_option("--search-hi", adjust_options.search_hi,
                     "upper end of the search interval");
  adjust->add_option("--max-iter", adjust_options.max_iterations,
                     "bisection budget");
  adjust->add_option("--tol", adjust_options.tolerance,
                     "minimum bracket width");
  add_common_flags(adjust, adjust_common);

  RocOptions roc_options;
  CommonOptions roc_common;
  CLI::App* roc = app.add_subcommand(
      "roc", "false/true positive rates over a grid of levels");
  add_scenario_flags(roc, roc_options.scenario, true);
  roc->add_option("--levels", roc_options.levels,
                  "comma-separated nominal levels");
  add_common_flags(roc, roc_common);

  std::string rerun_manifest;
  CommonOptions rerun_common;
  CLI::App* rerun =
      app.add_subcommand("rerun", "repeat a run recorded in a manifest");
  rerun->add_option("--from", rerun_manifest, "manifest.json of a previous run")
      ->required();
  rerun->add_option("-o,--out", rerun_common.out_dir, "output directory");

  try {
    app.parse(argc, argv);
    if (detect->parsed()) return run_detect(detect_options, detect_common);
    if (calibrate->parsed())
      return run_table(calibrate_options, calibrate_common, false);
    if (power->parsed()) return run_table(power_options, power_common, true);
    if (adjust->parsed()) return run_adjust(adjust_options, adjust_common);
    if (roc->parsed()) return run_roc(roc_options, roc_common);
    if (rerun->parsed()) return run_rerun(rerun_manifest, rerun_common);
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const mcssa::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mcssa::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mcssa::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mcssa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
