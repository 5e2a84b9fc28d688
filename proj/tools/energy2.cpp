// energy2: two-sample tests on CSV data, power studies, level calibration.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "energy2/csv.hpp"
#include "energy2/error.hpp"
#include "energy2/methods.hpp"
#include "energy2/parallel.hpp"
#include "energy2/permutation.hpp"
#include "energy2/power.hpp"
#include "energy2/sample.hpp"
#include "energy2/scenario.hpp"

namespace {

using namespace energy2;
using nlohmann::json;

constexpr int kUsage = 2;
constexpr int kDegenerate = 3;

struct TestArgs {
  std::string method = "energy";
  std::string a;
  std::string b;
  std::string kernel = "log";
  std::size_t permutations = 1000;
  std::optional<std::uint64_t> seed;
  double alpha = 0.05;
  bool standardize = false;
  bool has_header = false;
  std::optional<double> min_distance;
  std::size_t bins = 5;
  unsigned threads = 0;
  std::uint64_t exhaustive_cap = 100000;
};

struct PowerArgs {
  std::string config;
  std::string cases;
  std::string methods;
  std::optional<std::uint64_t> seed;
  std::size_t replications = 1000;
  std::optional<std::size_t> permutations;
  bool paper_scale = false;
  bool fixed_critical = false;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<double> alpha;
  std::string kernel = "log";
  std::optional<std::size_t> chi2_bins;
  std::string out_dir = ".";
  std::string tag;
  unsigned threads = 0;
  bool standardize = false;
};

struct CalibrateArgs {
  std::size_t n = 50;
  std::size_t m = 50;
  std::size_t permutations = 1000;
  std::size_t repeats = 100;
  std::optional<std::uint64_t> seed;
  std::size_t reference = 100000;
  std::size_t dim = 1;
  unsigned threads = 0;
};

/// --seed, else ENERGY2_SEED, else 1.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ENERGY2_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::strlen(env)) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("ENERGY2_SEED is not an unsigned integer: '") + env + "'");
  }
  return 1;
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

int run_test(const TestArgs& args) {
  const Method method = parse_method(args.method);
  const Sample a = read_csv(std::filesystem::path(args.a), args.has_header);
  const Sample b = read_csv(std::filesystem::path(args.b), args.has_header);
  LabeledPool p = pool(a, b);
  if (args.standardize) p = standardize(p);

  TestOptions opts;
  opts.alpha = args.alpha;
  opts.permutation.permutations = args.permutations;
  opts.permutation.seed = resolve_seed(args.seed);
  opts.permutation.exhaustive_cap = args.exhaustive_cap;
  opts.permutation.threads = resolve_threads(args.threads);
  opts.method.kernel = parse_kernel(args.kernel);
  opts.method.kernel_options.min_distance = args.min_distance;
  opts.method.chi2_bins = args.bins;
  const TestOutcome out = two_sample_test(p, method, opts);

  json doc = {
      {"schema", 1},
      {"method", std::string(method_name(method))},
      {"statistic", out.statistic},
      {"p_value", out.p_value},
      {"critical_value", out.critical_value ? json(*out.critical_value) : json(nullptr)},
      {"alpha", out.alpha},
      {"n", out.n},
      {"m", out.m},
      {"d", out.d},
      {"permutations", out.permutations},
      {"exhaustive", out.exhaustive},
      {"seed", out.seed},
      {"standardized", args.standardize},
      {"kernel", to_string(opts.method.kernel)},
  };
  std::cout << doc.dump(2) << '\n';

  const std::pair<std::string, std::string> lines[] = {
      {"method", std::string(method_name(method))},
      {"statistic", fixed(out.statistic, 6)},
      {"p-value", fixed(out.p_value, 4)},
      {"critical value", out.critical_value ? fixed(*out.critical_value, 6) : "n/a"},
      {"decision", out.rejected() ? "reject H0 at alpha " + fixed(out.alpha, 3)
                                  : "no rejection at alpha " + fixed(out.alpha, 3)},
      {"samples", "n=" + std::to_string(out.n) + " m=" + std::to_string(out.m) +
                      " d=" + std::to_string(out.d)},
      {"relabelings", std::to_string(out.permutations) +
                          (out.exhaustive ? " (exhaustive)" : " (sampled)")},
  };
  for (const auto& [key, value] : lines) {
    std::cerr << std::left << std::setw(16) << key << value << '\n';
  }
  return 0;
}

std::set<int> parse_cases(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int id = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.insert(id);
    } catch (const std::exception&) {
      throw ConfigError("--cases: '" + item + "' is not a case number");
    }
  }
  return out;
}

int run_power(const PowerArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const ScenarioFile file = load_scenarios(args.config);

  std::vector<Method> methods =
      !args.methods.empty() ? parse_method_list(args.methods) : file.methods;
  if (methods.empty()) {
    methods = {Method::FriedmanRafsky, Method::NearestNeighbor, Method::Energy};
  }

  std::vector<ScenarioSpec> scenarios;
  const std::set<int> wanted = args.cases.empty() ? std::set<int>{} : parse_cases(args.cases);
  for (const ScenarioSpec& s : file.scenarios) {
    if (wanted.empty() || wanted.contains(s.case_id)) scenarios.push_back(s);
  }
  for (int id : wanted) {
    if (std::none_of(scenarios.begin(), scenarios.end(),
                     [&](const ScenarioSpec& s) { return s.case_id == id; })) {
      throw ConfigError("--cases: no case " + std::to_string(id) + " in " + args.config);
    }
  }

  const std::uint64_t seed = resolve_seed(args.seed);
  const std::size_t permutations =
      args.permutations ? *args.permutations : (args.paper_scale ? 1000 : 300);
  for (ScenarioSpec& s : scenarios) {
    s.seed = seed;
    s.replications = args.replications;
    s.permutations = permutations;
    if (args.n) s.n = *args.n;
    if (args.m) s.m = *args.m;
    if (args.alpha) s.alpha = *args.alpha;
    if (args.chi2_bins) s.chi2_bins = *args.chi2_bins;
    validate(s);
  }

  PowerOptions opts;
  opts.method.kernel = parse_kernel(args.kernel);
  opts.mode = args.fixed_critical ? CriticalMode::FixedCritical : CriticalMode::PerReplication;
  opts.standardize = args.standardize;
  opts.threads = resolve_threads(args.threads);

  std::vector<PowerReport> reports;
  for (const ScenarioSpec& s : scenarios) {
    for (PowerReport& r : run_scenario(s, methods, opts)) reports.push_back(std::move(r));
  }

  const std::string tag = args.tag.empty() ? file.tag : args.tag;
  const TableDocument doc = render_tables(reports, layout_for(reports, tag));
  const std::filesystem::path dir(args.out_dir);
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / ("power_" + tag + ".csv");
  const auto txt_path = dir / ("power_" + tag + ".txt");
  std::ofstream(csv_path) << doc.csv;
  std::ofstream(txt_path) << doc.text;

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << doc.text << "wrote " << csv_path.string() << " and " << txt_path.string()
            << "\nwall time " << fixed(seconds, 2) << " s\n";
  return 0;
}

int run_calibrate(const CalibrateArgs& args) {
  CalibrationOptions opts;
  opts.reference_permutations = args.reference;
  opts.dim = args.dim;
  opts.threads = resolve_threads(args.threads);
  const std::uint64_t seed = resolve_seed(args.seed);
  const CalibrationResult r =
      calibrate_alpha(args.n, args.m, args.permutations, args.repeats, seed, opts);
  const json doc = {{"schema", 1},           {"B", args.permutations},
                    {"interval_low", r.low}, {"interval_high", r.high},
                    {"repeats", args.repeats}, {"seed", seed}};
  std::cout << doc.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sample tests based on the energy statistic"};
  app.require_subcommand(1);

  TestArgs t;
  auto* test = app.add_subcommand("test", "Permutation test of two CSV samples");
  test->add_option("--method", t.method, "energy, fr, nn, ks, cvm or chi2")->capture_default_str();
  test->add_option("--a", t.a, "CSV file of the first sample")->required();
  test->add_option("--b", t.b, "CSV file of the second sample")->required();
  test->add_option("--kernel", t.kernel, "log, power:KAPPA or gauss:SIGMA")->capture_default_str();
  test->add_option("--permutations", t.permutations, "Number of random relabelings")
      ->capture_default_str()->check(CLI::PositiveNumber);
  test->add_option("--seed", t.seed, "Random seed (fallback: ENERGY2_SEED, then 1)");
  test->add_option("--alpha", t.alpha, "Significance level")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  test->add_flag("--standardize", t.standardize, "Scale each coordinate to unit variance");
  test->add_flag("--has-header", t.has_header, "Skip the first line of each CSV");
  test->add_option("--min-distance", t.min_distance,
                   "Clamp distances below this value before the kernel")
      ->check(CLI::PositiveNumber);
  test->add_option("--bins", t.bins, "Equal-probability bins for chi2")
      ->capture_default_str()->check(CLI::PositiveNumber);
  test->add_option("--threads", t.threads, "Worker threads (0: all cores)")->capture_default_str();
  test->add_option("--exhaustive-cap", t.exhaustive_cap,
                   "Enumerate all relabelings when there are at most this many")
      ->capture_default_str();

  PowerArgs p;
  auto* power = app.add_subcommand("power", "Monte Carlo power study from a scenario file");
  power->add_option("--config", p.config, "Scenario JSON file")->required();
  power->add_option("--cases", p.cases, "Comma-separated case ids (default: all)");
  power->add_option("--methods", p.methods, "Comma-separated methods (default: from the file)");
  power->add_option("--seed", p.seed, "Random seed (fallback: ENERGY2_SEED, then 1)");
  power->add_option("--replications", p.replications, "Sample pairs per case")
      ->capture_default_str()->check(CLI::PositiveNumber);
  power->add_option("--permutations", p.permutations,
                    "Relabelings per replication (default 300, 1000 with --paper-scale)")
      ->check(CLI::PositiveNumber);
  power->add_flag("--paper-scale", p.paper_scale, "Use 1000 relabelings per replication");
  power->add_flag("--fixed-critical", p.fixed_critical,
                  "Estimate one critical value from the first replication");
  power->add_option("--n", p.n, "Override the first sample size")->check(CLI::PositiveNumber);
  power->add_option("--m", p.m, "Override the second sample size")->check(CLI::PositiveNumber);
  power->add_option("--alpha", p.alpha, "Override the significance level")
      ->check(CLI::Range(0.0, 1.0));
  power->add_option("--kernel", p.kernel, "log, power:KAPPA or gauss:SIGMA")->capture_default_str();
  power->add_option("--chi2-bins", p.chi2_bins, "Override the chi2 bin count")
      ->check(CLI::PositiveNumber);
  power->add_option("--out-dir", p.out_dir, "Directory for the CSV and text tables")
      ->capture_default_str();
  power->add_option("--tag", p.tag, "Output name suffix (default: the file's tag)");
  power->add_option("--threads", p.threads, "Worker threads (0: all cores)")->capture_default_str();
  power->add_flag("--standardize", p.standardize, "Standardize each pooled sample");

  CalibrateArgs c;
  auto* calibrate = app.add_subcommand(
      "calibrate", "Spread of the achieved level when the critical value is estimated");
  calibrate->add_option("--n", c.n, "First sample size")->capture_default_str()->check(CLI::PositiveNumber);
  calibrate->add_option("--m", c.m, "Second sample size")->capture_default_str()->check(CLI::PositiveNumber);
  calibrate->add_option("--permutations", c.permutations, "Relabelings per estimate")
      ->capture_default_str()->check(CLI::PositiveNumber);
  calibrate->add_option("--repeats", c.repeats, "Number of estimates")->capture_default_str();
  calibrate->add_option("--seed", c.seed, "Random seed (fallback: ENERGY2_SEED, then 1)");
  calibrate->add_option("--reference", c.reference, "Relabelings in the reference null")
      ->capture_default_str()->check(CLI::PositiveNumber);
  calibrate->add_option("--dim", c.dim, "Dimension of the uniform pool")
      ->capture_default_str()->check(CLI::PositiveNumber);
  calibrate->add_option("--threads", c.threads, "Worker threads (0: all cores)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*test) return run_test(t);
    if (*power) return run_power(p);
    return run_calibrate(c);
  } catch (const SingularDistance& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const DegenerateCoordinate& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const DegenerateBins& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
