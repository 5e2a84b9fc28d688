#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "energy2/distributions.hpp"
#include "energy2/methods.hpp"

namespace energy2 {

/// One power-study cell: draw n from pX and m from pY, map the second sample
/// through y -> theta + tau y, and test at level alpha.
struct ScenarioSpec {
  int case_id = 0;
  std::string label;
  Family px;
  Family py;
  double theta = 0.0;
  double tau = 1.0;
  std::size_t n = 50;
  std::size_t m = 50;
  double alpha = 0.05;
  std::size_t replications = 1000;
  std::size_t permutations = 300;
  std::uint64_t seed = 1;
  std::size_t chi2_bins = 5;
};

/// Throws InvalidArgument naming the first violated constraint.
void validate(const ScenarioSpec& spec);

struct ScenarioFile {
  std::string tag;
  std::vector<Method> methods;  // empty when the file names none
  std::vector<ScenarioSpec> scenarios;
};

/// Parses a family description; `path` prefixes error messages.
/// `unit_variance` is the default for one-dimensional families f1..f9.
Family parse_family(const nlohmann::json& j, const std::string& path,
                    bool unit_variance = false);
nlohmann::json family_to_json(const Family& family);

/// Parses a scenario document. Errors are ConfigError with the field path.
ScenarioFile parse_scenarios(const nlohmann::json& doc);
ScenarioFile load_scenarios(const std::filesystem::path& file);

}  // namespace energy2
