#include "energy2/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "energy2/error.hpp"

namespace energy2 {
namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void allow_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> keys) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) fail(path + "." + item.key(), "unknown field");
  }
}

const json& required(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path + "." + key, "missing required field");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

std::size_t count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    fail(path, "expected a positive integer");
  }
  return j.get<std::size_t>();
}

bool flag(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) return false;
  if (!j.at(key).is_boolean()) fail(path + "." + key, "expected true or false");
  return j.at(key).get<bool>();
}

Univariate univariate_by_name(const std::string& name, const std::string& path) {
  static const char* names[] = {"f1", "f2", "f3", "f4", "f5",
                                "f6", "f7", "f8", "f9"};
  for (int i = 0; i < 9; ++i) {
    if (name == names[i]) return static_cast<Univariate>(i);
  }
  fail(path, "unknown family '" + name + "'");
}

std::vector<std::vector<double>> matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty matrix");
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) fail(row_path, "expected an array");
    std::vector<double> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      row.push_back(number(j[r][c], row_path + "[" + std::to_string(c) + "]"));
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Family parse_family(const json& j, const std::string& path, bool unit_variance) {
  if (j.is_string()) {
    return Family{
        UnivariateFamily{univariate_by_name(j.get<std::string>(), path), unit_variance}};
  }
  if (!j.is_object()) fail(path, "expected a family name or object");
  const json& kind_json = required(j, path, "family");
  if (!kind_json.is_string()) fail(path + ".family", "expected a string");
  const std::string kind = kind_json.get<std::string>();
  auto dim = [&] { return count(required(j, path, "d"), path + ".d"); };

  Family family;
  try {
    if (kind.size() == 2 && kind[0] == 'f') {
      allow_keys(j, path, {"family", "unit_variance"});
      const bool scaled = j.contains("unit_variance") ? flag(j, "unit_variance", path)
                                                      : unit_variance;
      family = Family{UnivariateFamily{univariate_by_name(kind, path + ".family"), scaled}};
    } else if (kind == "normal") {
      allow_keys(j, path, {"family", "d", "mean", "sd"});
      IsoNormal f{dim()};
      if (j.contains("mean")) f.mean = number(j.at("mean"), path + ".mean");
      if (j.contains("sd")) f.sd = number(j.at("sd"), path + ".sd");
      family = Family{f};
    } else if (kind == "corr_normal") {
      allow_keys(j, path, {"family", "cov"});
      auto cov = matrix(required(j, path, "cov"), path + ".cov");
      try {
        family = Family{CorrNormal(std::move(cov))};
      } catch (const InvalidCovariance& e) {
        fail(path + ".cov", e.what());
      }
    } else if (kind == "cauchy") {
      allow_keys(j, path, {"family", "d", "spherical"});
      family = Family{MultiCauchy{dim(), flag(j, "spherical", path)}};
    } else if (kind == "nlog") {
      allow_keys(j, path, {"family", "d"});
      family = Family{NLog{dim()}};
    } else if (kind == "student_t") {
      allow_keys(j, path, {"family", "d", "nu", "spherical"});
      family = Family{StudentT{number(required(j, path, "nu"), path + ".nu"),
                               dim(), flag(j, "spherical", path)}};
    } else if (kind == "uniform") {
      allow_keys(j, path, {"family", "d"});
      family = Family{UniformCube{dim()}};
    } else if (kind == "cook_johnson") {
      allow_keys(j, path, {"family", "d", "a"});
      family = Family{CookJohnson{number(required(j, path, "a"), path + ".a"), dim()}};
    } else if (kind == "mixture") {
      allow_keys(j, path, {"family", "weight", "first", "second"});
      family = make_mixture(
          number(required(j, path, "weight"), path + ".weight"),
          parse_family(required(j, path, "first"), path + ".first", unit_variance),
          parse_family(required(j, path, "second"), path + ".second", unit_variance));
    } else {
      fail(path + ".family", "unknown family '" + kind + "'");
    }
    validate(family);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return family;
}

json family_to_json(const Family& family) {
  return std::visit(
      overloaded{
          [](const UnivariateFamily& f) -> json {
            const std::string name = "f" + std::to_string(static_cast<int>(f.which) + 1);
            if (!f.unit_variance) return name;
            return {{"family", name}, {"unit_variance", true}};
          },
          [](const IsoNormal& f) -> json {
            return {{"family", "normal"}, {"d", f.dim}, {"mean", f.mean}, {"sd", f.sd}};
          },
          [](const CorrNormal& f) -> json {
            return {{"family", "corr_normal"}, {"cov", f.cov()}};
          },
          [](const MultiCauchy& f) -> json {
            return {{"family", "cauchy"}, {"d", f.dim}, {"spherical", f.spherical}};
          },
          [](const NLog& f) -> json { return {{"family", "nlog"}, {"d", f.dim}}; },
          [](const StudentT& f) -> json {
            return {{"family", "student_t"}, {"d", f.dim}, {"nu", f.nu},
                    {"spherical", f.spherical}};
          },
          [](const UniformCube& f) -> json {
            return {{"family", "uniform"}, {"d", f.dim}};
          },
          [](const CookJohnson& f) -> json {
            return {{"family", "cook_johnson"}, {"d", f.dim}, {"a", f.a}};
          },
          [](const Mixture& f) -> json {
            return {{"family", "mixture"},
                    {"weight", f.weight},
                    {"first", family_to_json(*f.first)},
                    {"second", family_to_json(*f.second)}};
          },
      },
      family.kind);
}

void validate(const ScenarioSpec& spec) {
  validate(spec.px);
  validate(spec.py);
  if (dimension(spec.px) != dimension(spec.py)) {
    throw DimensionMismatch("case " + std::to_string(spec.case_id) +
                            ": pX and pY differ in dimension");
  }
  if (!(spec.tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (!std::isfinite(spec.theta)) throw InvalidArgument("theta must be finite");
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
  if (spec.n < 1 || spec.m < 1) {
    throw InvalidArgument("sample sizes must be positive");
  }
  if (spec.replications < 1) {
    throw InvalidArgument("replications must be positive");
  }
  if (spec.permutations < 1) {
    throw InvalidArgument("permutations must be positive");
  }
  if (spec.case_id < 0) throw InvalidArgument("case_id must be nonnegative");
}

ScenarioFile parse_scenarios(const json& doc) {
  if (!doc.is_object()) fail("$", "expected an object");
  allow_keys(doc, "$", {"schema", "tag", "description", "defaults", "methods",
                        "scenarios"});
  if (doc.contains("schema") &&
      (!doc.at("schema").is_number_integer() || doc.at("schema").get<int>() != 1)) {
    fail("$.schema", "unsupported schema version");
  }
  ScenarioFile file;
  if (doc.contains("tag")) {
    if (!doc.at("tag").is_string()) fail("$.tag", "expected a string");
    file.tag = doc.at("tag").get<std::string>();
  }
  if (doc.contains("methods")) {
    const json& ms = doc.at("methods");
    if (!ms.is_array()) fail("$.methods", "expected an array");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string p = "$.methods[" + std::to_string(i) + "]";
      if (!ms[i].is_string()) fail(p, "expected a method name");
      try {
        file.methods.push_back(parse_method(ms[i].get<std::string>()));
      } catch (const Error& e) {
        fail(p, e.what());
      }
    }
  }

  ScenarioSpec base;
  bool unit_variance = false;
  auto apply = [](ScenarioSpec& s, const json& j, const std::string& path) {
    if (j.contains("n")) s.n = count(j.at("n"), path + ".n");
    if (j.contains("m")) s.m = count(j.at("m"), path + ".m");
    if (j.contains("theta")) s.theta = number(j.at("theta"), path + ".theta");
    if (j.contains("tau")) s.tau = number(j.at("tau"), path + ".tau");
    if (j.contains("alpha")) s.alpha = number(j.at("alpha"), path + ".alpha");
    if (j.contains("params")) {
      const json& params = j.at("params");
      const std::string pp = path + ".params";
      if (!params.is_object()) fail(pp, "expected an object");
      allow_keys(params, pp, {"chi2_bins"});
      if (params.contains("chi2_bins")) {
        s.chi2_bins = count(params.at("chi2_bins"), pp + ".chi2_bins");
      }
    }
  };
  if (doc.contains("defaults")) {
    const json& d = doc.at("defaults");
    if (!d.is_object()) fail("$.defaults", "expected an object");
    allow_keys(d, "$.defaults",
               {"n", "m", "theta", "tau", "alpha", "params", "unit_variance"});
    apply(base, d, "$.defaults");
    if (d.contains("unit_variance")) {
      unit_variance = flag(d, "unit_variance", "$.defaults");
    }
  }

  const json& list = required(doc, "$", "scenarios");
  if (!list.is_array()) fail("$.scenarios", "expected an array");
  std::set<int> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "$.scenarios[" + std::to_string(i) + "]";
    const json& j = list[i];
    if (!j.is_object()) fail(path, "expected an object");
    allow_keys(j, path, {"case_id", "label", "pX", "pY", "params", "theta",
                         "tau", "n", "m", "alpha"});
    ScenarioSpec s = base;
    const json& id = required(j, path, "case_id");
    if (!id.is_number_integer() || id.get<long long>() < 0) {
      fail(path + ".case_id", "expected a nonnegative integer");
    }
    s.case_id = id.get<int>();
    if (!seen.insert(s.case_id).second) {
      fail(path + ".case_id", "duplicate case_id " + std::to_string(s.case_id));
    }
    if (j.contains("label")) {
      if (!j.at("label").is_string()) fail(path + ".label", "expected a string");
      s.label = j.at("label").get<std::string>();
    }
    s.px = parse_family(required(j, path, "pX"), path + ".pX", unit_variance);
    s.py = parse_family(required(j, path, "pY"), path + ".pY", unit_variance);
    apply(s, j, path);
    try {
      validate(s);
    } catch (const Error& e) {
      fail(path, e.what());
    }
    file.scenarios.push_back(std::move(s));
  }
  return file;
}

ScenarioFile load_scenarios(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file.string() + ": cannot open scenario file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(file.string() + ": " + e.what());
  }
  ScenarioFile parsed = parse_scenarios(doc);
  if (parsed.tag.empty()) parsed.tag = file.stem().string();
  return parsed;
}

}  // namespace energy2
