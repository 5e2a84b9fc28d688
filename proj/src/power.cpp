#include "energy2/power.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "energy2/error.hpp"
#include "energy2/parallel.hpp"
#include "energy2/permutation.hpp"
#include "energy2/rng.hpp"

namespace energy2 {
namespace {

struct Replication {
  std::vector<double> observed;
  std::vector<std::uint8_t> rejected;
};

PreparedPool draw_pool(const ScenarioSpec& spec, std::span<const Method> methods,
                       const PowerOptions& options, std::size_t replication) {
  Stream draw(derive_key(spec.seed, {static_cast<std::uint64_t>(spec.case_id),
                                     replication, 0}));
  const Sample a = sample_multivariate(spec.px, spec.n, draw);
  const Sample b = location_scale(sample_multivariate(spec.py, spec.m, draw),
                                  spec.theta, spec.tau);
  LabeledPool p = pool(a, b);
  if (options.standardize) p = standardize(p);
  MethodOptions mo = options.method;
  mo.chi2_bins = spec.chi2_bins;
  return PreparedPool(p, methods, mo);
}

std::uint64_t permutation_seed(const ScenarioSpec& spec,
                               std::size_t replication) {
  return derive_key(spec.seed,
                    {static_cast<std::uint64_t>(spec.case_id), replication, 1});
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fixed3(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << v;
  return out.str();
}

}  // namespace

std::vector<PowerReport> run_scenario(const ScenarioSpec& spec,
                                      std::span<const Method> methods,
                                      const PowerOptions& options) {
  if (methods.empty()) throw InvalidArgument("at least one method is required");
  validate(spec);
  const std::size_t d = dimension(spec.px);
  for (Method m : methods) {
    if (is_univariate(m) && d != 1) {
      throw DimensionMismatch("method " + std::string(method_name(m)) +
                              " needs one-dimensional data; case " +
                              std::to_string(spec.case_id) + " has d = " +
                              std::to_string(d));
    }
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<Tail> tails;
  for (Method m : methods) tails.push_back(rejection_tail(m));

  std::vector<double> fixed_critical;
  if (options.mode == CriticalMode::FixedCritical) {
    try {
      const PreparedPool first = draw_pool(spec, methods, options, 0);
      std::vector<LabelStatistic> stats;
      for (Method m : methods) stats.push_back(first.statistic(m));
      PermutationOptions po;
      po.permutations = options.fixed_critical_permutations;
      po.seed = permutation_seed(spec, 0);
      po.threads = options.threads;
      const auto nulls = permutation_nulls(first.pool().size(),
                                           first.pool().n(), stats, tails, po);
      for (const auto& null : nulls) {
        fixed_critical.push_back(critical_value(null, spec.alpha));
      }
    } catch (const Error& e) {
      throw ReplicationError(0, e.what());
    }
  }

  std::vector<Replication> results(spec.replications);
  const unsigned threads = resolve_threads(options.threads);
  parallel_for(spec.replications, threads, [&](std::size_t r) {
    try {
      const PreparedPool prepared = draw_pool(spec, methods, options, r);
      std::vector<LabelStatistic> stats;
      for (Method m : methods) stats.push_back(prepared.statistic(m));
      Replication& out = results[r];
      for (const auto& stat : stats) {
        out.observed.push_back(stat(prepared.pool().labels()));
      }
      out.rejected.assign(methods.size(), 0);
      if (options.mode == CriticalMode::FixedCritical) {
        for (std::size_t k = 0; k < methods.size(); ++k) {
          const double obs = out.observed[k];
          out.rejected[k] = tails[k] == Tail::High ? obs >= fixed_critical[k]
                                                   : obs <= fixed_critical[k];
        }
        return;
      }
      PermutationOptions po;
      po.permutations = spec.permutations;
      po.seed = permutation_seed(spec, r);
      po.threads = 1;
      const auto nulls = permutation_nulls(
          prepared.pool().size(), prepared.pool().n(), stats, tails, po);
      for (std::size_t k = 0; k < methods.size(); ++k) {
        out.rejected[k] = p_value(nulls[k], out.observed[k]) <= spec.alpha;
      }
    } catch (const Error& e) {
      throw ReplicationError(r, e.what());
    }
  });

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::vector<PowerReport> reports;
  for (std::size_t k = 0; k < methods.size(); ++k) {
    std::size_t rejections = 0;
    for (const auto& r : results) rejections += r.rejected[k];
    reports.push_back({spec, methods[k],
                       static_cast<double>(rejections) /
                           static_cast<double>(spec.replications),
                       spec.replications, rejections, elapsed});
  }
  return reports;
}

TableLayout layout_for(std::span<const PowerReport> reports,
                       const std::string& title) {
  TableLayout layout;
  layout.title = title;
  for (const auto& r : reports) {
    if (std::find(layout.case_ids.begin(), layout.case_ids.end(),
                  r.scenario.case_id) == layout.case_ids.end()) {
      layout.case_ids.push_back(r.scenario.case_id);
    }
    if (std::find(layout.methods.begin(), layout.methods.end(), r.method) ==
        layout.methods.end()) {
      layout.methods.push_back(r.method);
    }
  }
  return layout;
}

TableDocument render_tables(std::span<const PowerReport> reports,
                            const TableLayout& layout) {
  if (layout.methods.empty()) {
    throw InvalidArgument("table layout names no methods");
  }
  auto find = [&](int case_id, Method method) -> const PowerReport& {
    for (const auto& r : reports) {
      if (r.scenario.case_id == case_id && r.method == method) return r;
    }
    throw MissingCell("no report for case " + std::to_string(case_id) +
                      ", method " + std::string(method_name(method)));
  };

  std::ostringstream csv;
  csv << "case_id,method,n,m,theta,tau,replications,permutations,power\n";
  for (int id : layout.case_ids) {
    for (Method method : layout.methods) {
      const PowerReport& r = find(id, method);
      const ScenarioSpec& s = r.scenario;
      csv << s.case_id << ',' << method_name(method) << ',' << s.n << ','
          << s.m << ',' << shortest(s.theta) << ',' << shortest(s.tau) << ','
          << r.replications << ',' << s.permutations << ','
          << shortest(r.power) << '\n';
    }
  }

  // Text table: case, populations, sizes, shift, then one column per method.
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"case", "pX", "pY", "n,m", "theta,tau"};
  for (Method method : layout.methods) header.emplace_back(method_name(method));
  rows.push_back(header);
  std::set<std::size_t> reps;
  std::set<std::size_t> perms;
  std::set<std::uint64_t> seeds;
  std::set<double> alphas;
  for (int id : layout.case_ids) {
    const PowerReport& first = find(id, layout.methods.front());
    const ScenarioSpec& s = first.scenario;
    std::vector<std::string> row{
        std::to_string(id), describe(s.px), describe(s.py),
        std::to_string(s.n) + "," + std::to_string(s.m),
        shortest(s.theta) + "," + shortest(s.tau)};
    for (Method method : layout.methods) {
      const PowerReport& r = find(id, method);
      row.push_back(fixed3(r.power));
      reps.insert(r.replications);
      perms.insert(r.scenario.permutations);
      seeds.insert(r.scenario.seed);
      alphas.insert(r.scenario.alpha);
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  auto join = [](const auto& values) {
    std::string out;
    for (const auto& v : values) {
      if (!out.empty()) out += ",";
      if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) {
        out += shortest(v);
      } else {
        out += std::to_string(v);
      }
    }
    return out;
  };
  std::ostringstream text;
  if (!layout.title.empty()) text << layout.title << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      if (c > 0) text << "  ";
      const bool numeric = c >= 5;
      text << (numeric ? std::right : std::left)
           << std::setw(static_cast<int>(width[c])) << rows[i][c];
    }
    text << '\n';
    if (i == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      text << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    }
  }
  text << "alpha: " << join(alphas) << "; replications: " << join(reps)
       << "; permutations: " << join(perms) << "; seed: " << join(seeds)
       << '\n';
  return {csv.str(), text.str()};
}

}  // namespace energy2
