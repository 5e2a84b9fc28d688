#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "energy2/methods.hpp"
#include "energy2/error.hpp"
#include "energy2/scenario.hpp"

namespace energy2 {

enum class CriticalMode {
  /// Full permutation test in every replication; reject when p <= alpha.
  PerReplication,
  /// One critical value per method from the first replication's pool.
  FixedCritical,
};

struct PowerOptions {
  MethodOptions method;
  CriticalMode mode = CriticalMode::PerReplication;
  std::size_t fixed_critical_permutations = 1000;
  bool standardize = false;
  unsigned threads = 0;
};

struct PowerReport {
  ScenarioSpec scenario;
  Method method;
  double power;
  std::size_t replications;
  std::size_t rejections;
  double wall_time;  // seconds for the whole scenario
};

/// Raised when a replication fails; wraps the original message.
class ReplicationError : public Error {
 public:
  ReplicationError(std::size_t replication, const std::string& what)
      : Error("replication " + std::to_string(replication) + ": " + what),
        replication_(replication) {}
  std::size_t replication() const noexcept { return replication_; }

 private:
  std::size_t replication_;
};

/// Every method sees the same samples and the same relabelings within a
/// replication. Replication r draws from stream (seed, case_id, r), so the
/// counts do not depend on the thread count.
std::vector<PowerReport> run_scenario(const ScenarioSpec& spec,
                                      std::span<const Method> methods,
                                      const PowerOptions& options);

struct TableLayout {
  std::string title;
  std::vector<int> case_ids;
  std::vector<Method> methods;
};

struct TableDocument {
  std::string csv;
  std::string text;
};

/// Layout built from the reports' own cases and methods, in first-seen order.
TableLayout layout_for(std::span<const PowerReport> reports,
                       const std::string& title);

/// CSV (one row per cell) and an aligned cases x methods table. Throws
/// MissingCell when the layout names a cell no report covers.
TableDocument render_tables(std::span<const PowerReport> reports,
                            const TableLayout& layout);

}  // namespace energy2
