#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "quasihyper/io.hpp"

namespace quasihyper {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string kind;  ///< "exact" or "statistical"
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  /// Adds the Monte Carlo criteria (separation experiment, random H).
  bool full = true;
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  /// Criteria to run; empty means every criterion of the chosen tier.
  std::vector<int> only;
};

inline constexpr int kCriterionCount = 11;
bool is_statistical_criterion(int id);

/// Runs the acceptance battery. `on_result` is called after each criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// The implication-constant table as emitted by the `constants` command.
io::json constants_report(const SetSystem& q, const mpq_class& delta, const Hypergraph* f);

struct ChainOptions {
  Vertex n = 60;
  int k = 3;
  SetSystem q = SetSystem::level(3, 1);
  mpq_class p{1, 2};
  std::uint64_t seed = 1;
  /// "random" for H(n,k,p); "parity" for H^(k)(B) with i = |Q_1| (p is then 1/2).
  std::string source = "random";
  std::size_t ensembles = 20;
  mpq_class delta{1, 10};
  EvalMode mode = EvalMode::exact;
  unsigned threads = 1;
};

/// Measures every statistic of the implication chain on one hypergraph and
/// reports it next to the epsilon predicted for delta.
io::json chain_experiment(const ChainOptions& opts);

}  // namespace quasihyper
