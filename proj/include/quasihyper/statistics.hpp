#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quasihyper/family.hpp"
#include "quasihyper/hypergraph.hpp"
#include "quasihyper/random.hpp"
#include "quasihyper/scalar.hpp"
#include "quasihyper/set_system.hpp"

namespace quasihyper {

struct StatOptions {
  EvalMode mode = EvalMode::exact;
  unsigned threads = 1;
  /// Maximum number of maps enumerated by brute-force DEV before BudgetExceeded.
  std::uint64_t map_budget = 100'000'000;
  bool force = false;
};

/// |K_k(G)|: ordered k-tuples of distinct vertices supported by every member.
mpz_class supported_tuples(const DirectedFamily& g);
/// Streams the supported tuples in lexicographic order.
void for_each_supported_tuple(const DirectedFamily& g, const std::function<void(std::span<const Vertex>)>& f);

/// Tuples with a repeated entry whose projections onto every member are
/// repeat-free edges of that member. These are counted by the weighted
/// statistic with the indicator ensemble but never by DISC.
mpz_class degenerate_supported_count(const DirectedFamily& g);

struct DiscValue {
  mpz_class hits;       ///< |E-bar ∩ K_k(G)|
  mpz_class supported;  ///< |K_k(G)|
  Scalar value;         ///< hits - d * supported
};

DiscValue disc_value(const Hypergraph& h, const Scalar& d, const DirectedFamily& g, const StatOptions& opts = {});

/// sum over V^[k] of (1_E(v) - d) prod_Q w_Q(v_Q).
Scalar wdisc_value(const Hypergraph& h, const Scalar& d, const WeightEnsemble& w, const StatOptions& opts = {});
/// Same sum restricted to tuples of distinct vertices.
Scalar wdisc_value_distinct(const Hypergraph& h, const Scalar& d, const WeightEnsemble& w,
                            const StatOptions& opts = {});

enum class DevMode { all_maps, injective };

/// Brute force over maps (or injections) V(M_Q) -> V of prod_f (1_E(phi(f)) - d).
Scalar dev_value(const Hypergraph& h, const Scalar& d, const SetSystem& q, DevMode mode, const StatOptions& opts = {});

struct FactorizedOptions {
  /// Reorder the members of Q to minimise the largest intermediate table.
  bool optimize_order = true;
  /// Bytes allowed for one intermediate table.
  std::uint64_t memory_budget = std::uint64_t{1} << 30;
};

/// All-maps DEV computed by undoing the doublings one at a time: each step
/// replaces the two copies glued along Q_j by a squared inner sum over the
/// classes of Q_j. Exact mode stays exact (integers scaled by the denominator
/// of d).
Scalar dev_value_factorized(const Hypergraph& h, const Scalar& d, const SetSystem& q, const StatOptions& opts = {},
                            const FactorizedOptions& fopts = {});

/// hom(M_Q, H) through the factorized evaluator (d = 0).
mpz_class hom_mq(const Hypergraph& h, const SetSystem& q, const FactorizedOptions& fopts = {});

struct MinReport {
  Scalar density;
  bool density_ok = false;
  mpz_class count;            ///< N_{M_Q}(H), or hom(M_Q,H) when method is "hom_upper_bound"
  std::string method;         ///< "labeled_copies" or "hom_upper_bound"
  Scalar bound;               ///< (d^e(M_Q) + eps) n^v(M_Q)
  bool count_ok = false;
  std::uint64_t mq_vertices = 0;
  std::uint64_t mq_edges = 0;
};

/// Copies are counted exactly when n^v(M_Q) is within `exact_limit`;
/// otherwise hom(M_Q,H) >= N_{M_Q}(H) serves as a certified upper bound.
MinReport min_check(const Hypergraph& h, const Scalar& d, const Scalar& eps, const SetSystem& q,
                    const StatOptions& opts = {}, double exact_limit = 1e10);

/// Each tuple f enters member i independently with probability w_i^+(f) when
/// signs[i] is true and w_i^-(f) otherwise; tuples with repeats never enter.
DirectedFamily round_weights_to_family(const WeightEnsemble& w, std::uint64_t seed, const std::vector<bool>& signs);

/// Ensemble of the parts selected by `signs`, as exact tables.
WeightEnsemble sign_split(const WeightEnsemble& w, const std::vector<bool>& signs);

/// Per-tuple contribution of member j: for t in V^{Q_j} with distinct entries,
/// D * sum over supported distinct v with v_{Q_j} = t of (1_E(v) - d) where D
/// is the denominator of d and the other members are held fixed. Entries
/// with repeats are zero. Row-major over V^{Q_j}.
std::vector<__int128> member_contributions(const Hypergraph& h, const mpq_class& d, const DirectedFamily& g,
                                           std::size_t j);

/// Replaces member j by the tuples whose contribution has the requested sign.
void ascent_step(const Hypergraph& h, const mpq_class& d, DirectedFamily& g, std::size_t j, bool positive);

struct WitnessSearchOptions {
  std::size_t ascent_rounds = 3;
  std::int64_t resolution = 1 << 8;
  unsigned threads = 1;
};

struct WitnessSearchResult {
  DirectedFamily family;
  mpq_class value;
  std::string seed_path;  ///< "baseline" for the complete family
  std::size_t trials = 0;
};

/// Heuristic search for a family with large |disc|: random ensembles are
/// rounded to families and then improved by coordinate ascent on one member
/// at a time. Deterministic in the seed.
WitnessSearchResult disc_witness_search(const Hypergraph& h, const mpq_class& d, const SetSystem& q,
                                        std::size_t trials, std::uint64_t seed,
                                        const WitnessSearchOptions& opts = {});

}  // namespace quasihyper
