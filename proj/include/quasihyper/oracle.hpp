#pragma once

// Brute-force reference implementations. They follow the definitions
// literally (every map, every tuple, every ordering) and share no code with
// the fast evaluators beyond the basic types.

#include <gmpxx.h>

#include <cstdint>
#include <optional>

#include "quasihyper/constants.hpp"
#include "quasihyper/constructions.hpp"
#include "quasihyper/doubling.hpp"
#include "quasihyper/family.hpp"
#include "quasihyper/hypergraph.hpp"
#include "quasihyper/set_system.hpp"

namespace quasihyper::oracle {

/// Throws BudgetExceeded when more than `limit` maps would be enumerated.
inline constexpr std::uint64_t kDefaultLimit = 50'000'000;

mpz_class hom_count(const Hypergraph& f, const Hypergraph& h, std::uint64_t limit = kDefaultLimit);
mpz_class labeled_copies(const Hypergraph& f, const Hypergraph& h, std::uint64_t limit = kDefaultLimit);
mpz_class induced_count(const Hypergraph& sub, const Hypergraph& f, const Hypergraph& h,
                        std::uint64_t limit = kDefaultLimit);

mpz_class supported_tuples(const DirectedFamily& g);
mpz_class degenerate_supported(const DirectedFamily& g);
mpq_class disc(const Hypergraph& h, const mpq_class& d, const DirectedFamily& g);
mpq_class wdisc(const Hypergraph& h, const mpq_class& d, const WeightEnsemble& w, bool distinct_only = false);

enum class MapSet { all, injective, non_injective };
/// sum over maps phi : V(M_Q) -> V in the chosen set of prod_f (1_E(phi(f)) - d),
/// with M_Q built directly from bit vectors (edge a in {0,1}^l meets class c
/// in the vertex a restricted to the members that avoid c).
mpq_class dev(const Hypergraph& h, const mpq_class& d, const SetSystem& q, MapSet maps,
              std::uint64_t limit = kDefaultLimit);

/// M_Q from the bit-vector description above, as a flat hypergraph.
Hypergraph mq_direct(const SetSystem& q);

/// Tries every edge order and every vertex ordering of every edge.
bool q_simple(const Hypergraph& f, const SetSystem& q);

/// Tries every bijection of [k].
bool precedes(const SetSystem& a, const SetSystem& b);

/// Parity rule evaluated on one k-set.
bool parity_edge(const ISetSystem& b, const SetSystem& q, std::span<const Vertex> sorted_set);

/// The four constants, by repeated multiplication.
ImplicationConstants implication_constants(const SetSystem& q, const mpq_class& delta, const Hypergraph* f);

}  // namespace quasihyper::oracle
