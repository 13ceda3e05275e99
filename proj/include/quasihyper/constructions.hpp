#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "quasihyper/family.hpp"
#include "quasihyper/hypergraph.hpp"
#include "quasihyper/set_system.hpp"

namespace quasihyper {

/// A family B of i-subsets of [0,n), stored as strictly increasing tuples.
class ISetSystem {
 public:
  ISetSystem(Vertex n, int i, std::vector<Tuple> members, std::optional<std::uint64_t> seed = std::nullopt);

  Vertex n() const { return n_; }
  int i() const { return i_; }
  const std::vector<Tuple>& members() const { return members_; }
  const std::optional<std::uint64_t>& seed() const { return seed_; }
  std::size_t size() const { return members_.size(); }

  /// Membership of the underlying set of `t` (any order; repeats are never members).
  bool contains(std::span<const Vertex> t) const;

 private:
  Vertex n_;
  int i_;
  std::vector<Tuple> members_;
  std::optional<std::uint64_t> seed_;
  TupleKey key_;
  std::unordered_set<std::uint64_t> lookup_;
};

/// Each i-subset enters independently with probability 1/2.
ISetSystem random_iset_system(Vertex n, int i, std::uint64_t seed);

/// H^(k)(B) with k = q.k(): a k-set is an edge iff an odd number of members Q
/// have the Q-projection of its increasing ordering in B.
Hypergraph parity_hypergraph(const ISetSystem& b, const SetSystem& q);

/// F_Q = tuples of V^Q whose underlying set is not in B, for every Q.
DirectedFamily failing_witness_family(const ISetSystem& b, const SetSystem& q);

/// Each k-set is an edge independently with probability p.
Hypergraph random_hypergraph(Vertex n, int k, const mpq_class& p, std::uint64_t seed);

struct SeparationCheck {
  std::string name;
  std::string label;  ///< "certified" or "sampled"
  bool passed = false;
  double measured = 0;
  double threshold = 0;
  std::string detail;
};

struct SeparationOptions {
  double eta = 0.02;
  std::size_t witnesses = 100;
  double tolerance = 0.03;
  unsigned threads = 1;
};

struct SeparationReport {
  Vertex n = 0;
  int k = 0;
  int i = 0;
  std::uint64_t seed = 0;
  std::size_t b_size = 0;
  mpq_class density;
  mpz_class intersection;  ///< |E-bar(H) ∩ K_k(F)|
  mpz_class supported;     ///< |K_k(F)|
  mpq_class disc;          ///< DISC_Q witness value with d = 1/2
  mpq_class delta;         ///< 2^(-|Q|-3)
  double max_u_disc = 0;   ///< max |disc| / n^k over the sampled U-witnesses
  std::string max_u_witness;
  std::vector<SeparationCheck> checks;
  std::vector<std::string> warnings;
  bool passed() const;
};

/// Builds B, H = H^(k)(B) and the failing family, and checks the DISC_Q
/// violation exactly and the DISC_U side on sampled witnesses.
SeparationReport verify_separation(Vertex n, int i, const SetSystem& q, const SetSystem& u, std::uint64_t seed,
                                   const SeparationOptions& opts = {});

}  // namespace quasihyper
