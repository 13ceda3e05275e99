#pragma once

#include <gmpxx.h>

#include <random>
#include <vector>

#include "quasihyper/constructions.hpp"
#include "quasihyper/hypergraph.hpp"
#include "quasihyper/set_system.hpp"

namespace qh_test {

using namespace quasihyper;

inline mpq_class Q(long a, long b = 1) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

inline Hypergraph cycle(Vertex n) {
  std::vector<Tuple> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return Hypergraph(2, n, edges);
}

inline Hypergraph path(Vertex n) {
  std::vector<Tuple> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Hypergraph(2, n, edges);
}

inline SetSystem sets(int k, std::vector<std::vector<int>> members) {
  std::vector<Subset> s;
  for (const auto& m : members) s.push_back(make_subset(m));
  return SetSystem(k, s);
}

inline SetSystem random_sets(std::mt19937_64& rng, int k, std::size_t max_l, bool allow_empty = false) {
  std::vector<Subset> pool;
  for (Subset s = allow_empty ? 0 : 1; s < full_subset(k); ++s) pool.push_back(s);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::size_t l = std::uniform_int_distribution<std::size_t>(0, std::min(max_l, pool.size()))(rng);
  pool.resize(l);
  return SetSystem(k, pool);
}

}  // namespace qh_test
