#pragma once

#include <gmpxx.h>

#include "quasihyper/hypergraph.hpp"
#include "quasihyper/scalar.hpp"

namespace quasihyper {

struct CountOptions {
  /// Worker threads; the first pattern vertex's image is split across them.
  unsigned threads = 1;
};

/// Number of maps V(F) -> V(H) sending every edge of F onto an edge of H.
/// Connected components of F are counted separately and multiplied.
mpz_class hom_count(const Hypergraph& f, const Hypergraph& h, const CountOptions& opts = {});

/// Injective homomorphisms N_F(H).
mpz_class labeled_copies(const Hypergraph& f, const Hypergraph& h, const CountOptions& opts = {});

/// Injections phi with phi(f) in E(H) exactly when f in E(F'), enumerated directly.
/// `sub` must be a spanning subhypergraph of `f` (same vertex count, subset of edges).
mpz_class induced_wrt_count(const Hypergraph& sub, const Hypergraph& f, const Hypergraph& h,
                            const CountOptions& opts = {});

/// Same quantity by inclusion-exclusion over labeled copies of the
/// intermediate hypergraphs F' <= F'' <= F.
mpz_class induced_wrt_count_inclusion_exclusion(const Hypergraph& sub, const Hypergraph& f, const Hypergraph& h,
                                                const CountOptions& opts = {});

struct ClReport {
  mpz_class copies;          ///< N_F(H)
  Scalar target;             ///< d^e(F) n^v(F)
  Scalar normalized_error;   ///< |N_F(H) - target| / n^v(F)
};

ClReport cl_check(const Hypergraph& h, const Hypergraph& f, const Scalar& d, const CountOptions& opts = {});

/// Connected components of F (vertex lists); isolated vertices form singletons.
std::vector<std::vector<Vertex>> components(const Hypergraph& f);

}  // namespace quasihyper
