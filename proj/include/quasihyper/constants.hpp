#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>

#include "quasihyper/hypergraph.hpp"
#include "quasihyper/set_system.hpp"

namespace quasihyper {

/// The epsilon each implication of the chain DISC => WDISC => CL => DEV =>
/// WDISC needs in order to deliver delta.
struct ImplicationConstants {
  mpq_class delta;
  std::size_t l = 0;
  std::uint64_t mq_edges = 0;
  mpq_class disc_to_wdisc;                ///< delta / 2^(l+1)
  std::optional<mpq_class> wdisc_to_cl;   ///< (delta/2) / (2^e(F) - 1), needs F
  std::optional<std::size_t> f_edges;
  mpq_class cl_to_dev;                    ///< delta / 2^(2 e(M_Q))
  mpq_class dev_to_wdisc;                 ///< delta^(2^l)
};

/// Throws InvalidArgument unless 0 < delta <= 1, and when F is given without
/// edges (the WDISC => CL bound divides by 2^e(F) - 1).
ImplicationConstants implication_constants(const SetSystem& q, const mpq_class& delta, const Hypergraph* f = nullptr);

}  // namespace quasihyper
