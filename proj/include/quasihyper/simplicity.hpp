#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "quasihyper/hypergraph.hpp"
#include "quasihyper/set_system.hpp"

namespace quasihyper {

/// Edge order f_1..f_m (indices into F's canonical edge list) and, for each
/// position i, the chosen ordering x_{i_1}..x_{i_k} of the vertices of f_i.
struct SimplicityCertificate {
  std::vector<std::size_t> edge_order;
  std::vector<Tuple> vertex_orders;
};

struct SimplicityResult {
  bool simple = false;
  std::optional<SimplicityCertificate> certificate;
  /// "certificate" or "exhausted".
  const char* proof_tag() const { return simple ? "certificate" : "exhausted"; }
};

struct SimplicityLimits {
  std::size_t max_edges = 12;
  int max_k = 5;
  bool force = false;
};

/// Decides Q-simplicity. An edge whose feasibility holds against every other
/// remaining edge can always be placed last, so the search peels such edges
/// from the back; each feasibility test tries vertex orders of one edge in
/// lexicographic order. Throws BudgetExceeded beyond `limits` unless forced.
SimplicityResult is_q_simple(const Hypergraph& f, const SetSystem& q, const SimplicityLimits& limits = {});

/// Checks the certificate against the definition for every pair h < i.
bool verify_certificate(const Hypergraph& f, const SetSystem& q, const SimplicityCertificate& cert);

/// Every two edges share at most one vertex.
bool is_linear(const Hypergraph& f);

}  // namespace quasihyper
