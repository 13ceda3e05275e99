#include "quasihyper/simplicity.hpp"

#include <algorithm>
#include <numeric>

#include "quasihyper/error.hpp"

namespace quasihyper {

namespace {

// Masks of positions {r : x_r in f_h} that fit inside some member of Q.
class Downset {
 public:
  explicit Downset(const SetSystem& q) : covered_(std::size_t{1} << q.k(), false) {
    for (Subset s = 0; s <= full_subset(q.k()); ++s)
      covered_[s] = std::any_of(q.members().begin(), q.members().end(), [s](Subset m) { return subset_of(s, m); });
  }
  bool contains(Subset mask) const { return covered_[mask]; }

 private:
  std::vector<bool> covered_;
};

Subset position_mask(std::span<const Vertex> ordering, std::span<const Vertex> other) {
  Subset mask = 0;
  for (std::size_t r = 0; r < ordering.size(); ++r)
    if (std::find(other.begin(), other.end(), ordering[r]) != other.end()) mask |= Subset{1} << r;
  return mask;
}

std::optional<Tuple> feasible_ordering(const Hypergraph& f, std::size_t edge, const std::vector<std::size_t>& before,
                                       const Downset& down) {
  auto e = f.edge(edge);
  Tuple order(e.begin(), e.end());
  do {
    bool ok = std::all_of(before.begin(), before.end(),
                          [&](std::size_t h) { return down.contains(position_mask(order, f.edge(h))); });
    if (ok) return order;
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

}  // namespace

SimplicityResult is_q_simple(const Hypergraph& f, const SetSystem& q, const SimplicityLimits& limits) {
  if (f.k() != q.k()) throw InvalidArgument("uniformity of F differs from the ground set of Q");
  if (!limits.force && (f.edge_count() > limits.max_edges || f.k() > limits.max_k))
    throw BudgetExceeded("simplicity search refused: " + std::to_string(f.edge_count()) + " edges, k=" +
                         std::to_string(f.k()) + " (limits " + std::to_string(limits.max_edges) + " edges, k<=" +
                         std::to_string(limits.max_k) + "; use force)");
  Downset down(q);
  std::vector<std::size_t> remaining(f.edge_count());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::size_t> order_rev;
  std::vector<Tuple> vertex_rev;
  while (!remaining.empty()) {
    bool placed = false;
    for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
      std::vector<std::size_t> others;
      for (std::size_t j = 0; j < remaining.size(); ++j)
        if (j != idx) others.push_back(remaining[j]);
      if (auto ord = feasible_ordering(f, remaining[idx], others, down)) {
        order_rev.push_back(remaining[idx]);
        vertex_rev.push_back(std::move(*ord));
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(idx));
        placed = true;
        break;
      }
    }
    if (!placed) return {};
  }
  SimplicityCertificate cert;
  cert.edge_order.assign(order_rev.rbegin(), order_rev.rend());
  cert.vertex_orders.assign(vertex_rev.rbegin(), vertex_rev.rend());
  return {true, std::move(cert)};
}

bool verify_certificate(const Hypergraph& f, const SetSystem& q, const SimplicityCertificate& cert) {
  std::size_t m = f.edge_count();
  if (f.k() != q.k()) throw InvalidArgument("uniformity of F differs from the ground set of Q");
  if (cert.edge_order.size() != m || cert.vertex_orders.size() != m)
    throw InvalidArgument("certificate does not list every edge of F");
  std::vector<bool> seen(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t e = cert.edge_order[i];
    if (e >= m || seen[e]) throw InvalidArgument("certificate edge order is not a permutation");
    seen[e] = true;
    Tuple sorted = cert.vertex_orders[i];
    std::sort(sorted.begin(), sorted.end());
    auto edge = f.edge(e);
    if (!std::equal(sorted.begin(), sorted.end(), edge.begin(), edge.end()))
      throw InvalidArgument("certificate vertex order is not an ordering of its edge");
  }
  Downset down(q);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t h = 0; h < i; ++h)
      if (!down.contains(position_mask(cert.vertex_orders[i], f.edge(cert.edge_order[h])))) return false;
  return true;
}

bool is_linear(const Hypergraph& f) {
  for (std::size_t i = 0; i < f.edge_count(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      auto a = f.edge(i), b = f.edge(j);
      std::size_t common = 0;
      for (Vertex v : a) common += static_cast<std::size_t>(std::count(b.begin(), b.end(), v));
      if (common > 1) return false;
    }
  return true;
}

}  // namespace quasihyper
