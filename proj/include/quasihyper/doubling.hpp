#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quasihyper/hypergraph.hpp"
#include "quasihyper/set_system.hpp"

namespace quasihyper {

/// A k-partite k-uniform hypergraph. Vertex j of class c carries a history
/// tag: one bit per doubling that duplicated class c, in application order.
/// Each tag bit is labelled by the doubling set that created it, so that two
/// doubling histories can be compared after sorting bit positions by label.
class PartiteHypergraph {
 public:
  /// k classes of one vertex each (empty tags) and the single edge through them.
  static PartiteHypergraph single_edge(int k);

  PartiteHypergraph(int k, std::vector<std::vector<std::string>> tags, std::vector<std::vector<Subset>> bit_labels,
                    std::vector<std::vector<std::uint32_t>> edges);

  int k() const { return k_; }
  /// tags()[c][j]: history tag of vertex j in class c (0-based class index).
  const std::vector<std::vector<std::string>>& tags() const { return tags_; }
  const std::vector<std::vector<Subset>>& bit_labels() const { return bit_labels_; }
  /// Each edge lists, per class, the index of its vertex in that class.
  const std::vector<std::vector<std::uint32_t>>& edges() const { return edges_; }

  std::size_t class_size(int c) const { return tags_[static_cast<std::size_t>(c)].size(); }
  std::size_t vertex_count() const;
  std::size_t edge_count() const { return edges_.size(); }
  /// |V_Q(M)|: number of vertices in the classes indexed by Q (1-based).
  std::size_t vertices_in(Subset q) const;

  /// Global vertex id of (class, index): classes are laid out consecutively.
  Vertex global_id(int c, std::uint32_t index) const;
  /// The underlying k-uniform hypergraph on the global ids.
  Hypergraph flatten() const;

  struct Canonical {
    std::vector<std::vector<std::string>> classes;
    std::vector<std::vector<std::string>> edges;
    bool operator==(const Canonical&) const = default;
  };
  /// Tags with bit positions sorted by label, classes and edges sorted.
  Canonical canonical() const;

 private:
  int k_;
  std::vector<std::vector<std::string>> tags_;
  std::vector<std::vector<Subset>> bit_labels_;
  std::vector<std::vector<std::uint32_t>> edges_;
};

/// db_Q(F): two copies of F glued along the classes indexed by Q.
PartiteHypergraph double_along(const PartiteHypergraph& f, Subset q);

/// M_Q built from the single edge by doubling along Q_1, ..., Q_l in order.
/// Throws InvalidArgument when [k] is a member.
PartiteHypergraph build_mq(const SetSystem& q);

struct MqSize {
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  bool operator==(const MqSize&) const = default;
};
/// Closed form (sum_i 2^(l - deg(i)), 2^l).
MqSize mq_size(const SetSystem& q);

bool verify_doubling_commutes(const PartiteHypergraph& f, Subset q, Subset r);

struct ExponentIdentity {
  bool holds = false;
  std::uint64_t lhs = 0;  ///< sum_j 2^(l-j-1) |V_{Q_{j+1}}(M_{Q_j})| + |V(M_Q)|, from built prefixes
  std::uint64_t rhs = 0;  ///< k 2^l
};
ExponentIdentity exponent_identity(const SetSystem& q);

}  // namespace quasihyper
