#include "quasihyper/doubling.hpp"

#include <algorithm>
#include <numeric>

#include "quasihyper/error.hpp"

namespace quasihyper {

namespace {

void require_no_full_set(const SetSystem& q) {
  if (q.contains_full_set())
    throw InvalidArgument("M_Q is defined for set systems without [k]; found " + subset_to_string(full_subset(q.k())));
}

constexpr std::size_t kMaxDoublings = 24;

}  // namespace

PartiteHypergraph PartiteHypergraph::single_edge(int k) {
  if (k < 1 || k > kMaxGround) throw InvalidArgument("k out of range");
  auto uk = static_cast<std::size_t>(k);
  return PartiteHypergraph(k, std::vector<std::vector<std::string>>(uk, {""}), std::vector<std::vector<Subset>>(uk),
                           {std::vector<std::uint32_t>(uk, 0)});
}

PartiteHypergraph::PartiteHypergraph(int k, std::vector<std::vector<std::string>> tags,
                                     std::vector<std::vector<Subset>> bit_labels,
                                     std::vector<std::vector<std::uint32_t>> edges)
    : k_(k), tags_(std::move(tags)), bit_labels_(std::move(bit_labels)), edges_(std::move(edges)) {
  auto uk = static_cast<std::size_t>(k);
  if (tags_.size() != uk || bit_labels_.size() != uk) throw InvalidArgument("partite hypergraph needs k classes");
  for (std::size_t c = 0; c < uk; ++c) {
    for (const auto& t : tags_[c])
      if (t.size() != bit_labels_[c].size()) throw InvalidArgument("tag length differs from the class history");
    auto sorted = tags_[c];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("history tags within class " + std::to_string(c + 1) + " are not distinct");
  }
  for (const auto& e : edges_) {
    if (e.size() != uk) throw InvalidArgument("edge must have one vertex per class");
    for (std::size_t c = 0; c < uk; ++c)
      if (e[c] >= tags_[c].size()) throw InvalidArgument("edge coordinate outside its class");
  }
}

std::size_t PartiteHypergraph::vertex_count() const {
  std::size_t total = 0;
  for (const auto& c : tags_) total += c.size();
  return total;
}

std::size_t PartiteHypergraph::vertices_in(Subset q) const {
  std::size_t total = 0;
  for (int c = 1; c <= k_; ++c)
    if (subset_has(q, c)) total += class_size(c - 1);
  return total;
}

Vertex PartiteHypergraph::global_id(int c, std::uint32_t index) const {
  std::size_t offset = 0;
  for (int i = 0; i < c; ++i) offset += class_size(i);
  return static_cast<Vertex>(offset + index);
}

Hypergraph PartiteHypergraph::flatten() const {
  std::vector<std::size_t> offset(static_cast<std::size_t>(k_) + 1, 0);
  for (int c = 0; c < k_; ++c) offset[static_cast<std::size_t>(c) + 1] = offset[static_cast<std::size_t>(c)] + class_size(c);
  std::vector<Tuple> flat;
  flat.reserve(edges_.size());
  for (const auto& e : edges_) {
    Tuple t(e.size());
    for (std::size_t c = 0; c < e.size(); ++c) t[c] = static_cast<Vertex>(offset[c] + e[c]);
    flat.push_back(std::move(t));
  }
  return Hypergraph(k_, static_cast<Vertex>(vertex_count()), flat);
}

PartiteHypergraph::Canonical PartiteHypergraph::canonical() const {
  auto uk = static_cast<std::size_t>(k_);
  std::vector<std::vector<std::string>> canon_tags(uk);
  for (std::size_t c = 0; c < uk; ++c) {
    std::vector<std::size_t> perm(bit_labels_[c].size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return bit_labels_[c][a] < bit_labels_[c][b]; });
    for (const auto& t : tags_[c]) {
      std::string s;
      for (std::size_t p : perm) s += t[p];
      canon_tags[c].push_back(std::move(s));
    }
  }
  Canonical out;
  for (const auto& e : edges_) {
    std::vector<std::string> row;
    for (std::size_t c = 0; c < uk; ++c) row.push_back(canon_tags[c][e[c]]);
    out.edges.push_back(std::move(row));
  }
  std::sort(out.edges.begin(), out.edges.end());
  for (auto& c : canon_tags) std::sort(c.begin(), c.end());
  out.classes = std::move(canon_tags);
  return out;
}

PartiteHypergraph double_along(const PartiteHypergraph& f, Subset q) {
  int k = f.k();
  if (!subset_of(q, full_subset(k)))
    throw InvalidArgument("doubling set " + subset_to_string(q) + " references a class outside [1," + std::to_string(k) + "]");
  if (q == full_subset(k)) return f;  // both copies coincide
  auto uk = static_cast<std::size_t>(k);
  auto tags = f.tags();
  auto labels = f.bit_labels();
  for (std::size_t c = 0; c < uk; ++c) {
    if (subset_has(q, static_cast<int>(c) + 1)) continue;
    std::vector<std::string> doubled;
    doubled.reserve(tags[c].size() * 2);
    for (const auto& t : tags[c]) {
      doubled.push_back(t + '0');
      doubled.push_back(t + '1');
    }
    tags[c] = std::move(doubled);
    labels[c].push_back(q);
  }
  std::vector<std::vector<std::uint32_t>> edges;
  edges.reserve(f.edge_count() * 2);
  for (std::uint32_t a = 0; a < 2; ++a) {
    for (const auto& e : f.edges()) {
      std::vector<std::uint32_t> ne(uk);
      for (std::size_t c = 0; c < uk; ++c) ne[c] = subset_has(q, static_cast<int>(c) + 1) ? e[c] : 2 * e[c] + a;
      edges.push_back(std::move(ne));
    }
  }
  return PartiteHypergraph(k, std::move(tags), std::move(labels), std::move(edges));
}

PartiteHypergraph build_mq(const SetSystem& q) {
  require_no_full_set(q);
  if (q.size() > kMaxDoublings) throw BudgetExceeded("M_Q with more than 2^24 edges is not built");
  PartiteHypergraph m = PartiteHypergraph::single_edge(q.k());
  for (Subset s : q.members()) m = double_along(m, s);
  return m;
}

MqSize mq_size(const SetSystem& q) {
  require_no_full_set(q);
  if (q.size() > 62) throw BudgetExceeded("M_Q size overflows 64 bits");
  auto l = static_cast<unsigned>(q.size());
  MqSize out;
  out.edges = std::uint64_t{1} << l;
  for (int i = 1; i <= q.k(); ++i) out.vertices += std::uint64_t{1} << (l - static_cast<unsigned>(degree(q, i)));
  return out;
}

bool verify_doubling_commutes(const PartiteHypergraph& f, Subset q, Subset r) {
  return double_along(double_along(f, q), r).canonical() == double_along(double_along(f, r), q).canonical();
}

ExponentIdentity exponent_identity(const SetSystem& q) {
  require_no_full_set(q);
  if (q.size() > kMaxDoublings) throw BudgetExceeded("too many doublings for the exponent identity check");
  std::size_t l = q.size();
  ExponentIdentity out;
  PartiteHypergraph m = PartiteHypergraph::single_edge(q.k());
  for (std::size_t j = 0; j < l; ++j) {
    out.lhs += (std::uint64_t{1} << (l - j - 1)) * m.vertices_in(q[j]);
    m = double_along(m, q[j]);
  }
  out.lhs += m.vertex_count();
  out.rhs = static_cast<std::uint64_t>(q.k()) << l;
  out.holds = out.lhs == out.rhs;
  return out;
}

}  // namespace quasihyper
