#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "quasihyper/bitset.hpp"
#include "quasihyper/scalar.hpp"

namespace quasihyper {

using Vertex = std::uint32_t;
using Tuple = std::vector<Vertex>;

/// A k-uniform hypergraph on vertices 0..n-1. Edges are kept as strictly
/// increasing k-tuples in lexicographic order, without duplicates.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Validates and canonicalizes. Duplicate edges are dropped; their number is
  /// written to `duplicates` when given. Throws InvalidArgument on a vertex
  /// out of range, a repeated vertex inside an edge, or a wrong edge size.
  Hypergraph(int k, Vertex n, const std::vector<Tuple>& edges, std::size_t* duplicates = nullptr);

  static Hypergraph empty(int k, Vertex n);
  static Hypergraph complete(int k, Vertex n);

  int k() const { return k_; }
  Vertex n() const { return n_; }
  std::size_t edge_count() const { return k_ == 0 ? 0 : data_.size() / static_cast<std::size_t>(k_); }
  std::span<const Vertex> edge(std::size_t i) const {
    return {data_.data() + i * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
  }
  std::vector<Tuple> edges() const;

  /// True iff the entries of `t` are k distinct vertices forming an edge, in
  /// any order. Multisets with repeated entries are never edges.
  bool contains(std::span<const Vertex> t) const;

  bool operator==(const Hypergraph&) const = default;

 private:
  int k_ = 0;
  Vertex n_ = 0;
  std::vector<Vertex> data_;
};

/// Parses the text format: a "k n" header, then one edge per line; lines
/// starting with '#' and blank lines are skipped. Duplicate edges produce a
/// warning (appended to `warnings`) and are dropped.
Hypergraph parse_hypergraph(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::string serialize_hypergraph(const Hypergraph& h);

/// Exact |E| / C(n, k).
Scalar density(const Hypergraph& h);

/// 1 - d when the entries of `t` are distinct and form an edge, -d otherwise.
Scalar edge_indicator(const Hypergraph& h, const Scalar& d, std::span<const Vertex> t);

/// Number of ordered k-tuples over n vertices with at least one repeated entry.
mpz_class degenerate_tuple_count(Vertex n, int k);

/// Packs sorted vertex tuples into 64-bit keys (base-n digits).
class TupleKey {
 public:
  TupleKey() = default;
  TupleKey(Vertex n, int max_arity);
  std::uint64_t operator()(std::span<const Vertex> t) const {
    std::uint64_t key = 0;
    for (Vertex v : t) key = key * base_ + v;
    return key;
  }

 private:
  std::uint64_t base_ = 1;
};

/// Hash and link indices over a hypergraph for the hot loops: O(1) edge
/// membership for arbitrary ordered tuples and, for each (k-1)-set, the bitset
/// of vertices completing it to an edge.
class EdgeLookup {
 public:
  explicit EdgeLookup(const Hypergraph& h);

  int k() const { return k_; }
  Vertex n() const { return n_; }
  std::size_t row_words() const { return row_words_; }

  bool contains(std::span<const Vertex> t) const;
  /// Completing vertices of the set of `prefix` (k-1 entries, any order). The
  /// row is all-zero when the prefix has repeats or lies in no edge.
  std::span<const Word> link(std::span<const Vertex> prefix) const;

 private:
  int k_;
  Vertex n_;
  std::size_t row_words_;
  TupleKey key_;
  std::unordered_set<std::uint64_t> edges_;
  std::unordered_map<std::uint64_t, std::size_t> link_rows_;
  std::vector<Word> link_data_;
  std::vector<Word> zero_row_;
};

}  // namespace quasihyper
