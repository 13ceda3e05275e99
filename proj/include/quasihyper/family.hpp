#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "quasihyper/bitset.hpp"
#include "quasihyper/hypergraph.hpp"
#include "quasihyper/set_system.hpp"

namespace quasihyper {

/// Dense subset of V^m. Tuples are laid out row-major with the last
/// coordinate innermost; each row (fixed first m-1 coordinates) is padded to
/// whole words so it can be intersected directly with link bitsets.
class TupleSet {
 public:
  TupleSet() = default;
  TupleSet(int arity, Vertex n, bool full = false);

  int arity() const { return arity_; }
  Vertex n() const { return n_; }
  std::size_t row_words() const { return row_words_; }

  bool contains(std::span<const Vertex> t) const;
  void insert(std::span<const Vertex> t);
  void erase(std::span<const Vertex> t);
  /// Row selected by the first arity-1 coordinates.
  std::span<const Word> row(std::span<const Vertex> prefix) const;
  std::uint64_t count() const;

  /// Calls f(tuple) for every member in lexicographic order.
  void for_each(const std::function<void(std::span<const Vertex>)>& f) const;

  bool operator==(const TupleSet&) const = default;

 private:
  std::size_t row_index(std::span<const Vertex> prefix) const;

  int arity_ = 0;
  Vertex n_ = 0;
  std::size_t row_words_ = 1;
  std::vector<Word> bits_;
};

/// Total number of tuples in V^m, or throws BudgetExceeded above `cap`.
std::uint64_t tuple_space(Vertex n, int arity, std::uint64_t cap);

/// The witness family (G_Q)_{Q in Q}: one Q-directed hypergraph per member,
/// all on the vertex set [0,n). Member j uses the coordinates of Q_j in
/// increasing order.
class DirectedFamily {
 public:
  DirectedFamily(SetSystem sets, Vertex n, std::vector<TupleSet> members);
  static DirectedFamily complete(const SetSystem& sets, Vertex n);
  static DirectedFamily empty(const SetSystem& sets, Vertex n);

  const SetSystem& sets() const { return sets_; }
  Vertex n() const { return n_; }
  const TupleSet& member(std::size_t j) const { return members_[j]; }
  TupleSet& member(std::size_t j) { return members_[j]; }
  std::size_t size() const { return members_.size(); }

  /// v_Q in E(G_Q) for every member Q, for a full k-tuple v.
  bool supports(std::span<const Vertex> v) const;

  bool operator==(const DirectedFamily&) const = default;

 private:
  SetSystem sets_;
  Vertex n_;
  std::vector<TupleSet> members_;
};

/// Projection v_Q of a k-tuple onto the coordinates of Q (increasing order).
Tuple project(std::span<const Vertex> v, Subset q);
bool has_repeat(std::span<const Vertex> t);

/// One weight function w_Q : V^Q -> [-1,1], zero on tuples with repeated entries.
class WeightFunction {
 public:
  struct Constant {
    mpq_class value;
  };
  struct Indicator {
    TupleSet members;
  };
  struct Table {
    std::vector<mpq_class> values;  ///< row-major over V^m
  };
  /// Deterministic pseudo-random values j/R, j uniform in [-R, R], hashed from (seed, tuple).
  struct Random {
    std::uint64_t seed;
    std::int64_t resolution;
  };

  WeightFunction(int arity, Vertex n, std::variant<Constant, Indicator, Table, Random> source);

  int arity() const { return arity_; }
  Vertex n() const { return n_; }
  const auto& source() const { return source_; }

  mpq_class value(std::span<const Vertex> t) const;
  double value_double(std::span<const Vertex> t) const;

  /// Integer numerator with respect to `denominator()`; zero on repeats.
  std::int64_t numerator(std::span<const Vertex> t) const;
  std::int64_t denominator() const { return denominator_; }
  std::int64_t max_abs_numerator() const { return max_abs_numerator_; }

  /// Dense integer table over V^m (entries capped by the table budget).
  std::vector<std::int64_t> numerator_table() const;

  /// Positive or negative part as a probability table: max(+-w, 0).
  mpq_class part(std::span<const Vertex> t, bool positive) const;

 private:
  std::int64_t random_numerator(std::span<const Vertex> t) const;

  int arity_;
  Vertex n_;
  std::variant<Constant, Indicator, Table, Random> source_;
  std::int64_t denominator_ = 1;
  std::int64_t max_abs_numerator_ = 1;
  std::vector<std::int64_t> table_numerators_;
};

inline constexpr std::uint64_t kDenseWeightCap = 10'000'000;

class WeightEnsemble {
 public:
  WeightEnsemble(SetSystem sets, Vertex n, std::vector<WeightFunction> functions);
  static WeightEnsemble indicator(const DirectedFamily& family);
  static WeightEnsemble constant(const SetSystem& sets, Vertex n, const mpq_class& value);
  static WeightEnsemble random(const SetSystem& sets, Vertex n, std::uint64_t seed, std::int64_t resolution = 1 << 16);

  const SetSystem& sets() const { return sets_; }
  Vertex n() const { return n_; }
  const WeightFunction& function(std::size_t j) const { return functions_[j]; }
  std::size_t size() const { return functions_.size(); }

 private:
  SetSystem sets_;
  Vertex n_;
  std::vector<WeightFunction> functions_;
};

}  // namespace quasihyper
