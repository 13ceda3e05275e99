#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace quasihyper {

/// A subset of the ground set {1..k}; bit i-1 stands for element i.
using Subset = std::uint32_t;

inline constexpr int kMaxGround = 16;

inline Subset full_subset(int k) { return k >= 32 ? ~Subset{0} : (Subset{1} << k) - 1; }
inline bool subset_of(Subset a, Subset b) { return (a & ~b) == 0; }
inline int subset_size(Subset s) { return __builtin_popcount(s); }
inline bool subset_has(Subset s, int element) { return (s >> (element - 1)) & 1U; }

/// 1-based elements in increasing order.
std::vector<int> subset_elements(Subset s);
Subset make_subset(const std::vector<int>& elements);
std::string subset_to_string(Subset s);

/// An ordered family of distinct subsets of {1..k}. Order is part of the
/// value: the doubling construction consumes members in sequence.
class SetSystem {
 public:
  SetSystem() = default;
  /// Throws InvalidArgument on repeated members or elements outside [1,k].
  SetSystem(int k, std::vector<Subset> members);

  /// All r-subsets of [k] in lexicographic order of their element lists.
  static SetSystem level(int k, int r);

  int k() const { return k_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Subset>& members() const { return members_; }
  Subset operator[](std::size_t i) const { return members_[i]; }

  bool contains(Subset s) const;
  bool contains_full_set() const { return contains(full_subset(k_)); }
  bool contains_empty_set() const { return contains(0); }

  /// First `j` members, i.e. the prefix family Q_j.
  SetSystem prefix(std::size_t j) const;
  SetSystem without(Subset s) const;
  SetSystem reordered(const std::vector<std::size_t>& order) const;

  std::string to_string() const;

  bool operator==(const SetSystem&) const = default;

 private:
  int k_ = 0;
  std::vector<Subset> members_;
};

/// Inclusion-maximal members, in first-occurrence order.
SetSystem antichain(const SetSystem& q);

/// Number of members containing `element` (1-based).
int degree(const SetSystem& q, int element);

struct PrecedesResult {
  bool holds = false;
  /// bijection[i-1] = phi(i), lexicographically first witness.
  std::optional<std::vector<int>> bijection;
};

/// Decides A ⪯ B: some bijection of [k] maps every member of A into the
/// downset generated by B. Exhaustive over bijections with prefix pruning.
PrecedesResult precedes(const SetSystem& a, const SetSystem& b);

/// True when every member of `a` lies inside a member of `b` (identity map).
bool covered_by(const SetSystem& a, const SetSystem& b);

}  // namespace quasihyper
