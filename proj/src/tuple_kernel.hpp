#pragma once

// Enumeration of distinct k-tuples supported by a directed family. The first
// k-1 coordinates are placed one at a time (in a caller-chosen coordinate
// order); the last coordinate is never enumerated but returned as a bitset
// of candidates, the AND of the member rows that contain it.

#include <algorithm>
#include <memory>
#include <optional>
#include <thread>
#include <vector>

#include "quasihyper/error.hpp"
#include "quasihyper/family.hpp"

namespace quasihyper::detail {

inline TupleSet move_coordinate_last(const TupleSet& s, std::size_t which) {
  TupleSet out(s.arity(), s.n());
  Tuple t(static_cast<std::size_t>(s.arity()));
  s.for_each([&](std::span<const Vertex> u) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (i != which) t[r++] = u[i];
    t.back() = u[which];
    out.insert(t);
  });
  return out;
}

class TupleKernel {
 public:
  /// perm[p] is the (0-based) coordinate placed at position p. Member `skip`
  /// is ignored (treated as complete).
  TupleKernel(const DirectedFamily& g, std::vector<int> perm, std::optional<std::size_t> skip = std::nullopt)
      : n_(g.n()), k_(static_cast<int>(perm.size())), perm_(std::move(perm)), closing_(perm_.size()) {
    if (k_ != g.sets().k()) throw InvalidArgument("coordinate order has the wrong length");
    std::vector<int> pos(perm_.size());
    for (std::size_t p = 0; p < perm_.size(); ++p) pos[static_cast<std::size_t>(perm_[p])] = static_cast<int>(p);
    row_words_ = words_for(n_);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (skip && *skip == j) continue;
      Subset q = g.sets()[j];
      if (q == 0) {
        if (!g.member(j).contains({})) dead_ = true;
        continue;
      }
      Member m;
      std::vector<int> coords;
      for (int c = 0; c < k_; ++c)
        if (q & (Subset{1} << c)) coords.push_back(c);
      int close = 0;
      for (int c : coords) close = std::max(close, pos[static_cast<std::size_t>(c)]);
      int last_coord = perm_.back();
      if (close == k_ - 1) {
        std::size_t which = 0;
        for (std::size_t i = 0; i < coords.size(); ++i)
          if (coords[i] == last_coord) which = i;
        if (which + 1 != coords.size()) {
          owned_.push_back(std::make_unique<TupleSet>(move_coordinate_last(g.member(j), which)));
          m.set = owned_.back().get();
        } else {
          m.set = &g.member(j);
        }
        for (int c : coords)
          if (c != last_coord) m.positions.push_back(pos[static_cast<std::size_t>(c)]);
        last_.push_back(std::move(m));
      } else {
        m.set = &g.member(j);
        for (int c : coords) m.positions.push_back(pos[static_cast<std::size_t>(c)]);
        closing_[static_cast<std::size_t>(close)].push_back(std::move(m));
      }
    }
  }

  int k() const { return k_; }
  Vertex n() const { return n_; }
  const std::vector<int>& perm() const { return perm_; }

  /// Calls f(prefix, cand) for every supported prefix of k-1 distinct
  /// vertices (in position order) whose first entry is `first`. For k = 1 the
  /// single empty prefix is visited when first == 0.
  template <class F>
  void run_first(Vertex first, F&& f) const {
    if (dead_) return;
    Tuple prefix(static_cast<std::size_t>(k_ - 1));
    Bitset used(n_);
    if (k_ == 1) {
      if (first == 0) leaf(prefix, used, f);
      return;
    }
    prefix[0] = first;
    if (!closes_ok(0, prefix)) return;
    used.set(first);
    descend(1, prefix, used, f);
  }

  template <class F>
  void run(F&& f) const {
    Vertex limit = k_ == 1 ? 1 : n_;
    for (Vertex x = 0; x < limit; ++x) run_first(x, f);
  }

 private:
  struct Member {
    const TupleSet* set = nullptr;
    std::vector<int> positions;  // positions of the member coordinates (without the last one for `last_`)
  };

  bool closes_ok(std::size_t pos, const Tuple& prefix) const {
    Tuple t;
    for (const Member& m : closing_[pos]) {
      t.clear();
      for (int p : m.positions) t.push_back(prefix[static_cast<std::size_t>(p)]);
      if (!m.set->contains(t)) return false;
    }
    return true;
  }

  template <class F>
  void descend(std::size_t pos, Tuple& prefix, Bitset& used, F& f) const {
    if (pos + 1 == static_cast<std::size_t>(k_)) {
      leaf(prefix, used, f);
      return;
    }
    for (Vertex x = 0; x < n_; ++x) {
      if (used.test(x)) continue;
      prefix[pos] = x;
      if (!closes_ok(pos, prefix)) continue;
      used.set(x);
      descend(pos + 1, prefix, used, f);
      used.reset(x);
    }
  }

  template <class F>
  void leaf(const Tuple& prefix, const Bitset& used, F& f) const {
    if (n_ == 0) return;
    std::vector<Word> cand(row_words_, ~Word{0});
    if (n_ % 64 != 0) cand.back() = (Word{1} << (n_ % 64)) - 1;
    Tuple t;
    for (const Member& m : last_) {
      t.clear();
      for (int p : m.positions) t.push_back(prefix[static_cast<std::size_t>(p)]);
      auto row = m.set->row(t);
      for (std::size_t w = 0; w < row_words_; ++w) cand[w] &= row[w];
    }
    auto u = used.words();
    for (std::size_t w = 0; w < row_words_; ++w) cand[w] &= ~u[w];
    f(std::span<const Vertex>(prefix), std::span<const Word>(cand));
  }

  Vertex n_;
  int k_;
  std::vector<int> perm_;
  std::size_t row_words_ = 1;
  bool dead_ = false;
  std::vector<std::vector<Member>> closing_;
  std::vector<Member> last_;
  std::vector<std::unique_ptr<TupleSet>> owned_;
};

/// Runs body(x, worker) for x in [0, count) split round-robin over threads.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t x = 0; x < count; ++x) body(x, 0U);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t x = t; x < count; x += threads) body(x, t);
    });
  for (auto& th : pool) th.join();
}

}  // namespace quasihyper::detail
