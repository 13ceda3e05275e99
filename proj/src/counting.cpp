#include "quasihyper/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "quasihyper/error.hpp"

namespace quasihyper {

namespace {

using u128 = unsigned __int128;

struct Constraint {
  std::vector<std::size_t> other_positions;  // positions (in search order) of the remaining k-1 vertices
  bool must_be_edge;
};

// Backtracking over pattern vertices in a greedy connectivity order. Each
// pattern edge is checked at the position where its last vertex is placed,
// by intersecting the host link bitsets of the already-placed k-1 images.
class PatternSearch {
 public:
  PatternSearch(Vertex pattern_vertices, const std::vector<Tuple>& edges, const std::vector<bool>& polarity,
                const EdgeLookup& host, bool injective)
      : host_(host), injective_(injective), v_(pattern_vertices) {
    std::vector<std::vector<std::size_t>> incident(v_);
    for (std::size_t e = 0; e < edges.size(); ++e)
      for (Vertex x : edges[e]) incident[x].push_back(e);

    std::vector<bool> placed(v_, false);
    std::vector<std::size_t> pos(v_, 0);
    for (Vertex step = 0; step < v_; ++step) {
      Vertex best = 0;
      long best_score = -1;
      std::size_t best_deg = 0;
      for (Vertex x = 0; x < v_; ++x) {
        if (placed[x]) continue;
        long score = 0;
        for (std::size_t e : incident[x])
          score += std::any_of(edges[e].begin(), edges[e].end(), [&](Vertex y) { return y != x && placed[y]; });
        if (score > best_score || (score == best_score && incident[x].size() > best_deg)) {
          best = x;
          best_score = score;
          best_deg = incident[x].size();
        }
      }
      placed[best] = true;
      pos[best] = order_.size();
      order_.push_back(best);
    }

    closing_.resize(v_);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      std::size_t last = 0;
      for (Vertex x : edges[e]) last = std::max(last, pos[x]);
      Constraint c{{}, polarity[e]};
      bool repeated_last = false;
      for (Vertex x : edges[e]) {
        if (pos[x] == last) {
          if (repeated_last) throw InvalidArgument("pattern edge repeats a vertex");
          repeated_last = true;
          continue;
        }
        c.other_positions.push_back(pos[x]);
      }
      closing_[last].push_back(std::move(c));
    }
  }

  u128 count(unsigned threads) const {
    if (v_ == 0) return 1;
    Vertex n = host_.n();
    std::vector<u128> per_image(n, 0);
    auto worker = [&](unsigned id) {
      std::vector<Vertex> images(v_);
      Bitset used(n);
      for (Vertex x = id; x < n; x += threads) {
        if (!admissible_first(x)) continue;
        images[0] = x;
        if (injective_) used.set(x);
        per_image[x] = v_ == 1 ? 1 : descend(1, images, used);
        if (injective_) used.reset(x);
      }
    };
    threads = std::max(1U, std::min<unsigned>(threads, n));
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
      for (auto& t : pool) t.join();
    }
    u128 total = 0;
    for (u128 c : per_image) total += c;
    return total;
  }

 private:
  bool admissible_first(Vertex x) const {
    // constraints closing at position 0 are single-vertex edges (k = 1)
    for (const Constraint& c : closing_[0]) {
      Vertex t[1] = {x};
      if (host_.contains(t) != c.must_be_edge) return false;
    }
    return true;
  }

  u128 descend(std::size_t depth, std::vector<Vertex>& images, Bitset& used) const {
    std::size_t words = host_.row_words();
    std::vector<Word> cand(words, ~Word{0});
    if (host_.n() % 64 != 0) cand.back() = (Word{1} << (host_.n() % 64)) - 1;
    Tuple prefix;
    for (const Constraint& c : closing_[depth]) {
      prefix.clear();
      for (std::size_t p : c.other_positions) prefix.push_back(images[p]);
      auto row = host_.link(prefix);
      if (c.must_be_edge)
        for (std::size_t w = 0; w < words; ++w) cand[w] &= row[w];
      else
        for (std::size_t w = 0; w < words; ++w) cand[w] &= ~row[w];
    }
    if (injective_) {
      auto u = used.words();
      for (std::size_t w = 0; w < words; ++w) cand[w] &= ~u[w];
    }
    if (depth + 1 == v_) {
      u128 c = 0;
      for (Word w : cand) c += static_cast<u128>(std::popcount(w));
      return c;
    }
    u128 total = 0;
    for_each_set_bit(std::span<const Word>(cand), [&](std::size_t x) {
      images[depth] = static_cast<Vertex>(x);
      if (injective_) used.set(x);
      total += descend(depth + 1, images, used);
      if (injective_) used.reset(x);
    });
    return total;
  }

  const EdgeLookup& host_;
  bool injective_;
  Vertex v_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Constraint>> closing_;
};

void require_same_k(const Hypergraph& f, const Hypergraph& h) {
  if (f.k() != h.k()) throw InvalidArgument("pattern and host have different uniformity");
}

mpz_class run_search(Vertex v, const std::vector<Tuple>& edges, const std::vector<bool>& polarity, const Hypergraph& h,
                     bool injective, const CountOptions& opts) {
  if (injective && v > h.n()) return 0;
  EdgeLookup lookup(h);
  PatternSearch search(v, edges, polarity, lookup, injective);
  return to_mpz(static_cast<__int128>(search.count(opts.threads)));
}

}  // namespace

std::vector<std::vector<Vertex>> components(const Hypergraph& f) {
  std::vector<Vertex> parent(f.n());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < f.edge_count(); ++i) {
    auto e = f.edge(i);
    for (std::size_t j = 1; j < e.size(); ++j) parent[find(e[j])] = find(e[0]);
  }
  std::vector<std::vector<Vertex>> out;
  std::vector<long> slot(f.n(), -1);
  for (Vertex x = 0; x < f.n(); ++x) {
    Vertex r = find(x);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(x);
  }
  return out;
}

mpz_class hom_count(const Hypergraph& f, const Hypergraph& h, const CountOptions& opts) {
  require_same_k(f, h);
  mpz_class total = 1;
  for (const auto& comp : components(f)) {
    std::vector<Vertex> local(f.n(), 0);
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<Vertex>(i);
    std::vector<Tuple> edges;
    for (std::size_t i = 0; i < f.edge_count(); ++i) {
      auto e = f.edge(i);
      if (std::find(comp.begin(), comp.end(), e[0]) == comp.end()) continue;
      Tuple t;
      for (Vertex x : e) t.push_back(local[x]);
      edges.push_back(std::move(t));
    }
    total *= run_search(static_cast<Vertex>(comp.size()), edges, std::vector<bool>(edges.size(), true), h, false, opts);
    if (total == 0) break;
  }
  return total;
}

mpz_class labeled_copies(const Hypergraph& f, const Hypergraph& h, const CountOptions& opts) {
  require_same_k(f, h);
  auto edges = f.edges();
  return run_search(f.n(), edges, std::vector<bool>(edges.size(), true), h, true, opts);
}

namespace {

void require_spanning(const Hypergraph& sub, const Hypergraph& f) {
  if (sub.k() != f.k() || sub.n() != f.n()) throw InvalidArgument("F' must be a spanning subhypergraph of F");
  for (std::size_t i = 0; i < sub.edge_count(); ++i)
    if (!f.contains(sub.edge(i))) throw InvalidArgument("F' has an edge that is not in F");
}

}  // namespace

mpz_class induced_wrt_count(const Hypergraph& sub, const Hypergraph& f, const Hypergraph& h, const CountOptions& opts) {
  require_spanning(sub, f);
  require_same_k(f, h);
  auto edges = f.edges();
  std::vector<bool> polarity;
  for (const auto& e : edges) polarity.push_back(sub.contains(e));
  return run_search(f.n(), edges, polarity, h, true, opts);
}

mpz_class induced_wrt_count_inclusion_exclusion(const Hypergraph& sub, const Hypergraph& f, const Hypergraph& h,
                                                const CountOptions& opts) {
  require_spanning(sub, f);
  require_same_k(f, h);
  std::vector<Tuple> base = sub.edges(), extra;
  for (const auto& e : f.edges())
    if (!sub.contains(e)) extra.push_back(e);
  if (extra.size() > 24) throw BudgetExceeded("too many edges outside F' for inclusion-exclusion");
  mpz_class total = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << extra.size()); ++mask) {
    std::vector<Tuple> edges = base;
    for (std::size_t j = 0; j < extra.size(); ++j)
      if (mask & (std::uint32_t{1} << j)) edges.push_back(extra[j]);
    mpz_class copies = labeled_copies(Hypergraph(f.k(), f.n(), edges), h, opts);
    if (__builtin_popcount(mask) % 2 == 0)
      total += copies;
    else
      total -= copies;
  }
  return total;
}

ClReport cl_check(const Hypergraph& h, const Hypergraph& f, const Scalar& d, const CountOptions& opts) {
  ClReport r;
  r.copies = labeled_copies(f, h, opts);
  mpz_class nv = pow_z(h.n(), f.n());
  auto e = static_cast<unsigned long>(f.edge_count());
  if (d.is_exact()) {
    r.target = Scalar(mpq_class(pow_q(d.exact(), e) * nv));
    r.normalized_error = abs(Scalar(mpq_class(r.copies)) - r.target) / Scalar(mpq_class(nv));
  } else {
    double nvd = nv.get_d();
    double target = std::pow(d.to_double(), static_cast<double>(e)) * nvd;
    r.target = Scalar(target);
    r.normalized_error = Scalar(std::abs(r.copies.get_d() - target) / nvd);
  }
  return r;
}

}  // namespace quasihyper
