#include "quasihyper/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "quasihyper/error.hpp"

namespace quasihyper::oracle {

namespace {

void check_limit(Vertex n, std::size_t v, std::uint64_t limit) {
  if (pow_z(n, v) > mpz_class(static_cast<double>(limit))) throw BudgetExceeded("oracle enumeration too large");
}

// Calls f(map) for every map [0,v) -> [0,n).
template <class F>
void for_each_map(Vertex n, std::size_t v, F&& f) {
  std::vector<Vertex> phi(v, 0);
  if (v == 0) {
    f(phi);
    return;
  }
  if (n == 0) return;
  while (true) {
    f(phi);
    std::size_t c = v;
    while (c > 0) {
      if (++phi[c - 1] < n) break;
      phi[c - 1] = 0;
      --c;
    }
    if (c == 0) return;
  }
}

bool injective(const std::vector<Vertex>& phi) {
  std::vector<Vertex> s = phi;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

Tuple image(const Hypergraph& f, std::size_t e, const std::vector<Vertex>& phi) {
  Tuple t;
  for (Vertex x : f.edge(e)) t.push_back(phi[x]);
  return t;
}

bool is_hom(const Hypergraph& f, const Hypergraph& h, const std::vector<Vertex>& phi) {
  for (std::size_t e = 0; e < f.edge_count(); ++e)
    if (!h.contains(image(f, e, phi))) return false;
  return true;
}

}  // namespace

mpz_class hom_count(const Hypergraph& f, const Hypergraph& h, std::uint64_t limit) {
  check_limit(h.n(), f.n(), limit);
  mpz_class c = 0;
  for_each_map(h.n(), f.n(), [&](const std::vector<Vertex>& phi) {
    if (is_hom(f, h, phi)) ++c;
  });
  return c;
}

mpz_class labeled_copies(const Hypergraph& f, const Hypergraph& h, std::uint64_t limit) {
  check_limit(h.n(), f.n(), limit);
  mpz_class c = 0;
  for_each_map(h.n(), f.n(), [&](const std::vector<Vertex>& phi) {
    if (injective(phi) && is_hom(f, h, phi)) ++c;
  });
  return c;
}

mpz_class induced_count(const Hypergraph& sub, const Hypergraph& f, const Hypergraph& h, std::uint64_t limit) {
  check_limit(h.n(), f.n(), limit);
  mpz_class c = 0;
  for_each_map(h.n(), f.n(), [&](const std::vector<Vertex>& phi) {
    if (!injective(phi)) return;
    for (std::size_t e = 0; e < f.edge_count(); ++e)
      if (h.contains(image(f, e, phi)) != sub.contains(f.edge(e))) return;
    ++c;
  });
  return c;
}

namespace {

bool supported_by(const DirectedFamily& g, const std::vector<Vertex>& v) {
  for (std::size_t j = 0; j < g.size(); ++j) {
    Tuple p;
    for (int c = 1; c <= g.sets().k(); ++c)
      if (subset_has(g.sets()[j], c)) p.push_back(v[static_cast<std::size_t>(c - 1)]);
    if (!g.member(j).contains(p)) return false;
  }
  return true;
}

}  // namespace

mpz_class supported_tuples(const DirectedFamily& g) {
  mpz_class c = 0;
  for_each_map(g.n(), static_cast<std::size_t>(g.sets().k()), [&](const std::vector<Vertex>& v) {
    if (injective(v) && supported_by(g, v)) ++c;
  });
  return c;
}

mpz_class degenerate_supported(const DirectedFamily& g) {
  mpz_class c = 0;
  for_each_map(g.n(), static_cast<std::size_t>(g.sets().k()), [&](const std::vector<Vertex>& v) {
    if (injective(v)) return;
    for (std::size_t j = 0; j < g.size(); ++j) {
      Tuple p;
      for (int e : subset_elements(g.sets()[j])) p.push_back(v[static_cast<std::size_t>(e - 1)]);
      std::vector<Vertex> sp(p.begin(), p.end());
      if (!injective(sp) || !g.member(j).contains(p)) return;
    }
    ++c;
  });
  return c;
}

mpq_class disc(const Hypergraph& h, const mpq_class& d, const DirectedFamily& g) {
  mpq_class total = 0;
  for_each_map(g.n(), static_cast<std::size_t>(g.sets().k()), [&](const std::vector<Vertex>& v) {
    if (!injective(v) || !supported_by(g, v)) return;
    total += (h.contains(v) ? mpq_class(1) : mpq_class(0)) - d;
  });
  return total;
}

mpq_class wdisc(const Hypergraph& h, const mpq_class& d, const WeightEnsemble& w, bool distinct_only) {
  mpq_class total = 0;
  for_each_map(w.n(), static_cast<std::size_t>(w.sets().k()), [&](const std::vector<Vertex>& v) {
    if (distinct_only && !injective(v)) return;
    mpq_class term = (h.contains(v) ? mpq_class(1) : mpq_class(0)) - d;
    for (std::size_t j = 0; j < w.size(); ++j) {
      Tuple p;
      for (int e : subset_elements(w.sets()[j])) p.push_back(v[static_cast<std::size_t>(e - 1)]);
      term *= w.function(j).value(p);
    }
    total += term;
  });
  return total;
}

Hypergraph mq_direct(const SetSystem& q) {
  if (q.contains_full_set()) throw InvalidArgument("[k] may not be a member of Q");
  int k = q.k();
  std::size_t l = q.size();
  if (l > 20) throw BudgetExceeded("too many members");
  std::vector<std::uint32_t> avoid(static_cast<std::size_t>(k), 0);
  std::vector<Vertex> offset(static_cast<std::size_t>(k) + 1, 0);
  for (int c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < l; ++j)
      if (!subset_has(q[j], c + 1)) avoid[static_cast<std::size_t>(c)] |= 1U << j;
    offset[static_cast<std::size_t>(c) + 1] =
        offset[static_cast<std::size_t>(c)] + (Vertex{1} << __builtin_popcount(avoid[static_cast<std::size_t>(c)]));
  }
  std::vector<Tuple> edges;
  for (std::uint32_t a = 0; a < (1U << l); ++a) {
    Tuple e;
    for (int c = 0; c < k; ++c) {
      std::uint32_t mask = avoid[static_cast<std::size_t>(c)], compressed = 0;
      int out = 0;
      for (std::size_t j = 0; j < l; ++j)
        if (mask & (1U << j)) compressed |= ((a >> j) & 1U) << out++;
      e.push_back(offset[static_cast<std::size_t>(c)] + compressed);
    }
    edges.push_back(e);
  }
  return Hypergraph(k, offset.back(), edges);
}

mpq_class dev(const Hypergraph& h, const mpq_class& d, const SetSystem& q, MapSet maps, std::uint64_t limit) {
  Hypergraph m = mq_direct(q);
  check_limit(h.n(), m.n(), limit);
  mpq_class total = 0;
  for_each_map(h.n(), m.n(), [&](const std::vector<Vertex>& phi) {
    bool inj = injective(phi);
    if ((maps == MapSet::injective && !inj) || (maps == MapSet::non_injective && inj)) return;
    mpq_class term = 1;
    for (std::size_t e = 0; e < m.edge_count(); ++e) term *= (h.contains(image(m, e, phi)) ? mpq_class(1) : mpq_class(0)) - d;
    total += term;
  });
  return total;
}

namespace {

bool orders_ok(const std::vector<Tuple>& placed, const SetSystem& q) {
  const Tuple& fi = placed.back();
  for (std::size_t h = 0; h + 1 < placed.size(); ++h) {
    Subset idx = 0;
    for (std::size_t r = 0; r < fi.size(); ++r)
      if (std::find(placed[h].begin(), placed[h].end(), fi[r]) != placed[h].end()) idx |= Subset{1} << r;
    bool covered = false;
    for (Subset s : q.members()) covered = covered || subset_of(idx, s);
    if (!covered) return false;
  }
  return true;
}

bool assign(const Hypergraph& f, const SetSystem& q, const std::vector<std::size_t>& order, std::vector<Tuple>& placed) {
  if (placed.size() == order.size()) return true;
  auto e = f.edge(order[placed.size()]);
  Tuple t(e.begin(), e.end());
  std::sort(t.begin(), t.end());
  do {
    placed.push_back(t);
    if (orders_ok(placed, q) && assign(f, q, order, placed)) return true;
    placed.pop_back();
  } while (std::next_permutation(t.begin(), t.end()));
  return false;
}

}  // namespace

bool q_simple(const Hypergraph& f, const SetSystem& q) {
  std::vector<std::size_t> order(f.edge_count());
  std::iota(order.begin(), order.end(), 0);
  do {
    std::vector<Tuple> placed;
    if (assign(f, q, order, placed)) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

bool precedes(const SetSystem& a, const SetSystem& b) {
  if (a.k() != b.k()) throw InvalidArgument("mismatched k");
  std::vector<int> phi(static_cast<std::size_t>(a.k()));
  std::iota(phi.begin(), phi.end(), 1);
  do {
    bool ok = true;
    for (Subset s : a.members()) {
      Subset img = 0;
      for (int e : subset_elements(s)) img |= Subset{1} << (phi[static_cast<std::size_t>(e - 1)] - 1);
      bool inside = false;
      for (Subset t : b.members()) inside = inside || subset_of(img, t);
      ok = ok && inside;
    }
    if (ok) return true;
  } while (std::next_permutation(phi.begin(), phi.end()));
  return false;
}

bool parity_edge(const ISetSystem& b, const SetSystem& q, std::span<const Vertex> sorted_set) {
  int count = 0;
  for (Subset s : q.members()) {
    Tuple p;
    for (int e : subset_elements(s)) p.push_back(sorted_set[static_cast<std::size_t>(e - 1)]);
    if (b.contains(p)) ++count;
  }
  return count % 2 == 1;
}

ImplicationConstants implication_constants(const SetSystem& q, const mpq_class& delta, const Hypergraph* f) {
  ImplicationConstants c;
  c.delta = delta;
  c.l = q.size();
  c.mq_edges = 1;
  for (std::size_t j = 0; j < c.l; ++j) c.mq_edges *= 2;
  mpq_class half_power = 1;
  for (std::size_t j = 0; j <= c.l; ++j) half_power /= 2;
  c.disc_to_wdisc = delta * half_power;
  if (f != nullptr) {
    c.f_edges = f->edge_count();
    mpz_class p = 1;
    for (std::size_t j = 0; j < f->edge_count(); ++j) p *= 2;
    c.wdisc_to_cl = delta / (2 * mpq_class(p - 1));
  }
  mpq_class quarter_power = 1;
  for (std::uint64_t j = 0; j < c.mq_edges; ++j) quarter_power /= 4;
  c.cl_to_dev = delta * quarter_power;
  mpq_class power = 1;
  for (std::uint64_t j = 0; j < c.mq_edges; ++j) power *= delta;
  c.dev_to_wdisc = power;
  return c;
}

}  // namespace quasihyper::oracle
