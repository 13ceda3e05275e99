#include "quasihyper/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quasihyper/error.hpp"
#include "quasihyper/random.hpp"
#include "quasihyper/statistics.hpp"

namespace quasihyper {

namespace {

// Increasing r-subsets of [0,n) in lexicographic order.
template <class F>
void for_each_subset(Vertex n, int r, F&& f) {
  if (r < 0 || static_cast<Vertex>(r) > n) return;
  Tuple t(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) t[static_cast<std::size_t>(j)] = static_cast<Vertex>(j);
  while (true) {
    f(std::span<const Vertex>(t));
    int j = r - 1;
    while (j >= 0 && t[static_cast<std::size_t>(j)] == n - static_cast<Vertex>(r - j)) --j;
    if (j < 0) return;
    ++t[static_cast<std::size_t>(j)];
    for (int m = j + 1; m < r; ++m) t[static_cast<std::size_t>(m)] = t[static_cast<std::size_t>(m - 1)] + 1;
  }
}

void require_level(const SetSystem& q, int i) {
  for (Subset s : q.members())
    if (subset_size(s) != i) throw InvalidArgument("every member of Q must have size i = " + std::to_string(i));
  if (q.contains_full_set()) throw InvalidArgument("[k] may not be a member of Q");
}

}  // namespace

ISetSystem::ISetSystem(Vertex n, int i, std::vector<Tuple> members, std::optional<std::uint64_t> seed)
    : n_(n), i_(i), members_(std::move(members)), seed_(seed), key_(n, i) {
  if (i < 1) throw InvalidArgument("i must be at least 1");
  if (static_cast<Vertex>(i) > n) throw InvalidArgument("n must be at least i");
  for (auto& m : members_) {
    if (m.size() != static_cast<std::size_t>(i)) throw InvalidArgument("member of the wrong size");
    std::sort(m.begin(), m.end());
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] >= n) throw InvalidArgument("member vertex out of range");
      if (j > 0 && m[j] == m[j - 1]) throw InvalidArgument("member with a repeated vertex");
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  lookup_.reserve(members_.size() * 2);
  for (const auto& m : members_) lookup_.insert(key_(m));
}

bool ISetSystem::contains(std::span<const Vertex> t) const {
  if (t.size() != static_cast<std::size_t>(i_)) return false;
  Tuple s(t.begin(), t.end());
  std::sort(s.begin(), s.end());
  for (std::size_t j = 1; j < s.size(); ++j)
    if (s[j] == s[j - 1]) return false;
  return lookup_.count(key_(s)) != 0;
}

ISetSystem random_iset_system(Vertex n, int i, std::uint64_t seed) {
  if (i < 1 || static_cast<Vertex>(i) > n) throw InvalidArgument("need 1 <= i <= n");
  auto rng = SeedPath(seed).child("iset").engine();
  std::vector<Tuple> members;
  for_each_subset(n, i, [&](std::span<const Vertex> t) {
    if (rng() >> 63) members.emplace_back(t.begin(), t.end());
  });
  return ISetSystem(n, i, std::move(members), seed);
}

Hypergraph parity_hypergraph(const ISetSystem& b, const SetSystem& q) {
  require_level(q, b.i());
  int k = q.k();
  std::vector<Tuple> edges;
  Tuple proj;
  for_each_subset(b.n(), k, [&](std::span<const Vertex> v) {
    int parity = 0;
    for (Subset s : q.members()) {
      proj = project(v, s);
      parity ^= b.contains(proj) ? 1 : 0;
    }
    if (parity) edges.emplace_back(v.begin(), v.end());
  });
  return Hypergraph(k, b.n(), edges);
}

DirectedFamily failing_witness_family(const ISetSystem& b, const SetSystem& q) {
  require_level(q, b.i());
  std::vector<TupleSet> members;
  for (std::size_t j = 0; j < q.size(); ++j) {
    TupleSet set(b.i(), b.n(), true);
    for (const auto& m : b.members()) {
      Tuple t = m;
      do set.erase(t);
      while (std::next_permutation(t.begin(), t.end()));
    }
    members.push_back(std::move(set));
  }
  return DirectedFamily(q, b.n(), std::move(members));
}

Hypergraph random_hypergraph(Vertex n, int k, const mpq_class& p, std::uint64_t seed) {
  if (p < 0 || p > 1) throw InvalidArgument("p must lie in [0,1]");
  if (k < 1 || k > kMaxGround) throw InvalidArgument("k out of range");
  auto rng = SeedPath(seed).child("hypergraph").engine();
  std::vector<Tuple> edges;
  for_each_subset(n, k, [&](std::span<const Vertex> t) {
    if (bernoulli(rng, p)) edges.emplace_back(t.begin(), t.end());
  });
  return Hypergraph(k, n, edges);
}

bool SeparationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SeparationCheck& c) { return c.passed; });
}

namespace {

// Members of U chosen as "not in B", "in B" or complete; the building blocks
// of the failing family restricted to U.
DirectedFamily b_aware_family(const ISetSystem& b, const SetSystem& u, std::mt19937_64& rng) {
  std::vector<TupleSet> members;
  for (std::size_t j = 0; j < u.size(); ++j) {
    int kind = static_cast<int>(rng() % 3);
    TupleSet set(b.i(), b.n(), kind != 1);
    if (kind != 2) {
      for (const auto& m : b.members()) {
        Tuple t = m;
        do kind == 0 ? set.erase(t) : set.insert(t);
        while (std::next_permutation(t.begin(), t.end()));
      }
    }
    members.push_back(std::move(set));
  }
  return DirectedFamily(u, b.n(), std::move(members));
}

}  // namespace

SeparationReport verify_separation(Vertex n, int i, const SetSystem& q, const SetSystem& u, std::uint64_t seed,
                                   const SeparationOptions& opts) {
  if (q.k() != u.k()) throw InvalidArgument("Q and U have different k");
  require_level(q, i);
  for (Subset s : u.members())
    if (!q.contains(s)) throw InvalidArgument("U must be a subfamily of Q");
  if (u.size() >= q.size()) throw InvalidArgument("U must be a proper subfamily of Q");
  int k = q.k();
  if (i >= k) throw InvalidArgument("i must be smaller than k");

  SeparationReport r;
  r.n = n;
  r.k = k;
  r.i = i;
  r.seed = seed;
  if (q.size() - u.size() != 1) r.warnings.push_back("Q and U differ by more than one set; the analysed case is one");
  bool full_level = q.size() == static_cast<std::size_t>(binomial(k, i).get_ui());
  if (!full_level)
    r.warnings.push_back("Q is not all of binom([k],i); exact emptiness is guaranteed only for increasing tuples");

  SeedPath root(seed);
  ISetSystem b = random_iset_system(n, i, root.child("B").seed());
  r.b_size = b.size();
  Hypergraph h = parity_hypergraph(b, q);
  DirectedFamily f = failing_witness_family(b, q);
  mpq_class half(1, 2);
  double nk = std::pow(static_cast<double>(n), k);

  r.density = density(h).exact();
  {
    SeparationCheck c{"density", "sampled", false, r.density.get_d(), opts.eta, ""};
    c.passed = std::abs(c.measured - 0.5) <= opts.eta;
    c.detail = "|d(H) - 1/2| <= eta";
    r.checks.push_back(c);
  }

  StatOptions sopts;
  sopts.threads = opts.threads;
  DiscValue dv = disc_value(h, Scalar(half), f, sopts);
  r.intersection = dv.hits;
  r.supported = dv.supported;
  r.disc = dv.value.exact();
  r.delta = mpq_class(1, 1) / mpq_class(pow_z(2, q.size() + 3));
  {
    SeparationCheck c{"intersection_empty", "certified", dv.hits == 0, dv.hits.get_d(), 0, ""};
    c.detail = "exact count of supported tuples of F that are edges of H, by full enumeration";
    r.checks.push_back(c);
  }
  {
    double target = std::pow(2.0, -static_cast<double>(q.size()));
    SeparationCheck c{"supported_density", "sampled", false, dv.supported.get_d() / nk, target, ""};
    c.passed = std::abs(c.measured - target) <= opts.eta;
    c.detail = "|K_k(F)| / n^k within eta of 2^-|Q|";
    r.checks.push_back(c);
  }
  {
    SeparationCheck c{"disc_q_violation", "certified", false, std::abs(r.disc.get_d()) / nk, r.delta.get_d(), ""};
    c.passed = abs(r.disc) > r.delta * mpq_class(pow_z(n, static_cast<unsigned long>(k)));
    c.detail = "|disc(H, 1/2, F)| / n^k > delta = 2^(-|Q|-3), exact witness value";
    r.checks.push_back(c);
  }

  SeedPath wroot = root.child("u-witness");
  for (std::size_t w = 0; w < opts.witnesses; ++w) {
    SeedPath sp = wroot.child(w);
    auto rng = sp.engine();
    DirectedFamily fam = DirectedFamily::empty(u, n);
    if (w % 2 == 0) {
      WeightEnsemble ens = WeightEnsemble::random(u, n, sp.child("weights").seed(), 1 << 8);
      std::vector<bool> signs(u.size());
      for (std::size_t j = 0; j < u.size(); ++j) signs[j] = (rng() & 1U) != 0;
      fam = round_weights_to_family(ens, sp.child("round").seed(), signs);
    } else {
      fam = b_aware_family(b, u, rng);
    }
    mpq_class value = disc_value(h, Scalar(half), fam, sopts).value.exact();
    auto consider = [&](const mpq_class& v, const std::string& tag) {
      double norm = std::abs(v.get_d()) / nk;
      if (norm > r.max_u_disc || r.max_u_witness.empty()) {
        r.max_u_disc = std::max(r.max_u_disc, norm);
        r.max_u_witness = sp.path() + tag;
      }
    };
    consider(value, "");
    if ((w / 2) % 2 == 1) {
      bool positive = value >= 0;
      for (std::size_t j = 0; j < u.size(); ++j) ascent_step(h, half, fam, j, positive);
      consider(disc_value(h, Scalar(half), fam, sopts).value.exact(), "/ascent");
    }
  }
  {
    SeparationCheck c{"disc_u_sampled", "sampled", r.max_u_disc <= opts.tolerance, r.max_u_disc, opts.tolerance, ""};
    std::ostringstream os;
    os << opts.witnesses << " sampled U-witnesses (rounded random ensembles and B-aware families, half with one ascent round); worst " << r.max_u_witness;
    c.detail = os.str();
    r.checks.push_back(c);
  }
  return r;
}

}  // namespace quasihyper
