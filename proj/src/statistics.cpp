#include "quasihyper/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "quasihyper/counting.hpp"
#include "quasihyper/doubling.hpp"
#include "quasihyper/error.hpp"
#include "tuple_kernel.hpp"

namespace quasihyper {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

std::vector<int> identity_order(int k) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

void require_shapes(const Hypergraph& h, const SetSystem& q, Vertex n) {
  if (h.k() != q.k()) throw InvalidArgument("set system and hypergraph have different k");
  if (h.n() != n) throw InvalidArgument("family and hypergraph have different vertex counts");
}

// Odometer over V^m in row-major order.
template <class F>
void for_each_tuple(Vertex n, int m, F&& f) {
  Tuple t(static_cast<std::size_t>(m), 0);
  if (m == 0) {
    f(std::span<const Vertex>(t), std::uint64_t{0});
    return;
  }
  if (n == 0) return;
  std::uint64_t idx = 0;
  while (true) {
    f(std::span<const Vertex>(t), idx);
    ++idx;
    int c = m - 1;
    while (c >= 0 && ++t[static_cast<std::size_t>(c)] == n) t[static_cast<std::size_t>(c--)] = 0;
    if (c < 0) break;
  }
}

bool exact_mode(const Scalar& d, const StatOptions& opts) {
  if (opts.mode == EvalMode::floating) return false;
  if (!d.is_exact()) throw InvalidArgument("exact evaluation needs a rational density");
  return true;
}

bool bit(std::span<const Word> row, Vertex x) { return (row[x / 64] >> (x % 64)) & 1U; }

struct Centering {
  i128 num = 0;  // N
  i128 den = 1;  // D
};

Centering centering(const mpq_class& d) {
  if (mpz_fits_slong_p(d.get_num_mpz_t()) == 0 || mpz_fits_slong_p(d.get_den_mpz_t()) == 0)
    throw BudgetExceeded("density " + d.get_str() + " has too many digits for the integer kernels");
  return {d.get_num().get_si(), d.get_den().get_si()};
}

}  // namespace

mpz_class supported_tuples(const DirectedFamily& g) {
  detail::TupleKernel kern(g, identity_order(g.sets().k()));
  u128 total = 0;
  kern.run([&](std::span<const Vertex>, std::span<const Word> cand) {
    for (Word w : cand) total += static_cast<u128>(std::popcount(w));
  });
  return to_mpz(static_cast<i128>(total));
}

void for_each_supported_tuple(const DirectedFamily& g, const std::function<void(std::span<const Vertex>)>& f) {
  int k = g.sets().k();
  detail::TupleKernel kern(g, identity_order(k));
  Tuple t(static_cast<std::size_t>(k));
  kern.run([&](std::span<const Vertex> prefix, std::span<const Word> cand) {
    std::copy(prefix.begin(), prefix.end(), t.begin());
    for_each_set_bit(cand, [&](std::size_t x) {
      t.back() = static_cast<Vertex>(x);
      f(t);
    });
  });
}

mpz_class degenerate_supported_count(const DirectedFamily& g) {
  int k = g.sets().k();
  tuple_space(g.n(), k, std::uint64_t{1} << 32);
  mpz_class count = 0;
  Tuple proj;
  for_each_tuple(g.n(), k, [&](std::span<const Vertex> v, std::uint64_t) {
    if (!has_repeat(v)) return;
    for (std::size_t j = 0; j < g.size(); ++j) {
      proj = project(v, g.sets()[j]);
      if (has_repeat(proj) || !g.member(j).contains(proj)) return;
    }
    ++count;
  });
  return count;
}

DiscValue disc_value(const Hypergraph& h, const Scalar& d, const DirectedFamily& g, const StatOptions& opts) {
  require_shapes(h, g.sets(), g.n());
  bool exact = exact_mode(d, opts);
  EdgeLookup lookup(h);
  int k = h.k();
  detail::TupleKernel kern(g, identity_order(k));
  std::size_t firsts = k == 1 ? 1 : h.n();
  std::vector<u128> hits(firsts, 0), sup(firsts, 0);
  detail::parallel_for(firsts, opts.threads, [&](std::size_t x, unsigned) {
    kern.run_first(static_cast<Vertex>(x), [&](std::span<const Vertex> prefix, std::span<const Word> cand) {
      auto link = lookup.link(prefix);
      for (std::size_t w = 0; w < cand.size(); ++w) {
        sup[x] += static_cast<u128>(std::popcount(cand[w]));
        hits[x] += static_cast<u128>(std::popcount(cand[w] & link[w]));
      }
    });
  });
  u128 th = 0, ts = 0;
  for (std::size_t x = 0; x < firsts; ++x) {
    th += hits[x];
    ts += sup[x];
  }
  DiscValue r;
  r.hits = to_mpz(static_cast<i128>(th));
  r.supported = to_mpz(static_cast<i128>(ts));
  if (exact)
    r.value = Scalar(mpq_class(r.hits - d.exact() * r.supported));
  else
    r.value = Scalar(r.hits.get_d() - d.to_double() * r.supported.get_d());
  return r;
}

namespace {

// Shared evaluator of sum_v (1_E(v) - d) prod_Q w_Q(v_Q) over V^[k] (or over
// distinct tuples). T is the accumulator: i128 or mpz_class on scaled integer
// numerators, double in float mode.
template <class T>
class WeightedSum {
 public:
  WeightedSum(const Hypergraph& h, const WeightEnsemble& w, std::vector<std::vector<T>> tables, T g_edge, T g_non,
              bool distinct)
      : lookup_(h), k_(h.k()), n_(h.n()), tables_(std::move(tables)), g_edge_(g_edge), g_non_(g_non),
        distinct_(distinct), closing_(static_cast<std::size_t>(k_)) {
    constant_ = T(1);
    for (std::size_t j = 0; j < w.size(); ++j) {
      Subset q = w.sets()[j];
      if (q == 0) {
        constant_ = constant_ * tables_[j][0];
        continue;
      }
      std::vector<int> coords = subset_elements(q);
      for (int& c : coords) --c;
      closing_[static_cast<std::size_t>(coords.back())].push_back({j, coords});
    }
  }

  T total(unsigned threads) const {
    std::size_t firsts = k_ == 1 ? 1 : n_;
    std::vector<T> per(firsts, T(0));
    detail::parallel_for(firsts, threads, [&](std::size_t x, unsigned) {
      Tuple v(static_cast<std::size_t>(k_));
      if (k_ == 1) {
        per[x] = last(v, T(1));
        return;
      }
      v[0] = static_cast<Vertex>(x);
      T f = factor(0, v);
      if (f == T(0)) return;
      per[x] = descend(1, v, f);
    });
    T sum(0);
    if constexpr (std::is_same_v<T, double>) {
      CompensatedSum c;
      for (double p : per) c.add(p);
      sum = c.value();
    } else {
      for (const T& p : per) sum += p;
    }
    return sum * constant_;
  }

 private:
  struct Member {
    std::size_t index;
    std::vector<int> coords;
  };

  std::size_t flat(const Member& m, const Tuple& v) const {
    std::size_t idx = 0;
    for (int c : m.coords) idx = idx * n_ + v[static_cast<std::size_t>(c)];
    return idx;
  }

  T factor(int pos, const Tuple& v) const {
    T f(1);
    for (const Member& m : closing_[static_cast<std::size_t>(pos)]) {
      f = f * tables_[m.index][flat(m, v)];
      if (f == T(0)) break;
    }
    return f;
  }

  bool repeats_before(const Tuple& v, int pos) const {
    for (int i = 0; i < pos; ++i)
      if (v[static_cast<std::size_t>(i)] == v[static_cast<std::size_t>(pos)]) return true;
    return false;
  }

  T descend(int pos, Tuple& v, const T& partial) const {
    if (pos == k_ - 1) return last(v, partial);
    T sum(0);
    for (Vertex x = 0; x < n_; ++x) {
      v[static_cast<std::size_t>(pos)] = x;
      if (distinct_ && repeats_before(v, pos)) continue;
      T f = factor(pos, v);
      if (f == T(0)) continue;
      sum += descend(pos + 1, v, partial * f);
    }
    return sum;
  }

  T last(Tuple& v, const T& partial) const {
    int pos = k_ - 1;
    auto link = lookup_.link(std::span<const Vertex>(v.data(), static_cast<std::size_t>(pos)));
    T sum(0);
    for (Vertex x = 0; x < n_; ++x) {
      v[static_cast<std::size_t>(pos)] = x;
      if (distinct_ && repeats_before(v, pos)) continue;
      T f = factor(pos, v);
      if (f == T(0)) continue;
      sum += f * (bit(link, x) ? g_edge_ : g_non_);
    }
    return sum * partial;
  }

  EdgeLookup lookup_;
  int k_;
  Vertex n_;
  std::vector<std::vector<T>> tables_;
  T g_edge_, g_non_;
  bool distinct_;
  T constant_;
  std::vector<std::vector<Member>> closing_;
};

Scalar weighted_sum(const Hypergraph& h, const Scalar& d, const WeightEnsemble& w, const StatOptions& opts,
                    bool distinct) {
  require_shapes(h, w.sets(), w.n());
  if (!exact_mode(d, opts)) {
    std::vector<std::vector<double>> tables;
    for (std::size_t j = 0; j < w.size(); ++j) {
      auto num = w.function(j).numerator_table();
      double den = static_cast<double>(w.function(j).denominator());
      std::vector<double> t(num.size());
      for (std::size_t i = 0; i < num.size(); ++i) t[i] = static_cast<double>(num[i]) / den;
      tables.push_back(std::move(t));
    }
    double dd = d.to_double();
    WeightedSum<double> ws(h, w, std::move(tables), 1.0 - dd, -dd, distinct);
    return Scalar(ws.total(opts.threads));
  }
  const mpq_class& dq = d.exact();
  mpz_class scale = dq.get_den();
  double log_bound = std::log2(std::max(1.0, static_cast<double>(h.n()))) * h.k();
  log_bound += std::log2(std::max({1.0, std::abs(mpz_class(dq.get_den() - dq.get_num()).get_d()), std::abs(dq.get_num().get_d())}));
  std::vector<std::vector<std::int64_t>> num_tables;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const auto& f = w.function(j);
    num_tables.push_back(f.numerator_table());
    scale *= f.denominator();
    log_bound += std::log2(std::max<double>(1.0, static_cast<double>(f.max_abs_numerator())));
  }
  bool fits_small = log_bound < 120 && mpz_fits_slong_p(dq.get_num_mpz_t()) != 0 &&
                    mpz_fits_slong_p(dq.get_den_mpz_t()) != 0;
  mpz_class total;
  if (fits_small) {
    std::vector<std::vector<i128>> tables;
    for (auto& t : num_tables) tables.emplace_back(t.begin(), t.end());
    i128 den = dq.get_den().get_si(), num = dq.get_num().get_si();
    WeightedSum<i128> ws(h, w, std::move(tables), den - num, -num, distinct);
    total = to_mpz(ws.total(opts.threads));
  } else {
    std::vector<std::vector<mpz_class>> tables;
    for (auto& t : num_tables) {
      std::vector<mpz_class> z;
      z.reserve(t.size());
      for (auto x : t) z.emplace_back(static_cast<long>(x));
      tables.push_back(std::move(z));
    }
    WeightedSum<mpz_class> ws(h, w, std::move(tables), mpz_class(dq.get_den() - dq.get_num()),
                              mpz_class(-dq.get_num()), distinct);
    total = ws.total(opts.threads);
  }
  return Scalar(mpq_class(total, scale));
}

}  // namespace

Scalar wdisc_value(const Hypergraph& h, const Scalar& d, const WeightEnsemble& w, const StatOptions& opts) {
  return weighted_sum(h, d, w, opts, false);
}

Scalar wdisc_value_distinct(const Hypergraph& h, const Scalar& d, const WeightEnsemble& w, const StatOptions& opts) {
  return weighted_sum(h, d, w, opts, true);
}

Scalar dev_value(const Hypergraph& h, const Scalar& d, const SetSystem& q, DevMode mode, const StatOptions& opts) {
  if (h.k() != q.k()) throw InvalidArgument("set system and hypergraph have different k");
  bool exact = exact_mode(d, opts);
  Hypergraph m = build_mq(q).flatten();
  Vertex v = m.n();
  Vertex n = h.n();
  bool injective = mode == DevMode::injective;
  mpz_class maps = injective ? falling_factorial(n, v) : pow_z(n, v);
  if (!opts.force && maps > mpz_class(static_cast<double>(opts.map_budget)))
    throw BudgetExceeded("brute-force DEV would enumerate " + maps.get_str() + " maps");

  std::size_t e = m.edge_count();
  std::vector<std::vector<std::size_t>> closing(v);
  for (std::size_t i = 0; i < e; ++i) closing[m.edge(i).back()].push_back(i);
  EdgeLookup lookup(h);
  std::vector<u128> hist(e + 1, 0);
  if (v == 0 || (injective && v > n)) {
    hist[0] = v == 0 ? 1 : 0;
  } else {
    std::vector<Vertex> img(v);
    Bitset used(n);
    Tuple t(static_cast<std::size_t>(h.k()));
    std::vector<std::span<const Word>> rows;
    auto rec = [&](auto&& self, Vertex pos, std::size_t hits) -> void {
      if (pos + 1 == v) {
        rows.clear();
        for (std::size_t ei : closing[pos]) {
          auto edge = m.edge(ei);
          for (std::size_t r = 0; r + 1 < edge.size(); ++r) t[r] = img[edge[r]];
          rows.push_back(lookup.link(std::span<const Vertex>(t.data(), edge.size() - 1)));
        }
        for (Vertex x = 0; x < n; ++x) {
          if (injective && used.test(x)) continue;
          std::size_t c = hits;
          for (auto row : rows) c += bit(row, x);
          ++hist[c];
        }
        return;
      }
      for (Vertex x = 0; x < n; ++x) {
        if (injective && used.test(x)) continue;
        img[pos] = x;
        std::size_t c = hits;
        for (std::size_t ei : closing[pos]) {
          auto edge = m.edge(ei);
          for (std::size_t r = 0; r < edge.size(); ++r) t[r] = img[edge[r]];
          c += lookup.contains(t);
        }
        if (injective) used.set(x);
        self(self, pos + 1, c);
        if (injective) used.reset(x);
      }
    };
    rec(rec, 0, 0);
  }
  if (exact) {
    mpq_class one_minus = 1 - d.exact(), minus = -d.exact();
    mpq_class total = 0;
    for (std::size_t a = 0; a <= e; ++a)
      if (hist[a] != 0) total += mpq_class(to_mpz(static_cast<i128>(hist[a]))) * pow_q(one_minus, a) * pow_q(minus, e - a);
    return Scalar(total);
  }
  double dd = d.to_double();
  CompensatedSum total;
  for (std::size_t a = 0; a <= e; ++a)
    if (hist[a] != 0)
      total.add(static_cast<double>(hist[a]) * std::pow(1 - dd, static_cast<double>(a)) *
                std::pow(-dd, static_cast<double>(e - a)));
  return Scalar(total.value());
}

MinReport min_check(const Hypergraph& h, const Scalar& d, const Scalar& eps, const SetSystem& q,
                    const StatOptions& opts, double exact_limit) {
  if (h.k() != q.k()) throw InvalidArgument("set system and hypergraph have different k");
  MinReport r;
  MqSize size = mq_size(q);
  r.mq_vertices = size.vertices;
  r.mq_edges = size.edges;
  r.density = density(h);
  bool exact = opts.mode == EvalMode::exact && d.is_exact() && eps.is_exact();
  mpz_class nv = pow_z(h.n(), size.vertices);
  if (exact) {
    r.density_ok = r.density.exact() >= d.exact() - eps.exact();
    r.bound = Scalar(mpq_class((pow_q(d.exact(), size.edges) + eps.exact()) * nv));
  } else {
    r.density_ok = r.density.to_double() >= d.to_double() - eps.to_double();
    r.bound = Scalar((std::pow(d.to_double(), static_cast<double>(size.edges)) + eps.to_double()) * nv.get_d());
  }
  if (nv.get_d() <= exact_limit) {
    r.count = labeled_copies(build_mq(q).flatten(), h, CountOptions{opts.threads});
    r.method = "labeled_copies";
  } else {
    r.count = hom_mq(h, q);
    r.method = "hom_upper_bound";
  }
  r.count_ok = exact ? mpq_class(r.count) <= r.bound.exact() : r.count.get_d() <= r.bound.to_double();
  return r;
}

DirectedFamily round_weights_to_family(const WeightEnsemble& w, std::uint64_t seed, const std::vector<bool>& signs) {
  if (signs.size() != w.size()) throw InvalidArgument("one sign per member is required");
  SeedPath root(seed);
  std::vector<TupleSet> members;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const WeightFunction& f = w.function(j);
    auto rng = root.child(j).engine();
    std::uniform_int_distribution<std::uint64_t> unit(0, static_cast<std::uint64_t>(f.denominator()) - 1);
    TupleSet set(f.arity(), w.n());
    tuple_space(w.n(), f.arity(), kDenseWeightCap);
    for_each_tuple(w.n(), f.arity(), [&](std::span<const Vertex> t, std::uint64_t) {
      if (has_repeat(t)) return;
      std::int64_t num = f.numerator(t);
      if (!signs[j]) num = -num;
      if (num <= 0) return;
      if (num >= f.denominator() || unit(rng) < static_cast<std::uint64_t>(num)) set.insert(t);
    });
    members.push_back(std::move(set));
  }
  return DirectedFamily(w.sets(), w.n(), std::move(members));
}

WeightEnsemble sign_split(const WeightEnsemble& w, const std::vector<bool>& signs) {
  if (signs.size() != w.size()) throw InvalidArgument("one sign per member is required");
  std::vector<WeightFunction> fs;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const WeightFunction& f = w.function(j);
    WeightFunction::Table table;
    table.values.resize(tuple_space(w.n(), f.arity(), kDenseWeightCap));
    for_each_tuple(w.n(), f.arity(),
                   [&](std::span<const Vertex> t, std::uint64_t idx) { table.values[idx] = f.part(t, signs[j]); });
    fs.emplace_back(f.arity(), w.n(), std::move(table));
  }
  return WeightEnsemble(w.sets(), w.n(), std::move(fs));
}

std::vector<__int128> member_contributions(const Hypergraph& h, const mpq_class& d, const DirectedFamily& g,
                                           std::size_t j) {
  require_shapes(h, g.sets(), g.n());
  Centering c = centering(d);
  int k = h.k();
  Subset q = g.sets()[j];
  int arity = subset_size(q);
  Vertex n = g.n();
  std::vector<i128> out(tuple_space(n, arity, kDenseWeightCap), 0);
  std::vector<int> perm;
  for (int x = 0; x < k; ++x)
    if (q & (Subset{1} << x)) perm.push_back(x);
  for (int x = 0; x < k; ++x)
    if (!(q & (Subset{1} << x))) perm.push_back(x);
  detail::TupleKernel kern(g, perm, j);
  EdgeLookup lookup(h);
  kern.run([&](std::span<const Vertex> prefix, std::span<const Word> cand) {
    auto link = lookup.link(prefix);
    if (arity == k) {
      std::size_t base = 0;
      for (Vertex x : prefix) base = base * n + x;
      base *= n;
      for_each_set_bit(cand, [&](std::size_t x) { out[base + x] += bit(link, static_cast<Vertex>(x)) ? c.den - c.num : -c.num; });
      return;
    }
    std::size_t idx = 0;
    for (int p = 0; p < arity; ++p) idx = idx * n + prefix[static_cast<std::size_t>(p)];
    i128 hits = 0, sup = 0;
    for (std::size_t w = 0; w < cand.size(); ++w) {
      sup += std::popcount(cand[w]);
      hits += std::popcount(cand[w] & link[w]);
    }
    out[idx] += c.den * hits - c.num * sup;
  });
  return out;
}

void ascent_step(const Hypergraph& h, const mpq_class& d, DirectedFamily& g, std::size_t j, bool positive) {
  auto contrib = member_contributions(h, d, g, j);
  TupleSet next(g.member(j).arity(), g.n());
  for_each_tuple(g.n(), next.arity(), [&](std::span<const Vertex> t, std::uint64_t idx) {
    if (positive ? contrib[idx] > 0 : contrib[idx] < 0) next.insert(t);
  });
  g.member(j) = std::move(next);
}

WitnessSearchResult disc_witness_search(const Hypergraph& h, const mpq_class& d, const SetSystem& q,
                                        std::size_t trials, std::uint64_t seed, const WitnessSearchOptions& opts) {
  if (h.k() != q.k()) throw InvalidArgument("set system and hypergraph have different k");
  StatOptions sopts;
  sopts.threads = opts.threads;
  WitnessSearchResult best{DirectedFamily::complete(q, h.n()), 0, "baseline", trials};
  best.value = disc_value(h, Scalar(d), best.family, sopts).value.exact();
  SeedPath root(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    SeedPath sp = root.child("trial").child(trial);
    WeightEnsemble w = WeightEnsemble::random(q, h.n(), sp.child("weights").seed(), opts.resolution);
    auto rng = sp.child("signs").engine();
    std::vector<bool> signs(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) signs[j] = (rng() & 1U) != 0;
    DirectedFamily fam = round_weights_to_family(w, sp.child("round").seed(), signs);
    mpq_class value = disc_value(h, Scalar(d), fam, sopts).value.exact();
    bool positive = value >= 0;
    auto consider = [&](const mpq_class& v, const DirectedFamily& f) {
      if (abs(v) > abs(best.value)) {
        best.value = v;
        best.family = f;
        best.seed_path = sp.path();
      }
    };
    consider(value, fam);
    for (std::size_t round = 0; round < opts.ascent_rounds; ++round) {
      mpq_class before = value;
      for (std::size_t j = 0; j < q.size(); ++j) ascent_step(h, d, fam, j, positive);
      value = disc_value(h, Scalar(d), fam, sopts).value.exact();
      consider(value, fam);
      if (value == before) break;
    }
  }
  return best;
}

}  // namespace quasihyper
