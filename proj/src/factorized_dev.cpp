// Doubling-factorized evaluation of the all-maps deviation sum.
//
// T_0 is the centred edge function summed over the classes outside
// C_0 = Q_1 ∪ ... ∪ Q_l. Step j undoes the doubling along Q_j:
//   T_j[B, R0, R1] = sum_S T_{j-1}[B, S, R0] * T_{j-1}[B, S, R1]
// where B are the slots of classes in Q_j still needed later, S the slots of
// classes in Q_j that are not, and R the slots of the remaining classes.
// T_l is a scalar, the deviation sum.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "quasihyper/doubling.hpp"
#include "quasihyper/error.hpp"
#include "quasihyper/statistics.hpp"

namespace quasihyper {

namespace {

using i128 = __int128;

enum class Kind { dbl, wide, big };

struct Table {
  std::vector<int> slots;  // class (0-based) of each slot, outermost first
  Kind kind = Kind::dbl;
  std::vector<double> d;
  std::vector<i128> w;
  std::vector<mpz_class> z;

  std::size_t size() const { return kind == Kind::dbl ? d.size() : kind == Kind::wide ? w.size() : z.size(); }

  void promote(Kind to) {
    if (to == kind || (kind == Kind::big) || (kind == Kind::wide && to == Kind::dbl)) return;
    if (kind == Kind::dbl && to == Kind::wide) {
      w.resize(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) w[i] = static_cast<i128>(d[i]);
      d.clear();
      d.shrink_to_fit();
    } else {
      z.resize(size());
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = kind == Kind::dbl ? mpz_class(d[i]) : to_mpz(w[i]);
      d.clear();
      d.shrink_to_fit();
      w.clear();
      w.shrink_to_fit();
    }
    kind = to;
  }
};

std::uint64_t ipow(std::uint64_t n, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= n;
  return r;
}

struct StepShape {
  std::vector<std::size_t> b, s, r;  // slot indices of T_{j-1}
};

StepShape split(const std::vector<int>& slots, Subset q, Subset later) {
  StepShape sh;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    Subset bitc = Subset{1} << slots[i];
    if (q & bitc)
      (later & bitc ? sh.b : sh.s).push_back(i);
    else
      sh.r.push_back(i);
  }
  return sh;
}

struct Plan {
  double flops = 0;
  double max_entries = 0;
};

Plan simulate(int k, const std::vector<Subset>& order, double n) {
  std::size_t l = order.size();
  std::vector<Subset> later(l + 1, 0);
  for (std::size_t j = l; j-- > 0;) later[j] = later[j + 1] | order[j];
  std::vector<int> slots;
  for (int c = 0; c < k; ++c)
    if (later[0] & (Subset{1} << c)) slots.push_back(c);
  Plan p;
  p.max_entries = std::pow(n, static_cast<double>(slots.size()));
  for (std::size_t j = 0; j < l; ++j) {
    StepShape sh = split(slots, order[j], later[j + 1]);
    double nb = std::pow(n, sh.b.size()), ns = std::pow(n, sh.s.size()), nr = std::pow(n, sh.r.size());
    p.flops += nb * ns * nr * nr;
    p.max_entries = std::max(p.max_entries, nb * nr * nr);
    std::vector<int> next;
    for (auto i : sh.b) next.push_back(slots[i]);
    for (int rep = 0; rep < 2; ++rep)
      for (auto i : sh.r) next.push_back(slots[i]);
    slots = std::move(next);
  }
  return p;
}

std::vector<Subset> choose_order(const SetSystem& q, double n) {
  std::vector<Subset> order = q.members();
  if (order.size() > 8) return order;
  std::vector<std::size_t> idx(order.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Subset> best = order;
  Plan best_plan = simulate(q.k(), order, n);
  do {
    std::vector<Subset> cand;
    for (auto i : idx) cand.push_back(order[i]);
    Plan p = simulate(q.k(), cand, n);
    if (p.max_entries < best_plan.max_entries ||
        (p.max_entries == best_plan.max_entries && p.flops < best_plan.flops)) {
      best_plan = p;
      best = cand;
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

// Reorders the slots of `in` to `order`, writing row-major output.
template <class T>
std::vector<T> transpose(const std::vector<T>& in, std::size_t rank, Vertex n, const std::vector<std::size_t>& order) {
  bool identity = true;
  for (std::size_t i = 0; i < order.size(); ++i) identity &= order[i] == i;
  if (identity) return in;
  std::vector<std::uint64_t> in_stride(rank, 1);
  for (std::size_t i = rank; i-- > 1;) in_stride[i - 1] = in_stride[i] * n;
  std::vector<std::uint64_t> stride(rank);
  for (std::size_t i = 0; i < rank; ++i) stride[i] = in_stride[order[i]];
  std::vector<T> out(in.size());
  std::vector<Vertex> digit(rank, 0);
  std::uint64_t src = 0;
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o] = in[src];
    for (std::size_t c = rank; c-- > 0;) {
      if (++digit[c] < n) {
        src += stride[c];
        break;
      }
      digit[c] = 0;
      src -= stride[c] * (n - 1);
    }
  }
  return out;
}

template <class T>
void gram_loop(const std::vector<T>& a, std::vector<T>& out, std::uint64_t nb, std::uint64_t ns, std::uint64_t nr) {
  out.assign(nb * nr * nr, T(0));
  T acc;
  for (std::uint64_t b = 0; b < nb; ++b) {
    const T* base = a.data() + b * ns * nr;
    T* o = out.data() + b * nr * nr;
    for (std::uint64_t r0 = 0; r0 < nr; ++r0)
      for (std::uint64_t r1 = 0; r1 <= r0; ++r1) {
        acc = 0;
        for (std::uint64_t s = 0; s < ns; ++s) acc += base[s * nr + r0] * base[s * nr + r1];
        o[r0 * nr + r1] = acc;
        o[r1 * nr + r0] = acc;
      }
  }
}

void gram_eigen(const std::vector<double>& a, std::vector<double>& out, std::uint64_t nb, std::uint64_t ns,
                std::uint64_t nr) {
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  out.assign(nb * nr * nr, 0.0);
  for (std::uint64_t b = 0; b < nb; ++b) {
    Eigen::Map<const RowMat> m(a.data() + b * ns * nr, static_cast<Eigen::Index>(ns), static_cast<Eigen::Index>(nr));
    Eigen::Map<RowMat> o(out.data() + b * nr * nr, static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(nr));
    if (nr == 1) {
      o(0, 0) = m.col(0).squaredNorm();
      continue;
    }
    o.selfadjointView<Eigen::Lower>().rankUpdate(m.transpose());
    for (Eigen::Index r0 = 0; r0 < o.rows(); ++r0)
      for (Eigen::Index r1 = r0 + 1; r1 < o.cols(); ++r1) o(r0, r1) = o(r1, r0);
  }
}

struct Evaluation {
  bool exact;
  mpz_class value;  // exact: the sum scaled by D^(2^l)
  double approx = 0;
};

Evaluation evaluate(const Hypergraph& h, const SetSystem& q, bool exact, const mpq_class& dq, double dd,
                    const FactorizedOptions& fopts) {
  if (h.k() != q.k()) throw InvalidArgument("set system and hypergraph have different k");
  if (q.contains_full_set()) throw InvalidArgument("[k] may not be a member of Q");
  int k = h.k();
  Vertex n = h.n();
  std::vector<Subset> order = fopts.optimize_order ? choose_order(q, n) : q.members();
  std::size_t l = order.size();
  std::vector<Subset> later(l + 1, 0);
  for (std::size_t j = l; j-- > 0;) later[j] = later[j + 1] | order[j];

  Plan plan = simulate(k, order, n);
  std::size_t entry_bytes = exact ? sizeof(i128) : sizeof(double);
  if (plan.max_entries * static_cast<double>(entry_bytes) * 2 > static_cast<double>(fopts.memory_budget))
    throw BudgetExceeded("factorized DEV needs tables of " + std::to_string(plan.max_entries) + " entries");
  if (std::pow(static_cast<double>(n), k) > 4e9) throw BudgetExceeded("n^k too large for the base table");

  // Exact mode works with g' = D 1_E - N; `bound` tracks log2 of the largest
  // possible absolute table entry.
  i128 num = 0, den = 1;
  bool small_d = exact && mpz_fits_slong_p(dq.get_num_mpz_t()) && mpz_fits_slong_p(dq.get_den_mpz_t());
  if (small_d) {
    num = dq.get_num().get_si();
    den = dq.get_den().get_si();
  }
  double gmax = exact ? std::max({1.0, std::abs(mpz_class(dq.get_den() - dq.get_num()).get_d()), std::abs(dq.get_num().get_d())})
                      : 1.0;

  Table t;
  for (int c = 0; c < k; ++c)
    if (later[0] & (Subset{1} << c)) t.slots.push_back(c);
  std::size_t base_size = ipow(n, t.slots.size());
  double bound = std::log2(gmax) + static_cast<double>(k - static_cast<int>(t.slots.size())) * std::log2(std::max<Vertex>(n, 1));
  {
    EdgeLookup lookup(h);
    std::vector<std::uint64_t> stride(static_cast<std::size_t>(k), 0);
    std::uint64_t s = 1;
    for (std::size_t i = t.slots.size(); i-- > 0;) {
      stride[static_cast<std::size_t>(t.slots[i])] = s;
      s *= n;
    }
    Tuple x(static_cast<std::size_t>(k), 0);
    auto visit = [&](auto& acc, auto on_edge, auto off_edge) {
      if (n == 0) return;
      while (true) {
        auto link = lookup.link(std::span<const Vertex>(x.data(), static_cast<std::size_t>(k - 1)));
        std::uint64_t idx = 0;
        for (int c = 0; c + 1 < k; ++c) idx += stride[static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
        std::uint64_t st = stride[static_cast<std::size_t>(k - 1)];
        for (Vertex v = 0; v < n; ++v) acc[idx + st * v] += ((link[v / 64] >> (v % 64)) & 1U) ? on_edge : off_edge;
        int c = k - 2;
        while (c >= 0 && ++x[static_cast<std::size_t>(c)] == n) x[static_cast<std::size_t>(c--)] = 0;
        if (c < 0) break;
      }
    };
    if (!exact) {
      t.kind = Kind::dbl;
      t.d.assign(base_size, 0.0);
      visit(t.d, 1.0 - dd, -dd);
    } else if (small_d && bound < 52) {
      t.kind = Kind::dbl;
      t.d.assign(base_size, 0.0);
      visit(t.d, static_cast<double>(den - num), static_cast<double>(-num));
    } else if (small_d && bound < 124) {
      t.kind = Kind::wide;
      t.w.assign(base_size, 0);
      visit(t.w, den - num, -num);
    } else {
      t.kind = Kind::big;
      t.z.assign(base_size, 0);
      visit(t.z, mpz_class(dq.get_den() - dq.get_num()), mpz_class(-dq.get_num()));
    }
  }

  for (std::size_t j = 0; j < l; ++j) {
    StepShape sh = split(t.slots, order[j], later[j + 1]);
    std::vector<std::size_t> perm;
    perm.insert(perm.end(), sh.b.begin(), sh.b.end());
    perm.insert(perm.end(), sh.s.begin(), sh.s.end());
    perm.insert(perm.end(), sh.r.begin(), sh.r.end());
    std::uint64_t nb = ipow(n, sh.b.size()), ns = ipow(n, sh.s.size()), nr = ipow(n, sh.r.size());
    double next_bound = 2 * bound + static_cast<double>(sh.s.size()) * std::log2(std::max<Vertex>(n, 1));
    Table out;
    for (auto i : sh.b) out.slots.push_back(t.slots[i]);
    for (int rep = 0; rep < 2; ++rep)
      for (auto i : sh.r) out.slots.push_back(t.slots[i]);
    if (!exact || next_bound < 52) {
      out.kind = Kind::dbl;
      gram_eigen(transpose(t.d, t.slots.size(), n, perm), out.d, nb, ns, nr);
    } else if (next_bound < 124) {
      t.promote(Kind::wide);
      out.kind = Kind::wide;
      gram_loop(transpose(t.w, t.slots.size(), n, perm), out.w, nb, ns, nr);
    } else {
      t.promote(Kind::big);
      out.kind = Kind::big;
      gram_loop(transpose(t.z, t.slots.size(), n, perm), out.z, nb, ns, nr);
    }
    t = std::move(out);
    bound = next_bound;
  }

  Evaluation e{exact, 0, 0};
  if (!exact) {
    e.approx = t.d.empty() ? 0.0 : t.d[0];
    return e;
  }
  e.value = t.kind == Kind::dbl ? mpz_class(t.d[0]) : t.kind == Kind::wide ? to_mpz(t.w[0]) : t.z[0];
  return e;
}

}  // namespace

Scalar dev_value_factorized(const Hypergraph& h, const Scalar& d, const SetSystem& q, const StatOptions& opts,
                            const FactorizedOptions& fopts) {
  bool exact = opts.mode == EvalMode::exact;
  if (exact && !d.is_exact()) throw InvalidArgument("exact evaluation needs a rational density");
  mpq_class dq = exact ? d.exact() : mpq_class(0);
  Evaluation e = evaluate(h, q, exact, dq, d.to_double(), fopts);
  if (!exact) return Scalar(e.approx);
  mpz_class scale = pow_z(dq.get_den(), 1UL << q.size());
  return Scalar(mpq_class(e.value, scale));
}

mpz_class hom_mq(const Hypergraph& h, const SetSystem& q, const FactorizedOptions& fopts) {
  return evaluate(h, q, true, mpq_class(0), 0.0, fopts).value;
}

}  // namespace quasihyper
