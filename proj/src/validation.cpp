#include "quasihyper/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "quasihyper/constants.hpp"
#include "quasihyper/constructions.hpp"
#include "quasihyper/counting.hpp"
#include "quasihyper/doubling.hpp"
#include "quasihyper/error.hpp"
#include "quasihyper/oracle.hpp"
#include "quasihyper/random.hpp"
#include "quasihyper/simplicity.hpp"
#include "quasihyper/statistics.hpp"

namespace quasihyper {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

SetSystem random_setsystem(Rng& rng, int k, std::size_t max_l, bool allow_empty, bool allow_full,
                           std::size_t min_l = 0) {
  std::vector<Subset> pool;
  for (Subset s = 0; s <= full_subset(k); ++s) {
    if (s == 0 && !allow_empty) continue;
    if (s == full_subset(k) && !allow_full) continue;
    pool.push_back(s);
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  std::size_t hi = std::min(max_l, pool.size());
  std::size_t l = static_cast<std::size_t>(uniform(rng, static_cast<int>(std::min(min_l, hi)), static_cast<int>(hi)));
  pool.resize(l);
  return SetSystem(k, pool);
}

mpq_class random_rational(Rng& rng, int max_den) {
  int den = uniform(rng, 1, max_den);
  mpq_class r(uniform(rng, 0, den), den);
  r.canonicalize();
  return r;
}

Hypergraph random_h(Rng& rng, Vertex n, int k) {
  return random_hypergraph(n, k, mpq_class(uniform(rng, 1, 7), 8), rng());
}

std::vector<SetSystem> all_proper_systems_k3() {
  std::vector<SetSystem> out;
  for (std::uint32_t mask = 0; mask < (1U << 7); ++mask) {
    std::vector<Subset> members;
    for (Subset s = 0; s < 7; ++s)
      if (mask & (1U << s)) members.push_back(s);
    out.emplace_back(3, members);
  }
  return out;
}

struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;
  void check(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failed++ == 0) first_failure = what;
  }
  std::string summary() const {
    std::ostringstream os;
    os << checked - failed << "/" << checked << " checks passed";
    if (failed > 0) os << "; first failure: " << first_failure;
    return os.str();
  }
};

std::uint64_t expected_vertices(const SetSystem& q) {
  std::uint64_t v = 0;
  for (int i = 1; i <= q.k(); ++i) v += std::uint64_t{1} << (q.size() - static_cast<std::size_t>(degree(q, i)));
  return v;
}

CriterionResult c1_mq_sizes(std::uint64_t seed) {
  Tally t;
  auto check_one = [&](const SetSystem& q) {
    PartiteHypergraph m = build_mq(q);
    MqSize s = mq_size(q);
    Hypergraph direct = oracle::mq_direct(q);
    std::uint64_t edges = std::uint64_t{1} << q.size();
    bool ok = m.edge_count() == edges && m.vertex_count() == expected_vertices(q) && s.edges == edges &&
              s.vertices == expected_vertices(q) && direct.n() == m.vertex_count() && direct.edge_count() == edges;
    t.check(ok, q.to_string());
  };
  for (const auto& q : all_proper_systems_k3()) check_one(q);
  Rng rng(SeedPath(seed).child("c1").seed());
  for (int r = 0; r < 200; ++r) check_one(random_setsystem(rng, 4 + r % 2, 10, true, false));
  return {1, "M_Q sizes", "exact", t.failed == 0, t.summary(), 0};
}

CriterionResult c2_commutativity(std::uint64_t seed) {
  Tally t;
  Rng rng(SeedPath(seed).child("c2").seed());
  for (int r = 0; r < 100; ++r) {
    int k = uniform(rng, 2, 4);
    PartiteHypergraph base = build_mq(random_setsystem(rng, k, 3, true, false));
    std::vector<std::vector<std::uint32_t>> edges;
    for (const auto& e : base.edges())
      if (rng() & 1U) edges.push_back(e);
    if (edges.empty()) edges.push_back(base.edges().front());
    PartiteHypergraph f(k, base.tags(), base.bit_labels(), edges);
    Subset q = static_cast<Subset>(uniform(rng, 0, static_cast<int>(full_subset(k))));
    Subset s = static_cast<Subset>(uniform(rng, 0, static_cast<int>(full_subset(k))));
    t.check(verify_doubling_commutes(f, q, s), subset_to_string(q) + " vs " + subset_to_string(s));
  }
  return {2, "Doubling commutativity", "exact", t.failed == 0, t.summary(), 0};
}

CriterionResult c3_exponent(std::uint64_t seed) {
  Tally t;
  Rng rng(SeedPath(seed).child("c3").seed());
  for (int r = 0; r < 1000; ++r) {
    int k = uniform(rng, 1, 6);
    SetSystem q = random_setsystem(rng, k, 8, true, false);
    ExponentIdentity e = exponent_identity(q);
    std::uint64_t target = static_cast<std::uint64_t>(k) << q.size();
    t.check(e.holds && e.lhs == target && e.rhs == target, q.to_string());
  }
  return {3, "Exponent identity", "exact", t.failed == 0, t.summary(), 0};
}

CriterionResult c4_dev_oracle(std::uint64_t seed) {
  Tally t;
  Rng rng(SeedPath(seed).child("c4").seed());
  for (int r = 0; r < 50; ++r) {
    int k = uniform(rng, 2, 3);
    SetSystem q = random_setsystem(rng, k, 2, r % 10 == 0, false, 1);
    std::uint64_t v = mq_size(q).vertices;
    Vertex n = static_cast<Vertex>(uniform(rng, 3, 5));
    while (n > static_cast<Vertex>(k) && std::pow(static_cast<double>(n), static_cast<double>(v)) > 2e6) --n;
    Hypergraph h = random_h(rng, n, k);
    Scalar d(random_rational(rng, 6));
    Scalar fast = dev_value_factorized(h, d, q);
    Scalar brute = dev_value(h, d, q, DevMode::all_maps);
    t.check(fast == brute, q.to_string() + " n=" + std::to_string(n) + ": " + fast.to_string() + " vs " + brute.to_string());
  }
  return {4, "DEV oracle equivalence", "exact", t.failed == 0, t.summary(), 0};
}

CriterionResult c5_inclusion_exclusion(std::uint64_t seed) {
  Tally t;
  Rng rng(SeedPath(seed).child("c5").seed());
  Hypergraph f = build_mq(SetSystem(2, {1, 2})).flatten();
  auto edges = f.edges();
  for (int r = 0; r < 20; ++r) {
    Vertex n = static_cast<Vertex>(uniform(rng, 4, 8));
    Hypergraph h = random_h(rng, n, 2);
    mpz_class sum = 0;
    for (std::uint32_t mask = 0; mask < (1U << edges.size()); ++mask) {
      std::vector<Tuple> sub_edges;
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (mask & (1U << e)) sub_edges.push_back(edges[e]);
      Hypergraph sub(2, f.n(), sub_edges);
      mpz_class direct = induced_wrt_count(sub, f, h);
      mpz_class ie = induced_wrt_count_inclusion_exclusion(sub, f, h);
      mpz_class brute = oracle::induced_count(sub, f, h);
      t.check(direct == ie && direct == brute, "graph " + std::to_string(r) + " mask " + std::to_string(mask));
      sum += direct;
    }
    t.check(sum == falling_factorial(n, 4), "partition identity, graph " + std::to_string(r));
  }
  return {5, "Inclusion-exclusion", "exact", t.failed == 0, t.summary(), 0};
}

DirectedFamily random_family(Rng& rng, const SetSystem& q, Vertex n) {
  std::vector<TupleSet> members;
  for (Subset s : q.members()) {
    int arity = subset_size(s);
    TupleSet set(arity, n);
    Tuple t(static_cast<std::size_t>(arity), 0);
    std::uint64_t total = tuple_space(n, arity, 1 << 20);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rem = idx;
      for (int c = arity - 1; c >= 0; --c) {
        t[static_cast<std::size_t>(c)] = static_cast<Vertex>(rem % n);
        rem /= n;
      }
      if (rng() % 10 < 7) set.insert(t);
    }
    members.push_back(std::move(set));
  }
  return DirectedFamily(q, n, std::move(members));
}

CriterionResult c6_bridge(std::uint64_t seed) {
  Tally t;
  Rng rng(SeedPath(seed).child("c6").seed());
  for (int r = 0; r < 50; ++r) {
    int k = uniform(rng, 2, 3);
    Vertex n = static_cast<Vertex>(uniform(rng, k, 10));
    SetSystem q = random_setsystem(rng, k, 3, true, true);
    Hypergraph h = random_h(rng, n, k);
    DirectedFamily g = random_family(rng, q, n);
    mpq_class d = random_rational(rng, 7);
    mpq_class disc = disc_value(h, Scalar(d), g).value.exact();
    mpq_class wdisc = wdisc_value(h, Scalar(d), WeightEnsemble::indicator(g)).exact();
    mpz_class degenerate = degenerate_supported_count(g);
    t.check(disc == wdisc + d * degenerate && degenerate == oracle::degenerate_supported(g),
            q.to_string() + " n=" + std::to_string(n));
  }
  return {6, "DISC/WDISC bridge", "exact", t.failed == 0, t.summary(), 0};
}

CriterionResult c7_zero_disc(std::uint64_t seed) {
  Tally t;
  Rng rng(SeedPath(seed).child("c7").seed());
  for (int r = 0; r < 50; ++r) {
    int k = uniform(rng, 2, 4);
    Vertex n = static_cast<Vertex>(uniform(rng, k, 12));
    Hypergraph h = random_h(rng, n, k);
    SetSystem q = random_setsystem(rng, k, 3, true, true);
    DiscValue v = disc_value(h, density(h), DirectedFamily::complete(q, n));
    t.check(v.value.is_zero(), "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + v.value.to_string());
  }
  return {7, "Zero-discrepancy identity", "exact", t.failed == 0, t.summary(), 0};
}

Hypergraph random_linear(Rng& rng, Vertex n, std::size_t m) {
  std::vector<Tuple> edges;
  for (int attempt = 0; attempt < 2000 && edges.size() < m; ++attempt) {
    Tuple e;
    while (e.size() < 3) {
      Vertex x = static_cast<Vertex>(rng() % n);
      if (std::find(e.begin(), e.end(), x) == e.end()) e.push_back(x);
    }
    std::sort(e.begin(), e.end());
    bool ok = true;
    for (const auto& f : edges) {
      int shared = 0;
      for (Vertex x : e) shared += std::count(f.begin(), f.end(), x) > 0;
      ok = ok && shared <= 1;
    }
    if (ok) edges.push_back(e);
  }
  return Hypergraph(3, n, edges);
}

CriterionResult c8_simplicity(std::uint64_t seed) {
  Tally t;
  Rng rng(SeedPath(seed).child("c8").seed());
  SetSystem singles = SetSystem::level(3, 1), pairs = SetSystem::level(3, 2);
  std::vector<std::pair<Hypergraph, bool>> corpus;
  while (corpus.size() < 10) {
    Hypergraph f = random_linear(rng, 8, static_cast<std::size_t>(uniform(rng, 2, 6)));
    if (f.edge_count() >= 2) corpus.emplace_back(f, true);
  }
  while (corpus.size() < 20) {
    Hypergraph f = random_linear(rng, 8, static_cast<std::size_t>(uniform(rng, 1, 5)));
    auto edges = f.edges();
    const Tuple& base = edges[rng() % edges.size()];
    Tuple e = {base[0], base[1]};
    if (rng() & 1U) e = {base[1], base[2]};
    Vertex x = static_cast<Vertex>(rng() % 8);
    if (std::find(base.begin(), base.end(), x) != base.end()) continue;
    e.push_back(x);
    edges.push_back(e);
    corpus.emplace_back(Hypergraph(3, 8, edges), false);
  }
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    const auto& [f, linear] = corpus[c];
    std::string tag = "corpus " + std::to_string(c);
    t.check(is_linear(f) == linear, tag + " linearity");
    SimplicityResult r1 = is_q_simple(f, singles);
    t.check(r1.simple == linear && oracle::q_simple(f, singles) == linear, tag + " vs binom([3],1)");
    if (r1.simple) t.check(verify_certificate(f, singles, *r1.certificate), tag + " certificate");
    SimplicityResult r2 = is_q_simple(f, pairs);
    t.check(r2.simple && verify_certificate(f, pairs, *r2.certificate), tag + " vs binom([3],2)");
  }
  SimplicityLimits forced;
  forced.force = true;
  for (const auto& q : all_proper_systems_k3()) {
    Hypergraph m = build_mq(q).flatten();
    SimplicityResult r = is_q_simple(m, q, forced);
    t.check(r.simple && verify_certificate(m, q, *r.certificate), "M_Q for " + q.to_string());
  }
  return {8, "Q-simplicity endpoints", "exact", t.failed == 0, t.summary(), 0};
}

CriterionResult c9_separation(std::uint64_t seed, unsigned threads) {
  Tally t;
  SetSystem q = SetSystem::level(3, 2);
  SetSystem u = q.without(make_subset({2, 3}));
  double worst_u = 0, min_k = 1, worst_density = 0;
  SeparationOptions opts;
  opts.threads = threads;
  for (int s = 0; s < 5; ++s) {
    std::uint64_t run_seed = SeedPath(seed).child("c9").child(static_cast<std::uint64_t>(s)).seed();
    SeparationReport r = verify_separation(200, 2, q, u, run_seed, opts);
    double n3 = 200.0 * 200.0 * 200.0;
    double kfrac = r.supported.get_d() / n3;
    std::string tag = "seed " + std::to_string(s);
    for (const auto& c : r.checks) t.check(c.passed, tag + " " + c.name);
    t.check(kfrac >= 0.125 - 0.02, tag + " |K_3(F)|/n^3");
    worst_u = std::max(worst_u, r.max_u_disc);
    min_k = std::min(min_k, kfrac);
    worst_density = std::max(worst_density, std::abs(r.density.get_d() - 0.5));
  }
  std::ostringstream os;
  os << t.summary() << "; max |d-1/2| " << worst_density << ", min |K_3(F)|/n^3 " << min_k
     << ", max sampled U-disc/n^3 " << worst_u;
  return {9, "Separation experiment", "statistical", t.failed == 0, os.str(), 0};
}

CriterionResult c10_random(std::uint64_t seed, unsigned threads) {
  Tally t;
  SetSystem q = SetSystem::level(3, 1);
  Hypergraph pattern(3, 5, {{0, 1, 2}, {0, 3, 4}});
  Scalar half(mpq_class(1, 2));
  double worst_dev = 0, worst_cl = 0;
  StatOptions sopts;
  sopts.threads = threads;
  for (int s = 0; s < 5; ++s) {
    std::uint64_t run_seed = SeedPath(seed).child("c10").child(static_cast<std::uint64_t>(s)).seed();
    Hypergraph h = random_hypergraph(60, 3, mpq_class(1, 2), run_seed);
    double dev = std::abs(dev_value_factorized(h, half, q, sopts).to_double()) / std::pow(60.0, 12);
    ClReport cl = cl_check(h, pattern, half, CountOptions{threads});
    MinReport mr = min_check(h, half, Scalar(mpq_class(1, 20)), q, sopts);
    std::string tag = "seed " + std::to_string(s);
    t.check(dev <= 0.02, tag + " normalized dev");
    t.check(cl.normalized_error.to_double() <= 0.03, tag + " CL error");
    t.check(mr.density_ok && mr.count_ok, tag + " min_check (" + mr.method + ")");
    worst_dev = std::max(worst_dev, dev);
    worst_cl = std::max(worst_cl, cl.normalized_error.to_double());
  }
  std::ostringstream os;
  os << t.summary() << "; max normalized dev " << worst_dev << ", max CL error " << worst_cl;
  return {10, "Quasirandomness of random H", "statistical", t.failed == 0, os.str(), 0};
}

CriterionResult c11_constants(std::uint64_t seed) {
  Tally t;
  Rng rng(SeedPath(seed).child("c11").seed());
  for (int r = 0; r < 20; ++r) {
    int den = uniform(rng, 1, 20);
    mpq_class delta(uniform(rng, 1, den), den);
    delta.canonicalize();
    int k = uniform(rng, 2, 4);
    SetSystem q = random_setsystem(rng, k, 4, false, false);
    Hypergraph f;
    do f = random_hypergraph(6, k, mpq_class(1, 4), rng());
    while (f.edge_count() == 0 || f.edge_count() > 12);
    io::json report = constants_report(q, delta, &f);
    ImplicationConstants want = oracle::implication_constants(q, delta, &f);
    auto row = [&](const char* name) {
      for (const auto& x : report["rows"])
        if (x["implication"] == name) return mpq_class(x["epsilon"].get<std::string>());
      return mpq_class(-1);
    };
    t.check(row("DISC=>WDISC") == want.disc_to_wdisc && row("WDISC=>CL") == *want.wdisc_to_cl &&
                row("CL=>DEV") == want.cl_to_dev && row("DEV=>WDISC") == want.dev_to_wdisc,
            "delta=" + delta.get_str() + " " + q.to_string());
  }
  return {11, "Implication constants", "exact", t.failed == 0, t.summary(), 0};
}

}  // namespace

bool is_statistical_criterion(int id) { return id == 9 || id == 10; }

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
    if (opts.only.empty() && !opts.full && is_statistical_criterion(id)) continue;
    auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      switch (id) {
        case 1: r = c1_mq_sizes(opts.seed); break;
        case 2: r = c2_commutativity(opts.seed); break;
        case 3: r = c3_exponent(opts.seed); break;
        case 4: r = c4_dev_oracle(opts.seed); break;
        case 5: r = c5_inclusion_exclusion(opts.seed); break;
        case 6: r = c6_bridge(opts.seed); break;
        case 7: r = c7_zero_disc(opts.seed); break;
        case 8: r = c8_simplicity(opts.seed); break;
        case 9: r = c9_separation(opts.seed, opts.threads); break;
        case 10: r = c10_random(opts.seed, opts.threads); break;
        default: r = c11_constants(opts.seed); break;
      }
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), is_statistical_criterion(id) ? "statistical" : "exact", false,
           std::string("error: ") + e.what(), 0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

io::json constants_report(const SetSystem& q, const mpq_class& delta, const Hypergraph* f) {
  ImplicationConstants c = implication_constants(q, delta, f);
  io::json j;
  j["delta"] = delta.get_str();
  j["l"] = c.l;
  j["e_MQ"] = c.mq_edges;
  if (c.f_edges) j["e_F"] = *c.f_edges;
  io::json rows = io::json::array();
  auto add = [&](const char* name, const char* formula, const mpq_class& eps) {
    io::json row;
    row["implication"] = name;
    row["formula"] = formula;
    row["epsilon"] = eps.get_str();
    row["approx"] = eps.get_d();
    rows.push_back(std::move(row));
  };
  add("DISC=>WDISC", "delta/2^(l+1)", c.disc_to_wdisc);
  if (c.wdisc_to_cl) add("WDISC=>CL", "(delta/2)/(2^e(F)-1)", *c.wdisc_to_cl);
  add("CL=>DEV", "delta/2^(2e(M_Q))", c.cl_to_dev);
  add("DEV=>WDISC", "delta^(2^l)", c.dev_to_wdisc);
  j["rows"] = std::move(rows);
  return j;
}

io::json chain_experiment(const ChainOptions& opts) {
  if (opts.q.k() != opts.k) throw InvalidArgument("Q and k disagree");
  SeedPath root(opts.seed);
  Hypergraph h;
  io::json j;
  j["seed"] = opts.seed;
  j["n"] = opts.n;
  j["k"] = opts.k;
  j["Q"] = io::to_json(opts.q)["sets"];
  j["mode"] = std::string(to_string(opts.mode));
  mpq_class p = opts.p;
  if (opts.source == "parity") {
    if (opts.q.empty()) throw InvalidArgument("the parity source needs a non-empty Q");
    int i = subset_size(opts.q[0]);
    ISetSystem b = random_iset_system(opts.n, i, root.child("B").seed());
    h = parity_hypergraph(b, opts.q);
    p = mpq_class(1, 2);
    j["source"] = "parity";
    j["i"] = i;
  } else if (opts.source == "random") {
    h = random_hypergraph(opts.n, opts.k, opts.p, root.child("H").seed());
    j["source"] = "random";
  } else {
    throw InvalidArgument("unknown source '" + opts.source + "'");
  }
  j["p"] = p.get_str();
  j["density"] = io::to_json(density(h));
  j["edges"] = h.edge_count();
  Scalar d(p);
  StatOptions sopts;
  sopts.mode = opts.mode;
  sopts.threads = opts.threads;
  double nk = std::pow(static_cast<double>(opts.n), opts.k);
  MqSize size = mq_size(opts.q);
  double nv = std::pow(static_cast<double>(opts.n), static_cast<double>(size.vertices));

  Scalar dev = dev_value_factorized(h, opts.mode == EvalMode::exact ? d : Scalar(p.get_d()), opts.q, sopts);
  j["dev"] = {{"value", io::to_json(dev)}, {"normalized", dev.to_double() / nv}, {"label", "certified"}};

  double worst = 0;
  std::string worst_path;
  SeedPath ens_root = root.child("ensembles");
  for (std::size_t r = 0; r < opts.ensembles; ++r) {
    SeedPath sp = ens_root.child(r);
    WeightEnsemble w = WeightEnsemble::random(opts.q, opts.n, sp.seed(), 1 << 8);
    StatOptions fopts = sopts;
    fopts.mode = EvalMode::floating;
    double v = std::abs(wdisc_value(h, Scalar(p.get_d()), w, fopts).to_double()) / nk;
    if (v >= worst) {
      worst = v;
      worst_path = sp.path();
    }
  }
  j["wdisc_sampled"] = {{"ensembles", opts.ensembles}, {"max_normalized", worst}, {"worst_seed_path", worst_path},
                        {"label", "sampled"}};

  std::vector<std::pair<std::string, Hypergraph>> patterns;
  int k = opts.k;
  {
    Tuple e1(static_cast<std::size_t>(k)), e2(static_cast<std::size_t>(k)), e3(static_cast<std::size_t>(k));
    std::iota(e1.begin(), e1.end(), 0);
    patterns.emplace_back("single edge", Hypergraph(k, static_cast<Vertex>(k), {e1}));
    e2[0] = 0;
    for (int x = 1; x < k; ++x) e2[static_cast<std::size_t>(x)] = static_cast<Vertex>(k - 1 + x);
    patterns.emplace_back("two edges sharing one vertex", Hypergraph(k, static_cast<Vertex>(2 * k - 1), {e1, e2}));
    for (int x = 0; x < k; ++x) e3[static_cast<std::size_t>(x)] = static_cast<Vertex>(k + x);
    patterns.emplace_back("two disjoint edges", Hypergraph(k, static_cast<Vertex>(2 * k), {e1, e3}));
    Tuple e4 = e1;
    e4.back() = static_cast<Vertex>(k);
    patterns.emplace_back("two edges sharing k-1 vertices", Hypergraph(k, static_cast<Vertex>(k + 1), {e1, e4}));
  }
  io::json cl = io::json::array();
  for (const auto& [name, f] : patterns) {
    if (!is_q_simple(f, opts.q).simple) continue;
    ClReport r = cl_check(h, f, opts.mode == EvalMode::exact ? d : Scalar(p.get_d()), CountOptions{opts.threads});
    double deficit = 1.0 - falling_factorial(opts.n, f.n()).get_d() / std::pow(static_cast<double>(opts.n), f.n());
    cl.push_back({{"pattern", name},
                  {"copies", io::to_json(r.copies)},
                  {"target", io::to_json(r.target)},
                  {"normalized_error", r.normalized_error.to_double()},
                  {"degenerate_deficit", deficit},
                  {"label", "certified"}});
  }
  j["cl"] = std::move(cl);

  MinReport mr = min_check(h, d, Scalar(mpq_class(1, 20)), opts.q, sopts);
  j["min"] = {{"eps", "1/20"},
              {"density_ok", mr.density_ok},
              {"count", io::to_json(mr.count)},
              {"method", mr.method},
              {"bound", io::to_json(mr.bound)},
              {"count_ok", mr.count_ok}};
  j["constants"] = constants_report(opts.q, opts.delta, patterns.size() > 1 ? &patterns[1].second : nullptr);
  return j;
}

}  // namespace quasihyper
