#include <gtest/gtest.h>

#include <cmath>

#include "quasihyper/counting.hpp"
#include "quasihyper/doubling.hpp"
#include "quasihyper/error.hpp"
#include "quasihyper/oracle.hpp"
#include "quasihyper/statistics.hpp"
#include "support.hpp"

using namespace qh_test;

namespace {

DirectedFamily random_family(std::mt19937_64& rng, const SetSystem& q, Vertex n, int percent) {
  std::vector<TupleSet> members;
  for (Subset s : q.members()) {
    int arity = subset_size(s);
    TupleSet set(arity, n);
    Tuple t(static_cast<std::size_t>(arity), 0);
    std::uint64_t total = 1;
    for (int c = 0; c < arity; ++c) total *= n;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rem = idx;
      for (int c = arity - 1; c >= 0; --c) {
        t[static_cast<std::size_t>(c)] = static_cast<Vertex>(rem % n);
        rem /= n;
      }
      if (static_cast<int>(rng() % 100) < percent) set.insert(t);
    }
    members.push_back(std::move(set));
  }
  return DirectedFamily(q, n, std::move(members));
}

DirectedFamily singles_family(int k, Vertex n, const std::vector<Vertex>& s) {
  std::vector<TupleSet> members;
  for (int c = 0; c < k; ++c) {
    TupleSet set(1, n);
    for (Vertex v : s) set.insert(Tuple{v});
    members.push_back(set);
  }
  return DirectedFamily(SetSystem::level(k, 1), n, members);
}

Hypergraph random_h(std::mt19937_64& rng, Vertex n, int k) {
  return random_hypergraph(n, k, Q(static_cast<long>(1 + rng() % 7), 8), rng());
}

}  // namespace

TEST(Supported, Examples) {
  EXPECT_EQ(supported_tuples(singles_family(3, 9, {0, 2, 4, 6, 8})), falling_factorial(5, 3));
  DirectedFamily g = DirectedFamily::complete(SetSystem::level(3, 2), 7);
  EXPECT_EQ(supported_tuples(g), falling_factorial(7, 3));
  g.member(1) = TupleSet(2, 7);
  EXPECT_EQ(supported_tuples(g), 0);
}

TEST(Supported, MatchesOracleAndStream) {
  std::mt19937_64 rng(51);
  for (int r = 0; r < 40; ++r) {
    int k = 2 + r % 3;
    SetSystem q = random_sets(rng, k, 3, true);
    DirectedFamily g = random_family(rng, q, 6, 60);
    mpz_class want = oracle::supported_tuples(g);
    EXPECT_EQ(supported_tuples(g), want);
    mpz_class streamed = 0;
    for_each_supported_tuple(g, [&](std::span<const Vertex> t) {
      EXPECT_TRUE(g.supports(t));
      ++streamed;
    });
    EXPECT_EQ(streamed, want);
    EXPECT_EQ(degenerate_supported_count(g), oracle::degenerate_supported(g));
  }
}

TEST(Disc, Examples) {
  Scalar d(Q(1, 3));
  DirectedFamily all = DirectedFamily::complete(SetSystem::level(3, 1), 8);
  EXPECT_EQ(disc_value(Hypergraph::empty(3, 8), d, all).value, -d * Scalar(falling_factorial(8, 3)));
  Hypergraph h = random_hypergraph(8, 3, Q(1, 2), 2);
  EXPECT_TRUE(disc_value(h, density(h), all).value.is_zero());
}

TEST(Disc, MatchesOracle) {
  std::mt19937_64 rng(53);
  for (int r = 0; r < 40; ++r) {
    int k = 2 + r % 2;
    Vertex n = static_cast<Vertex>(5 + rng() % 4);
    SetSystem q = random_sets(rng, k, 3, true);
    Hypergraph h = random_h(rng, n, k);
    DirectedFamily g = random_family(rng, q, n, 70);
    mpq_class d = Q(static_cast<long>(rng() % 5), 4);
    EXPECT_EQ(disc_value(h, Scalar(d), g).value, Scalar(oracle::disc(h, d, g)));
  }
}

TEST(Disc, ShapeMismatch) {
  DirectedFamily g = DirectedFamily::complete(SetSystem::level(2, 1), 5);
  EXPECT_THROW(disc_value(Hypergraph::empty(3, 5), Scalar(Q(1, 2)), g), InvalidArgument);
  EXPECT_THROW(disc_value(Hypergraph::empty(2, 6), Scalar(Q(1, 2)), g), InvalidArgument);
}

TEST(Wdisc, ZeroWeights) {
  Hypergraph h = random_hypergraph(7, 3, Q(1, 2), 3);
  WeightEnsemble zero = WeightEnsemble::constant(SetSystem::level(3, 2), 7, Q(0));
  EXPECT_TRUE(wdisc_value(h, Scalar(Q(1, 2)), zero).is_zero());
}

TEST(Wdisc, IndicatorBridge) {
  std::mt19937_64 rng(57);
  for (int r = 0; r < 40; ++r) {
    int k = 2 + r % 2;
    Vertex n = static_cast<Vertex>(4 + rng() % 5);
    SetSystem q = random_sets(rng, k, 3, true);
    Hypergraph h = random_h(rng, n, k);
    DirectedFamily g = random_family(rng, q, n, 60);
    mpq_class d = Q(static_cast<long>(rng() % 7), 6);
    Scalar w = wdisc_value(h, Scalar(d), WeightEnsemble::indicator(g));
    Scalar disc = disc_value(h, Scalar(d), g).value;
    EXPECT_EQ(abs(w - disc), Scalar(d * degenerate_supported_count(g)));
    EXPECT_EQ(disc, w + Scalar(d * degenerate_supported_count(g)));
  }
}

TEST(Wdisc, MatchesOracleForRandomWeights) {
  std::mt19937_64 rng(59);
  for (int r = 0; r < 30; ++r) {
    int k = 2 + r % 2;
    Vertex n = static_cast<Vertex>(4 + rng() % 3);
    SetSystem q = random_sets(rng, k, 3, true);
    Hypergraph h = random_h(rng, n, k);
    WeightEnsemble w = WeightEnsemble::random(q, n, rng(), 1 + static_cast<std::int64_t>(rng() % 50));
    mpq_class d = Q(static_cast<long>(rng() % 5), 4);
    EXPECT_EQ(wdisc_value(h, Scalar(d), w), Scalar(oracle::wdisc(h, d, w)));
    EXPECT_EQ(wdisc_value_distinct(h, Scalar(d), w), Scalar(oracle::wdisc(h, d, w, true)));
    double exact = oracle::wdisc(h, d, w).get_d();
    StatOptions fl;
    fl.mode = EvalMode::floating;
    EXPECT_NEAR(wdisc_value(h, Scalar(d.get_d()), w, fl).to_double(), exact, 1e-9 * (1 + std::abs(exact)));
  }
}

TEST(Wdisc, WeightsVanishOnRepeats) {
  WeightEnsemble w = WeightEnsemble::random(SetSystem::level(3, 2), 5, 1);
  Tuple repeat = {2, 2}, plain = {1, 2};
  EXPECT_EQ(w.function(0).value(repeat), 0);
  EXPECT_LE(abs(w.function(0).value(plain)), 1);
}

TEST(Wdisc, ThreadsAreBitIdentical) {
  Hypergraph h = random_hypergraph(30, 3, Q(1, 2), 5);
  WeightEnsemble w = WeightEnsemble::random(SetSystem::level(3, 2), 30, 77);
  Scalar serial = wdisc_value(h, Scalar(Q(1, 2)), w);
  StatOptions par;
  par.threads = 3;
  EXPECT_EQ(wdisc_value(h, Scalar(Q(1, 2)), w, par), serial);
}

TEST(Dev, CompleteHostWithDensityOne) {
  // Every injective image is an edge, so only maps with a repeated image contribute.
  Hypergraph h = Hypergraph::complete(3, 5);
  SetSystem q = SetSystem::level(3, 2);
  EXPECT_TRUE(dev_value(h, Scalar(Q(1)), q, DevMode::injective).is_zero());
  Scalar all = dev_value(h, Scalar(Q(1)), q, DevMode::all_maps);
  EXPECT_EQ(all, Scalar(oracle::dev(h, Q(1), q, oracle::MapSet::non_injective)));
  EXPECT_EQ(dev_value_factorized(h, Scalar(Q(1)), q), all);
}

TEST(Dev, EmptyHost) {
  SetSystem q = SetSystem::level(2, 1);
  Scalar d(Q(1, 3));
  Scalar want(pow_q(Q(1, 3), 4) * mpq_class(pow_z(5, 4)));
  EXPECT_EQ(dev_value(Hypergraph::empty(2, 5), d, q, DevMode::all_maps), want);
  EXPECT_EQ(dev_value_factorized(Hypergraph::empty(2, 5), d, q), want);
  SetSystem q3 = sets(3, {{1}, {2, 3}, {1, 2}});
  Scalar want3(pow_q(Q(1, 3), 8) * mpq_class(pow_z(6, mq_size(q3).vertices)));
  EXPECT_EQ(dev_value_factorized(Hypergraph::empty(3, 6), d, q3), want3);
}

TEST(Dev, PathOnThreeVertices) {
  Hypergraph p3 = path(3);
  mpq_class want = oracle::dev(p3, Q(1, 2), SetSystem::level(2, 1), oracle::MapSet::all);
  EXPECT_EQ(dev_value(p3, Scalar(Q(1, 2)), SetSystem::level(2, 1), DevMode::all_maps), Scalar(want));
  EXPECT_EQ(dev_value_factorized(p3, Scalar(Q(1, 2)), SetSystem::level(2, 1)), Scalar(want));
}

TEST(Dev, ModesDifferByNonInjectiveMaps) {
  std::mt19937_64 rng(61);
  for (int r = 0; r < 20; ++r) {
    int k = 2 + r % 2;
    SetSystem q = random_sets(rng, k, 2);
    Vertex n = static_cast<Vertex>(3 + rng() % 2);
    Hypergraph h = random_h(rng, n, k);
    mpq_class d = Q(static_cast<long>(rng() % 4), 3);
    Scalar all = dev_value(h, Scalar(d), q, DevMode::all_maps);
    Scalar inj = dev_value(h, Scalar(d), q, DevMode::injective);
    EXPECT_EQ(all, Scalar(oracle::dev(h, d, q, oracle::MapSet::all)));
    EXPECT_EQ(inj, Scalar(oracle::dev(h, d, q, oracle::MapSet::injective)));
    EXPECT_EQ(all - inj, Scalar(oracle::dev(h, d, q, oracle::MapSet::non_injective)));
  }
}

TEST(Dev, BudgetAndFullSet) {
  Hypergraph h = Hypergraph::empty(3, 40);
  EXPECT_THROW(dev_value(h, Scalar(Q(1, 2)), SetSystem::level(3, 1), DevMode::all_maps), BudgetExceeded);
  EXPECT_THROW(dev_value_factorized(h, Scalar(Q(1, 2)), sets(3, {{1, 2, 3}})), InvalidArgument);
}

TEST(DevFactorized, MatchesBruteForce) {
  std::mt19937_64 rng(67);
  for (int r = 0; r < 50; ++r) {
    int k = 2 + r % 2;
    SetSystem q = random_sets(rng, k, 2, r % 7 == 0);
    Vertex n = static_cast<Vertex>(3 + rng() % 3);
    while (n > 3 && std::pow(n, mq_size(q).vertices) > 2e6) --n;
    Hypergraph h = random_h(rng, n, k);
    Scalar d(Q(static_cast<long>(rng() % 6), 5));
    EXPECT_EQ(dev_value_factorized(h, d, q), dev_value(h, d, q, DevMode::all_maps)) << q.to_string();
  }
}

TEST(DevFactorized, OrderAndEngineInvariance) {
  Hypergraph h = random_hypergraph(12, 3, Q(1, 2), 12);
  SetSystem q = sets(3, {{1}, {2}, {1, 3}});
  Scalar d(Q(1, 2));
  FactorizedOptions plain;
  plain.optimize_order = false;
  Scalar a = dev_value_factorized(h, d, q), b = dev_value_factorized(h, d, q, {}, plain);
  EXPECT_EQ(a, b);
  EXPECT_EQ(dev_value_factorized(h, d, q.reordered({2, 0, 1})), a);
  StatOptions fl;
  fl.mode = EvalMode::floating;
  EXPECT_NEAR(dev_value_factorized(h, Scalar(0.5), q, fl).to_double(), a.to_double(), 1e-9 * std::abs(a.to_double()) + 1e-6);
  StatOptions par;
  par.threads = 2;
  EXPECT_EQ(dev_value_factorized(h, d, q, par), a);
}

TEST(DevFactorized, LargeDenominatorUsesWideArithmetic) {
  Hypergraph h = random_hypergraph(5, 3, Q(1, 2), 13);
  SetSystem q = SetSystem::level(3, 1);
  Scalar d(Q(1234567, 7654321));
  EXPECT_EQ(dev_value_factorized(h, d, sets(3, {{1}, {2}})), dev_value(h, d, sets(3, {{1}, {2}}), DevMode::all_maps));
  mpz_class hom = hom_mq(h, q);
  EXPECT_EQ(hom, hom_count(build_mq(q).flatten(), h));
}

TEST(HomMQ, MatchesCounting) {
  std::mt19937_64 rng(71);
  for (int r = 0; r < 20; ++r) {
    int k = 2 + r % 2;
    SetSystem q = random_sets(rng, k, 3);
    Hypergraph h = random_h(rng, 6, k);
    EXPECT_EQ(hom_mq(h, q), hom_count(build_mq(q).flatten(), h));
  }
}

TEST(Min, CompleteHost) {
  MinReport r = min_check(Hypergraph::complete(2, 6), Scalar(Q(1)), Scalar(Q(0)), SetSystem::level(2, 1));
  EXPECT_TRUE(r.density_ok);
  EXPECT_TRUE(r.count_ok);
  EXPECT_EQ(r.method, "labeled_copies");
  EXPECT_EQ(r.count, falling_factorial(6, 4));
}

TEST(Min, EmptyHostFailsDensity) {
  MinReport r = min_check(Hypergraph::empty(2, 6), Scalar(Q(1, 2)), Scalar(Q(1, 10)), SetSystem::level(2, 1));
  EXPECT_FALSE(r.density_ok);
}

TEST(Min, RandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Hypergraph h = random_hypergraph(30, 2, Q(1, 2), seed);
    MinReport r = min_check(h, Scalar(Q(1, 2)), Scalar(Q(1, 20)), SetSystem::level(2, 1));
    EXPECT_TRUE(r.density_ok);
    EXPECT_TRUE(r.count_ok);
  }
}

TEST(Min, FallsBackToHomBound) {
  Hypergraph h = random_hypergraph(5, 3, Q(1, 2), 3);
  MinReport r = min_check(h, Scalar(Q(1, 2)), Scalar(Q(1, 20)), SetSystem::level(3, 1), {}, 1e3);
  EXPECT_EQ(r.method, "hom_upper_bound");
  EXPECT_EQ(r.count, hom_count(build_mq(SetSystem::level(3, 1)).flatten(), h));
}

TEST(Rounding, IndicatorAllPlusIsExact) {
  std::mt19937_64 rng(73);
  DirectedFamily g = random_family(rng, SetSystem::level(3, 2), 6, 50);
  for (std::size_t j = 0; j < g.size(); ++j) {
    TupleSet& m = g.member(j);
    for (Vertex v = 0; v < 6; ++v) m.erase(Tuple{v, v});
  }
  DirectedFamily out = round_weights_to_family(WeightEnsemble::indicator(g), 5, {true, true, true});
  EXPECT_EQ(out, g);
}

TEST(Rounding, ZeroWeightsGiveEmptyFamily) {
  SetSystem q = SetSystem::level(3, 1);
  DirectedFamily out = round_weights_to_family(WeightEnsemble::constant(q, 5, Q(0)), 1, {true, false, true});
  EXPECT_EQ(out, DirectedFamily::empty(q, 5));
}

TEST(Rounding, ExpectationMatchesSignSplitWdisc) {
  Hypergraph h = random_hypergraph(8, 2, Q(1, 2), 21);
  SetSystem q = SetSystem::level(2, 1);
  WeightEnsemble w = WeightEnsemble::random(q, 8, 99, 16);
  std::vector<bool> signs = {true, false};
  Scalar d(Q(1, 2));
  double expected = wdisc_value_distinct(h, d, sign_split(w, signs)).to_double();
  const int samples = 200;
  double sum = 0, sum_sq = 0;
  for (int s = 0; s < samples; ++s) {
    double v = disc_value(h, d, round_weights_to_family(w, 1000 + static_cast<std::uint64_t>(s), signs)).value.to_double();
    sum += v;
    sum_sq += v * v;
  }
  double mean = sum / samples;
  double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
  EXPECT_LE(std::abs(mean - expected), 3 * se + 1e-9);
}

TEST(WitnessSearch, ZeroTrialsReturnsBaseline) {
  Hypergraph h = random_hypergraph(10, 2, Q(1, 2), 4);
  WitnessSearchResult r = disc_witness_search(h, Q(1, 2), SetSystem::level(2, 1), 0, 1);
  EXPECT_EQ(r.seed_path, "baseline");
  EXPECT_EQ(r.family, DirectedFamily::complete(SetSystem::level(2, 1), 10));
  EXPECT_EQ(Scalar(r.value), disc_value(h, Scalar(Q(1, 2)), r.family).value);
}

TEST(WitnessSearch, CompleteBipartite) {
  // The S-witness gives |S|^2 / 2 = n^2 / 8 for |S| = n/2.
  const Vertex n = 40;
  std::vector<Tuple> edges;
  for (Vertex a = 0; a < n / 2; ++a)
    for (Vertex b = n / 2; b < n; ++b) edges.push_back({a, b});
  Hypergraph h(2, n, edges);
  WitnessSearchResult r = disc_witness_search(h, Q(1, 2), SetSystem::level(2, 1), 20, 3);
  EXPECT_GE(std::abs(r.value.get_d()), (0.125 - 0.01) * n * n);
  EXPECT_EQ(Scalar(r.value), disc_value(h, Scalar(Q(1, 2)), r.family).value);
  WitnessSearchResult again = disc_witness_search(h, Q(1, 2), SetSystem::level(2, 1), 20, 3);
  EXPECT_EQ(again.value, r.value);
  EXPECT_EQ(again.seed_path, r.seed_path);
}

TEST(WitnessSearch, RandomGraphStaysSmall) {
  Hypergraph h = random_hypergraph(60, 2, Q(1, 2), 6);
  WitnessSearchResult r = disc_witness_search(h, density(h).exact(), SetSystem::level(2, 1), 10, 2);
  EXPECT_LT(std::abs(r.value.get_d()) / (60.0 * 60.0), 0.05);
}
