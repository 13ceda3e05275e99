#include <gtest/gtest.h>

#include <cmath>

#include "quasihyper/counting.hpp"
#include "quasihyper/doubling.hpp"
#include "quasihyper/error.hpp"
#include "quasihyper/oracle.hpp"
#include "support.hpp"

using namespace qh_test;

namespace {

Hypergraph c4() { return cycle(4); }

}  // namespace

TEST(Hom, SingleEdge) {
  Hypergraph h = random_hypergraph(8, 3, Q(1, 2), 4);
  Hypergraph edge(3, 3, {{0, 1, 2}});
  EXPECT_EQ(hom_count(edge, h), 6 * mpz_class(static_cast<unsigned long>(h.edge_count())));
  EXPECT_EQ(labeled_copies(edge, h), 6 * mpz_class(static_cast<unsigned long>(h.edge_count())));
}

TEST(Hom, EmptyHost) {
  EXPECT_EQ(hom_count(c4(), Hypergraph::empty(2, 6)), 0);
  EXPECT_EQ(labeled_copies(c4(), Hypergraph::empty(2, 6)), 0);
}

TEST(Hom, C4IntoFiveCycle) {
  Hypergraph h = cycle(5);
  mpz_class want = oracle::hom_count(c4(), h);
  EXPECT_EQ(hom_count(c4(), h), want);
  EXPECT_EQ(want, 30);  // closed walks of length 4 on C5: 5 * 6
}

TEST(Copies, C4IntoC4) { EXPECT_EQ(labeled_copies(c4(), c4()), 8); }

TEST(Hom, UniformityMismatch) {
  EXPECT_THROW(hom_count(c4(), Hypergraph::empty(3, 4)), InvalidArgument);
  EXPECT_THROW(labeled_copies(c4(), Hypergraph::empty(3, 4)), InvalidArgument);
}

TEST(Hom, MatchesOracleOnRandomInstances) {
  std::mt19937_64 rng(41);
  for (int r = 0; r < 60; ++r) {
    int k = 2 + r % 2;
    SetSystem q = random_sets(rng, k, 2);
    Hypergraph f = build_mq(q).flatten();
    Vertex n = static_cast<Vertex>(4 + rng() % 3);
    Hypergraph h = random_hypergraph(n, k, Q(static_cast<long>(1 + rng() % 7), 8), rng());
    mpz_class hom = hom_count(f, h), copies = labeled_copies(f, h);
    EXPECT_EQ(hom, oracle::hom_count(f, h));
    EXPECT_EQ(copies, oracle::labeled_copies(f, h));
    EXPECT_GE(hom, copies);
  }
}

TEST(Hom, DisconnectedPatternAndIsolatedVertices) {
  Hypergraph f(2, 5, {{0, 1}, {2, 3}});  // two disjoint edges plus an isolated vertex
  Hypergraph h = random_hypergraph(6, 2, Q(1, 2), 8);
  EXPECT_EQ(hom_count(f, h), oracle::hom_count(f, h));
  EXPECT_EQ(labeled_copies(f, h), oracle::labeled_copies(f, h));
  EXPECT_EQ(components(f).size(), 3u);
}

TEST(Hom, ThreadsGiveIdenticalCounts) {
  Hypergraph f = build_mq(SetSystem::level(3, 2)).flatten();
  Hypergraph h = random_hypergraph(14, 3, Q(1, 2), 9);
  mpz_class serial = hom_count(f, h), copies = labeled_copies(f, h);
  for (unsigned t : {2u, 3u, 4u}) {
    EXPECT_EQ(hom_count(f, h, CountOptions{t}), serial);
    EXPECT_EQ(labeled_copies(f, h, CountOptions{t}), copies);
  }
}

TEST(Induced, CompleteHost) {
  Hypergraph f(3, 5, {{0, 1, 2}, {0, 3, 4}});
  EXPECT_EQ(induced_wrt_count(f, f, Hypergraph::complete(3, 7)), falling_factorial(7, 5));
}

TEST(Induced, PartitionOfInjections) {
  Hypergraph f(3, 5, {{0, 1, 2}, {0, 3, 4}});
  Hypergraph h = random_hypergraph(7, 3, Q(1, 2), 10);
  auto edges = f.edges();
  mpz_class sum = 0;
  for (std::uint32_t mask = 0; mask < 4; ++mask) {
    std::vector<Tuple> sub;
    for (std::size_t e = 0; e < 2; ++e)
      if (mask & (1U << e)) sub.push_back(edges[e]);
    Hypergraph fs(3, 5, sub);
    mpz_class direct = induced_wrt_count(fs, f, h);
    EXPECT_EQ(direct, induced_wrt_count_inclusion_exclusion(fs, f, h));
    EXPECT_EQ(direct, oracle::induced_count(fs, f, h));
    sum += direct;
  }
  EXPECT_EQ(sum, falling_factorial(7, 5));
}

TEST(Induced, InclusionExclusionOnRandomPatterns) {
  std::mt19937_64 rng(43);
  for (int r = 0; r < 20; ++r) {
    Hypergraph f = build_mq(random_sets(rng, 2, 2)).flatten();
    if (f.n() > 6) continue;
    Vertex n = static_cast<Vertex>(f.n() + rng() % 3);
    Hypergraph h = random_hypergraph(n, 2, Q(1, 2), rng());
    auto edges = f.edges();
    for (std::uint32_t mask = 0; mask < (1U << edges.size()); ++mask) {
      std::vector<Tuple> sub;
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (mask & (1U << e)) sub.push_back(edges[e]);
      Hypergraph fs(2, f.n(), sub);
      EXPECT_EQ(induced_wrt_count(fs, f, h), induced_wrt_count_inclusion_exclusion(fs, f, h));
    }
  }
}

TEST(Induced, RejectsNonSpanningSub) {
  Hypergraph f(2, 3, {{0, 1}});
  Hypergraph other(2, 3, {{1, 2}});
  EXPECT_THROW(induced_wrt_count(other, f, Hypergraph::complete(2, 4)), InvalidArgument);
}

TEST(Cl, CompleteHostDegenerateDeficit) {
  Hypergraph f(3, 5, {{0, 1, 2}, {0, 3, 4}});
  ClReport r = cl_check(Hypergraph::complete(3, 9), f, Scalar(Q(1)));
  mpq_class deficit = mpq_class(pow_z(9, 5) - falling_factorial(9, 5)) / mpq_class(pow_z(9, 5));
  EXPECT_EQ(r.normalized_error, Scalar(deficit));
}

TEST(Cl, EmptyHost) {
  ClReport r = cl_check(Hypergraph::empty(3, 9), Hypergraph(3, 3, {{0, 1, 2}}), Scalar(Q(0)));
  EXPECT_TRUE(r.normalized_error.is_zero());
}

TEST(Cl, RandomHostIsClose) {
  Hypergraph f(3, 5, {{0, 1, 2}, {0, 3, 4}});
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Hypergraph h = random_hypergraph(50, 3, Q(1, 2), seed);
    EXPECT_LT(cl_check(h, f, Scalar(Q(1, 2))).normalized_error.to_double(), 0.03);
  }
}

TEST(Cl, RandomHostFluctuationAroundFallingFactorial) {
  // The same hosts measured against d^e n^(v) (falling factorial) instead of d^e n^v.
  Hypergraph f(3, 5, {{0, 1, 2}, {0, 3, 4}});
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Hypergraph h = random_hypergraph(50, 3, Q(1, 2), seed);
    mpq_class target = Q(1, 4) * mpq_class(falling_factorial(50, 5));
    double err = std::abs(mpq_class(mpq_class(labeled_copies(f, h)) - target).get_d()) / std::pow(50.0, 5);
    EXPECT_LT(err, 0.03);
  }
}
