#include <gtest/gtest.h>

#include "quasihyper/error.hpp"
#include "quasihyper/hypergraph.hpp"
#include "quasihyper/scalar.hpp"
#include "support.hpp"

using namespace qh_test;

TEST(Parse, GraphWithTwoEdges) {
  Hypergraph h = parse_hypergraph("2 4\n0 1\n2 3\n");
  EXPECT_EQ(h.k(), 2);
  EXPECT_EQ(h.n(), 4u);
  EXPECT_EQ(h.edge_count(), 2u);
}

TEST(Parse, ThreeUniformSingleEdge) {
  Hypergraph h = parse_hypergraph("3 5\n0 1 2\n");
  EXPECT_EQ(h.k(), 3);
  EXPECT_EQ(h.n(), 5u);
  EXPECT_EQ(h.edge_count(), 1u);
}

TEST(Parse, RepeatedVertexIsAnError) { EXPECT_THROW(parse_hypergraph("2 3\n0 0\n"), ParseError); }

TEST(Parse, Errors) {
  EXPECT_THROW(parse_hypergraph(""), ParseError);
  EXPECT_THROW(parse_hypergraph("2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_hypergraph("2 3\n0 3\n"), ParseError);
  EXPECT_THROW(parse_hypergraph("2 3\n0 1 2\n"), ParseError);
  EXPECT_THROW(parse_hypergraph("2 3\n0 x\n"), ParseError);
}

TEST(Parse, DuplicateEdgeWarnsAndDedupes) {
  std::vector<std::string> warnings;
  Hypergraph h = parse_hypergraph("2 3\n0 1\n# comment\n\n1 0\n1 2\n", &warnings);
  EXPECT_EQ(h.edge_count(), 2u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Parse, RoundTrip) {
  std::string canonical = "3 6\n0 1 2\n0 2 5\n3 4 5\n";
  EXPECT_EQ(serialize_hypergraph(parse_hypergraph(canonical)), canonical);
  Hypergraph h = parse_hypergraph("3 6\n# x\n5 4 3\n2 0 1\n5 0 2\n");
  EXPECT_EQ(serialize_hypergraph(h), canonical);
  EXPECT_EQ(parse_hypergraph(serialize_hypergraph(h)), h);
}

TEST(Density, Examples) {
  EXPECT_EQ(density(Hypergraph::complete(3, 5)), Scalar(Q(1)));
  EXPECT_EQ(density(Hypergraph::empty(3, 5)), Scalar(Q(0)));
  Hypergraph k4_minus = Hypergraph(2, 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_EQ(density(k4_minus), Scalar(Q(5, 6)));
  EXPECT_THROW(density(Hypergraph::empty(3, 2)), InvalidArgument);
}

TEST(EdgeIndicator, Examples) {
  Hypergraph h(3, 5, {{0, 1, 2}});
  Scalar half(Q(1, 2));
  Tuple ordering = {2, 0, 1}, repeat = {0, 0, 1}, non_edge = {0, 1, 3};
  EXPECT_EQ(edge_indicator(h, half, ordering), Scalar(Q(1, 2)));
  EXPECT_EQ(edge_indicator(h, half, repeat), Scalar(Q(-1, 2)));
  EXPECT_EQ(edge_indicator(h, Scalar(Q(0)), non_edge), Scalar(Q(0)));
  Tuple out = {0, 1, 5};
  EXPECT_THROW(edge_indicator(h, half, out), InvalidArgument);
}

TEST(EdgeIndicator, SumOverAllTuples) {
  // sum_t (1_E(t) - d) = k!|E| - d n^k; with d = density this is -d * (n^k - n^(k)).
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Hypergraph h = random_hypergraph(7, 3, Q(1, 3), seed);
    Scalar d = density(h);
    Scalar total;
    Tuple t(3);
    for (t[0] = 0; t[0] < 7; ++t[0])
      for (t[1] = 0; t[1] < 7; ++t[1])
        for (t[2] = 0; t[2] < 7; ++t[2]) {
          Scalar v = edge_indicator(h, d, t);
          EXPECT_TRUE(v == Scalar(Q(1)) - d || v == -d);
          total += v;
        }
    EXPECT_EQ(total, -d * Scalar(degenerate_tuple_count(7, 3)));
    EXPECT_EQ(abs(total), d * Scalar(degenerate_tuple_count(7, 3)));
  }
}

TEST(DegenerateTupleCount, MatchesFormula) {
  EXPECT_EQ(degenerate_tuple_count(5, 2), mpz_class(5));
  EXPECT_EQ(degenerate_tuple_count(4, 3), mpz_class(64 - 24));
  EXPECT_EQ(degenerate_tuple_count(2, 3), mpz_class(8));
}

TEST(Scalar, ParseAndArithmetic) {
  EXPECT_EQ(Scalar::parse("3/6"), Scalar(Q(1, 2)));
  EXPECT_EQ(Scalar::parse("0.25"), Scalar(Q(1, 4)));
  EXPECT_EQ(Scalar::parse("-7"), Scalar(Q(-7)));
  EXPECT_THROW(Scalar::parse("1/0"), ParseError);
  EXPECT_THROW(Scalar::parse("abc"), ParseError);
  Scalar a(Q(1, 3)), b(Q(1, 6));
  EXPECT_EQ(a + b, Scalar(Q(1, 2)));
  EXPECT_EQ(a * b, Scalar(Q(1, 18)));
  EXPECT_TRUE((a + Scalar(0.5)).is_exact() == false);
  EXPECT_EQ(Scalar(Q(1, 4)).as_mode(EvalMode::floating).to_double(), 0.25);
}

TEST(Scalar, ExactSumIsOrderIndependent) {
  std::vector<Scalar> xs;
  for (int i = 1; i <= 30; ++i) xs.emplace_back(Q(i % 7 - 3, i));
  Scalar forward, backward;
  for (const auto& x : xs) forward += x;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) backward += *it;
  EXPECT_EQ(forward, backward);
}

TEST(Scalar, Combinatorics) {
  EXPECT_EQ(falling_factorial(6, 3), mpz_class(120));
  EXPECT_EQ(falling_factorial(2, 3), mpz_class(0));
  EXPECT_EQ(binomial(6, 3), mpz_class(20));
  EXPECT_EQ(pow_q(Q(1, 2), 3), Q(1, 8));
  EXPECT_EQ(pow_z(0, 0), mpz_class(1));
}

TEST(CompensatedSum, CancelsRoundoff) {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1000.0);
}
