#include <gtest/gtest.h>

#include "quasihyper/error.hpp"
#include "quasihyper/family.hpp"
#include "support.hpp"

using namespace qh_test;

TEST(TupleSetTest, InsertEraseCount) {
  TupleSet s(2, 70);
  Tuple a{3, 65}, b{69, 0};
  s.insert(a);
  s.insert(b);
  s.insert(a);
  EXPECT_EQ(s.count(), 2u);
  EXPECT_TRUE(s.contains(a));
  s.erase(a);
  EXPECT_FALSE(s.contains(a));
  EXPECT_EQ(s.count(), 1u);
  Tuple bad{70, 0};
  EXPECT_THROW(s.insert(bad), InvalidArgument);
  Tuple short_tuple{1};
  EXPECT_THROW(s.contains(short_tuple), InvalidArgument);
}

TEST(TupleSetTest, FullAndOrder) {
  TupleSet s(3, 3, true);
  EXPECT_EQ(s.count(), 27u);
  std::vector<Tuple> seen;
  s.for_each([&](std::span<const Vertex> t) { seen.emplace_back(t.begin(), t.end()); });
  ASSERT_EQ(seen.size(), 27u);
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
  TupleSet zero(0, 5, true);
  EXPECT_EQ(zero.count(), 1u);
}

TEST(TupleSpace, Budget) {
  EXPECT_EQ(tuple_space(10, 3, 1000), 1000u);
  EXPECT_THROW(tuple_space(10, 4, 1000), BudgetExceeded);
}

TEST(ProjectTest, Coordinates) {
  Tuple v{7, 8, 9, 10};
  EXPECT_EQ(project(v, make_subset({2, 4})), (Tuple{8, 10}));
  EXPECT_TRUE(project(v, 0).empty());
  EXPECT_TRUE(has_repeat(Tuple{1, 2, 1}));
  EXPECT_FALSE(has_repeat(Tuple{1, 2, 3}));
}

TEST(DirectedFamilyTest, Supports) {
  auto q = sets(3, {{1, 2}, {3}});
  auto g = DirectedFamily::complete(q, 4);
  Tuple v{0, 1, 2};
  EXPECT_TRUE(g.supports(v));
  Tuple e{1, 0};
  g.member(0).erase(e);
  Tuple w{1, 0, 2};
  EXPECT_FALSE(g.supports(w));
  EXPECT_FALSE(DirectedFamily::empty(q, 4).supports(v));
  EXPECT_THROW(DirectedFamily(q, 4, {TupleSet(2, 4)}), InvalidArgument);
  EXPECT_THROW(DirectedFamily(q, 4, {TupleSet(2, 4), TupleSet(2, 4)}), InvalidArgument);
}

TEST(WeightFunctionTest, ZeroOnRepeats) {
  WeightFunction c(2, 4, WeightFunction::Constant{Q(-1, 2)});
  Tuple ok{0, 1}, rep{2, 2};
  EXPECT_EQ(c.value(ok), Q(-1, 2));
  EXPECT_EQ(c.value(rep), 0);
  EXPECT_EQ(c.numerator(ok), -1);
  EXPECT_EQ(c.denominator(), 2);
  EXPECT_EQ(c.part(ok, false), Q(1, 2));
  EXPECT_EQ(c.part(ok, true), 0);
}

TEST(WeightFunctionTest, RangeChecked) {
  EXPECT_THROW(WeightFunction(1, 3, WeightFunction::Constant{Q(2)}), InvalidArgument);
  EXPECT_THROW(WeightFunction(1, 3, WeightFunction::Table{{Q(0), Q(0)}}), InvalidArgument);
  EXPECT_THROW(WeightFunction(1, 3, WeightFunction::Random{1, 0}), InvalidArgument);
}

TEST(WeightFunctionTest, RandomIsDeterministicAndBounded) {
  WeightFunction a(2, 6, WeightFunction::Random{9, 100});
  WeightFunction b(2, 6, WeightFunction::Random{9, 100});
  WeightFunction c(2, 6, WeightFunction::Random{10, 100});
  bool differs = false;
  for (Vertex x = 0; x < 6; ++x)
    for (Vertex y = 0; y < 6; ++y) {
      Tuple t{x, y};
      EXPECT_EQ(a.value(t), b.value(t));
      EXPECT_LE(abs(a.value(t)), 1);
      EXPECT_DOUBLE_EQ(a.value_double(t), a.value(t).get_d());
      differs = differs || a.value(t) != c.value(t);
    }
  EXPECT_TRUE(differs);
}

TEST(WeightFunctionTest, TableMatchesNumerators) {
  std::vector<mpq_class> vals;
  for (int i = 0; i < 9; ++i) vals.push_back(Q(i - 4, 6));
  WeightFunction w(2, 3, WeightFunction::Table{vals});
  auto table = w.numerator_table();
  ASSERT_EQ(table.size(), 9u);
  for (Vertex x = 0; x < 3; ++x)
    for (Vertex y = 0; y < 3; ++y) {
      Tuple t{x, y};
      EXPECT_EQ(Q(table[x * 3 + y], w.denominator()), w.value(t));
    }
}

TEST(WeightEnsembleTest, IndicatorOfFamily) {
  auto q = sets(2, {{1}, {1, 2}});
  auto g = DirectedFamily::empty(q, 3);
  Tuple p{1, 2};
  g.member(1).insert(p);
  auto w = WeightEnsemble::indicator(g);
  EXPECT_EQ(w.function(1).value(p), 1);
  Tuple r{2, 1};
  EXPECT_EQ(w.function(1).value(r), 0);
  Tuple s{0};
  EXPECT_EQ(w.function(0).value(s), 0);
}
