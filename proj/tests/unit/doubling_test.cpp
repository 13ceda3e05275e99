#include <gtest/gtest.h>

#include <set>

#include "quasihyper/doubling.hpp"
#include "quasihyper/error.hpp"
#include "quasihyper/oracle.hpp"
#include "support.hpp"

using namespace qh_test;

namespace {

std::vector<std::size_t> degrees(const Hypergraph& h) {
  std::vector<std::size_t> d(h.n(), 0);
  for (std::size_t e = 0; e < h.edge_count(); ++e)
    for (Vertex v : h.edge(e)) ++d[v];
  return d;
}

PartiteHypergraph random_partite(std::mt19937_64& rng, int k) {
  PartiteHypergraph base = build_mq(random_sets(rng, k, 3, true));
  std::vector<std::vector<std::uint32_t>> edges;
  for (const auto& e : base.edges())
    if (rng() & 1U) edges.push_back(e);
  if (edges.empty()) edges.push_back(base.edges().front());
  return PartiteHypergraph(k, base.tags(), base.bit_labels(), edges);
}

}  // namespace

TEST(Double, FullSetLeavesHypergraphUnchanged) {
  std::mt19937_64 rng(3);
  for (int r = 0; r < 20; ++r) {
    int k = 2 + r % 3;
    PartiteHypergraph f = random_partite(rng, k);
    PartiteHypergraph g = double_along(f, full_subset(k));
    EXPECT_EQ(g.edges(), f.edges());
    for (int c = 0; c < k; ++c) EXPECT_EQ(g.class_size(c), f.class_size(c));
  }
}

TEST(Double, SingleEdgeAlongOneClassIsAPath) {
  PartiteHypergraph p = double_along(PartiteHypergraph::single_edge(2), make_subset({1}));
  EXPECT_EQ(p.vertex_count(), 3u);
  EXPECT_EQ(p.edge_count(), 2u);
  EXPECT_EQ(p.class_size(0), 1u);
  EXPECT_EQ(p.class_size(1), 2u);
  for (const auto& e : p.edges()) EXPECT_EQ(e[0], 0u);
}

TEST(Double, ClassSizes) {
  std::mt19937_64 rng(5);
  for (int r = 0; r < 50; ++r) {
    int k = 2 + r % 4;
    PartiteHypergraph f = random_partite(rng, k);
    Subset q = static_cast<Subset>(rng() % (full_subset(k) + 1));
    PartiteHypergraph g = double_along(f, q);
    for (int c = 0; c < k; ++c)
      EXPECT_EQ(g.class_size(c), subset_has(q, c + 1) ? f.class_size(c) : 2 * f.class_size(c));
    EXPECT_EQ(g.edge_count(), q == full_subset(k) ? f.edge_count() : 2 * f.edge_count());
  }
}

TEST(Double, RejectsOutOfRangeClass) {
  EXPECT_THROW(double_along(PartiteHypergraph::single_edge(2), make_subset({3})), InvalidArgument);
}

TEST(BuildMQ, EmptyQIsSingleEdge) {
  PartiteHypergraph m = build_mq(SetSystem(4, {}));
  EXPECT_EQ(m.vertex_count(), 4u);
  EXPECT_EQ(m.edge_count(), 1u);
}

TEST(BuildMQ, C4) {
  Hypergraph c4 = build_mq(SetSystem::level(2, 1)).flatten();
  EXPECT_EQ(c4.n(), 4u);
  EXPECT_EQ(c4.edge_count(), 4u);
  for (std::size_t d : degrees(c4)) EXPECT_EQ(d, 2u);
  // A 2-regular graph on 4 vertices with 4 edges is C4 (the alternative would need a triangle plus an isolated vertex).
  for (std::size_t e = 0; e < 4; ++e)
    for (std::size_t f = e + 1; f < 4; ++f) {
      auto a = c4.edge(e), b = c4.edge(f);
      std::set<Vertex> u(a.begin(), a.end());
      u.insert(b.begin(), b.end());
      EXPECT_GE(u.size(), 3u);
    }
}

TEST(BuildMQ, Octahedron) {
  PartiteHypergraph m = build_mq(SetSystem::level(3, 2));
  EXPECT_EQ(m.vertex_count(), 6u);
  EXPECT_EQ(m.edge_count(), 8u);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(m.class_size(c), 2u);
  std::set<std::vector<std::uint32_t>> transversals(m.edges().begin(), m.edges().end());
  EXPECT_EQ(transversals.size(), 8u);  // every transversal of K_{2,2,2}
}

TEST(BuildMQ, RejectsFullSet) { EXPECT_THROW(build_mq(sets(2, {{1}, {1, 2}})), InvalidArgument); }

TEST(BuildMQ, MatchesDirectConstruction) {
  std::mt19937_64 rng(17);
  for (int r = 0; r < 100; ++r) {
    SetSystem q = random_sets(rng, 2 + r % 4, 6, true);
    Hypergraph built = build_mq(q).flatten();
    Hypergraph direct = oracle::mq_direct(q);
    EXPECT_EQ(built.n(), direct.n());
    EXPECT_EQ(built.edge_count(), direct.edge_count());
    auto db = degrees(built), dd = degrees(direct);
    std::sort(db.begin(), db.end());
    std::sort(dd.begin(), dd.end());
    EXPECT_EQ(db, dd);
  }
}

TEST(MqSize, Examples) {
  EXPECT_EQ(mq_size(SetSystem::level(2, 1)), (MqSize{4, 4}));
  EXPECT_EQ(mq_size(SetSystem::level(3, 2)), (MqSize{6, 8}));
  EXPECT_EQ(mq_size(SetSystem::level(3, 1)), (MqSize{12, 8}));
  PartiteHypergraph m = build_mq(SetSystem::level(3, 1));
  EXPECT_EQ(m.vertex_count(), 12u);
  EXPECT_EQ(m.edge_count(), 8u);
  EXPECT_THROW(mq_size(SetSystem::level(2, 2)), InvalidArgument);
}

TEST(MqSize, MatchesBuiltHypergraph) {
  std::mt19937_64 rng(19);
  for (int r = 0; r < 200; ++r) {
    SetSystem q = random_sets(rng, 1 + r % 5, 7, true);
    PartiteHypergraph m = build_mq(q);
    EXPECT_EQ(mq_size(q), (MqSize{m.vertex_count(), m.edge_count()}));
  }
}

TEST(Commutes, Examples) {
  std::mt19937_64 rng(23);
  PartiteHypergraph f = random_partite(rng, 3);
  EXPECT_TRUE(verify_doubling_commutes(f, make_subset({1, 3}), make_subset({1, 3})));
  EXPECT_TRUE(verify_doubling_commutes(PartiteHypergraph::single_edge(3), make_subset({1}), make_subset({2})));
  for (int r = 0; r < 100; ++r) {
    int k = 2 + r % 3;
    PartiteHypergraph g = random_partite(rng, k);
    Subset q = static_cast<Subset>(rng() % (full_subset(k) + 1)), s = static_cast<Subset>(rng() % (full_subset(k) + 1));
    EXPECT_TRUE(verify_doubling_commutes(g, q, s));
  }
}

TEST(Commutes, CanonicalFormDistinguishesDifferentHypergraphs) {
  PartiteHypergraph e = PartiteHypergraph::single_edge(3);
  EXPECT_NE(double_along(e, make_subset({1})).canonical(), double_along(e, make_subset({2})).canonical());
}

TEST(ExponentIdentity, Examples) {
  ExponentIdentity e0 = exponent_identity(SetSystem(4, {}));
  EXPECT_TRUE(e0.holds);
  EXPECT_EQ(e0.lhs, 4u);
  ExponentIdentity c4 = exponent_identity(SetSystem::level(2, 1));
  EXPECT_TRUE(c4.holds);
  EXPECT_EQ(c4.lhs, 8u);
  EXPECT_EQ(c4.rhs, 8u);
  ExponentIdentity oct = exponent_identity(SetSystem::level(3, 2));
  EXPECT_TRUE(oct.holds);
  EXPECT_EQ(oct.lhs, 24u);
  EXPECT_THROW(exponent_identity(SetSystem::level(2, 2)), InvalidArgument);
}
