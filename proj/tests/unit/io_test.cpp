#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "quasihyper/error.hpp"
#include "quasihyper/io.hpp"
#include "support.hpp"

using namespace qh_test;
namespace io = quasihyper::io;

TEST(IoHypergraph, JsonRoundTrip) {
  Hypergraph h(3, 5, {{0, 1, 2}, {4, 3, 1}});
  auto j = io::to_json(h);
  EXPECT_EQ(io::hypergraph_from_json(j), h);
  EXPECT_EQ(j["k"], 3);
  EXPECT_EQ(j["n"], 5);
}

TEST(IoHypergraph, JsonDuplicatesWarn) {
  std::vector<std::string> w;
  auto h = io::hypergraph_from_json(io::json::parse(R"({"k":2,"n":3,"edges":[[0,1],[0,1],[1,2]]})"), &w);
  EXPECT_EQ(h.edge_count(), 2u);
  EXPECT_EQ(w.size(), 1u);
}

TEST(IoHypergraph, JsonErrors) {
  EXPECT_THROW(io::hypergraph_from_json(io::json::parse(R"({"k":2,"edges":[]})")), ParseError);
  EXPECT_THROW(io::hypergraph_from_json(io::json::parse(R"({"k":2,"n":3,"edges":[[0,3]]})")), ParseError);
  EXPECT_THROW(io::hypergraph_from_json(io::json::parse(R"({"k":2,"n":3,"edges":[[0,0]]})")), ParseError);
  EXPECT_THROW(io::hypergraph_from_json(io::json::parse(R"({"k":0,"n":3,"edges":[]})")), ParseError);
  EXPECT_THROW(io::hypergraph_from_json(io::json::parse(R"({"k":2,"n":3,"edges":[[0,-1]]})")), ParseError);
}

TEST(IoHypergraph, LoadPicksFormat) {
  auto dir = std::filesystem::temp_directory_path();
  auto text = dir / "qh_io_text.txt";
  auto js = dir / "qh_io_json.json";
  std::ofstream(text) << "2 3\n0 1\n1 2\n";
  std::ofstream(js) << "  {\"k\":2,\"n\":3,\"edges\":[[0,1],[1,2]]}";
  EXPECT_EQ(io::load_hypergraph(text.string()), io::load_hypergraph(js.string()));
  EXPECT_THROW(io::load_hypergraph((dir / "qh_io_missing").string()), ParseError);
  std::filesystem::remove(text);
  std::filesystem::remove(js);
}

TEST(IoSetSystem, OrderIsKept) {
  auto q = io::setsystem_from_json(io::json::parse(R"({"k":3,"sets":[[2,3],[1]]})"));
  EXPECT_EQ(q, sets(3, {{2, 3}, {1}}));
  EXPECT_EQ(io::setsystem_from_json(io::to_json(q)), q);
}

TEST(IoSetSystem, Errors) {
  EXPECT_THROW(io::setsystem_from_json(io::json::parse(R"({"k":3,"sets":[[4]]})")), ParseError);
  EXPECT_THROW(io::setsystem_from_json(io::json::parse(R"({"k":3,"sets":[[0]]})")), ParseError);
  EXPECT_THROW(io::setsystem_from_json(io::json::parse(R"({"k":3,"sets":[1]})")), ParseError);
  EXPECT_THROW(io::setsystem_from_json(io::json::parse(R"({"k":17,"sets":[]})")), ParseError);
  EXPECT_THROW(io::setsystem_from_json(io::json::parse(R"({"sets":[]})")), ParseError);
}

TEST(IoFamily, CompleteEmptyAndTuples) {
  auto g = io::family_from_json(
      io::json::parse(R"({"k":3,"n":4,"sets":[[1,2],[3],[1,3]],"members":["complete","empty",[[0,1],[2,3]]]})"));
  EXPECT_EQ(g.member(0).count(), 16u);
  EXPECT_EQ(g.member(1).count(), 0u);
  EXPECT_EQ(g.member(2).count(), 2u);
  EXPECT_EQ(io::family_from_json(io::to_json(g)), g);
}

TEST(IoFamily, Errors) {
  EXPECT_THROW(io::family_from_json(io::json::parse(R"({"k":2,"n":3,"sets":[[1]],"members":[]})")), ParseError);
  EXPECT_THROW(io::family_from_json(io::json::parse(R"({"k":2,"n":3,"sets":[[1]],"members":["full"]})")), ParseError);
  EXPECT_THROW(io::family_from_json(io::json::parse(R"({"k":2,"n":3,"sets":[[1]],"members":[[[0,1]]]})")), ParseError);
  EXPECT_THROW(io::family_from_json(io::json::parse(R"({"k":2,"n":3,"sets":[[1]],"members":[[[3]]]})")), ParseError);
}

TEST(IoWeights, Specs) {
  auto w = io::weights_from_json(
      io::json::parse(R"({"k":2,"sets":[[1],[2]],"functions":[
        {"type":"constant","value":"-1/3"},
        {"type":"table","values":[0, 0.5, "1"]}]})"),
      3);
  Tuple a{1}, b{1}, c{2};
  EXPECT_EQ(w.function(0).value(a), Q(-1, 3));
  EXPECT_EQ(w.function(1).value(b), Q(1, 2));
  EXPECT_EQ(w.function(1).value(c), Q(1));

  auto r = io::weights_from_json(io::json::parse(R"({"k":2,"sets":[[1],[2]],"type":"random","seed":5})"), 4);
  ASSERT_EQ(r.size(), 2u);
  for (Vertex v = 0; v < 4; ++v) {
    Tuple t{v};
    EXPECT_LE(abs(r.function(0).value(t)), 1);
  }
}

TEST(IoWeights, Errors) {
  EXPECT_THROW(io::weights_from_json(io::json::parse(R"({"k":2,"sets":[[1]],"type":"constant","value":"3/2"})"), 3),
               ParseError);
  EXPECT_THROW(io::weights_from_json(io::json::parse(R"({"k":2,"sets":[[1]],"type":"bogus"})"), 3), ParseError);
  EXPECT_THROW(io::weights_from_json(io::json::parse(R"({"k":2,"sets":[[1]],"type":"table","values":[0]})"), 3),
               ParseError);
  EXPECT_THROW(
      io::weights_from_json(io::json::parse(R"({"k":2,"sets":[[1],[2]],"functions":[{"type":"constant","value":0}]})"), 3),
      ParseError);
}

TEST(IoScalar, ExactAndFloat) {
  EXPECT_EQ(io::to_json(Scalar(Q(2, 4))), "1/2");
  EXPECT_EQ(io::scalar_from_json(io::json("3/6")).exact(), Q(1, 2));
  EXPECT_EQ(io::scalar_from_json(io::json(7)).exact(), Q(7));
  EXPECT_EQ(io::scalar_from_json(io::json(0.25)).exact(), Q(1, 4));
  EXPECT_THROW(io::scalar_from_json(io::json::array()), ParseError);
}
