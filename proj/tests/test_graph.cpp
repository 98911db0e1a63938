#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plumbo/fixtures.hpp"
#include "plumbo/graph.hpp"

using namespace plumbo;

TEST_CASE("parse and serialize round trip") {
  const std::string text =
      R"({"vertices":[{"id":"b","framing":-2},{"id":"a","framing":-1}],"edges":[["a","b"]]})";
  const auto doc = parse_graph(text);
  const auto& g = std::get<PlumbingGraph>(doc);
  CHECK(g.size() == 2);
  CHECK(g.id(0) == "a");  // sorted ids
  CHECK(g.framing(1) == -2);
  CHECK(std::get<PlumbingGraph>(parse_graph(serialize_graph(doc))) == g);
}

TEST_CASE("marked graph document") {
  const std::string text =
      R"({"vertices":[{"id":"c","framing":-1},{"id":"v"}],"edges":[["c","v"]],"distinguished":"v"})";
  const auto mg = std::get<MarkedGraph>(parse_graph(text));
  CHECK(mg.v0 == "v");
  CHECK(mg.attachments == std::vector<std::size_t>{0});
  CHECK(std::get<MarkedGraph>(parse_graph(serialize_graph(mg))) == mg);
}

TEST_CASE("input errors") {
  CHECK_THROWS_AS(parse_graph("{"), InputError);
  CHECK_THROWS_AS(parse_graph(R"({"edges":[]})"), InputError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":[{"id":"a"}]})"), InputError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":[{"id":"a","framing":-1},{"id":"a","framing":-2}]})"), InputError);
  // triangle
  CHECK_THROWS_AS(parse_graph(R"({"vertices":[{"id":"a","framing":-3},{"id":"b","framing":-3},{"id":"c","framing":-3}],
                                  "edges":[["a","b"],["b","c"],["c","a"]]})"),
                  InputError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":[{"id":"a","framing":-1}],"edges":[["a","a"]]})"), InputError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":[{"id":"a","framing":-1}],"edges":[["a","z"]]})"), InputError);
}

TEST_CASE("intersection form of known graphs") {
  CHECK(intersection_form(fixtures::e8()).determinant == 1);
  CHECK(intersection_form(fixtures::e8()).negative_definite);
  CHECK(intersection_form(fixtures::a_chain(3)).determinant == -4);
  CHECK(intersection_form(fixtures::sigma237()).negative_definite);
  CHECK_FALSE(intersection_form(fixtures::chain({-1, -1})).negative_definite);
  CHECK_THROWS_AS(require_negative_definite(fixtures::chain({-1, -1}), "t"), InputError);
}

TEST_CASE("marking and re-framing are inverse") {
  const auto g = fixtures::completed_trefoil();
  const auto w = g.index_of("v0");
  const auto mg = mark_vertex(g, w);
  CHECK(mg.graph.size() == 3);
  CHECK(mg.v0_is_leaf());
  CHECK(with_framing(mg, g.framing(w)) == g);
}

TEST_CASE("connected sum renames and keeps both attachments") {
  const auto s = fixtures::trefoil_sum_mark();
  CHECK(s.graph.size() == 6);
  CHECK(s.attachments.size() == 2);
  CHECK(s.graph.components().size() == 2);
  CHECK(s.graph.has_vertex("c'"));
}

TEST_CASE("chain expansion") {
  const auto g = chain_expand(fixtures::unknot_mark(), 3);
  // (-1) becomes (-2) followed by two new (-2)'s
  CHECK(g.size() == 3);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.framing(i) == -2);
  CHECK(g.components().size() == 1);
  CHECK_THROWS_AS(chain_expand(fixtures::trefoil_sum_mark(), 2), InputError);
}

TEST_CASE("corpus is negative definite and complete") {
  const auto c = fixtures::corpus();
  CHECK(c.size() == 458);
  for (const auto& g : c) CHECK(intersection_form(g).negative_definite);
}
