#ifndef PLUMBO_FIXTURES_HPP
#define PLUMBO_FIXTURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "plumbo/errors.hpp"
#include "plumbo/graph.hpp"
#include "plumbo/linalg.hpp"

namespace plumbo::fixtures {

inline PlumbingGraph one_vertex(std::int64_t m) { return PlumbingGraph({{"a", m}}, {}); }

/// Linear chain with the given framings, vertices c1, c2, ...
inline PlumbingGraph chain(const std::vector<std::int64_t>& framings) {
  std::vector<std::pair<std::string, std::int64_t>> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t i = 0; i < framings.size(); ++i) {
    vs.emplace_back("c" + std::to_string(i + 1), framings[i]);
    if (i > 0) es.emplace_back("c" + std::to_string(i), "c" + std::to_string(i + 1));
  }
  return PlumbingGraph(std::move(vs), es);
}

/// A_n: n vertices of framing -2 in a line.
inline PlumbingGraph a_chain(std::size_t n) { return chain(std::vector<std::int64_t>(n, -2)); }

/// Star with centre framing `centre` and one leg per entry of `legs`.
inline PlumbingGraph star(std::int64_t centre, const std::vector<std::vector<std::int64_t>>& legs) {
  std::vector<std::pair<std::string, std::int64_t>> vs{{"c", centre}};
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t l = 0; l < legs.size(); ++l) {
    std::string prev = "c";
    for (std::size_t j = 0; j < legs[l].size(); ++j) {
      const std::string id = std::string(1, static_cast<char>('p' + l)) + std::to_string(j + 1);
      vs.emplace_back(id, legs[l][j]);
      es.emplace_back(prev, id);
      prev = id;
    }
  }
  return PlumbingGraph(std::move(vs), es);
}

/// E8: arms of length 1, 2, 4 at a trivalent -2 vertex.
inline PlumbingGraph e8() { return star(-2, {{-2}, {-2, -2}, {-2, -2, -2, -2}}); }

/// Sigma(2,3,7): (-1; -2, -3, -7).
inline PlumbingGraph sigma237() { return star(-1, {{-2}, {-3}, {-7}}); }

inline MarkedGraph unknot_mark() { return MarkedGraph(one_vertex(-1), "v0", {0}); }

/// (-1; -2, -3) with v0 on the centre.
inline MarkedGraph trefoil_mark() {
  auto g = star(-1, {{-2}, {-3}});
  const auto c = g.index_of("c");
  return MarkedGraph(std::move(g), "v0", {c});
}

inline MarkedGraph trefoil_sum_mark() { return connected_sum(trefoil_mark(), trefoil_mark()); }

/// The trefoil mark with v0 framed -7; v0 is a leaf whose removal leaves a
/// rational graph.
inline PlumbingGraph completed_trefoil() { return with_framing(trefoil_mark(), -7); }

inline PlumbingGraph chain_12() { return chain({-1, -2}); }

/// Two (-1; -2, -3) stars whose centres are joined through w (framing -13).
/// Not almost rational; G - w has two rational components.
inline PlumbingGraph type2() {
  return PlumbingGraph({{"a1", -1}, {"a2", -2}, {"a3", -3}, {"b1", -1}, {"b2", -2}, {"b3", -3}, {"w", -13}},
                       {{"a1", "a2"}, {"a1", "a3"}, {"b1", "b2"}, {"b1", "b3"}, {"a1", "w"}, {"b1", "w"}});
}

struct Named {
  std::string name;
  GraphDocument doc;
};

/// Every built-in fixture, in a fixed order.
inline std::vector<Named> all() {
  std::vector<Named> out{{"one-1", one_vertex(-1)}, {"one-2", one_vertex(-2)}};
  for (std::size_t n = 1; n <= 4; ++n) out.push_back({"A" + std::to_string(n), a_chain(n)});
  out.push_back({"E8", e8()});
  out.push_back({"sigma237", sigma237()});
  out.push_back({"unknot", unknot_mark()});
  out.push_back({"trefoil", trefoil_mark()});
  out.push_back({"trefoil-sum", trefoil_sum_mark()});
  out.push_back({"completed-trefoil", completed_trefoil()});
  out.push_back({"chain-12", chain_12()});
  out.push_back({"type2", type2()});
  return out;
}

inline GraphDocument by_name(const std::string& name) {
  for (auto& f : all())
    if (f.name == name) return f.doc;
  throw InputError("unknown fixture: " + name);
}

/// Negative definite trees with at most `max_vertices` vertices and framings
/// in [lo, hi], one per tree shape and framing assignment.
inline std::vector<PlumbingGraph> corpus(std::size_t max_vertices = 4, std::int64_t lo = -4, std::int64_t hi = -1) {
  // Tree shapes up to 4 vertices as edge lists on 0..n-1.
  const std::vector<std::vector<std::pair<int, int>>> shapes{
      {}, {{0, 1}}, {{0, 1}, {1, 2}}, {{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {0, 2}, {0, 3}}};
  const std::vector<std::size_t> sizes{1, 2, 3, 4, 4};
  std::vector<PlumbingGraph> out;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    const auto n = sizes[s];
    if (n > max_vertices) continue;
    std::vector<std::int64_t> m(n, lo);
    for (;;) {
      std::vector<std::pair<std::string, std::int64_t>> vs;
      std::vector<std::pair<std::string, std::string>> es;
      for (std::size_t v = 0; v < n; ++v) vs.emplace_back("v" + std::to_string(v), m[v]);
      for (auto [a, b] : shapes[s]) es.emplace_back("v" + std::to_string(a), "v" + std::to_string(b));
      PlumbingGraph g(std::move(vs), es);
      if (linalg::is_negative_definite(g.intersection_matrix())) out.push_back(std::move(g));
      std::size_t v = 0;
      while (v < n && m[v] == hi) m[v++] = lo;
      if (v == n) break;
      ++m[v];
    }
  }
  return out;
}

}  // namespace plumbo::fixtures

#endif  // PLUMBO_FIXTURES_HPP
