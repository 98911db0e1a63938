#ifndef PLUMBO_GRAPH_HPP
#define PLUMBO_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "plumbo/errors.hpp"
#include "plumbo/linalg.hpp"

namespace plumbo {

/// Weighted forest. Vertices are kept in lexicographic order of their ids;
/// every algorithm that breaks ties by "lowest index" uses this order.
class PlumbingGraph {
public:
  PlumbingGraph() = default;

  /// Builds a graph, sorting vertices by id. Throws InputError on duplicate
  /// ids, unknown edge endpoints, loops, repeated edges or cycles.
  PlumbingGraph(std::vector<std::pair<std::string, std::int64_t>> vertices,
                const std::vector<std::pair<std::string, std::string>>& edges) {
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i > 0 && vertices[i].first == vertices[i - 1].first)
        throw InputError("duplicate vertex: " + vertices[i].first);
      ids_.push_back(vertices[i].first);
      framings_.push_back(vertices[i].second);
    }
    adjacency_.assign(ids_.size(), {});
    std::vector<std::size_t> parent(ids_.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [a, b] : edges) {
      const std::size_t u = index_of(a), v = index_of(b);
      if (u == v) throw InputError("cycle detected: loop at " + a);
      const std::size_t ru = find(u), rv = find(v);
      if (ru == rv) throw InputError("cycle detected: edge " + a + "-" + b);
      parent[ru] = rv;
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  std::int64_t framing(std::size_t i) const { return framings_.at(i); }
  const std::vector<std::int64_t>& framings() const { return framings_; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_.at(i); }

  bool has_vertex(const std::string& id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }
  std::size_t index_of(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) throw InputError("unknown vertex: " + id);
    return static_cast<std::size_t>(it - ids_.begin());
  }

  /// Edges as index pairs (u < v), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < size(); ++u)
      for (auto v : adjacency_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::vector<std::pair<std::string, std::int64_t>> vertex_list() const {
    std::vector<std::pair<std::string, std::int64_t>> out;
    for (std::size_t i = 0; i < size(); ++i) out.emplace_back(ids_[i], framings_[i]);
    return out;
  }
  std::vector<std::pair<std::string, std::string>> edge_list() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [u, v] : edges()) out.emplace_back(ids_[u], ids_[v]);
    return out;
  }

  /// Intersection matrix: framings on the diagonal, 1 for each edge.
  IntMatrix intersection_matrix() const {
    IntMatrix m(size(), IntVector(size(), 0));
    for (std::size_t i = 0; i < size(); ++i) {
      m[i][i] = framings_[i];
      for (auto j : adjacency_[i]) m[i][j] = 1;
    }
    return m;
  }

  /// Connected components as sorted index lists, ordered by smallest index.
  std::vector<std::vector<std::size_t>> components() const {
    std::vector<int> seen(size(), 0);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < size(); ++s) {
      if (seen[s]) continue;
      std::vector<std::size_t> comp, stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for (auto v : adjacency_[u])
          if (!seen[v]) { seen[v] = 1; stack.push_back(v); }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  /// Induced subgraph on the given vertex indices.
  PlumbingGraph induced(const std::vector<std::size_t>& keep) const {
    std::set<std::size_t> k(keep.begin(), keep.end());
    std::vector<std::pair<std::string, std::int64_t>> vs;
    std::vector<std::pair<std::string, std::string>> es;
    for (auto i : k) vs.emplace_back(ids_[i], framings_[i]);
    for (auto [u, v] : edges())
      if (k.count(u) && k.count(v)) es.emplace_back(ids_[u], ids_[v]);
    return PlumbingGraph(std::move(vs), es);
  }

  PlumbingGraph with_vertex_framing(std::size_t i, std::int64_t m) const {
    PlumbingGraph g = *this;
    g.framings_.at(i) = m;
    return g;
  }

  std::int64_t max_abs_framing() const {
    std::int64_t r = 1;
    for (auto m : framings_) r = std::max<std::int64_t>(r, m < 0 ? -m : m);
    return r;
  }

  friend bool operator==(const PlumbingGraph&, const PlumbingGraph&) = default;

private:
  std::vector<std::string> ids_;
  std::vector<std::int64_t> framings_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// A plumbing forest with an extra unframed vertex v0 attached to some of
/// its vertices. v0 is not a vertex of `graph`.
struct MarkedGraph {
  PlumbingGraph graph;
  std::string v0;
  std::vector<std::size_t> attachments;  // sorted indices into graph

  MarkedGraph() = default;
  MarkedGraph(PlumbingGraph g, std::string mark, std::vector<std::size_t> att)
      : graph(std::move(g)), v0(std::move(mark)), attachments(std::move(att)) {
    std::sort(attachments.begin(), attachments.end());
    attachments.erase(std::unique(attachments.begin(), attachments.end()), attachments.end());
    if (attachments.empty()) throw InputError("distinguished vertex has no neighbours");
    if (graph.has_vertex(v0)) throw InputError("distinguished vertex collides with a framed vertex");
    for (auto a : attachments)
      if (a >= graph.size()) throw InputError("attachment out of range");
  }

  /// The 0/1 adjacency vector of v0 restricted to the framed vertices.
  IntVector adjacency() const {
    IntVector n(graph.size(), 0);
    for (auto a : attachments) n[a] = 1;
    return n;
  }

  /// v0 is a leaf iff it has exactly one neighbour.
  bool v0_is_leaf() const { return attachments.size() == 1; }

  friend bool operator==(const MarkedGraph&, const MarkedGraph&) = default;
};

using GraphDocument = std::variant<PlumbingGraph, MarkedGraph>;

struct IntersectionForm {
  IntMatrix matrix;
  std::int64_t determinant = 0;
  bool negative_definite = false;
};

inline IntersectionForm intersection_form(const PlumbingGraph& g) {
  IntersectionForm f;
  f.matrix = g.intersection_matrix();
  f.determinant = linalg::determinant(f.matrix);
  f.negative_definite = linalg::is_negative_definite(f.matrix);
  return f;
}

inline void require_negative_definite(const PlumbingGraph& g, const std::string& what) {
  if (!intersection_form(g).negative_definite)
    throw InputError(what + ": intersection form is not negative definite");
}

/// Parses the JSON graph schema. The distinguished vertex may be listed
/// among the vertices without a framing, or only appear in edges.
inline GraphDocument parse_graph(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
      throw InputError("malformed document: missing vertices array");
    std::optional<std::string> mark;
    if (doc.contains("distinguished")) mark = doc.at("distinguished").get<std::string>();
    std::vector<std::pair<std::string, std::int64_t>> vs;
    for (const auto& v : doc["vertices"]) {
      const auto id = v.at("id").get<std::string>();
      if (mark && id == *mark) {
        if (v.contains("framing")) throw InputError("distinguished vertex with a framing");
        continue;
      }
      if (!v.contains("framing")) throw InputError("malformed document: vertex without framing: " + id);
      vs.emplace_back(id, v.at("framing").get<std::int64_t>());
    }
    std::vector<std::pair<std::string, std::string>> es, marked_edges;
    if (doc.contains("edges")) {
      for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2) throw InputError("malformed document: edge must be a pair");
        auto a = e[0].get<std::string>(), b = e[1].get<std::string>();
        if (a == b) throw InputError("cycle detected: loop at " + a);
        if (mark && (a == *mark || b == *mark))
          marked_edges.emplace_back(a == *mark ? b : a, "");
        else
          es.emplace_back(a, b);
      }
    }
    PlumbingGraph g(std::move(vs), es);
    if (!mark) return g;
    std::vector<std::size_t> att;
    for (const auto& [other, _] : marked_edges) att.push_back(g.index_of(other));
    std::set<std::size_t> uniq(att.begin(), att.end());
    if (uniq.size() != att.size()) throw InputError("cycle detected: repeated edge at distinguished vertex");
    return MarkedGraph(std::move(g), *mark, std::move(att));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
}

inline nlohmann::json to_json(const PlumbingGraph& g) {
  nlohmann::json vs = nlohmann::json::array(), es = nlohmann::json::array();
  for (const auto& [id, m] : g.vertex_list()) vs.push_back({{"id", id}, {"framing", m}});
  for (const auto& [a, b] : g.edge_list()) es.push_back({a, b});
  return {{"vertices", vs}, {"edges", es}};
}

inline nlohmann::json to_json(const MarkedGraph& mg) {
  auto j = to_json(mg.graph);
  for (auto a : mg.attachments) j["edges"].push_back({mg.graph.id(a), mg.v0});
  j["distinguished"] = mg.v0;
  return j;
}

inline std::string serialize_graph(const GraphDocument& doc) {
  return std::visit([](const auto& g) { return to_json(g).dump(); }, doc);
}

/// G_{m}(v0): the marked graph with v0 framed by m. Must be negative definite.
inline PlumbingGraph with_framing(const MarkedGraph& mg, std::int64_t m) {
  auto vs = mg.graph.vertex_list();
  auto es = mg.graph.edge_list();
  vs.emplace_back(mg.v0, m);
  for (auto a : mg.attachments) es.emplace_back(mg.graph.id(a), mg.v0);
  PlumbingGraph g(std::move(vs), es);
  require_negative_definite(g, "with_framing");
  return g;
}

/// Kirby-equivalent negative plumbing for +p surgery on a leaf v0: the
/// neighbour's framing drops by one and the v0 edge becomes a chain of
/// p-1 new (-2)-vertices. Not checked for definiteness.
inline PlumbingGraph chain_expand(const MarkedGraph& mg, std::int64_t p) {
  if (p < 1) throw InputError("chain_expand: p must be positive");
  if (!mg.v0_is_leaf()) throw InputError("chain_expand: distinguished vertex must be a leaf");
  const std::size_t w = mg.attachments.front();
  auto vs = mg.graph.vertex_list();
  auto es = mg.graph.edge_list();
  vs[w].second -= 1;
  std::string prev = mg.graph.id(w);
  for (std::int64_t j = 1; j < p; ++j) {
    std::string id = mg.v0 + "#" + std::to_string(j);
    while (mg.graph.has_vertex(id)) id += "'";
    vs.emplace_back(id, -2);
    es.emplace_back(prev, id);
    prev = id;
  }
  return PlumbingGraph(std::move(vs), es);
}

/// Identifies the two distinguished vertices; the framed parts become a
/// disjoint union. Colliding ids in the second graph get a "'" suffix.
inline MarkedGraph connected_sum(const MarkedGraph& a, const MarkedGraph& b) {
  auto vs = a.graph.vertex_list();
  auto es = a.graph.edge_list();
  std::set<std::string> taken(a.graph.ids().begin(), a.graph.ids().end());
  taken.insert(a.v0);
  std::map<std::string, std::string> rename;
  for (const auto& id : b.graph.ids()) {
    std::string nid = id;
    while (taken.count(nid)) nid += "'";
    taken.insert(nid);
    rename[id] = nid;
  }
  for (const auto& [id, m] : b.graph.vertex_list()) vs.emplace_back(rename[id], m);
  for (const auto& [x, y] : b.graph.edge_list()) es.emplace_back(rename[x], rename[y]);
  PlumbingGraph g(std::move(vs), es);
  std::vector<std::size_t> att;
  for (auto i : a.attachments) att.push_back(g.index_of(a.graph.id(i)));
  for (auto i : b.attachments) att.push_back(g.index_of(rename[b.graph.id(i)]));
  return MarkedGraph(std::move(g), a.v0, std::move(att));
}

/// Erases the framing of w: the marked graph (G - w, w).
inline MarkedGraph mark_vertex(const PlumbingGraph& g, std::size_t w) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (i != w) keep.push_back(i);
  PlumbingGraph rest = g.induced(keep);
  std::vector<std::size_t> att;
  for (auto nb : g.neighbors(w)) att.push_back(rest.index_of(g.id(nb)));
  return MarkedGraph(std::move(rest), g.id(w), std::move(att));
}

}  // namespace plumbo

#endif  // PLUMBO_GRAPH_HPP
