// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <vector>

#include "doctest.h"
#include "tht/error.hpp"
#include "tht/fixtures.hpp"
#include "tht/graph.hpp"

using namespace tht;

namespace {

Subgraph sub(const Graph& g, std::vector<std::string> vs, std::vector<std::string> es) {
  Subgraph s = Subgraph::empty(g);
  for (auto& v : vs) s.vertices[*g.find_vertex(v)] = true;
  for (auto& e : es) s.edges[*g.find_edge(e)] = true;
  return s;
}

Graph circle_with_whisker() {
  Graph g;
  auto v = g.add_vertex("v");
  auto w = g.add_vertex("w");
  auto x = g.add_vertex("x");
  g.add_edge("c1", v, w);
  g.add_edge("c2", w, v);
  g.add_edge("spur", w, x);
  return g;
}

}  // namespace

TEST_CASE("euler characteristic") {
  CHECK(euler_char(Graph{}) == 0);
  CHECK(euler_char(rose(2)) == -1);
  CHECK(euler_char(rose(3)) == -2);
  Graph g = circle_with_whisker();
  CHECK(euler_char(g) == 0);
  CHECK(euler_char(sub(g, {"v", "w"}, {"c1"})) == 1);
}

TEST_CASE("euler characteristic agrees with the degree sum on leafless graphs") {
  for (int n = 1; n <= 4; ++n) {
    Graph r = rose(n);
    double sum = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(r.vertex_count()); ++v) sum += 1.0 - r.degree(v) / 2.0;
    CHECK(sum == doctest::Approx(static_cast<double>(euler_char(r))));
  }
}

TEST_CASE("boundary vertices") {
  Graph r2 = rose(2);
  CHECK(boundary_vertices(r2, sub(r2, {"v"}, {"a"})) == std::vector<VertexId>{0});
  CHECK(boundary_vertices(r2, Subgraph::full(r2)).empty());
  Graph r3 = rose(3);
  CHECK(boundary_vertices(r3, sub(r3, {"v"}, {"a", "b"})) == std::vector<VertexId>{0});

  Subgraph bad = Subgraph::empty(r2);
  bad.edges[0] = true;  // edge without its vertex
  CHECK_THROWS_AS(boundary_vertices(r2, bad), Error);
  Subgraph wrong_size{{true}, {}};
  CHECK_THROWS_AS(boundary_vertices(r2, wrong_size), Error);
}

TEST_CASE("component classification") {
  Graph loop;
  loop.add_edge("e", loop.add_vertex("v"), 0);
  auto rep = classify_components(loop);
  CHECK_FALSE(rep.is_forest);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components[0].chi == 0);

  Graph segs;
  for (int i = 0; i < 4; ++i) segs.add_vertex("v" + std::to_string(i));
  segs.add_edge("e0", 0, 1);
  segs.add_edge("e1", 2, 3);
  rep = classify_components(segs);
  CHECK(rep.is_forest);
  REQUIRE(rep.components.size() == 2);
  CHECK(rep.components[0].diameter == 1);
  CHECK(rep.components[1].diameter == 1);
  CHECK(rep.has_leaf);

  Graph empty;
  rep = classify_components(empty);
  CHECK(rep.is_forest);
  CHECK(rep.is_trivial);
  CHECK(diameter(empty, Subgraph::full(empty)) == 0);
}

TEST_CASE("core") {
  Graph g = circle_with_whisker();
  Subgraph c = core(g, Subgraph::full(g));
  CHECK(c == sub(g, {"v", "w"}, {"c1", "c2"}));
  CHECK(core(g, c) == c);

  Graph tree;
  for (int i = 0; i < 3; ++i) tree.add_vertex("t" + std::to_string(i));
  tree.add_edge("x", 0, 1);
  tree.add_edge("y", 1, 2);
  CHECK(core(tree, Subgraph::full(tree)).is_empty());

  Graph r2 = rose(2);
  Subgraph hb = sub(r2, {"v"}, {"a"});
  CHECK(core(r2, hb) == hb);
}

namespace {

// Every multigraph with vertex set {0..n-1} and k edges, as a list of
// endpoint pairs (orientation does not matter for degrees).
void for_each_multigraph(int n, int k, const std::function<void(const Graph&)>& fn) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<int> pick(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == k) {
      Graph g;
      for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
      for (int j = 0; j < k; ++j) g.add_edge("e" + std::to_string(j), pairs[pick[j]].first, pairs[pick[j]].second);
      fn(g);
      return;
    }
    for (int p = from; p < static_cast<int>(pairs.size()); ++p) {
      pick[pos] = p;
      rec(pos + 1, p);
    }
  };
  rec(0, 0);
}

}  // namespace

TEST_CASE("boundary inequality holds for every subgraph of small leafless graphs") {
  long checked = 0;
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 6; ++k)
      for_each_multigraph(n, k, [&](const Graph& g) {
        for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
          if (g.degree(v) < 2) return;  // leafless, no trivial components
        const auto cells = g.vertex_count() + g.edge_count();
        for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
          Subgraph h = Subgraph::empty(g);
          for (std::size_t v = 0; v < g.vertex_count(); ++v) h.vertices[v] = mask >> v & 1u;
          for (std::size_t e = 0; e < g.edge_count(); ++e) h.edges[e] = mask >> (g.vertex_count() + e) & 1u;
          if (!is_subgraph_of(g, h)) continue;
          auto boundary = boundary_vertices(g, h);
          // chi(F) - chi(H) <= -|dH|/2, doubled to stay in integers.
          REQUIRE(2 * (euler_char(g) - euler_char(h)) <= -static_cast<std::int64_t>(boundary.size()));
          ++checked;
        }
      });
  CHECK(checked > 10000);
}

TEST_CASE("forest iff empty core; boundary empty iff union of components") {
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 4; ++k)
      for_each_multigraph(n, k, [&](const Graph& g) {
        const auto cells = g.vertex_count() + g.edge_count();
        for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
          Subgraph h = Subgraph::empty(g);
          for (std::size_t v = 0; v < g.vertex_count(); ++v) h.vertices[v] = mask >> v & 1u;
          for (std::size_t e = 0; e < g.edge_count(); ++e) h.edges[e] = mask >> (g.vertex_count() + e) & 1u;
          if (!is_subgraph_of(g, h)) continue;
          REQUIRE(is_forest(g, h) == core(g, h).is_empty());
          REQUIRE(classify_components(g, h).is_forest == is_forest(g, h));
          REQUIRE(core(g, core(g, h)) == core(g, h));

          Components ch = components(g, h);
          Components cg = components(g, Subgraph::full(g));
          bool unions = true;
          for (int c = 0; c < ch.count; ++c) {
            Subgraph comp = ch.member(g, h, c);
            int gc = -1;
            for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
              if (comp.vertices[v]) gc = cg.of_vertex[v];
            for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
              if (cg.of_vertex[v] == gc && !h.vertices[v]) unions = false;
            for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
              if (cg.of_vertex[g.tail(e)] == gc && !h.edges[e]) unions = false;
          }
          REQUIRE(boundary_vertices(g, h).empty() == unions);
        }
      });
}

TEST_CASE("paths") {
  Graph r2 = rose(2);
  EdgePath p{0, {{0, true}, {1, true}, {1, false}}};
  CHECK(is_valid_path(r2, p));
  CHECK_FALSE(is_reduced(p));
  CHECK(reduce(p) == EdgePath{0, {{0, true}}});
  CHECK(inverse(r2, EdgePath{0, {{0, true}, {1, true}}}) == EdgePath{0, {{1, false}, {0, false}}});
}

TEST_CASE("dot export mentions every edge") {
  std::string dot = to_dot(rose(2), "F", [](EdgeId e) { return e == 0 ? std::string("style=dashed") : ""; });
  CHECK(dot.find("digraph \"F\"") == 0);
  CHECK(dot.find("label=\"a\", style=dashed") != std::string::npos);
  CHECK(dot.find("label=\"b\"]") != std::string::npos);
}
