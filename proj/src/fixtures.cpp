// SPDX-License-Identifier: Apache-2.0
#include "tht/fixtures.hpp"

#include "tht/error.hpp"

namespace tht {

Graph rose(int petals) {
  Graph g;
  VertexId v = g.add_vertex("v");
  for (int i = 0; i < petals; ++i) g.add_edge(std::string(1, static_cast<char>('a' + i)), v, v);
  return g;
}

Step parse_step(const Graph& g, const std::string& token) {
  if (token.size() < 2 || (token.back() != '+' && token.back() != '-'))
    fail(ErrorKind::Input, "bad step token '" + token + "' (expected <edge>+ or <edge>-)");
  auto e = g.find_edge(token.substr(0, token.size() - 1));
  if (!e) fail(ErrorKind::Input, "step token '" + token + "' names an unknown edge");
  return {*e, token.back() == '+'};
}

std::string step_token(const Graph& g, Step s) { return g.edge_name(s.edge) + (s.forward ? "+" : "-"); }

GraphMap make_partial_map(const Graph& f, const std::map<std::string, std::vector<std::string>>& images,
                          const std::map<std::string, std::string>& vertex_images) {
  GraphMap m{f, f, Subgraph::empty(f), std::vector<VertexId>(f.vertex_count(), kNoVertex),
             std::vector<EdgePath>(f.edge_count())};
  auto set_vertex = [&](VertexId v, VertexId img) {
    if (m.vertex_image[v] != kNoVertex && m.vertex_image[v] != img)
      fail(ErrorKind::Structural, "inconsistent image for vertex '" + f.vertex_name(v) + "'");
    m.vertex_image[v] = img;
    m.support.vertices[v] = true;
  };
  for (const auto& [vname, iname] : vertex_images) {
    auto v = f.find_vertex(vname);
    auto w = f.find_vertex(iname);
    if (!v || !w) fail(ErrorKind::Input, "unknown vertex in vertex image '" + vname + "' -> '" + iname + "'");
    set_vertex(*v, *w);
  }
  for (const auto& [ename, tokens] : images) {
    auto e = f.find_edge(ename);
    if (!e) fail(ErrorKind::Input, "unknown edge '" + ename + "'");
    EdgePath p;
    for (const auto& t : tokens) p.steps.push_back(parse_step(f, t));
    if (p.steps.empty()) {
      auto it = vertex_images.find(f.vertex_name(f.tail(*e)));
      if (it == vertex_images.end()) fail(ErrorKind::Input, "collapsing edge '" + ename + "' needs a vertex image");
      p.base = *f.find_vertex(it->second);
    } else {
      p.base = step_start(f, p.steps.front());
    }
    m.support.edges[*e] = true;
    set_vertex(f.tail(*e), p.base);
    set_vertex(f.head(*e), path_end(f, p));
    m.edge_image[*e] = std::move(p);
  }
  return m;
}

GraphMap fixture_a() { return make_partial_map(rose(2), {{"a", {"b+"}}}); }
GraphMap fixture_b() { return make_partial_map(rose(2), {{"a", {"a+"}}}); }
GraphMap fixture_c() { return make_partial_map(rose(3), {{"a", {"b+"}}, {"b", {"c+"}}}); }
GraphMap fixture_d() { return make_partial_map(rose(2), {{"a", {"a+", "b+"}}, {"b", {"a+"}}}); }

GraphMap fixture_e() {
  Graph g;
  VertexId v = g.add_vertex("v");
  VertexId w = g.add_vertex("w");
  g.add_edge("a1", v, w);
  g.add_edge("a2", w, v);
  return make_partial_map(g, {{"a1", {"a1+"}}, {"a2", {"a1-"}}});
}

GraphMap fixture(const std::string& name) {
  if (name == "A") return fixture_a();
  if (name == "B") return fixture_b();
  if (name == "C") return fixture_c();
  if (name == "D") return fixture_d();
  if (name == "E") return fixture_e();
  fail(ErrorKind::Input, "unknown fixture '" + name + "'");
}

}  // namespace tht
