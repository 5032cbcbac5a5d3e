// SPDX-License-Identifier: Apache-2.0
#include "tht/io.hpp"

#include <fstream>
#include <sstream>

#include "tht/error.hpp"
#include "tht/fixtures.hpp"

namespace tht {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Input, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) fail(ErrorKind::Input, std::string(what) + " must be a string");
  return j.get<std::string>();
}

VertexId vertex_named(const Graph& g, const std::string& name) {
  auto v = g.find_vertex(name);
  if (!v) fail(ErrorKind::Input, "unknown vertex '" + name + "'");
  return *v;
}

EdgeId edge_named(const Graph& g, const std::string& name) {
  auto e = g.find_edge(name);
  if (!e) fail(ErrorKind::Input, "unknown edge '" + name + "'");
  return *e;
}

Json path_tokens(const Graph& g, const EdgePath& p) {
  Json out = Json::array();
  for (Step s : p.steps) out.push_back(step_token(g, s));
  return out;
}

std::string big(const BigInt& x) { return x.str(); }

}  // namespace

Json graph_to_json(const Graph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) j["vertices"].push_back(g.vertex_name(v));
  j["edges"] = Json::array();
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    j["edges"].push_back({{"id", g.edge_name(e)}, {"from", g.vertex_name(g.tail(e))}, {"to", g.vertex_name(g.head(e))}});
  return j;
}

Graph graph_from_json(const Json& j) {
  Graph g;
  const Json& vs = field(j, "vertices");
  if (!vs.is_array()) fail(ErrorKind::Input, "'vertices' must be an array");
  for (const Json& v : vs) g.add_vertex(text(v, "vertex name"));
  const Json& es = field(j, "edges");
  if (!es.is_array()) fail(ErrorKind::Input, "'edges' must be an array");
  for (const Json& e : es)
    g.add_edge(text(field(e, "id"), "edge id"), vertex_named(g, text(field(e, "from"), "from")),
               vertex_named(g, text(field(e, "to"), "to")));
  return g;
}

Json subgraph_to_json(const Graph& g, const Subgraph& s) {
  Json j;
  j["vertices"] = Json::array();
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (s.vertices[v]) j["vertices"].push_back(g.vertex_name(v));
  j["edges"] = Json::array();
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    if (s.edges[e]) j["edges"].push_back(g.edge_name(e));
  return j;
}

Subgraph subgraph_from_json(const Graph& g, const Json& j) {
  Subgraph s = Subgraph::empty(g);
  if (j.contains("vertices"))
    for (const Json& v : j.at("vertices")) s.vertices[vertex_named(g, text(v, "vertex name"))] = true;
  for (const Json& e : field(j, "edges")) {
    EdgeId id = edge_named(g, text(e, "edge name"));
    s.edges[id] = true;
    s.vertices[g.tail(id)] = s.vertices[g.head(id)] = true;
  }
  return s;
}

Json map_to_json(const GraphMap& m) {
  Json j;
  j["vertex_images"] = Json::object();
  for (VertexId v = 0; v < static_cast<VertexId>(m.domain.vertex_count()); ++v)
    if (m.support.vertices[v]) j["vertex_images"][m.domain.vertex_name(v)] = m.codomain.vertex_name(m.vertex_image[v]);
  j["edge_images"] = Json::object();
  for (EdgeId e = 0; e < static_cast<EdgeId>(m.domain.edge_count()); ++e) {
    if (!m.support.edges[e]) continue;
    const EdgePath& p = m.edge_image[e];
    if (p.steps.empty())
      j["edge_images"][m.domain.edge_name(e)] = {{"at", m.codomain.vertex_name(p.base)}};
    else
      j["edge_images"][m.domain.edge_name(e)] = path_tokens(m.codomain, p);
  }
  return j;
}

GraphMap map_from_json(const Graph& domain, const Graph& codomain, const Json& j) {
  GraphMap m{domain, codomain, Subgraph::empty(domain), std::vector<VertexId>(domain.vertex_count(), kNoVertex),
             std::vector<EdgePath>(domain.edge_count())};
  auto set_vertex = [&](VertexId v, VertexId img) {
    if (m.vertex_image[v] != kNoVertex && m.vertex_image[v] != img)
      fail(ErrorKind::Input, "inconsistent image for vertex '" + domain.vertex_name(v) + "'");
    m.vertex_image[v] = img;
    m.support.vertices[v] = true;
  };
  if (j.contains("vertex_images")) {
    if (!j.at("vertex_images").is_object()) fail(ErrorKind::Input, "'vertex_images' must be an object");
    for (const auto& [k, v] : j.at("vertex_images").items())
      set_vertex(vertex_named(domain, k), vertex_named(codomain, text(v, "vertex image")));
  }
  const Json& edges = field(j, "edge_images");
  if (!edges.is_object()) fail(ErrorKind::Input, "'edge_images' must be an object");
  for (const auto& [k, v] : edges.items()) {
    EdgeId e = edge_named(domain, k);
    EdgePath p;
    if (v.is_array()) {
      for (const Json& t : v) p.steps.push_back(parse_step(codomain, text(t, "step token")));
    } else if (!v.is_object() || !v.contains("at")) {
      fail(ErrorKind::Input, "image of edge '" + k + "' must be a list of steps or {\"at\": vertex}");
    }
    if (p.steps.empty()) {
      if (!v.is_object()) fail(ErrorKind::Input, "collapsing edge '" + k + "' needs {\"at\": vertex}");
      p.base = vertex_named(codomain, text(v.at("at"), "vertex"));
    } else {
      p.base = step_start(codomain, p.steps.front());
      if (!is_valid_path(codomain, p)) fail(ErrorKind::Input, "image of edge '" + k + "' is not a path");
    }
    m.support.edges[e] = true;
    set_vertex(domain.tail(e), p.base);
    set_vertex(domain.head(e), path_end(codomain, p));
    m.edge_image[e] = std::move(p);
  }
  return m;
}

namespace {

Instance algebraic_instance(const Json& a) {
  AlgebraicForm form;
  for (const Json& b : field(a, "basis")) form.basis.push_back(text(b, "basis letter"));
  if (a.contains("rank") && a.at("rank").get<int>() != static_cast<int>(form.basis.size()))
    fail(ErrorKind::Input, "rank does not match the basis");
  for (const auto& b : form.basis)
    if (b.size() != 1 || b[0] < 'a' || b[0] > 'z') fail(ErrorKind::Input, "basis letters must be single lowercase letters");
  for (const Json& h : field(a, "H_generators")) {
    std::string g = text(h, "H generator");
    if (std::find(form.basis.begin(), form.basis.end(), g) == form.basis.end())
      fail(ErrorKind::Input, "H generator '" + g + "' is not a basis letter; only sub-bases are supported");
    form.h_generators.push_back(g);
  }
  const Json& images = field(a, "images");
  if (!images.is_object()) fail(ErrorKind::Input, "'images' must be an object");
  for (const auto& [k, v] : images.items()) form.images.push_back({k, text(v, "image word")});

  Graph f = rose_on(form.basis);
  GraphMap m{f, f, Subgraph::empty(f), std::vector<VertexId>(f.vertex_count(), kNoVertex),
             std::vector<EdgePath>(f.edge_count())};
  m.support.vertices[0] = true;
  m.vertex_image[0] = 0;
  for (const auto& g : form.h_generators) m.support.edges[edge_named(f, g)] = true;
  std::vector<bool> given(f.edge_count(), false);
  for (const auto& [g, w] : form.images) {
    EdgeId e = edge_named(f, g);
    if (!m.support.edges[e]) fail(ErrorKind::Input, "image given for '" + g + "', which is not an H generator");
    Word word = parse_word(form.basis, w);
    EdgePath p{0, {}};
    for (int x : word) p.steps.push_back({std::abs(x) - 1, x > 0});
    m.edge_image[e] = std::move(p);
    given[e] = true;
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(f.edge_count()); ++e)
    if (m.support.edges[e] && !given[e]) fail(ErrorKind::Input, "no image for H generator '" + f.edge_name(e) + "'");
  return {"", "", std::move(m), std::move(form)};
}

}  // namespace

namespace {
Instance parse_instance(const Json& j);
}

Instance instance_from_json(const Json& j) {
  try {
    return parse_instance(j);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Structural) fail(ErrorKind::Input, e.what());
    throw;
  } catch (const Json::exception& e) {
    fail(ErrorKind::Input, std::string("malformed instance: ") + e.what());
  }
}

namespace {

Instance parse_instance(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::Input, "instance must be a JSON object");
  bool geometric = j.contains("graph") || j.contains("map");
  bool algebraic = j.contains("algebraic") || j.contains("rank") || j.contains("basis") || j.contains("H_generators");
  if (geometric == algebraic) fail(ErrorKind::Input, "instance needs exactly one of the geometric or algebraic forms");
  Instance inst;
  if (algebraic) {
    inst = algebraic_instance(j.contains("algebraic") ? j.at("algebraic") : j);
  } else {
    Graph f = graph_from_json(field(j, "graph"));
    inst.psi = map_from_json(f, f, field(j, "map"));
    if (j.contains("H")) {
      Subgraph h = subgraph_from_json(f, j.at("H"));
      if (!(h == inst.psi.support)) fail(ErrorKind::Input, "H does not match the cells the map is defined on");
    }
  }
  if (j.contains("name")) inst.name = text(j.at("name"), "name");
  if (j.contains("comment")) inst.comment = text(j.at("comment"), "comment");
  validate_map(inst.psi);
  return inst;
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json j;
  if (!inst.name.empty()) j["name"] = inst.name;
  if (!inst.comment.empty()) j["comment"] = inst.comment;
  if (inst.algebraic) {
    Json& a = j;
    a["rank"] = inst.algebraic->basis.size();
    a["basis"] = inst.algebraic->basis;
    a["H_generators"] = inst.algebraic->h_generators;
    a["images"] = Json::object();
    for (const auto& [g, w] : inst.algebraic->images) a["images"][g] = w;
    return j;
  }
  j["graph"] = graph_to_json(inst.psi.domain);
  j["H"] = subgraph_to_json(inst.psi.domain, inst.psi.support);
  j["map"] = map_to_json(inst.psi);
  return j;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Input, "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorKind::Input, "'" + path + "' is not valid JSON: " + e.what());
  }
  return instance_from_json(j);
}

Json word_to_json(const std::vector<std::string>& basis, const Word& w) {
  Json out = Json::array();
  for (int x : w) out.push_back(basis[std::abs(x) - 1] + (x > 0 ? "+" : "-"));
  return out;
}

Json rational_to_json(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  auto as = [](const BigInt& x) -> Json {
    if (x <= BigInt(INT64_MAX) && x >= BigInt(INT64_MIN)) return static_cast<std::int64_t>(x);
    return x.str();
  };
  return {{"num", as(num)}, {"den", as(den)}};
}

Rational rational_from_json(const Json& j) {
  auto as = [](const Json& x) -> BigInt {
    if (x.is_number_integer()) return BigInt(x.get<std::int64_t>());
    if (x.is_string()) return BigInt(x.get<std::string>());
    fail(ErrorKind::Input, "rational parts must be integers");
  };
  BigInt den = as(field(j, "den"));
  if (den == 0) fail(ErrorKind::Input, "zero denominator");
  return Rational(as(field(j, "num")), den);
}

Json height_to_json(const Height& h) {
  switch (h.kind) {
    case Height::Kind::Finite:
      return {{"kind", "finite"}, {"value", h.value}};
    case Height::Kind::Infinite:
      return {{"kind", "infinite"}};
    case Height::Kind::Unknown:
      return {{"kind", "unknown"}, {"cap", h.value}};
  }
  return nullptr;
}

Json complex_to_json(const TwoComplex& c) {
  const Graph& g = c.skeleton;
  Json j;
  j["vertices"] = Json::array();
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) j["vertices"].push_back(g.vertex_name(v));
  j["edges"] = Json::array();
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    j["edges"].push_back({{"id", g.edge_name(e)},
                          {"from", g.vertex_name(g.tail(e))},
                          {"to", g.vertex_name(g.head(e))},
                          {"kind", c.kind[e] == EdgeKind::Vertical ? "vertical" : "horizontal"},
                          {"origin", c.origin[e]}});
  j["faces"] = Json::array();
  for (const Face& f : c.faces)
    j["faces"].push_back({{"name", f.name},
                          {"origin", f.origin},
                          {"base", g.vertex_name(f.boundary.base)},
                          {"boundary", path_tokens(g, f.boundary)}});
  return j;
}

TwoComplex complex_from_json(const Json& j) {
  TwoComplex c;
  for (const Json& v : field(j, "vertices")) c.skeleton.add_vertex(text(v, "vertex name"));
  for (const Json& e : field(j, "edges")) {
    std::string kind = text(field(e, "kind"), "edge kind");
    VertexId a = vertex_named(c.skeleton, text(field(e, "from"), "from"));
    VertexId b = vertex_named(c.skeleton, text(field(e, "to"), "to"));
    int origin = e.value("origin", -1);
    if (kind == "vertical")
      c.add_vertical(text(field(e, "id"), "edge id"), a, b, origin);
    else if (kind == "horizontal")
      c.add_horizontal(text(field(e, "id"), "edge id"), a, b, origin);
    else
      fail(ErrorKind::Input, "edge kind must be vertical or horizontal");
  }
  for (const Json& f : field(j, "faces")) {
    EdgePath p{vertex_named(c.skeleton, text(field(f, "base"), "face base")), {}};
    for (const Json& t : field(f, "boundary")) p.steps.push_back(parse_step(c.skeleton, text(t, "step token")));
    if (p.steps.empty() || !is_valid_path(c.skeleton, p) || path_end(c.skeleton, p) != p.base)
      fail(ErrorKind::Input, "face boundary must be a closed nonempty path");
    c.faces.push_back({text(field(f, "name"), "face name"), p, f.value("origin", -1)});
  }
  return c;
}

Json complex_map_to_json(const ComplexMap& m) {
  return {{"vertices", m.vertex_image}, {"edges", m.edge_image}, {"faces", m.face_image}};
}

ComplexMap complex_map_from_json(const Json& j) {
  return {field(j, "vertices").get<std::vector<VertexId>>(), field(j, "edges").get<std::vector<EdgeId>>(),
          field(j, "faces").get<std::vector<int>>()};
}

Json certificate_to_json(const Certificate& c, const GraphMap& psi) {
  Json j;
  j["verdict"] = to_string(c.kind);
  j["flags"] = {{"cellular", c.flags.cellular}, {"combinatorial", c.flags.combinatorial}, {"immersion", c.flags.immersion}};
  j["pi1_injective"] = c.pi1_injective;
  j["directed_height"] = height_to_json(c.height);
  if (c.negative) {
    const NegativeImmersions& n = *c.negative;
    Json k;
    k["norm"] = n.norm;
    k["m"] = n.m;
    k["M"] = big(n.M);
    k["N"] = big(n.N);
    k["c"] = rational_to_json(n.c);
    if (n.malnormal_c)
      k["malnormal"] = {{"d", *n.malnormal_d}, {"M", big(*n.malnormal_M)}, {"c", rational_to_json(*n.malnormal_c)}};
    j["negative_immersions"] = k;
  }
  if (c.witness) {
    ComplexChecks checks = complex_checks(c.witness->y);
    j["witness"] = {{"chi", checks.chi},
                    {"collapsed", checks.collapsed},
                    {"isolated_edges", checks.isolated_edges.size()},
                    {"period", c.witness->period},
                    {"invariant", subgraph_to_json(psi.domain, c.witness->invariant)},
                    {"complex", complex_to_json(c.witness->y)},
                    {"map", complex_map_to_json(c.witness->to_x)}};
  }
  if (c.reducibility) {
    const ReducibilityWitness& r = *c.reducibility;
    Json gens = Json::array();
    for (const Word& w : r.generators) gens.push_back(word_to_json(r.basis, w));
    j["reducibility"] = {{"n", r.n},
                         {"basis", r.basis},
                         {"generators", gens},
                         {"g", word_to_json(r.basis, r.g)},
                         {"proper", r.proper},
                         {"verified", r.verified}};
  }
  if (!c.diagnostic.empty()) j["diagnostic"] = c.diagnostic;
  return j;
}

Json factorization_to_json(const Factorization& f) {
  Json j;
  j["normal_form"] = {{"graph", graph_to_json(f.normal_form.map.domain)}, {"map", map_to_json(f.normal_form.map)}};
  j["moves"] = Json::array();
  int dropping = 0;
  for (const FoldMove& mv : f.moves) {
    Json m{{"kind", mv.kind == FoldMove::Kind::Collapse ? "collapse" : "fold"}, {"edge", mv.edge}};
    if (mv.kind == FoldMove::Kind::Fold) {
      m["other"] = mv.other;
      m["same_orientation"] = mv.same_orientation;
    }
    m["rank_preserving"] = mv.rank_preserving;
    dropping += mv.rank_preserving ? 0 : 1;
    j["moves"].push_back(m);
  }
  j["folded"] = graph_to_json(f.theta.domain);
  j["rho"] = map_to_json(f.rho);
  j["theta"] = map_to_json(f.theta);
  j["rank_dropping_moves"] = dropping;
  j["pi1_injective"] = f.pi1_injective;
  return j;
}

Json audit_to_json(const AuditReport& r, bool timings) {
  Json j;
  if (!r.instance.empty()) j["instance"] = r.instance;
  j["c"] = rational_to_json(r.c);
  if (r.malnormal_c) j["malnormal_c"] = rational_to_json(*r.malnormal_c);
  j["max_faces"] = r.max_faces;
  j["max_faces_reached"] = r.max_faces_reached;
  j["partial_per_level"] = r.partial_per_level;
  j["complexes"] = r.entries.size();
  j["entries"] = Json::array();
  for (const AuditEntry& e : r.entries) {
    Json x{{"canonical", e.canonical},   {"faces", e.faces},           {"chi", e.chi},
           {"chi_outgoing", e.chi_outgoing}, {"bound_ok", e.bound_ok}, {"splitting_ok", e.splitting_ok},
           {"structure_ok", e.structure_ok}, {"boundary_ok", e.boundary_ok}};
    if (e.malnormal_ok) x["malnormal_ok"] = *e.malnormal_ok;
    j["entries"].push_back(x);
  }
  if (r.isolated_edges) j["isolated_edges"] = {{"checked", r.isolated_edges->checked}, {"failures", r.isolated_edges->failures}};
  j["failures"] = Json::array();
  for (const AuditFailure& f : r.failures) j["failures"].push_back({{"reason", f.reason}, {"complex", complex_to_json(f.y)}});
  j["ok"] = r.ok();
  if (timings) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

std::string instance_dot(const GraphMap& psi) {
  return to_dot(psi.domain, "F", [&](EdgeId e) {
    return psi.support.edges[e] ? std::string("style=bold, color=\"blue\"") : std::string();
  });
}

std::string complex_dot(const TwoComplex& c, const std::string& name) {
  return to_dot(c.skeleton, name, [&](EdgeId e) {
    return c.kind[e] == EdgeKind::Horizontal ? std::string("style=dashed") : std::string();
  });
}

}  // namespace tht
