// SPDX-License-Identifier: Apache-2.0
#include "tht/torus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tht/error.hpp"

namespace tht {

EdgeId TwoComplex::add_vertical(const std::string& name, VertexId from, VertexId to, int origin_edge) {
  EdgeId e = skeleton.add_edge(name, from, to);
  kind.push_back(EdgeKind::Vertical);
  origin.push_back(origin_edge);
  return e;
}

EdgeId TwoComplex::add_horizontal(const std::string& name, VertexId from, VertexId to, int origin_vertex) {
  EdgeId e = skeleton.add_edge(name, from, to);
  kind.push_back(EdgeKind::Horizontal);
  origin.push_back(origin_vertex);
  return e;
}

MappingTorus build_mapping_torus(const GraphMap& psi) {
  if (!(psi.domain == psi.codomain)) fail(ErrorKind::Structural, "mapping torus needs a partial self-map");
  require_subgraph(psi.domain, psi.support, "H");
  validate_map(psi);
  const Graph& f = psi.domain;
  MappingTorus out;
  TwoComplex& x = out.complex;
  for (VertexId v = 0; v < static_cast<VertexId>(f.vertex_count()); ++v) x.skeleton.add_vertex(f.vertex_name(v));
  for (EdgeId e = 0; e < static_cast<EdgeId>(f.edge_count()); ++e) x.add_vertical(f.edge_name(e), f.tail(e), f.head(e), e);

  out.horizontal_of.assign(f.vertex_count(), -1);
  for (VertexId v = 0; v < static_cast<VertexId>(f.vertex_count()); ++v)
    if (psi.support.vertices[v]) out.horizontal_of[v] = x.add_horizontal("t:" + f.vertex_name(v), v, psi.vertex_image[v], v);

  out.face_of.assign(f.edge_count(), -1);
  for (EdgeId e = 0; e < static_cast<EdgeId>(f.edge_count()); ++e) {
    if (!psi.support.edges[e]) continue;
    EdgePath b{f.tail(e), {{e, true}, {out.horizontal_of[f.head(e)], true}}};
    EdgePath img = inverse(f, psi.edge_image[e]);
    b.steps.insert(b.steps.end(), img.steps.begin(), img.steps.end());
    b.steps.push_back({out.horizontal_of[f.tail(e)], false});
    out.face_of[e] = static_cast<int>(x.faces.size());
    x.faces.push_back({"f:" + f.edge_name(e), b, e});
  }
  return out;
}

ComplexChecks complex_checks(const TwoComplex& y) {
  const Graph& g = y.skeleton;
  ComplexChecks c;
  c.chi = static_cast<std::int64_t>(g.vertex_count()) - static_cast<std::int64_t>(g.edge_count()) +
          static_cast<std::int64_t>(y.faces.size());
  std::vector<int> uses(g.edge_count(), 0);
  for (const Face& face : y.faces) {
    if (face.boundary.steps.empty() || !is_valid_path(g, face.boundary) || path_end(g, face.boundary) != face.boundary.base)
      fail(ErrorKind::Structural, "face '" + face.name + "' does not have a closed attaching path");
    for (Step s : face.boundary.steps) ++uses[s.edge];
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    if (uses[e] == 0) c.isolated_edges.push_back(e);
    if (uses[e] == 1) c.free_faces.push_back(e);
  }
  c.collapsed = c.free_faces.empty();
  c.connected = components(g, Subgraph::full(g)).count <= 1;
  c.is_point = g.vertex_count() == 1 && g.edge_count() == 0 && y.faces.empty();
  return c;
}

bool is_combinatorial_immersion(const TwoComplex& y, const TwoComplex& x, const ComplexMap& f, std::string* why) {
  auto reject = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  const Graph& gy = y.skeleton;
  const Graph& gx = x.skeleton;
  if (f.vertex_image.size() != gy.vertex_count() || f.edge_image.size() != gy.edge_count() ||
      f.face_image.size() != y.faces.size())
    return reject("map tables do not match the complex");
  for (VertexId v = 0; v < static_cast<VertexId>(gy.vertex_count()); ++v)
    if (f.vertex_image[v] < 0 || f.vertex_image[v] >= static_cast<VertexId>(gx.vertex_count()))
      return reject("vertex without image");
  for (EdgeId e = 0; e < static_cast<EdgeId>(gy.edge_count()); ++e) {
    EdgeId t = f.edge_image[e];
    if (t < 0 || t >= static_cast<EdgeId>(gx.edge_count())) return reject("edge without image");
    if (y.kind[e] != x.kind[t]) return reject("edge '" + gy.edge_name(e) + "' changes kind");
    if (f.vertex_image[gy.tail(e)] != gx.tail(t) || f.vertex_image[gy.head(e)] != gx.head(t))
      return reject("edge '" + gy.edge_name(e) + "' is not sent along its image");
  }
  for (std::size_t i = 0; i < y.faces.size(); ++i) {
    int t = f.face_image[i];
    if (t < 0 || t >= static_cast<int>(x.faces.size())) return reject("face without image");
    const EdgePath& a = y.faces[i].boundary;
    const EdgePath& b = x.faces[t].boundary;
    if (a.steps.size() != b.steps.size() || f.vertex_image[a.base] != b.base)
      return reject("face '" + y.faces[i].name + "' does not match its image");
    for (std::size_t k = 0; k < a.steps.size(); ++k)
      if (f.edge_image[a.steps[k].edge] != b.steps[k].edge || a.steps[k].forward != b.steps[k].forward)
        return reject("face '" + y.faces[i].name + "' does not match its image");
  }

  // Link vertices are edge ends; link edges are face corners.
  std::set<std::tuple<VertexId, EdgeId, bool>> ends;
  for (EdgeId e = 0; e < static_cast<EdgeId>(gy.edge_count()); ++e) {
    if (!ends.insert({gy.tail(e), f.edge_image[e], true}).second ||
        !ends.insert({gy.head(e), f.edge_image[e], false}).second)
      return reject("two edge ends at a vertex share an image near '" + gy.edge_name(e) + "'");
  }
  std::set<std::tuple<VertexId, int, std::size_t>> corners;
  for (std::size_t i = 0; i < y.faces.size(); ++i) {
    const EdgePath& a = y.faces[i].boundary;
    VertexId at = a.base;
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
      if (!corners.insert({at, f.face_image[i], k}).second)
        return reject("two corners at a vertex share an image in face '" + y.faces[i].name + "'");
      at = step_end(gy, a.steps[k]);
    }
  }
  return true;
}

GraphOfSpaces decompose(const TwoComplex& y) {
  const Graph& g = y.skeleton;
  GraphOfSpaces s;
  s.vertex_spaces = Subgraph::empty(g);
  s.outgoing = Subgraph::empty(g);
  s.incoming = Subgraph::empty(g);
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) s.vertex_spaces.vertices[v] = true;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    if (y.kind[e] == EdgeKind::Vertical) {
      s.vertex_spaces.edges[e] = true;
    } else {
      s.outgoing.vertices[g.tail(e)] = true;
      s.incoming.vertices[g.head(e)] = true;
    }
  }
  for (const Face& face : y.faces) {
    const auto& steps = face.boundary.steps;
    if (steps.size() < 3 || y.kind[steps[0].edge] != EdgeKind::Vertical || !steps[0].forward)
      fail(ErrorKind::Structural, "face '" + face.name + "' is not written bottom edge first");
    if (s.outgoing.edges[steps[0].edge]) s.outgoing_disjoint = false;
    s.outgoing.edges[steps[0].edge] = true;
    for (std::size_t k = 2; k + 1 < steps.size(); ++k) s.incoming.edges[steps[k].edge] = true;
  }
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (s.outgoing.vertices[v] && degree_in(g, s.vertex_spaces, v) > degree_in(g, s.outgoing, v)) s.boundary.push_back(v);
  s.chi_vertex_spaces = euler_char(s.vertex_spaces);
  s.chi_outgoing = euler_char(s.outgoing);
  return s;
}

BigInt compute_N(const Graph& f, std::int64_t m_radius) {
  if (m_radius < 0) fail(ErrorKind::Input, "ball radius must be non-negative");
  BigInt delta = f.max_degree();
  BigInt total = 0;
  BigInt shell = delta;
  for (std::int64_t k = 1; k <= m_radius; ++k) {
    total += shell;
    shell *= delta - 1;
    if (shell == 0) break;
  }
  return total < 1 ? BigInt(1) : total;
}

std::string to_string(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::NegativeImmersions:
      return "negative-immersions";
    case Certificate::Kind::ZeroEuler:
      return "zero-euler-witness";
    case Certificate::Kind::NotInjective:
      return "not-pi1-injective";
    case Certificate::Kind::Unknown:
      return "unknown";
  }
  return "unknown";
}

PreimageShape preimage_shape(const GraphMap& psi) {
  Subdivided sub = subdivide_to_combinatorial(psi);
  Subgraph pre = preimage_of(sub.map, psi.support);
  return {is_forest(sub.map.domain, pre), diameter(sub.map.domain, pre)};
}

namespace {

Height height_of(const GraphMap& psi, const MapFlags& flags, int cap) {
  if (flags.immersion) return directed_height(psi);
  return directed_height_general(psi, cap);
}

// Stable leafless subgraph of H with psi(C) = C.
Subgraph stable_core(const GraphMap& psi) {
  const Graph& f = psi.domain;
  Subgraph c = core(f, psi.support);
  while (true) {
    Subgraph next = core(f, c);
    next = intersect(preimage_of(psi, next), next);
    next = intersect(image_of(psi, next), next);
    if (next == c) break;
    c = std::move(next);
  }
  return c;
}

struct Orbit {
  Subgraph cells;
  int period = 0;
  Subgraph first;  // the component the orbit starts from
};

Orbit first_orbit(const GraphMap& psi, const Subgraph& c) {
  const Graph& f = psi.domain;
  Components comps = components(f, c);
  if (comps.count == 0) fail(ErrorKind::Internal, "no invariant core for an infinite-height map");
  std::vector<int> next(comps.count, -1);
  for (VertexId v = 0; v < static_cast<VertexId>(f.vertex_count()); ++v)
    if (comps.of_vertex[v] >= 0) next[comps.of_vertex[v]] = comps.of_vertex[psi.vertex_image[v]];
  // Every component lies on a cycle since psi permutes them; start at one
  // with edges.
  int start = -1;
  for (int k = 0; k < comps.count && start < 0; ++k)
    if (comps.member(f, c, k).edge_count() > 0) start = k;
  if (start < 0) fail(ErrorKind::Internal, "invariant core has no edges");
  Orbit o;
  o.cells = Subgraph::empty(f);
  o.first = comps.member(f, c, start);
  int k = start;
  do {
    Subgraph part = comps.member(f, c, k);
    for (std::size_t v = 0; v < part.vertices.size(); ++v) o.cells.vertices[v] = o.cells.vertices[v] || part.vertices[v];
    for (std::size_t e = 0; e < part.edges.size(); ++e) o.cells.edges[e] = o.cells.edges[e] || part.edges[e];
    k = next[k];
    ++o.period;
    if (o.period > comps.count) fail(ErrorKind::Internal, "components of the invariant core are not permuted");
  } while (k != start);
  return o;
}

ZeroEulerWitness witness_from_core(const GraphMap& psi) {
  const Graph& f = psi.domain;
  Subgraph c = stable_core(psi);
  Orbit orbit = first_orbit(psi, c);
  MappingTorus x = build_mapping_torus(psi);

  ZeroEulerWitness w;
  w.invariant = orbit.cells;
  w.period = orbit.period;
  TwoComplex& y = w.y;
  std::vector<VertexId> vertex_new(f.vertex_count(), kNoVertex);
  std::vector<EdgeId> edge_new(x.complex.skeleton.edge_count(), -1);
  for (VertexId v = 0; v < static_cast<VertexId>(f.vertex_count()); ++v) {
    if (!orbit.cells.vertices[v]) continue;
    vertex_new[v] = y.skeleton.add_vertex(f.vertex_name(v));
    w.to_x.vertex_image.push_back(v);
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(f.edge_count()); ++e) {
    if (!orbit.cells.edges[e]) continue;
    edge_new[e] = y.add_vertical(f.edge_name(e), vertex_new[f.tail(e)], vertex_new[f.head(e)], e);
    w.to_x.edge_image.push_back(e);
  }
  for (VertexId v = 0; v < static_cast<VertexId>(f.vertex_count()); ++v) {
    if (!orbit.cells.vertices[v]) continue;
    EdgeId t = x.horizontal_of[v];
    edge_new[t] = y.add_horizontal(x.complex.skeleton.edge_name(t), vertex_new[v], vertex_new[psi.vertex_image[v]], v);
    w.to_x.edge_image.push_back(t);
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(f.edge_count()); ++e) {
    if (!orbit.cells.edges[e]) continue;
    const Face& src = x.complex.faces[x.face_of[e]];
    EdgePath b{vertex_new[src.boundary.base], {}};
    for (Step s : src.boundary.steps) b.steps.push_back({edge_new[s.edge], s.forward});
    y.faces.push_back({src.name, b, e});
    w.to_x.face_image.push_back(x.face_of[e]);
  }

  ComplexChecks checks = complex_checks(y);
  std::string why;
  if (checks.chi != 0 || !checks.connected || !checks.collapsed || !checks.isolated_edges.empty() || checks.is_point)
    fail(ErrorKind::Internal, "zero Euler witness failed its complex checks");
  if (!is_combinatorial_immersion(y, x.complex, w.to_x, &why))
    fail(ErrorKind::Internal, "zero Euler witness does not immerse: " + why);
  return w;
}

void require_infinite(const GraphMap& psi, int cap) {
  MapFlags flags = validate_map(psi);
  if (!flags.immersion && !is_pi1_injective(psi))
    fail(ErrorKind::Contract, "witnesses need an immersion or a pi1-injective map");
  Height h = height_of(psi, flags, cap);
  if (h.kind != Height::Kind::Infinite) fail(ErrorKind::Contract, "directed height is " + h.to_string() + ", not infinite");
}

// Fundamental group words relative to a breadth-first spanning tree of the
// component of F containing `root`.
struct TreeWords {
  std::vector<int> letter;  // per edge of F: 0 on the tree or off the component, else k
  std::vector<std::string> basis;
  std::vector<Step> parent;  // per vertex: step from the parent, edge -1 at the root
  Word of(const EdgePath& p) const {
    Word w;
    for (Step s : p.steps)
      if (letter[s.edge]) w.push_back(s.forward ? letter[s.edge] : -letter[s.edge]);
    return free_reduce(w);
  }
};

TreeWords tree_words(const Graph& f, VertexId root) {
  TreeWords t;
  t.letter.assign(f.edge_count(), 0);
  t.parent.assign(f.vertex_count(), Step{-1, true});
  std::vector<bool> seen(f.vertex_count(), false);
  std::vector<bool> tree(f.edge_count(), false);
  std::vector<VertexId> queue{root};
  seen[root] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    VertexId v = queue[i];
    for (EdgeId e : f.incident(v)) {
      VertexId w = f.tail(e) == v ? f.head(e) : f.tail(e);
      if (seen[w]) continue;
      seen[w] = true;
      tree[e] = true;
      t.parent[w] = Step{e, f.tail(e) == v};
      queue.push_back(w);
    }
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(f.edge_count()); ++e) {
    if (tree[e] || !seen[f.tail(e)]) continue;
    t.basis.push_back(f.edge_name(e));
    t.letter[e] = static_cast<int>(t.basis.size());
  }
  return t;
}

// Path from `from` to `to` inside the connected subgraph s.
EdgePath path_inside(const Graph& g, const Subgraph& s, VertexId from, VertexId to) {
  std::vector<Step> via(g.vertex_count(), Step{-1, true});
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> queue{from};
  seen[from] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    VertexId v = queue[i];
    for (EdgeId e : g.incident(v)) {
      if (!s.edges[e]) continue;
      bool fwd = g.tail(e) == v;
      VertexId w = fwd ? g.head(e) : g.tail(e);
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = Step{e, fwd};
      queue.push_back(w);
    }
  }
  if (!seen[to]) fail(ErrorKind::Internal, "vertices are not joined inside the subgraph");
  EdgePath p{from, {}};
  for (VertexId v = to; v != from;) {
    Step st = via[v];
    p.steps.push_back(st);
    v = st.forward ? g.tail(st.edge) : g.head(st.edge);
  }
  std::reverse(p.steps.begin(), p.steps.end());
  return p;
}

ReducibilityWitness reducibility_from_core(const GraphMap& psi) {
  const Graph& f = psi.domain;
  Subgraph c = stable_core(psi);
  Orbit orbit = first_orbit(psi, c);
  const Subgraph& d = orbit.first;
  VertexId x = 0;
  while (!d.vertices[x]) ++x;

  ReducibilityWitness r;
  r.n = orbit.period;
  TreeWords tw = tree_words(f, x);
  r.basis = tw.basis;

  // Loops at x through each edge of D off a spanning tree of D.
  std::vector<EdgePath> loops;
  Restriction local = restrict_to(f, d);
  TreeWords lt = tree_words(local.graph, local.vertex_from_ambient[x]);
  for (EdgeId le = 0; le < static_cast<EdgeId>(local.graph.edge_count()); ++le) {
    if (!lt.letter[le]) continue;
    EdgeId e = local.edge_to_ambient[le];
    EdgePath loop = path_inside(f, d, x, f.tail(e));
    loop.steps.push_back({e, true});
    EdgePath back = path_inside(f, d, f.head(e), x);
    loop.steps.insert(loop.steps.end(), back.steps.begin(), back.steps.end());
    loops.push_back(loop);
    r.generators.push_back(tw.of(loop));
  }

  GraphMap pn = psi;
  for (int i = 1; i < r.n; ++i) {
    // psi^n is a total map on D's orbit; compose image paths directly.
    GraphMap next = pn;
    for (EdgeId e = 0; e < static_cast<EdgeId>(f.edge_count()); ++e)
      if (pn.support.edges[e] && orbit.cells.edges[e]) next.edge_image[e] = map_path(psi, pn.edge_image[e]);
    for (VertexId v = 0; v < static_cast<VertexId>(f.vertex_count()); ++v)
      if (pn.support.vertices[v] && orbit.cells.vertices[v]) next.vertex_image[v] = psi.vertex_image[pn.vertex_image[v]];
    pn = std::move(next);
  }
  VertexId y = pn.vertex_image[x];
  r.g = tw.of(path_inside(f, d, x, y));

  std::vector<std::string> names = r.basis;
  if (names.empty()) names.push_back("_");
  CoreGraph h = core_graph_of_words(names, r.generators);
  r.verified = true;
  for (const EdgePath& loop : loops) {
    Word image = tw.of(map_path(pn, loop));
    if (!is_member(h, word_concat(word_concat(r.g, image), word_inverse(r.g)))) r.verified = false;
  }
  Components hc = components(f, psi.support);
  Subgraph hcomp = hc.member(f, psi.support, hc.of_vertex[x]);
  r.proper = rank(f, d) < rank(f, hcomp);
  return r;
}

}  // namespace

ZeroEulerWitness zero_euler_witness(const GraphMap& psi, int cap) {
  require_infinite(psi, cap);
  return witness_from_core(psi);
}

ReducibilityWitness reducibility_witness(const GraphMap& psi, int cap) {
  require_infinite(psi, cap);
  return reducibility_from_core(psi);
}

Certificate decide_negative_immersions(const GraphMap& psi, int cap) {
  if (!(psi.domain == psi.codomain)) fail(ErrorKind::Structural, "expected a partial self-map");
  Certificate cert;
  cert.flags = validate_map(psi);
  if (cert.flags.immersion) {
    cert.pi1_injective = true;
  } else {
    Factorization fz = fold_to_immersion(psi);
    cert.pi1_injective = fz.pi1_injective;
    if (!cert.pi1_injective) {
      cert.kind = Certificate::Kind::NotInjective;
      cert.height = directed_height_general(psi, cap);
      for (const FoldMove& mv : fz.moves) {
        if (mv.rank_preserving) continue;
        cert.diagnostic = "not pi1-injective: " +
                          (mv.kind == FoldMove::Kind::Collapse ? "collapse of loop " + mv.edge
                                                               : "fold of " + mv.other + " onto " + mv.edge) +
                          " closes a cycle";
        break;
      }
      return cert;
    }
  }

  cert.height = height_of(psi, cert.flags, cap);
  if (cert.height.kind == Height::Kind::Unknown) {
    cert.kind = Certificate::Kind::Unknown;
    cert.diagnostic = "height search stopped at cap " + std::to_string(cert.height.value);
    return cert;
  }
  if (cert.height.kind == Height::Kind::Infinite) {
    cert.kind = Certificate::Kind::ZeroEuler;
    cert.witness = witness_from_core(psi);
    if (components(psi.domain, Subgraph::full(psi.domain)).count == 1) cert.reducibility = reducibility_from_core(psi);
    return cert;
  }

  cert.kind = Certificate::Kind::NegativeImmersions;
  DomainFiltration df = domain_filtration(psi, false);
  NegativeImmersions ni;
  ni.height = cert.height;
  ni.norm = std::max<std::int64_t>(df.psi_norm, 1);
  ni.m = df.max_fan_length;
  BigInt power = boost::multiprecision::pow(BigInt(ni.norm), ni.m);
  ni.M = df.diam_d_infinity + power;
  if (ni.M > 100000) fail(ErrorKind::Unsupported, "ball radius for the constant is too large");
  ni.N = compute_N(psi.domain, static_cast<std::int64_t>(ni.M));
  ni.c = Rational(1, 2 * (ni.m + 1) * power * ni.N);

  if (cert.flags.immersion && cert.height.value <= 1) {
    PreimageShape shape = preimage_shape(psi);
    if (shape.is_forest) {
      ni.malnormal_d = shape.max_diameter;
      BigInt m3 = compute_N(psi.domain, shape.max_diameter);
      ni.malnormal_M = m3;
      ni.malnormal_c = Rational(1, 2 * m3);
    }
  }
  cert.negative = std::move(ni);
  return cert;
}

}  // namespace tht
