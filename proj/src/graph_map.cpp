// SPDX-License-Identifier: Apache-2.0
#include "tht/graph_map.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "tht/error.hpp"

namespace tht {

GraphMap GraphMap::identity(const Graph& g) {
  GraphMap m{g, g, Subgraph::full(g), {}, {}};
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) m.vertex_image.push_back(v);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) m.edge_image.push_back({g.tail(e), {{e, true}}});
  return m;
}

MapFlags validate_map(const GraphMap& m) {
  const Graph& dom = m.domain;
  const Graph& cod = m.codomain;
  if (!is_subgraph_of(dom, m.support)) fail(ErrorKind::Structural, "map support is not a subgraph of the domain");
  if (m.vertex_image.size() != dom.vertex_count() || m.edge_image.size() != dom.edge_count())
    fail(ErrorKind::Structural, "map image tables do not match the domain");

  const auto nv = static_cast<VertexId>(cod.vertex_count());
  for (VertexId v = 0; v < static_cast<VertexId>(dom.vertex_count()); ++v) {
    if (!m.support.vertices[v]) continue;
    if (m.vertex_image[v] < 0 || m.vertex_image[v] >= nv)
      fail(ErrorKind::Structural, "vertex '" + dom.vertex_name(v) + "' has no image in the codomain");
  }

  MapFlags flags{true, true, true};
  for (EdgeId e = 0; e < static_cast<EdgeId>(dom.edge_count()); ++e) {
    if (!m.support.edges[e]) continue;
    const EdgePath& img = m.edge_image[e];
    if (!is_valid_path(cod, img))
      fail(ErrorKind::Structural, "image of edge '" + dom.edge_name(e) + "' is not a path in the codomain");
    if (img.base != m.vertex_image[dom.tail(e)] || path_end(cod, img) != m.vertex_image[dom.head(e)])
      fail(ErrorKind::Structural, "image of edge '" + dom.edge_name(e) + "' does not join the images of its endpoints");
    if (img.length() != 1) flags.combinatorial = false;
    if (img.steps.empty() || !is_reduced(img)) flags.immersion = false;
  }
  if (!flags.immersion) return flags;

  // Directions at a vertex are (edge, leaving-forward?) pairs; each maps to the
  // codomain direction it leaves along.
  for (VertexId v = 0; v < static_cast<VertexId>(dom.vertex_count()); ++v) {
    if (!m.support.vertices[v]) continue;
    std::set<std::pair<EdgeId, bool>> seen;
    auto add = [&](Step s) {
      if (!seen.insert({s.edge, s.forward}).second) flags.immersion = false;
    };
    for (EdgeId e : dom.incident(v)) {
      if (!m.support.edges[e]) continue;
      const EdgePath& img = m.edge_image[e];
      if (dom.tail(e) == v) add(img.steps.front());
      if (dom.head(e) == v) add(img.steps.back().inverse());
    }
    if (!flags.immersion) break;
  }
  return flags;
}

EdgePath map_path(const GraphMap& m, const EdgePath& p) {
  EdgePath out{m.vertex_image[p.base], {}};
  for (Step s : p.steps) {
    const EdgePath& img = m.edge_image[s.edge];
    if (s.forward) {
      out.steps.insert(out.steps.end(), img.steps.begin(), img.steps.end());
    } else {
      for (auto it = img.steps.rbegin(); it != img.steps.rend(); ++it) out.steps.push_back(it->inverse());
    }
  }
  return out;
}

Subgraph image_of(const GraphMap& m, const Subgraph& a) {
  Subgraph out = Subgraph::empty(m.codomain);
  for (VertexId v = 0; v < static_cast<VertexId>(m.domain.vertex_count()); ++v)
    if (a.vertices[v]) out.vertices[m.vertex_image[v]] = true;
  for (EdgeId e = 0; e < static_cast<EdgeId>(m.domain.edge_count()); ++e) {
    if (!a.edges[e]) continue;
    for (Step s : m.edge_image[e].steps) {
      out.edges[s.edge] = true;
      out.vertices[m.codomain.tail(s.edge)] = true;
      out.vertices[m.codomain.head(s.edge)] = true;
    }
  }
  return out;
}

Subgraph preimage_of(const GraphMap& m, const Subgraph& target) {
  Subgraph out = Subgraph::empty(m.domain);
  for (VertexId v = 0; v < static_cast<VertexId>(m.domain.vertex_count()); ++v)
    out.vertices[v] = m.support.vertices[v] && target.vertices[m.vertex_image[v]];
  for (EdgeId e = 0; e < static_cast<EdgeId>(m.domain.edge_count()); ++e)
    out.edges[e] = m.support.edges[e] && path_within(m.codomain, target, m.edge_image[e]);
  return out;
}

CellOrigin CellOrigin::identity(const Graph& g) {
  CellOrigin o;
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    o.vertex_parent.push_back(v);
    o.vertex_on_edge.push_back(-1);
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) o.edge_parent.push_back(e);
  return o;
}

CellOrigin CellOrigin::chain(const CellOrigin& outer, const CellOrigin& inner) {
  CellOrigin o;
  for (std::size_t v = 0; v < inner.vertex_parent.size(); ++v) {
    VertexId p = inner.vertex_parent[v];
    if (p != kNoVertex) {
      o.vertex_parent.push_back(outer.vertex_parent[p]);
      o.vertex_on_edge.push_back(outer.vertex_on_edge[p]);
    } else {
      o.vertex_parent.push_back(kNoVertex);
      o.vertex_on_edge.push_back(outer.edge_parent[inner.vertex_on_edge[v]]);
    }
  }
  for (EdgeId e : inner.edge_parent) o.edge_parent.push_back(outer.edge_parent[e]);
  return o;
}

Subdivided subdivide_to_combinatorial(const GraphMap& m) {
  const Graph& dom = m.domain;
  Subdivided out;
  GraphMap& r = out.map;
  r.codomain = m.codomain;
  CellOrigin& o = out.origin;

  for (VertexId v = 0; v < static_cast<VertexId>(dom.vertex_count()); ++v) {
    r.domain.add_vertex(dom.vertex_name(v));
    r.support.vertices.push_back(m.support.vertices[v]);
    r.vertex_image.push_back(m.support.vertices[v] ? m.vertex_image[v] : kNoVertex);
    o.vertex_parent.push_back(v);
    o.vertex_on_edge.push_back(-1);
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(dom.edge_count()); ++e) {
    const EdgePath& img = m.edge_image[e];
    if (!m.support.edges[e] || img.length() <= 1) {
      r.domain.add_edge(dom.edge_name(e), dom.tail(e), dom.head(e));
      r.support.edges.push_back(m.support.edges[e]);
      r.edge_image.push_back(m.support.edges[e] ? img : EdgePath{});
      o.edge_parent.push_back(e);
      continue;
    }
    const std::string& name = dom.edge_name(e);
    VertexId prev = dom.tail(e);
    for (std::size_t j = 0; j < img.length(); ++j) {
      VertexId next;
      if (j + 1 == img.length()) {
        next = dom.head(e);
      } else {
        next = r.domain.add_vertex(name + ":" + std::to_string(j + 1));
        r.support.vertices.push_back(true);
        r.vertex_image.push_back(step_end(m.codomain, img.steps[j]));
        o.vertex_parent.push_back(kNoVertex);
        o.vertex_on_edge.push_back(e);
      }
      r.domain.add_edge(name + "/" + std::to_string(j + 1), prev, next);
      r.support.edges.push_back(true);
      r.edge_image.push_back({step_start(m.codomain, img.steps[j]), {img.steps[j]}});
      o.edge_parent.push_back(e);
      prev = next;
    }
  }
  return out;
}

Subdivided generalized_compose(const GraphMap& beta, const GraphMap& alpha) {
  if (!(alpha.codomain == beta.domain))
    fail(ErrorKind::Structural, "generalized_compose: codomain of alpha does not contain the domain of beta");
  if (!is_subgraph_of(beta.domain, beta.support))
    fail(ErrorKind::Structural, "generalized_compose: support of beta is not a subgraph");

  Subdivided sub = subdivide_to_combinatorial(alpha);
  const GraphMap& a = sub.map;
  GraphMap r;
  r.domain = a.domain;
  r.codomain = beta.codomain;
  r.support = Subgraph::empty(a.domain);
  r.vertex_image.assign(a.domain.vertex_count(), kNoVertex);
  r.edge_image.assign(a.domain.edge_count(), EdgePath{});

  for (VertexId v = 0; v < static_cast<VertexId>(a.domain.vertex_count()); ++v) {
    if (!a.support.vertices[v] || !beta.support.vertices[a.vertex_image[v]]) continue;
    r.support.vertices[v] = true;
    r.vertex_image[v] = beta.vertex_image[a.vertex_image[v]];
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(a.domain.edge_count()); ++e) {
    if (!a.support.edges[e]) continue;
    const EdgePath& img = a.edge_image[e];
    if (img.steps.empty()) {
      if (!beta.support.vertices[img.base]) continue;
      r.support.edges[e] = true;
      r.edge_image[e] = {beta.vertex_image[img.base], {}};
      continue;
    }
    Step s = img.steps.front();
    if (!beta.support.edges[s.edge]) continue;
    r.support.edges[e] = true;
    r.edge_image[e] = map_path(beta, EdgePath{img.base, {s}});
  }
  return {std::move(r), std::move(sub.origin)};
}

Subdivided power(const GraphMap& psi, int i) {
  Subdivided acc{GraphMap::identity(psi.domain), CellOrigin::identity(psi.domain)};
  for (int k = 0; k < i; ++k) {
    Subdivided next = generalized_compose(psi, acc.map);
    acc.origin = CellOrigin::chain(acc.origin, next.origin);
    acc.map = std::move(next.map);
  }
  return acc;
}

Subgraph largest_original_subgraph(const Graph& original, const Graph& subdivided, const CellOrigin& origin,
                                   const Subgraph& support) {
  Subgraph out = Subgraph::empty(original);
  std::vector<bool> edge_ok(original.edge_count(), true);
  for (VertexId v = 0; v < static_cast<VertexId>(subdivided.vertex_count()); ++v) {
    if (origin.vertex_parent[v] != kNoVertex)
      out.vertices[origin.vertex_parent[v]] = support.vertices[v];
    else if (!support.vertices[v])
      edge_ok[origin.vertex_on_edge[v]] = false;
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(subdivided.edge_count()); ++e)
    if (!support.edges[e]) edge_ok[origin.edge_parent[e]] = false;
  for (EdgeId e = 0; e < static_cast<EdgeId>(original.edge_count()); ++e)
    out.edges[e] = edge_ok[e] && out.vertices[original.tail(e)] && out.vertices[original.head(e)];
  return out;
}

std::int64_t norm(const GraphMap& psi) {
  std::int64_t best = 0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(psi.domain.edge_count()); ++e)
    if (psi.support.edges[e]) best = std::max<std::int64_t>(best, psi.edge_image[e].length());
  return best == 0 ? 1 : best;
}

namespace {

void require_self_map(const GraphMap& psi) {
  if (!(psi.domain == psi.codomain))
    fail(ErrorKind::Structural, "expected a partial self-map H -> F with H a subgraph of F");
}

Subgraph closure_of_edges(const Graph& g, const Subgraph& s, const Subgraph& minus) {
  Subgraph out = Subgraph::empty(g);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    if (!s.edges[e] || minus.edges[e]) continue;
    out.edges[e] = true;
    out.vertices[g.tail(e)] = true;
    out.vertices[g.head(e)] = true;
  }
  return out;
}

}  // namespace

DomainFiltration domain_filtration(const GraphMap& psi, bool require_immersion) {
  require_self_map(psi);
  MapFlags flags = validate_map(psi);
  if (require_immersion && !flags.immersion)
    fail(ErrorKind::Unsupported, "domain filtration needs an immersion; fold the map first");

  const Graph& f = psi.domain;
  DomainFiltration df;
  df.domains.push_back(Subgraph::full(f));
  df.domains.push_back(psi.support);
  while (true) {
    Subgraph next = preimage_of(psi, df.domains.back());
    if (next == df.domains.back()) break;
    df.domains.push_back(std::move(next));
  }
  // D_0 = F may already equal D_1 = H.
  if (df.domains[0] == df.domains[1]) {
    df.domains.pop_back();
  }
  df.stabilization_index = static_cast<int>(df.domains.size()) - 1;
  df.d_infinity = df.domains.back();

  df.strata.assign(df.domains.size(), Subgraph::empty(f));
  df.edge_stratum.assign(f.edge_count(), -1);
  for (EdgeId e = 0; e < static_cast<EdgeId>(f.edge_count()); ++e)
    if (psi.support.edges[e]) df.edge_stratum[e] = 0;
  for (std::size_t i = 1; i + 1 < df.domains.size(); ++i) {
    df.strata[i] = closure_of_edges(f, df.domains[i], df.domains[i + 1]);
    for (EdgeId e = 0; e < static_cast<EdgeId>(f.edge_count()); ++e)
      if (df.strata[i].edges[e]) {
        df.edge_stratum[e] = static_cast<int>(i);
        df.max_fan_length = std::max(df.max_fan_length, static_cast<int>(i));
      }
  }
  df.psi_norm = norm(psi);
  df.diam_d_infinity = diameter(f, df.d_infinity);
  return df;
}

std::string Height::to_string() const {
  switch (kind) {
    case Kind::Finite: return std::to_string(value);
    case Kind::Infinite: return "infinite";
    case Kind::Unknown: return "unknown(" + std::to_string(value) + ")";
  }
  return "?";
}

Height directed_height(const DomainFiltration& df, const Graph& f) {
  // D_{i+1} for i >= 0; indices past the stored list repeat D_infinity.
  for (std::size_t i = 0; i + 1 < df.domains.size(); ++i)
    if (is_forest(f, df.domains[i + 1])) return Height::finite(static_cast<int>(i));
  int last = static_cast<int>(df.domains.size()) - 1;
  if (is_forest(f, df.d_infinity)) return Height::finite(last);
  return Height::infinite();
}

Height directed_height(const GraphMap& psi) { return directed_height(domain_filtration(psi), psi.domain); }

Fan fan_from_edge(const GraphMap& psi, EdgeId e, int max_len) {
  require_self_map(psi);
  if (e < 0 || e >= static_cast<EdgeId>(psi.domain.edge_count()) || !psi.support.edges[e])
    fail(ErrorKind::Structural, "fan_from_edge: edge is not in H");
  if (max_len <= 0) max_len = domain_filtration(psi, false).stabilization_index + 1;

  Fan fan;
  fan.origin = e;
  fan.rims.push_back({psi.domain.tail(e), {{e, true}}});
  while (true) {
    const EdgePath& rim = fan.rims.back();
    if (!path_within(psi.domain, psi.support, rim)) break;
    ++fan.length;
    if (fan.length >= max_len) {
      fan.infinite = true;
      break;
    }
    fan.rims.push_back(map_path(psi, rim));
  }
  return fan;
}

}  // namespace tht
