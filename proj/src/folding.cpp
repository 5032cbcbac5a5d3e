// SPDX-License-Identifier: Apache-2.0
#include "tht/folding.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "tht/error.hpp"

namespace tht {

namespace {

struct UnionFind {
  std::vector<VertexId> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  VertexId find(VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  // Smaller id wins so class representatives are canonical.
  bool unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

Subdivided normal_form_of(const GraphMap& m) {
  Restriction r = restrict_to(m.domain, m.support);
  GraphMap local{r.graph, m.codomain, Subgraph::full(r.graph), {}, {}};
  for (VertexId v : r.vertex_to_ambient) local.vertex_image.push_back(m.vertex_image[v]);
  for (EdgeId e : r.edge_to_ambient) local.edge_image.push_back(m.edge_image[e]);
  Subdivided sub = subdivide_to_combinatorial(local);

  CellOrigin restriction;
  restriction.vertex_parent = r.vertex_to_ambient;
  restriction.vertex_on_edge.assign(r.vertex_to_ambient.size(), -1);
  restriction.edge_parent = r.edge_to_ambient;
  sub.origin = CellOrigin::chain(restriction, sub.origin);
  return sub;
}

// Direction of an edge end at a vertex: `tail_side` when the edge leaves the
// vertex forward.
struct End {
  EdgeId edge;
  bool tail_side;
};

}  // namespace

Factorization fold_to_immersion(const GraphMap& m, const FoldOptions& options) {
  validate_map(m);
  Factorization out;
  out.normal_form = normal_form_of(m);
  const GraphMap& nf = out.normal_form.map;
  const Graph& g = nf.domain;
  const auto ne = static_cast<EdgeId>(g.edge_count());

  UnionFind uf(g.vertex_count());
  std::vector<bool> alive(ne, true);
  std::vector<bool> collapsed(ne, false);
  std::vector<EdgeId> merged_into(ne, -1);
  std::vector<bool> merged_flip(ne, false);

  for (EdgeId e = 0; e < ne; ++e) {
    if (!nf.edge_image[e].steps.empty()) continue;
    alive[e] = false;
    collapsed[e] = true;
    bool preserving = uf.unite(g.tail(e), g.head(e));
    out.moves.push_back({FoldMove::Kind::Collapse, g.edge_name(e), "", true, preserving});
  }

  auto label = [&](EdgeId e) { return nf.edge_image[e].steps.front(); };

  while (true) {
    // (vertex, codomain direction) -> first end seen; collisions in scan order.
    std::map<std::tuple<VertexId, EdgeId, bool>, End> seen;
    std::vector<std::tuple<VertexId, End, End>> collisions;
    for (EdgeId e = 0; e < ne; ++e) {
      if (!alive[e]) continue;
      Step s = label(e);
      const End ends[2] = {{e, true}, {e, false}};
      for (const End& end : ends) {
        VertexId at = uf.find(end.tail_side ? g.tail(e) : g.head(e));
        Step dir = end.tail_side ? s : s.inverse();
        auto [it, inserted] = seen.try_emplace({at, dir.edge, dir.forward}, end);
        if (!inserted) collisions.emplace_back(at, it->second, end);
      }
    }
    if (collisions.empty()) break;

    std::size_t pick = 0;
    if (options.shuffle) {
      pick = std::uniform_int_distribution<std::size_t>(0, collisions.size() - 1)(*options.shuffle);
    } else {
      pick = static_cast<std::size_t>(
          std::min_element(collisions.begin(), collisions.end(),
                           [](const auto& x, const auto& y) {
                             return std::make_tuple(std::get<0>(x), std::get<1>(x).edge, std::get<2>(x).edge) <
                                    std::make_tuple(std::get<0>(y), std::get<1>(y).edge, std::get<2>(y).edge);
                           }) -
          collisions.begin());
    }
    auto [at, keep, drop] = collisions[pick];
    if (keep.edge == drop.edge) fail(ErrorKind::Internal, "fold of an edge with itself");
    if (drop.edge < keep.edge) std::swap(keep, drop);

    VertexId far_keep = uf.find(keep.tail_side ? g.head(keep.edge) : g.tail(keep.edge));
    VertexId far_drop = uf.find(drop.tail_side ? g.head(drop.edge) : g.tail(drop.edge));
    bool same = keep.tail_side == drop.tail_side;
    bool preserving = uf.unite(far_keep, far_drop);
    alive[drop.edge] = false;
    merged_into[drop.edge] = keep.edge;
    merged_flip[drop.edge] = !same;
    out.moves.push_back(
        {FoldMove::Kind::Fold, g.edge_name(keep.edge), g.edge_name(drop.edge), same, preserving});
  }

  // Assemble the folded graph and both maps.
  Graph folded;
  std::vector<VertexId> vertex_new(g.vertex_count(), kNoVertex);
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (uf.find(v) == v) vertex_new[v] = folded.add_vertex(g.vertex_name(v));
  std::vector<EdgeId> edge_new(ne, -1);
  for (EdgeId e = 0; e < ne; ++e)
    if (alive[e]) edge_new[e] = folded.add_edge(g.edge_name(e), vertex_new[uf.find(g.tail(e))], vertex_new[uf.find(g.head(e))]);

  out.rho = GraphMap{g, folded, Subgraph::full(g), {}, {}};
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    out.rho.vertex_image.push_back(vertex_new[uf.find(v)]);
  for (EdgeId e = 0; e < ne; ++e) {
    VertexId base = out.rho.vertex_image[g.tail(e)];
    if (collapsed[e]) {
      out.rho.edge_image.push_back({base, {}});
      continue;
    }
    EdgeId target = e;
    bool flip = false;
    while (merged_into[target] != -1) {
      flip = flip != merged_flip[target];
      target = merged_into[target];
    }
    out.rho.edge_image.push_back({base, {{edge_new[target], !flip}}});
  }

  out.theta = GraphMap{folded, nf.codomain, Subgraph::full(folded), {}, {}};
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    if (uf.find(v) != v) continue;
    out.theta.vertex_image.push_back(nf.vertex_image[v]);
  }
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (out.theta.vertex_image[out.rho.vertex_image[v]] != nf.vertex_image[v])
      fail(ErrorKind::Internal, "folding identified vertices with different images");
  for (EdgeId e = 0; e < ne; ++e)
    if (alive[e]) out.theta.edge_image.push_back({nf.vertex_image[g.tail(e)] , {label(e)}});

  out.pi1_injective = std::all_of(out.moves.begin(), out.moves.end(), [](const FoldMove& mv) { return mv.rank_preserving; });
  return out;
}

bool is_pi1_injective(const GraphMap& m) { return fold_to_immersion(m).pi1_injective; }

bool homotopy_equivalence_by_euler(const Factorization& f) {
  const Graph& src = f.rho.domain;
  const Graph& dst = f.rho.codomain;
  Components cs = components(src, Subgraph::full(src));
  Components cd = components(dst, Subgraph::full(dst));
  if (cs.count != cd.count) return false;
  std::vector<int> target(cs.count, -1);
  for (VertexId v = 0; v < static_cast<VertexId>(src.vertex_count()); ++v) {
    int c = cs.of_vertex[v];
    int t = cd.of_vertex[f.rho.vertex_image[v]];
    if (target[c] != -1 && target[c] != t) return false;
    target[c] = t;
  }
  std::vector<int> sorted = target;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (int c = 0; c < cs.count; ++c)
    if (euler_char(cs.member(src, Subgraph::full(src), c)) != euler_char(cd.member(dst, Subgraph::full(dst), target[c]))) return false;
  return true;
}

bool factorization_commutes(const Factorization& f) {
  const GraphMap& nf = f.normal_form.map;
  if (!validate_map(f.theta).immersion) return false;
  for (VertexId v = 0; v < static_cast<VertexId>(nf.domain.vertex_count()); ++v)
    if (f.theta.vertex_image[f.rho.vertex_image[v]] != nf.vertex_image[v]) return false;
  for (EdgeId e = 0; e < static_cast<EdgeId>(nf.domain.edge_count()); ++e)
    if (!(map_path(f.theta, f.rho.edge_image[e]) == nf.edge_image[e])) return false;
  return true;
}

bool replay_matches(const Factorization& f) {
  const Graph& g = f.normal_form.map.domain;
  UnionFind uf(g.vertex_count());
  std::vector<bool> alive(g.edge_count(), true);
  for (const FoldMove& mv : f.moves) {
    auto e = g.find_edge(mv.edge);
    if (!e || !alive[*e]) return false;
    if (mv.kind == FoldMove::Kind::Collapse) {
      if (uf.unite(g.tail(*e), g.head(*e)) != mv.rank_preserving) return false;
      alive[*e] = false;
      continue;
    }
    auto o = g.find_edge(mv.other);
    if (!o || !alive[*o]) return false;
    // The shared end was already identified; the far ends decide the rank.
    bool changed_tail = uf.unite(g.tail(*e), mv.same_orientation ? g.tail(*o) : g.head(*o));
    bool changed_head = uf.unite(g.head(*e), mv.same_orientation ? g.head(*o) : g.tail(*o));
    if ((changed_tail || changed_head) != mv.rank_preserving) return false;
    alive[*o] = false;
  }
  const Graph& folded = f.rho.codomain;
  std::map<VertexId, VertexId> class_to_image;
  std::map<VertexId, VertexId> image_to_class;
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    VertexId c = uf.find(v);
    VertexId img = f.rho.vertex_image[v];
    auto [a, ia] = class_to_image.try_emplace(c, img);
    auto [b, ib] = image_to_class.try_emplace(img, c);
    if (a->second != img || b->second != c) return false;
  }
  if (class_to_image.size() != folded.vertex_count()) return false;
  std::size_t survivors = 0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    if (!alive[e]) continue;
    ++survivors;
    auto fe = folded.find_edge(g.edge_name(e));
    if (!fe) return false;
    if (folded.tail(*fe) != class_to_image[uf.find(g.tail(e))] || folded.head(*fe) != class_to_image[uf.find(g.head(e))])
      return false;
  }
  return survivors == folded.edge_count();
}

ImageTrace image_trace(const GraphMap& psi, int cap) {
  if (!(psi.domain == psi.codomain)) fail(ErrorKind::Structural, "image_trace expects a partial self-map");
  validate_map(psi);
  const Graph& f = psi.domain;
  if (cap <= 0) cap = static_cast<int>(psi.support.vertex_count() + psi.support.edge_count()) + 2;
  ImageTrace t;
  t.stages.push_back(psi.support);
  while (true) {
    Subgraph next = intersect(image_of(psi, t.stages.back()), psi.support);
    if (!contains(t.stages.back(), next)) fail(ErrorKind::Internal, "image trace is not nested");
    if (next == t.stages.back()) break;
    t.stages.push_back(std::move(next));
    if (static_cast<int>(t.stages.size()) > cap + 1)
      fail(ErrorKind::Internal, "image trace did not stabilize within the cap");
  }
  t.stabilization_index = static_cast<int>(t.stages.size()) - 1;
  t.stable_rank_positive = !is_forest(f, t.stages.back());
  return t;
}

Height directed_height_general(const GraphMap& psi, int cap) {
  if (!(psi.domain == psi.codomain)) fail(ErrorKind::Structural, "directed height expects a partial self-map");
  validate_map(psi);
  if (cap <= 0) cap = static_cast<int>(psi.support.vertex_count() + psi.support.edge_count()) + 2;
  ImageTrace trace = image_trace(psi, cap);
  bool injective = is_pi1_injective(psi);

  GraphMap power_map = GraphMap::identity(psi.domain);
  for (int i = 0; i <= cap; ++i) {
    if (i > 0) power_map = generalized_compose(psi, power_map).map;
    Factorization fi = fold_to_immersion(power_map);
    Subgraph pre = preimage_of(fi.theta, psi.support);
    if (is_forest(fi.theta.domain, pre)) return Height::finite(i);
    if (i >= trace.stabilization_index && trace.stable_rank_positive && injective) return Height::infinite();
  }
  return Height::unknown(cap);
}

// -- Free groups ------------------------------------------------------------

Word parse_word(const std::vector<std::string>& basis, const std::string& text) {
  Word w;
  for (char c : text) {
    bool inverse = c >= 'A' && c <= 'Z';
    char lower = inverse ? static_cast<char>(c - 'A' + 'a') : c;
    auto it = std::find(basis.begin(), basis.end(), std::string(1, lower));
    if (it == basis.end()) fail(ErrorKind::Input, std::string("letter '") + c + "' is not in the basis");
    int k = static_cast<int>(it - basis.begin()) + 1;
    w.push_back(inverse ? -k : k);
  }
  return w;
}

std::string word_to_string(const std::vector<std::string>& basis, const Word& w) {
  std::string out;
  for (int x : w) {
    const std::string& name = basis[std::abs(x) - 1];
    if (x > 0) {
      out += name;
    } else {
      for (char c : name) out.push_back(static_cast<char>(c >= 'a' && c <= 'z' ? c - 'a' + 'A' : c));
    }
  }
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word word_inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

Word word_concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

Graph rose_on(const std::vector<std::string>& basis) {
  Graph g;
  VertexId v = g.add_vertex("v");
  for (const auto& name : basis) g.add_edge(name, v, v);
  return g;
}

CoreGraph core_graph_of_words(const std::vector<std::string>& basis, const std::vector<Word>& words) {
  Graph target = rose_on(basis);
  Graph wedge;
  VertexId base = wedge.add_vertex("o");
  std::vector<EdgePath> images;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    if (w.empty()) fail(ErrorKind::Input, "empty word");
    if (free_reduce(w) != w) fail(ErrorKind::Input, "word " + word_to_string(basis, w) + " is not reduced");
    for (int x : w)
      if (std::abs(x) > static_cast<int>(basis.size())) fail(ErrorKind::Input, "word letter outside the basis");
    VertexId prev = base;
    for (std::size_t j = 0; j < w.size(); ++j) {
      VertexId next = j + 1 == w.size()
                          ? base
                          : wedge.add_vertex("w" + std::to_string(i) + ":" + std::to_string(j + 1));
      wedge.add_edge("w" + std::to_string(i) + "/" + std::to_string(j + 1), prev, next);
      images.push_back({0, {{std::abs(w[j]) - 1, w[j] > 0}}});
      prev = next;
    }
  }
  GraphMap m{wedge, target, Subgraph::full(wedge), std::vector<VertexId>(wedge.vertex_count(), 0), images};
  Factorization f = fold_to_immersion(m);
  return {f.theta, f.rho.vertex_image[base]};
}

CoreGraph core_graph_of_words(int rank, const std::vector<Word>& words) {
  std::vector<std::string> basis;
  for (int i = 0; i < rank; ++i) basis.push_back(std::string(1, static_cast<char>('a' + i)));
  return core_graph_of_words(basis, words);
}

bool is_member(const CoreGraph& cg, const Word& w) {
  const GraphMap& m = cg.immersion;
  VertexId at = cg.base;
  for (int x : w) {
    Step want{std::abs(x) - 1, x > 0};
    bool moved = false;
    for (EdgeId e : m.domain.incident(at)) {
      Step label = m.edge_image[e].steps.front();
      if (m.domain.tail(e) == at && label == want) {
        at = m.domain.head(e);
        moved = true;
        break;
      }
      if (m.domain.head(e) == at && label.inverse() == want) {
        at = m.domain.tail(e);
        moved = true;
        break;
      }
    }
    if (!moved) return false;
  }
  return at == cg.base;
}

Graph fiber_product(const GraphMap& alpha_in, const GraphMap& beta_in) {
  if (!(alpha_in.codomain == beta_in.codomain)) fail(ErrorKind::Structural, "fiber product needs a common codomain");
  if (!validate_map(alpha_in).immersion || !validate_map(beta_in).immersion)
    fail(ErrorKind::Contract, "fiber product needs immersions");
  GraphMap alpha = subdivide_to_combinatorial(alpha_in).map;
  GraphMap beta = subdivide_to_combinatorial(beta_in).map;
  const Graph& a = alpha.domain;
  const Graph& b = beta.domain;

  Graph out;
  std::map<std::pair<VertexId, VertexId>, VertexId> ids;
  for (VertexId u = 0; u < static_cast<VertexId>(a.vertex_count()); ++u) {
    if (!alpha.support.vertices[u]) continue;
    for (VertexId w = 0; w < static_cast<VertexId>(b.vertex_count()); ++w)
      if (beta.support.vertices[w] && alpha.vertex_image[u] == beta.vertex_image[w])
        ids[{u, w}] = out.add_vertex("(" + a.vertex_name(u) + "," + b.vertex_name(w) + ")");
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(a.edge_count()); ++e) {
    if (!alpha.support.edges[e]) continue;
    Step se = alpha.edge_image[e].steps.front();
    for (EdgeId f = 0; f < static_cast<EdgeId>(b.edge_count()); ++f) {
      if (!beta.support.edges[f]) continue;
      Step sf = beta.edge_image[f].steps.front();
      if (se.edge != sf.edge) continue;
      VertexId from = ids.at({a.tail(e), se.forward == sf.forward ? b.tail(f) : b.head(f)});
      VertexId to = ids.at({a.head(e), se.forward == sf.forward ? b.head(f) : b.tail(f)});
      out.add_edge("(" + a.edge_name(e) + "," + b.edge_name(f) + ")", from, to);
    }
  }
  return out;
}

}  // namespace tht
