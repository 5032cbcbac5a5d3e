// SPDX-License-Identifier: Apache-2.0
#include "tht/verifier.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "tht/error.hpp"
#include "tht/fixtures.hpp"

namespace tht {

BruteForcePreimage brute_force_preimage(const GraphMap& psi, int i, int cap) {
  if (i < 0 || i > cap) fail(ErrorKind::Input, "preimage depth " + std::to_string(i) + " exceeds the cap " + std::to_string(cap));
  if (!(psi.domain == psi.codomain)) fail(ErrorKind::Structural, "expected a partial self-map");
  validate_map(psi);
  Subdivided p = power(psi, i);
  Subgraph z = preimage_of(p.map, psi.support);
  return {is_forest(p.map.domain, z), largest_original_subgraph(psi.domain, p.map.domain, p.origin, z)};
}

namespace {

// A partial complex immersed in X, kept as labels only. Faces are recovered
// by walking from their base corner since directions at a vertex are unique.
struct State {
  std::vector<VertexId> vlabel;
  std::vector<EdgeId> elabel;
  std::vector<int> tail, head;
  std::vector<int> usage;
  std::vector<std::pair<int, int>> faces;          // (face of X, base vertex)
  std::vector<std::vector<std::pair<int, int>>> ends;  // per vertex: (end key, edge)

  static int key(EdgeId label, bool tail_side) { return label * 2 + (tail_side ? 0 : 1); }

  int find_end(int v, int k) const {
    for (auto [kk, e] : ends[v])
      if (kk == k) return e;
    return -1;
  }
  int add_vertex(VertexId label) {
    vlabel.push_back(label);
    ends.emplace_back();
    return static_cast<int>(vlabel.size()) - 1;
  }
  int add_edge(EdgeId label, int from, int to) {
    int e = static_cast<int>(elabel.size());
    elabel.push_back(label);
    tail.push_back(from);
    head.push_back(to);
    usage.push_back(0);
    ends[from].push_back({key(label, true), e});
    ends[to].push_back({key(label, false), e});
    return e;
  }
  bool has_face(int f, int base) const {
    return std::find(faces.begin(), faces.end(), std::make_pair(f, base)) != faces.end();
  }
  int free_faces() const {
    return static_cast<int>(std::count(usage.begin(), usage.end(), 1));
  }
  bool complete() const {
    return !faces.empty() && std::all_of(usage.begin(), usage.end(), [](int u) { return u >= 2; });
  }
};

struct Canonical {
  std::vector<int> code;
  std::vector<int> order;  // new id -> old vertex
};

Canonical canonicalize(const State& s) {
  const int nv = static_cast<int>(s.vlabel.size());
  Canonical best;
  VertexId min_label = *std::min_element(s.vlabel.begin(), s.vlabel.end());
  for (int start = 0; start < nv; ++start) {
    if (s.vlabel[start] != min_label) continue;
    std::vector<int> id(nv, -1);
    std::vector<int> order{start};
    id[start] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto ends = s.ends[order[i]];
      std::sort(ends.begin(), ends.end());
      for (auto [k, e] : ends) {
        int w = (k & 1) == 0 ? s.head[e] : s.tail[e];
        if (id[w] == -1) {
          id[w] = static_cast<int>(order.size());
          order.push_back(w);
        }
      }
    }
    if (static_cast<int>(order.size()) != nv) fail(ErrorKind::Internal, "partial complex is not connected");
    std::vector<int> code{nv};
    for (int v : order) code.push_back(s.vlabel[v]);
    std::vector<std::array<int, 3>> edges;
    for (std::size_t e = 0; e < s.elabel.size(); ++e) edges.push_back({id[s.tail[e]], id[s.head[e]], s.elabel[e]});
    std::sort(edges.begin(), edges.end());
    code.push_back(static_cast<int>(edges.size()));
    for (auto& t : edges) code.insert(code.end(), t.begin(), t.end());
    std::vector<std::pair<int, int>> faces;
    for (auto [f, b] : s.faces) faces.push_back({f, id[b]});
    std::sort(faces.begin(), faces.end());
    code.push_back(static_cast<int>(faces.size()));
    for (auto [f, b] : faces) {
      code.push_back(f);
      code.push_back(b);
    }
    if (best.code.empty() || code < best.code) best = {std::move(code), std::move(order)};
  }
  return best;
}

std::string code_string(const std::vector<int>& code) {
  std::string out;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(code[i]);
  }
  return out;
}

// Rebuilds s with vertices numbered in canonical order and edges and faces
// sorted, so isomorphic states become identical.
State relabel(const State& s, const Canonical& c) {
  std::vector<int> id(c.order.size());
  for (std::size_t i = 0; i < c.order.size(); ++i) id[c.order[i]] = static_cast<int>(i);
  State out;
  for (int v : c.order) out.add_vertex(s.vlabel[v]);
  std::vector<std::array<int, 4>> edges;
  for (std::size_t e = 0; e < s.elabel.size(); ++e)
    edges.push_back({id[s.tail[e]], id[s.head[e]], s.elabel[e], s.usage[e]});
  std::sort(edges.begin(), edges.end());
  for (auto& t : edges) {
    int e = out.add_edge(t[2], t[0], t[1]);
    out.usage[e] = t[3];
  }
  for (auto [f, b] : s.faces) out.faces.push_back({f, id[b]});
  std::sort(out.faces.begin(), out.faces.end());
  return out;
}

class Enumerator {
 public:
  Enumerator(const GraphMap& psi, int max_faces) : x_(build_mapping_torus(psi).complex), max_faces_(max_faces) {
    const Graph& g = x_.skeleton;
    // Faces that can occur in a collapsed immersed complex: repeatedly drop
    // faces through an edge of X used fewer than twice by the survivors.
    alive_.assign(x_.faces.size(), true);
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<int> uses(g.edge_count(), 0);
      for (std::size_t f = 0; f < x_.faces.size(); ++f)
        if (alive_[f])
          for (Step st : x_.faces[f].boundary.steps) ++uses[st.edge];
      for (std::size_t f = 0; f < x_.faces.size(); ++f) {
        if (!alive_[f]) continue;
        for (Step st : x_.faces[f].boundary.steps)
          if (uses[st.edge] < 2) {
            alive_[f] = false;
            changed = true;
            break;
          }
      }
    }
    for (const Face& f : x_.faces) longest_ = std::max(longest_, static_cast<int>(f.boundary.steps.size()));
    corner_vertex_.resize(x_.faces.size());
    for (std::size_t f = 0; f < x_.faces.size(); ++f) {
      VertexId at = x_.faces[f].boundary.base;
      for (Step st : x_.faces[f].boundary.steps) {
        corner_vertex_[f].push_back(at);
        at = step_end(g, st);
      }
    }
  }

  const TwoComplex& x() const { return x_; }

  EnumerationResult run(int jobs) {
    EnumerationResult result;
    std::map<std::string, State> level;
    if (max_faces_ >= 1) {
      std::vector<State> seeds;
      for (std::size_t f = 0; f < x_.faces.size(); ++f) {
        if (!alive_[f]) continue;
        State s;
        int v = s.add_vertex(x_.faces[f].boundary.base);
        walk(s, static_cast<int>(f), 0, v, 0, v, -1, seeds);
      }
      for (State& s : seeds) keep(std::move(s), 1, level);
    }
    for (int k = 1; k <= max_faces_ && !level.empty(); ++k) {
      result.partial_per_level.push_back(level.size());
      result.max_faces_reached = k;
      for (auto& [code, s] : level)
        if (s.complete()) complete_.push_back({code, s});
      if (k == max_faces_) break;
      level = expand(level, k + 1, jobs);
    }
    for (auto& [code, s] : complete_) result.complexes.push_back(to_complex(s, code));
    return result;
  }

  ImmersedComplex to_complex(const State& s, const std::string& code) const {
    const Graph& g = x_.skeleton;
    ImmersedComplex out;
    out.canonical = code;
    TwoComplex& y = out.y;
    for (std::size_t v = 0; v < s.vlabel.size(); ++v) {
      y.skeleton.add_vertex("y" + std::to_string(v));
      out.to_x.vertex_image.push_back(s.vlabel[v]);
    }
    for (std::size_t e = 0; e < s.elabel.size(); ++e) {
      std::string name = g.edge_name(s.elabel[e]) + "#" + std::to_string(e);
      if (x_.kind[s.elabel[e]] == EdgeKind::Vertical)
        y.add_vertical(name, s.tail[e], s.head[e], x_.origin[s.elabel[e]]);
      else
        y.add_horizontal(name, s.tail[e], s.head[e], x_.origin[s.elabel[e]]);
      out.to_x.edge_image.push_back(s.elabel[e]);
    }
    for (std::size_t i = 0; i < s.faces.size(); ++i) {
      auto [f, base] = s.faces[i];
      EdgePath b{base, {}};
      int at = base;
      for (Step st : x_.faces[f].boundary.steps) {
        int e = s.find_end(at, State::key(st.edge, st.forward));
        if (e < 0) fail(ErrorKind::Internal, "face boundary leaves the complex");
        b.steps.push_back({e, st.forward});
        at = st.forward ? s.head[e] : s.tail[e];
      }
      y.faces.push_back({x_.faces[f].name + "#" + std::to_string(i), b, x_.faces[f].origin});
      out.to_x.face_image.push_back(f);
    }
    return out;
  }

 private:
  // Walks face f from corner `pos` (= start) at vertex `at`, creating edges
  // and vertices as needed; `anchor` is the vertex the walk must close at.
  void walk(const State& s, int f, int start, int anchor, int j, int at, int base, std::vector<State>& out) const {
    const auto& steps = x_.faces[f].boundary.steps;
    const int len = static_cast<int>(steps.size());
    if (j == len) {
      if (at != anchor || s.has_face(f, base)) return;
      State done = s;
      done.faces.push_back({f, base});
      out.push_back(std::move(done));
      return;
    }
    int pos = (start + j) % len;
    if (pos == 0) base = at;
    Step st = steps[pos];
    bool last = j == len - 1;
    int e = s.find_end(at, State::key(st.edge, st.forward));
    if (e >= 0) {
      int next = st.forward ? s.head[e] : s.tail[e];
      if (last && next != anchor) return;
      State t = s;
      ++t.usage[e];
      walk(t, f, start, anchor, j + 1, next, base, out);
      return;
    }
    const Graph& g = x_.skeleton;
    VertexId want = st.forward ? g.head(st.edge) : g.tail(st.edge);
    int far_key = State::key(st.edge, !st.forward);
    auto extend = [&](State t, int target) {
      int ne = st.forward ? t.add_edge(st.edge, at, target) : t.add_edge(st.edge, target, at);
      t.usage[ne] = 1;
      walk(t, f, start, anchor, j + 1, target, base, out);
    };
    for (int w = 0; w < static_cast<int>(s.vlabel.size()); ++w) {
      if (last && w != anchor) continue;
      if (s.vlabel[w] != want || s.find_end(w, far_key) >= 0) continue;
      // A new loop at `at` must not reuse the near end either.
      extend(s, w);
    }
    if (!last) {
      State t = s;
      int w = t.add_vertex(want);
      extend(std::move(t), w);
    }
  }

  void keep(State s, int faces, std::map<std::string, State>& into) const {
    if (s.free_faces() > (max_faces_ - faces) * longest_) return;
    Canonical c = canonicalize(s);
    std::string code = code_string(c.code);
    if (into.count(code)) return;
    into.emplace(std::move(code), relabel(s, c));
  }

  // A complete state grows at any corner. Otherwise some face of every
  // completion covers the first free edge again, so only those are tried.
  std::vector<State> children(const State& s) const {
    std::vector<State> out;
    int free_edge = -1;
    for (std::size_t e = 0; e < s.usage.size() && free_edge < 0; ++e)
      if (s.usage[e] == 1) free_edge = static_cast<int>(e);
    for (std::size_t f = 0; f < x_.faces.size(); ++f) {
      if (!alive_[f]) continue;
      const auto& steps = x_.faces[f].boundary.steps;
      const auto& corners = corner_vertex_[f];
      for (int pos = 0; pos < static_cast<int>(corners.size()); ++pos) {
        if (free_edge >= 0) {
          if (steps[pos].edge != s.elabel[free_edge]) continue;
          int v = steps[pos].forward ? s.tail[free_edge] : s.head[free_edge];
          walk(s, static_cast<int>(f), pos, v, 0, v, -1, out);
          continue;
        }
        for (int v = 0; v < static_cast<int>(s.vlabel.size()); ++v)
          if (corners[pos] == s.vlabel[v]) walk(s, static_cast<int>(f), pos, v, 0, v, -1, out);
      }
    }
    return out;
  }

  std::map<std::string, State> expand(const std::map<std::string, State>& level, int faces, int jobs) const {
    std::vector<const State*> states;
    for (auto& [code, s] : level) states.push_back(&s);
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(states.size())));
    std::vector<std::map<std::string, State>> parts(jobs);
    auto work = [&](int part) {
      std::size_t lo = states.size() * part / jobs;
      std::size_t hi = states.size() * (part + 1) / jobs;
      for (std::size_t i = lo; i < hi; ++i)
        for (State& c : children(*states[i])) keep(std::move(c), faces, parts[part]);
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (int p = 0; p < jobs; ++p) threads.emplace_back(work, p);
      for (auto& t : threads) t.join();
    }
    std::map<std::string, State> merged;
    for (auto& part : parts) merged.merge(part);
    return merged;
  }

  TwoComplex x_;
  int max_faces_;
  int longest_ = 0;
  std::vector<bool> alive_;
  std::vector<std::vector<VertexId>> corner_vertex_;
  std::vector<std::pair<std::string, State>> complete_;
};

State state_of(const TwoComplex& y, const ComplexMap& to_x) {
  State s;
  for (std::size_t v = 0; v < y.skeleton.vertex_count(); ++v) s.add_vertex(to_x.vertex_image[v]);
  for (EdgeId e = 0; e < static_cast<EdgeId>(y.skeleton.edge_count()); ++e)
    s.add_edge(to_x.edge_image[e], y.skeleton.tail(e), y.skeleton.head(e));
  for (std::size_t i = 0; i < y.faces.size(); ++i) {
    s.faces.push_back({to_x.face_image[i], y.faces[i].boundary.base});
    for (Step st : y.faces[i].boundary.steps) ++s.usage[st.edge];
  }
  return s;
}

bool leafless_with_edges(const Graph& g, const Subgraph& s) {
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (s.vertices[v] && degree_in(g, s, v) < 2) return false;
  return true;
}

void audit_one(const ImmersedComplex& ic, const TwoComplex& x, const Rational& c, const std::optional<Rational>& c2,
               AuditReport& report) {
  const TwoComplex& y = ic.y;
  const Graph& g = y.skeleton;
  AuditEntry entry;
  entry.canonical = ic.canonical;
  entry.faces = static_cast<int>(y.faces.size());
  ComplexChecks checks = complex_checks(y);
  GraphOfSpaces gs = decompose(y);
  entry.chi = checks.chi;
  entry.chi_outgoing = gs.chi_outgoing;
  entry.bound_ok = Rational(entry.chi) <= -c * entry.faces;
  entry.splitting_ok = Rational(entry.chi_outgoing) >= Rational(entry.chi) / c;
  if (c2) entry.malnormal_ok = Rational(entry.chi) <= -*c2 * entry.faces;

  std::string why;
  bool structure = checks.connected && checks.collapsed && checks.isolated_edges.empty() && !checks.is_point &&
                   is_combinatorial_immersion(y, x, ic.to_x, &why) && gs.outgoing_disjoint;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    if (y.kind[e] == EdgeKind::Vertical && !gs.incoming.edges[e]) structure = false;
  structure = structure && leafless_with_edges(g, gs.vertex_spaces) && leafless_with_edges(g, gs.outgoing);

  Components vc = components(g, gs.vertex_spaces);
  bool boundary = true;
  for (int k = 0; k < vc.count; ++k) {
    Subgraph yv = vc.member(g, gs.vertex_spaces, k);
    Subgraph o = vc.member(g, gs.outgoing, k);
    for (std::size_t v = 0; v < o.vertices.size(); ++v) o.vertices[v] = o.vertices[v] && gs.outgoing.vertices[v];
    if (yv.edge_count() == 0 || euler_char(yv) > 0) structure = false;
    std::int64_t nb = std::count_if(gs.boundary.begin(), gs.boundary.end(), [&](VertexId v) { return yv.vertices[v]; });
    if (2 * (euler_char(yv) - euler_char(o)) > -nb) boundary = false;
  }
  Components oc = components(g, gs.outgoing);
  for (int k = 0; k < oc.count; ++k)
    if (oc.member(g, gs.outgoing, k).edge_count() == 0) structure = false;
  entry.structure_ok = structure;
  entry.boundary_ok = boundary;

  auto flag = [&](bool ok, const std::string& reason) {
    if (!ok) report.failures.push_back({reason, y});
  };
  flag(entry.bound_ok, "chi(Y) exceeds -c|Y|_2");
  flag(entry.splitting_ok, "chi(O_Y) below chi(Y)/c");
  flag(entry.structure_ok, "graph-of-spaces structure violated" + (why.empty() ? "" : ": " + why));
  flag(entry.boundary_ok, "boundary inequality violated in a vertex space");
  if (entry.malnormal_ok) flag(*entry.malnormal_ok, "chi(Y) exceeds -c'|Y|_2");
  report.entries.push_back(std::move(entry));
}

// Isolated-edge extension on label states.
struct Extender {
  const TwoComplex& x;
  const Rational& c;
  std::vector<AuditFailure>* failures;
  ExtensionSummary summary;

  void check(const State& s, int faces, int added) {
    ++summary.checked;
    std::int64_t chi = static_cast<std::int64_t>(s.vlabel.size()) - static_cast<std::int64_t>(s.elabel.size()) + faces;
    if (Rational(chi) > -c * faces) {
      ++summary.failures;
      if (failures) failures->push_back({"isolated-edge extension with " + std::to_string(added) + " edges exceeds the bound", {}});
    }
  }

  // Every way to add one isolated edge with at least one end on an existing
  // vertex.
  std::vector<State> one_edge(const State& s) const {
    std::vector<State> out;
    const Graph& g = x.skeleton;
    const int nv = static_cast<int>(s.vlabel.size());
    for (EdgeId label = 0; label < static_cast<EdgeId>(g.edge_count()); ++label) {
      for (int u = -1; u < nv; ++u) {
        if (u >= 0 && (s.vlabel[u] != g.tail(label) || s.find_end(u, State::key(label, true)) >= 0)) continue;
        for (int w = -1; w < nv; ++w) {
          if (u < 0 && w < 0) continue;
          if (w >= 0 && (s.vlabel[w] != g.head(label) || s.find_end(w, State::key(label, false)) >= 0)) continue;
          State t = s;
          int a = u >= 0 ? u : t.add_vertex(g.tail(label));
          int b = w >= 0 ? w : t.add_vertex(g.head(label));
          t.add_edge(label, a, b);
          out.push_back(std::move(t));
        }
      }
    }
    return out;
  }

  void grow(const State& s, int faces, int added, int cap) {
    if (added >= cap) return;
    for (const State& t : one_edge(s)) {
      check(t, faces, added + 1);
      grow(t, faces, added + 1, cap);
    }
  }

  // Disjoint union of a and b joined by one edge from a to b or b to a.
  void bridges(const State& a, const State& b, int faces, int cap) {
    const Graph& g = x.skeleton;
    const int na = static_cast<int>(a.vlabel.size());
    State u = a;
    std::vector<int> shift;
    for (VertexId l : b.vlabel) shift.push_back(u.add_vertex(l));
    for (std::size_t e = 0; e < b.elabel.size(); ++e) {
      int ne = u.add_edge(b.elabel[e], shift[b.tail[e]], shift[b.head[e]]);
      u.usage[ne] = b.usage[e];
    }
    const int nu = static_cast<int>(u.vlabel.size());
    for (EdgeId label = 0; label < static_cast<EdgeId>(g.edge_count()); ++label)
      for (int p = 0; p < nu; ++p)
        for (int q = 0; q < nu; ++q) {
          if ((p < na) == (q < na)) continue;
          if (u.vlabel[p] != g.tail(label) || u.find_end(p, State::key(label, true)) >= 0) continue;
          if (u.vlabel[q] != g.head(label) || u.find_end(q, State::key(label, false)) >= 0) continue;
          State t = u;
          t.add_edge(label, p, q);
          check(t, faces, 1);
          grow(t, faces, 1, cap);
        }
  }
};

}  // namespace

EnumerationResult enumerate_immersions(const GraphMap& psi, int max_faces, int jobs) {
  if (max_faces < 0) fail(ErrorKind::Input, "max faces must be non-negative");
  Enumerator en(psi, max_faces);
  return en.run(jobs);
}

std::string canonical_label(const TwoComplex& y, const ComplexMap& to_x) {
  State s = state_of(y, to_x);
  if (s.vlabel.empty()) return "";
  return code_string(canonicalize(s).code);
}

ExtensionSummary check_isolated_edge_extension(const GraphMap& psi, const EnumerationResult& valid, const Rational& c,
                                               int max_faces, int cap, std::vector<AuditFailure>* failures) {
  Enumerator en(psi, max_faces);
  Extender ext{en.x(), c, failures, {}};
  if (cap <= 0) return ext.summary;
  std::vector<std::pair<State, int>> states;
  for (const ImmersedComplex& ic : valid.complexes) {
    if (static_cast<int>(ic.face_count()) > max_faces) continue;
    states.push_back({state_of(ic.y, ic.to_x), static_cast<int>(ic.face_count())});
  }
  for (auto& [s, f] : states) ext.grow(s, f, 0, cap);
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i; j < states.size(); ++j)
      if (states[i].second + states[j].second <= max_faces)
        ext.bridges(states[i].first, states[j].first, states[i].second + states[j].second, cap);
  return ext.summary;
}

AuditReport audit_instance(const GraphMap& psi, const AuditOptions& options, const std::string& name) {
  auto t0 = std::chrono::steady_clock::now();
  Certificate cert = decide_negative_immersions(psi);
  if (cert.kind != Certificate::Kind::NegativeImmersions)
    fail(ErrorKind::Contract, "audit needs a negative-immersions certificate, got " + to_string(cert.kind));
  AuditReport report;
  report.instance = name;
  report.c = cert.negative->c;
  report.malnormal_c = cert.negative->malnormal_c;
  report.max_faces = options.max_faces;

  Enumerator en(psi, options.max_faces);
  EnumerationResult result = en.run(options.jobs);
  report.partial_per_level = result.partial_per_level;
  report.max_faces_reached = result.max_faces_reached;
  for (const ImmersedComplex& ic : result.complexes) audit_one(ic, en.x(), report.c, report.malnormal_c, report);

  if (options.isolated_edge_cap > 0) {
    report.isolated_edges =
        check_isolated_edge_extension(psi, result, report.c, options.max_faces, options.isolated_edge_cap, &report.failures);
    if (report.malnormal_c)
      check_isolated_edge_extension(psi, result, *report.malnormal_c, options.max_faces, options.isolated_edge_cap,
                                    &report.failures);
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::optional<GraphMap> random_instance(std::uint64_t seed, const RandomParams& params) {
  if (params.petals < 1 || params.petals > 26) fail(ErrorKind::Input, "petals must be between 1 and 26");
  if (params.h_edges < 0 || params.h_edges > params.petals) fail(ErrorKind::Input, "H must be a sub-rose");
  if (params.max_image_len < 1 || params.max_image_len > 16) fail(ErrorKind::Input, "image length must be between 1 and 16");
  std::mt19937_64 rng(seed);
  Graph f = rose(params.petals);
  std::uniform_int_distribution<int> length(1, params.max_image_len);
  std::uniform_int_distribution<int> letter(0, 2 * params.petals - 1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    GraphMap m{f, f, Subgraph::empty(f), std::vector<VertexId>(f.vertex_count(), kNoVertex),
               std::vector<EdgePath>(f.edge_count())};
    m.support.vertices[0] = true;
    m.vertex_image[0] = 0;
    for (EdgeId e = 0; e < params.h_edges; ++e) {
      EdgePath p{0, {}};
      int len = length(rng);
      while (static_cast<int>(p.steps.size()) < len) {
        int x = letter(rng);
        Step s{x / 2, x % 2 == 0};
        if (!p.steps.empty() && p.steps.back() == s.inverse()) continue;
        p.steps.push_back(s);
      }
      m.support.edges[e] = true;
      m.edge_image[e] = std::move(p);
    }
    if (validate_map(m).immersion) return m;
  }
  return std::nullopt;
}

namespace {

std::vector<Word> reduced_words_up_to(int rank, int max_len) {
  std::vector<Word> out;
  std::vector<Word> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int x = -rank; x <= rank; ++x) {
        if (x == 0 || (!w.empty() && w.back() == -x)) continue;
        Word v = w;
        v.push_back(x);
        next.push_back(v);
      }
    std::sort(next.begin(), next.end(), [](const Word& a, const Word& b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](int p, int q) {
        return std::make_pair(std::abs(p), p < 0) < std::make_pair(std::abs(q), q < 0);
      });
    });
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

bool word_images_immerse(const std::vector<Word>& images) {
  std::vector<int> dirs;
  for (const Word& w : images) {
    dirs.push_back(w.front());
    dirs.push_back(-w.back());
  }
  std::sort(dirs.begin(), dirs.end());
  return std::adjacent_find(dirs.begin(), dirs.end()) == dirs.end();
}

// Least image tuple over petal permutations and inversions fixing H.
std::vector<Word> symmetry_key(const std::vector<Word>& images, int n) {
  const int k = static_cast<int>(images.size());
  std::vector<int> ph(k), po(n - k);
  std::iota(ph.begin(), ph.end(), 0);
  std::optional<std::vector<Word>> best;
  do {
    std::iota(po.begin(), po.end(), k);
    do {
      std::vector<int> perm = ph;
      perm.insert(perm.end(), po.begin(), po.end());
      for (int signs = 0; signs < (1 << n); ++signs) {
        auto sigma = [&](int x) {
          int i = std::abs(x) - 1;
          int y = (signs >> i & 1 ? -1 : 1) * (perm[i] + 1);
          return x > 0 ? y : -y;
        };
        std::vector<Word> key(k);
        for (int i = 0; i < k; ++i) {
          Word img = (signs >> i & 1) ? word_inverse(images[i]) : images[i];
          for (int& x : img) x = sigma(x);
          key[perm[i]] = img;
        }
        if (!best || key < *best) best = key;
      }
    } while (std::next_permutation(po.begin(), po.end()));
  } while (std::next_permutation(ph.begin(), ph.end()));
  return *best;
}

std::string letter_name(int x) {
  char c = static_cast<char>('a' + std::abs(x) - 1);
  return std::string(1, x > 0 ? c : static_cast<char>(c - 'a' + 'A'));
}

}  // namespace

std::vector<CorpusEntry> rose_corpus(int max_petals, int max_norm, bool dedup) {
  if (max_petals < 1 || max_petals > 4 || max_norm < 1 || max_norm > 3)
    fail(ErrorKind::Input, "corpus parameters out of range");
  std::vector<CorpusEntry> out;
  for (int n = 1; n <= max_petals; ++n) {
    Graph f = rose(n);
    std::vector<Word> words = reduced_words_up_to(n, max_norm);
    for (int k = 1; k <= n; ++k) {
      std::vector<std::size_t> pick(k, 0);
      std::set<std::vector<Word>> seen;
      while (true) {
        std::vector<Word> images;
        for (std::size_t i : pick) images.push_back(words[i]);
        if (word_images_immerse(images) && (!dedup || seen.insert(symmetry_key(images, n)).second)) {
          GraphMap m{f, f, Subgraph::empty(f), std::vector<VertexId>(f.vertex_count(), kNoVertex),
                     std::vector<EdgePath>(f.edge_count())};
          m.support.vertices[0] = true;
          m.vertex_image[0] = 0;
          std::string name = "R" + std::to_string(n) + "/H" + std::to_string(k) + "/";
          for (int e = 0; e < k; ++e) {
            EdgePath p{0, {}};
            for (int x : images[e]) p.steps.push_back({std::abs(x) - 1, x > 0});
            m.support.edges[e] = true;
            m.edge_image[e] = std::move(p);
            if (e) name += ",";
            name += letter_name(e + 1) + "=";
            for (int x : images[e]) name += letter_name(x);
          }
          out.push_back({std::move(name), std::move(m)});
        }
        int i = k - 1;
        while (i >= 0 && ++pick[i] == words.size()) pick[i--] = 0;
        if (i < 0) break;
      }
    }
  }
  return out;
}

}  // namespace tht
