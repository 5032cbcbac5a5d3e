// SPDX-License-Identifier: Apache-2.0
#include "tht/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "tht/error.hpp"

namespace tht {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Input: return "input";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Contract: return "contract";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

VertexId Graph::add_vertex(std::string name) {
  if (vertex_index_.count(name)) fail(ErrorKind::Input, "duplicate vertex id '" + name + "'");
  auto id = static_cast<VertexId>(vertex_names_.size());
  vertex_index_.emplace(name, id);
  vertex_names_.push_back(std::move(name));
  incident_.emplace_back();
  return id;
}

EdgeId Graph::add_edge(std::string name, VertexId tail, VertexId head) {
  if (edge_index_.count(name)) fail(ErrorKind::Input, "duplicate edge id '" + name + "'");
  auto n = static_cast<VertexId>(vertex_count());
  if (tail < 0 || tail >= n || head < 0 || head >= n)
    fail(ErrorKind::Structural, "edge '" + name + "' has an endpoint outside the graph");
  auto id = static_cast<EdgeId>(edges_.size());
  edge_index_.emplace(name, id);
  edges_.push_back({std::move(name), tail, head});
  incident_[tail].push_back(id);
  if (head != tail) incident_[head].push_back(id);
  return id;
}

std::optional<VertexId> Graph::find_vertex(const std::string& name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Graph::find_edge(const std::string& name) const {
  auto it = edge_index_.find(name);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

int Graph::degree(VertexId v) const {
  int d = 0;
  for (EdgeId e : incident_[v]) d += is_loop(e) ? 2 : 1;
  return d;
}

int Graph::max_degree() const {
  int best = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(vertex_count()); ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::operator==(const Graph& other) const {
  return vertex_names_ == other.vertex_names_ && edges_ == other.edges_;
}

Subgraph Subgraph::empty(const Graph& g) {
  return {std::vector<bool>(g.vertex_count(), false), std::vector<bool>(g.edge_count(), false)};
}

Subgraph Subgraph::full(const Graph& g) {
  return {std::vector<bool>(g.vertex_count(), true), std::vector<bool>(g.edge_count(), true)};
}

std::size_t Subgraph::vertex_count() const { return std::count(vertices.begin(), vertices.end(), true); }
std::size_t Subgraph::edge_count() const { return std::count(edges.begin(), edges.end(), true); }

bool is_subgraph_of(const Graph& g, const Subgraph& s) {
  if (s.vertices.size() != g.vertex_count() || s.edges.size() != g.edge_count()) return false;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    if (s.edges[e] && (!s.vertices[g.tail(e)] || !s.vertices[g.head(e)])) return false;
  return true;
}

void require_subgraph(const Graph& g, const Subgraph& s, const char* what) {
  if (!is_subgraph_of(g, s)) fail(ErrorKind::Structural, std::string(what) + " is not a subgraph of its ambient graph");
}

bool contains(const Subgraph& outer, const Subgraph& inner) {
  for (std::size_t v = 0; v < inner.vertices.size(); ++v)
    if (inner.vertices[v] && !outer.vertices[v]) return false;
  for (std::size_t e = 0; e < inner.edges.size(); ++e)
    if (inner.edges[e] && !outer.edges[e]) return false;
  return true;
}

Subgraph intersect(const Subgraph& a, const Subgraph& b) {
  Subgraph out = a;
  for (std::size_t v = 0; v < out.vertices.size(); ++v) out.vertices[v] = a.vertices[v] && b.vertices[v];
  for (std::size_t e = 0; e < out.edges.size(); ++e) out.edges[e] = a.edges[e] && b.edges[e];
  return out;
}

int degree_in(const Graph& g, const Subgraph& s, VertexId v) {
  int d = 0;
  for (EdgeId e : g.incident(v))
    if (s.edges[e]) d += g.is_loop(e) ? 2 : 1;
  return d;
}

std::int64_t euler_char(const Graph& g) {
  return static_cast<std::int64_t>(g.vertex_count()) - static_cast<std::int64_t>(g.edge_count());
}

std::int64_t euler_char(const Subgraph& s) {
  return static_cast<std::int64_t>(s.vertex_count()) - static_cast<std::int64_t>(s.edge_count());
}

std::vector<VertexId> boundary_vertices(const Graph& ambient, const Subgraph& h) {
  require_subgraph(ambient, h, "boundary_vertices: h");
  std::vector<VertexId> out;
  for (VertexId v = 0; v < static_cast<VertexId>(ambient.vertex_count()); ++v)
    if (h.vertices[v] && ambient.degree(v) > degree_in(ambient, h, v)) out.push_back(v);
  return out;
}

Subgraph Components::member(const Graph& g, const Subgraph& s, int component) const {
  Subgraph out = Subgraph::empty(g);
  for (VertexId v = 0; v < static_cast<VertexId>(of_vertex.size()); ++v)
    if (of_vertex[v] == component) out.vertices[v] = true;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    if (s.edges[e] && of_vertex[g.tail(e)] == component) out.edges[e] = true;
  return out;
}

Components components(const Graph& g, const Subgraph& s) {
  Components c;
  c.of_vertex.assign(g.vertex_count(), -1);
  for (VertexId root = 0; root < static_cast<VertexId>(g.vertex_count()); ++root) {
    if (!s.vertices[root] || c.of_vertex[root] != -1) continue;
    std::vector<VertexId> stack{root};
    c.of_vertex[root] = c.count;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(v)) {
        if (!s.edges[e]) continue;
        VertexId w = g.tail(e) == v ? g.head(e) : g.tail(e);
        if (c.of_vertex[w] == -1) {
          c.of_vertex[w] = c.count;
          stack.push_back(w);
        }
      }
    }
    ++c.count;
  }
  return c;
}

namespace {

// BFS eccentricity of `from` inside s.
int eccentricity(const Graph& g, const Subgraph& s, VertexId from, std::vector<int>& dist) {
  std::fill(dist.begin(), dist.end(), -1);
  std::deque<VertexId> queue{from};
  dist[from] = 0;
  int far = 0;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    far = std::max(far, dist[v]);
    for (EdgeId e : g.incident(v)) {
      if (!s.edges[e]) continue;
      VertexId w = g.tail(e) == v ? g.head(e) : g.tail(e);
      if (dist[w] == -1) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return far;
}

}  // namespace

ComponentReport classify_components(const Graph& g, const Subgraph& s) {
  ComponentReport report;
  Components comps = components(g, s);
  report.components.resize(comps.count);
  std::vector<int> dist(g.vertex_count());
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    if (!s.vertices[v]) continue;
    auto& info = report.components[comps.of_vertex[v]];
    ++info.vertices;
    info.diameter = std::max(info.diameter, eccentricity(g, s, v, dist));
    if (degree_in(g, s, v) == 1) report.has_leaf = true;
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    if (s.edges[e]) ++report.components[comps.of_vertex[g.tail(e)]].edges;
  for (auto& info : report.components) {
    info.chi = static_cast<std::int64_t>(info.vertices) - static_cast<std::int64_t>(info.edges);
    info.is_tree = info.chi == 1;
    if (!info.is_tree) report.is_forest = false;
    if (info.edges > 0) report.is_trivial = false;
  }
  return report;
}

ComponentReport classify_components(const Graph& g) { return classify_components(g, Subgraph::full(g)); }

bool is_forest(const Graph& g, const Subgraph& s) {
  // A forest has exactly one fewer edge than vertices per component.
  Components comps = components(g, s);
  return euler_char(s) == comps.count;
}

int diameter(const Graph& g, const Subgraph& s) {
  int best = 0;
  std::vector<int> dist(g.vertex_count());
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (s.vertices[v]) best = std::max(best, eccentricity(g, s, v, dist));
  return best;
}

Subgraph core(const Graph& g, const Subgraph& s) {
  Subgraph out = s;
  std::vector<int> deg(g.vertex_count(), 0);
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (out.vertices[v]) deg[v] = degree_in(g, out, v);
  std::vector<VertexId> work;
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (out.vertices[v] && deg[v] <= 1) work.push_back(v);
  while (!work.empty()) {
    VertexId v = work.back();
    work.pop_back();
    if (!out.vertices[v] || deg[v] > 1) continue;
    out.vertices[v] = false;
    for (EdgeId e : g.incident(v)) {
      if (!out.edges[e]) continue;
      out.edges[e] = false;
      VertexId w = g.tail(e) == v ? g.head(e) : g.tail(e);
      if (--deg[w] <= 1) work.push_back(w);
    }
  }
  return out;
}

std::int64_t rank(const Graph& g, const Subgraph& s) {
  return components(g, s).count - euler_char(s);
}

VertexId step_start(const Graph& g, Step s) { return s.forward ? g.tail(s.edge) : g.head(s.edge); }
VertexId step_end(const Graph& g, Step s) { return s.forward ? g.head(s.edge) : g.tail(s.edge); }

VertexId path_end(const Graph& g, const EdgePath& p) {
  return p.steps.empty() ? p.base : step_end(g, p.steps.back());
}

bool is_valid_path(const Graph& g, const EdgePath& p) {
  if (p.base < 0 || p.base >= static_cast<VertexId>(g.vertex_count())) return false;
  VertexId at = p.base;
  for (Step s : p.steps) {
    if (s.edge < 0 || s.edge >= static_cast<EdgeId>(g.edge_count())) return false;
    if (step_start(g, s) != at) return false;
    at = step_end(g, s);
  }
  return true;
}

bool is_reduced(const EdgePath& p) {
  for (std::size_t i = 1; i < p.steps.size(); ++i)
    if (p.steps[i] == p.steps[i - 1].inverse()) return false;
  return true;
}

EdgePath inverse(const Graph& g, const EdgePath& p) {
  EdgePath out{path_end(g, p), {}};
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) out.steps.push_back(it->inverse());
  return out;
}

EdgePath concat(const Graph& g, const EdgePath& a, const EdgePath& b) {
  (void)g;
  EdgePath out = a;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

bool path_within(const Graph& g, const Subgraph& s, const EdgePath& p) {
  if (!s.vertices[p.base]) return false;
  for (Step st : p.steps) {
    if (!s.edges[st.edge]) return false;
    (void)g;
  }
  return true;
}

EdgePath reduce(const EdgePath& p) {
  EdgePath out{p.base, {}};
  for (Step s : p.steps) {
    if (!out.steps.empty() && out.steps.back() == s.inverse())
      out.steps.pop_back();
    else
      out.steps.push_back(s);
  }
  return out;
}

Restriction restrict_to(const Graph& g, const Subgraph& s) {
  Restriction r;
  r.vertex_from_ambient.assign(g.vertex_count(), kNoVertex);
  r.edge_from_ambient.assign(g.edge_count(), -1);
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    if (!s.vertices[v]) continue;
    r.vertex_from_ambient[v] = r.graph.add_vertex(g.vertex_name(v));
    r.vertex_to_ambient.push_back(v);
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    if (!s.edges[e]) continue;
    r.edge_from_ambient[e] =
        r.graph.add_edge(g.edge_name(e), r.vertex_from_ambient[g.tail(e)], r.vertex_from_ambient[g.head(e)]);
    r.edge_to_ambient.push_back(e);
  }
  return r;
}

namespace {
std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}
}  // namespace

std::string to_dot(const Graph& g, const std::string& name, const std::function<std::string(EdgeId)>& edge_attrs) {
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n";
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    out << "  " << quoted(g.vertex_name(v)) << ";\n";
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    out << "  " << quoted(g.vertex_name(g.tail(e))) << " -> " << quoted(g.vertex_name(g.head(e)))
        << " [label=" << quoted(g.edge_name(e));
    if (edge_attrs) {
      std::string extra = edge_attrs(e);
      if (!extra.empty()) out << ", " << extra;
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tht
