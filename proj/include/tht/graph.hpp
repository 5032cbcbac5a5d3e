// SPDX-License-Identifier: Apache-2.0
//
// Finite directed 1-complexes and the bookkeeping shared by every other
// module: subgraphs as cell masks, edge paths, Euler characteristic,
// components, cores and boundaries.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tht {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
inline constexpr VertexId kNoVertex = -1;

class Graph {
 public:
  VertexId add_vertex(std::string name);
  EdgeId add_edge(std::string name, VertexId tail, VertexId head);

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  VertexId tail(EdgeId e) const { return edges_[e].tail; }
  VertexId head(EdgeId e) const { return edges_[e].head; }
  bool is_loop(EdgeId e) const { return edges_[e].tail == edges_[e].head; }

  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
  const std::string& edge_name(EdgeId e) const { return edges_[e].name; }
  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<EdgeId> find_edge(const std::string& name) const;

  /// Edges with at least one end at v; a loop is listed once.
  const std::vector<EdgeId>& incident(VertexId v) const { return incident_[v]; }

  /// Loops count twice.
  int degree(VertexId v) const;
  int max_degree() const;

  bool operator==(const Graph& other) const;

 private:
  struct EdgeRec {
    std::string name;
    VertexId tail;
    VertexId head;
    bool operator==(const EdgeRec&) const = default;
  };
  std::vector<std::string> vertex_names_;
  std::vector<EdgeRec> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
};

/// Cell masks over an ambient graph. The ambient is passed explicitly to every
/// operation; a Subgraph never outlives the meaning of its indices.
struct Subgraph {
  std::vector<bool> vertices;
  std::vector<bool> edges;

  static Subgraph empty(const Graph& g);
  static Subgraph full(const Graph& g);

  std::size_t vertex_count() const;
  std::size_t edge_count() const;
  bool is_empty() const { return vertex_count() == 0; }

  bool operator==(const Subgraph&) const = default;
};

/// Sizes match and every edge's endpoints are present.
bool is_subgraph_of(const Graph& g, const Subgraph& s);
void require_subgraph(const Graph& g, const Subgraph& s, const char* what);
bool contains(const Subgraph& outer, const Subgraph& inner);
Subgraph intersect(const Subgraph& a, const Subgraph& b);

int degree_in(const Graph& g, const Subgraph& s, VertexId v);

std::int64_t euler_char(const Graph& g);
std::int64_t euler_char(const Subgraph& s);

std::vector<VertexId> boundary_vertices(const Graph& ambient, const Subgraph& h);

/// Component index per vertex of s, -1 for vertices outside s. Components are
/// numbered in order of their smallest vertex id.
struct Components {
  std::vector<int> of_vertex;
  int count = 0;
  /// Vertices and edges of `s` in the given component.
  Subgraph member(const Graph& g, const Subgraph& s, int component) const;
};
Components components(const Graph& g, const Subgraph& s);

struct ComponentInfo {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::int64_t chi = 0;
  bool is_tree = false;
  int diameter = 0;
};

struct ComponentReport {
  std::vector<ComponentInfo> components;
  bool is_forest = true;
  bool is_trivial = true;  // union of vertices (no edges)
  bool has_leaf = false;
};

ComponentReport classify_components(const Graph& g, const Subgraph& s);
ComponentReport classify_components(const Graph& g);
bool is_forest(const Graph& g, const Subgraph& s);

/// Largest distance (in edges) between two vertices of the same component of
/// s; 0 for the empty subgraph.
int diameter(const Graph& g, const Subgraph& s);

/// Maximal leafless subgraph; isolated vertices and tree components vanish.
Subgraph core(const Graph& g, const Subgraph& s);

/// Independent cycle count of s, i.e. sum over components of 1 - chi.
std::int64_t rank(const Graph& g, const Subgraph& s);

struct Step {
  EdgeId edge;
  bool forward;
  Step inverse() const { return {edge, !forward}; }
  bool operator==(const Step&) const = default;
};

/// A path that may be empty; `base` is its start vertex.
struct EdgePath {
  VertexId base = kNoVertex;
  std::vector<Step> steps;

  std::size_t length() const { return steps.size(); }
  bool operator==(const EdgePath&) const = default;
};

VertexId step_start(const Graph& g, Step s);
VertexId step_end(const Graph& g, Step s);
VertexId path_end(const Graph& g, const EdgePath& p);
/// Consecutive steps match head to tail.
bool is_valid_path(const Graph& g, const EdgePath& p);
bool is_reduced(const EdgePath& p);
EdgePath inverse(const Graph& g, const EdgePath& p);
EdgePath concat(const Graph& g, const EdgePath& a, const EdgePath& b);
/// Every vertex and edge visited by p lies in s.
bool path_within(const Graph& g, const Subgraph& s, const EdgePath& p);
/// Free reduction (cancels backtracks).
EdgePath reduce(const EdgePath& p);

/// Standalone copy of a subgraph; names are kept, ids are renumbered in
/// ambient order.
struct Restriction {
  Graph graph;
  std::vector<VertexId> vertex_to_ambient;
  std::vector<EdgeId> edge_to_ambient;
  std::vector<VertexId> vertex_from_ambient;  // -1 outside
  std::vector<EdgeId> edge_from_ambient;      // -1 outside
};
Restriction restrict_to(const Graph& g, const Subgraph& s);

/// DOT export. `edge_attrs` may return extra attributes (e.g. style) per edge.
std::string to_dot(const Graph& g, const std::string& name,
                   const std::function<std::string(EdgeId)>& edge_attrs = {});

}  // namespace tht
