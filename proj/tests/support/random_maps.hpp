// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <string>
#include <vector>

#include "tht/graph_map.hpp"

namespace tht::testing {

inline Graph random_connected_graph(std::mt19937_64& rng, int max_vertices, int max_extra_edges) {
  std::uniform_int_distribution<int> nv(1, max_vertices);
  Graph g;
  int n = nv(rng);
  for (int i = 0; i < n; ++i) g.add_vertex("u" + std::to_string(i));
  int next = 0;
  for (int i = 1; i < n; ++i) {
    int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
    g.add_edge("t" + std::to_string(next++), j, i);
  }
  int extra = std::uniform_int_distribution<int>(1, max_extra_edges)(rng);
  for (int i = 0; i < extra; ++i) {
    int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int b = std::uniform_int_distribution<int>(0, n - 1)(rng);
    g.add_edge("t" + std::to_string(next++), a, b);
  }
  return g;
}

inline Graph random_graph(std::mt19937_64& rng, int max_vertices, int max_edges) {
  Graph g;
  int n = std::uniform_int_distribution<int>(1, max_vertices)(rng);
  for (int i = 0; i < n; ++i) g.add_vertex("x" + std::to_string(i));
  int m = std::uniform_int_distribution<int>(0, max_edges)(rng);
  for (int i = 0; i < m; ++i) {
    int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int b = std::uniform_int_distribution<int>(0, n - 1)(rng);
    g.add_edge("e" + std::to_string(i), a, b);
  }
  return g;
}

// Breadth-first path between two vertices of a connected graph.
inline std::vector<Step> bfs_path(const Graph& g, VertexId from, VertexId to) {
  std::vector<int> seen(g.vertex_count(), 0);
  std::vector<Step> via(g.vertex_count(), Step{-1, true});
  std::vector<VertexId> queue{from};
  seen[from] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    VertexId v = queue[i];
    for (EdgeId e : g.incident(v)) {
      for (bool fwd : {true, false}) {
        if ((fwd ? g.tail(e) : g.head(e)) != v) continue;
        VertexId w = fwd ? g.head(e) : g.tail(e);
        if (seen[w]) continue;
        seen[w] = 1;
        via[w] = Step{e, fwd};
        queue.push_back(w);
      }
    }
  }
  std::vector<Step> out;
  for (VertexId v = to; v != from;) {
    Step s = via[v];
    out.push_back(s);
    v = s.forward ? g.tail(s.edge) : g.head(s.edge);
  }
  return {out.rbegin(), out.rend()};
}

inline std::vector<Step> random_walk(std::mt19937_64& rng, const Graph& g, VertexId from, int len) {
  std::vector<Step> out;
  VertexId at = from;
  for (int i = 0; i < len; ++i) {
    std::vector<Step> options;
    for (EdgeId e : g.incident(at)) {
      if (g.tail(e) == at) options.push_back({e, true});
      if (g.head(e) == at) options.push_back({e, false});
    }
    if (options.empty()) break;
    Step s = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    out.push_back(s);
    at = s.forward ? g.head(s.edge) : g.tail(s.edge);
  }
  return out;
}

// Total cellular map from a random graph into a random connected graph.
// Images are freely reduced and may be empty.
inline GraphMap random_total_map(std::mt19937_64& rng, int max_walk = 3) {
  Graph target = random_connected_graph(rng, 3, 3);
  Graph source = random_graph(rng, 4, 5);
  GraphMap m{source, target, Subgraph::full(source), {}, {}};
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(target.vertex_count()) - 1);
  for (std::size_t v = 0; v < source.vertex_count(); ++v) m.vertex_image.push_back(pick(rng));
  for (EdgeId e = 0; e < static_cast<EdgeId>(source.edge_count()); ++e) {
    VertexId a = m.vertex_image[source.tail(e)];
    VertexId b = m.vertex_image[source.head(e)];
    std::vector<Step> steps = random_walk(rng, target, a, std::uniform_int_distribution<int>(0, max_walk)(rng));
    EdgePath p{a, steps};
    std::vector<Step> rest = bfs_path(target, path_end(target, p), b);
    p.steps.insert(p.steps.end(), rest.begin(), rest.end());
    m.edge_image.push_back(reduce(p));
  }
  return m;
}

}  // namespace tht::testing
