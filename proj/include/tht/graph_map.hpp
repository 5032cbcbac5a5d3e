// SPDX-License-Identifier: Apache-2.0
//
// Cellular maps between graphs, defined on a support subgraph of the domain.
// A partial map H -> F with H a subgraph of F is stored with domain F,
// support H and codomain F; total maps have full support.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tht/graph.hpp"

namespace tht {

struct GraphMap {
  Graph domain;
  Graph codomain;
  Subgraph support;                    // over domain
  std::vector<VertexId> vertex_image;  // kNoVertex outside the support
  std::vector<EdgePath> edge_image;    // empty path = collapse onto its base

  /// Total identity map of g.
  static GraphMap identity(const Graph& g);

  bool operator==(const GraphMap&) const = default;
};

struct MapFlags {
  bool cellular = false;
  bool combinatorial = false;
  bool immersion = false;
};

/// Throws Structural when an image is not a path between the images of the
/// edge's endpoints, or references cells missing from the codomain.
MapFlags validate_map(const GraphMap& m);

/// Image of a single step / path under m (the path must lie in the support).
EdgePath map_path(const GraphMap& m, const EdgePath& p);

/// Subgraph of the codomain covered by the images of the cells of `a`.
Subgraph image_of(const GraphMap& m, const Subgraph& a);

/// Cells of the support whose whole image lies in `target`.
Subgraph preimage_of(const GraphMap& m, const Subgraph& target);

/// Where each cell of a subdivided graph came from in the graph it
/// subdivides. A vertex is either an original vertex or interior to an
/// original edge.
struct CellOrigin {
  std::vector<VertexId> vertex_parent;  // kNoVertex when interior to an edge
  std::vector<EdgeId> vertex_on_edge;   // -1 for original vertices
  std::vector<EdgeId> edge_parent;

  static CellOrigin identity(const Graph& g);
  /// `inner` is relative to the graph that `outer` describes.
  static CellOrigin chain(const CellOrigin& outer, const CellOrigin& inner);
};

struct Subdivided {
  GraphMap map;
  CellOrigin origin;  // cells of map.domain relative to the input domain
};

/// Splits every support edge whose image has length >= 2 into one edge per
/// image step. Collapsing edges are left alone.
Subdivided subdivide_to_combinatorial(const GraphMap& m);

/// beta . alpha = beta o alpha restricted to alpha^{-1}(support of beta),
/// computed after subdividing alpha to combinatorial form. The domain of the
/// result is the subdivided domain of alpha.
Subdivided generalized_compose(const GraphMap& beta, const GraphMap& alpha);

/// psi^i as generalized compositions; psi^0 is the identity of the domain.
Subdivided power(const GraphMap& psi, int i);

/// Largest subgraph of the original graph contained (as a point set) in the
/// support of a map living on a subdivision with the given origin table.
Subgraph largest_original_subgraph(const Graph& original, const Graph& subdivided,
                                   const CellOrigin& origin, const Subgraph& support);

std::int64_t norm(const GraphMap& psi);

struct DomainFiltration {
  std::vector<Subgraph> domains;  // D_0 = F, D_1 = H, ..., D_p
  int stabilization_index = 0;    // p with D_p = D_{p+1}
  Subgraph d_infinity;
  std::vector<Subgraph> strata;   // strata[i] = closure(D_i - D_{i+1}); strata[0] unused
  std::vector<int> edge_stratum;  // per edge of F: i, 0 if infinite, -1 outside H
  int max_fan_length = 0;         // m
  std::int64_t psi_norm = 1;
  int diam_d_infinity = 0;
};

/// Requires a self-map F -> F with support H. `require_immersion` rejects
/// non-immersions with Unsupported; the recurrence itself only needs a
/// cellular map.
DomainFiltration domain_filtration(const GraphMap& psi, bool require_immersion = true);

struct Height {
  enum class Kind { Finite, Infinite, Unknown };
  Kind kind = Kind::Finite;
  int value = 0;  // height when Finite, cap when Unknown

  static Height finite(int v) { return {Kind::Finite, v}; }
  static Height infinite() { return {Kind::Infinite, 0}; }
  static Height unknown(int cap) { return {Kind::Unknown, cap}; }
  bool is_finite() const { return kind == Kind::Finite; }
  bool operator==(const Height&) const = default;
  std::string to_string() const;
};

Height directed_height(const DomainFiltration& filtration, const Graph& f);
Height directed_height(const GraphMap& psi);

struct Fan {
  EdgeId origin = -1;
  std::vector<EdgePath> rims;  // rims[0] = origin edge; last rim exits H unless infinite
  int length = 0;
  bool infinite = false;
};

/// max_len <= 0 selects p + 1 from the filtration.
Fan fan_from_edge(const GraphMap& psi, EdgeId e, int max_len = 0);

}  // namespace tht
