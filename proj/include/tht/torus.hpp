// SPDX-License-Identifier: Apache-2.0
//
// Mapping tori of partial self-maps of graphs, 2-complex checks, and the
// negative-immersions decision with its certificates.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tht/folding.hpp"
#include "tht/graph_map.hpp"

namespace tht {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class EdgeKind { Vertical, Horizontal };

struct Face {
  std::string name;
  EdgePath boundary;  // closed, nonempty
  int origin = -1;    // edge of H for mapping-torus faces
  bool operator==(const Face&) const = default;
};

struct TwoComplex {
  Graph skeleton;
  std::vector<EdgeKind> kind;  // per skeleton edge
  std::vector<int> origin;     // vertical: edge of F; horizontal: vertex of H
  std::vector<Face> faces;

  EdgeId add_vertical(const std::string& name, VertexId from, VertexId to, int origin_edge);
  EdgeId add_horizontal(const std::string& name, VertexId from, VertexId to, int origin_vertex);
  bool operator==(const TwoComplex&) const = default;
};

/// Cellular map that sends each face onto a face position by position, so
/// boundary step k of a face goes to step k of its image.
struct ComplexMap {
  std::vector<VertexId> vertex_image;
  std::vector<EdgeId> edge_image;
  std::vector<int> face_image;
  bool operator==(const ComplexMap&) const = default;
};

struct MappingTorus {
  TwoComplex complex;
  std::vector<EdgeId> horizontal_of;  // per vertex of F, -1 outside H
  std::vector<int> face_of;           // per edge of F, -1 outside H
};

/// Face of an edge e of H reads e, t(head e), psi(e)^-1, t(tail e)^-1.
MappingTorus build_mapping_torus(const GraphMap& psi);

struct ComplexChecks {
  std::int64_t chi = 0;
  bool connected = true;
  bool collapsed = true;
  std::vector<EdgeId> free_faces;
  std::vector<EdgeId> isolated_edges;
  bool is_point = false;
};

ComplexChecks complex_checks(const TwoComplex& y);

/// Checks that f is cellular, keeps edge kinds and orientations, matches
/// face boundaries position by position and is injective on links. On
/// failure `why` (if given) receives a reason.
bool is_combinatorial_immersion(const TwoComplex& y, const TwoComplex& x, const ComplexMap& f,
                                std::string* why = nullptr);

/// Graph-of-spaces view of a complex whose faces are written in the mapping
/// torus convention (bottom edge first).
struct GraphOfSpaces {
  Subgraph vertex_spaces;          // all vertices and vertical edges
  Subgraph outgoing;               // bottom edges and sources of horizontal edges
  Subgraph incoming;               // top paths and targets of horizontal edges
  std::vector<VertexId> boundary;  // boundary of outgoing inside vertex_spaces
  std::int64_t chi_vertex_spaces = 0;
  std::int64_t chi_outgoing = 0;
  bool outgoing_disjoint = true;   // each vertical edge is a bottom edge at most once
};

GraphOfSpaces decompose(const TwoComplex& y);

/// Edges in an M-ball of the regular tree of the maximal degree of f.
BigInt compute_N(const Graph& f, std::int64_t m_radius);

struct NegativeImmersions {
  Height height;
  std::int64_t norm = 1;
  int m = 0;
  BigInt M;
  BigInt N;
  Rational c;
  // Constant for the case where psi^-1(H) is a forest.
  std::optional<int> malnormal_d;
  std::optional<BigInt> malnormal_M;
  std::optional<Rational> malnormal_c;
};

struct ZeroEulerWitness {
  TwoComplex y;
  ComplexMap to_x;
  Subgraph invariant;  // psi(invariant) = invariant, leafless
  int period = 1;      // components of the witness cycled by psi
};

struct ReducibilityWitness {
  int n = 1;
  std::vector<std::string> basis;  // names of the non-tree edges of F
  std::vector<Word> generators;
  Word g;
  bool proper = false;  // rank of H' below the rank of its component of H
  bool verified = false;
};

struct Certificate {
  enum class Kind { NegativeImmersions, ZeroEuler, NotInjective, Unknown };
  Kind kind = Kind::Unknown;
  MapFlags flags;
  bool pi1_injective = false;
  Height height;
  std::optional<NegativeImmersions> negative;
  std::optional<ZeroEulerWitness> witness;
  std::optional<ReducibilityWitness> reducibility;
  std::string diagnostic;
};

std::string to_string(Certificate::Kind k);

/// cap <= 0 uses the default cap of directed_height_general.
Certificate decide_negative_immersions(const GraphMap& psi, int cap = 0);

/// Requires infinite directed height (Contract error otherwise).
ZeroEulerWitness zero_euler_witness(const GraphMap& psi, int cap = 0);
ReducibilityWitness reducibility_witness(const GraphMap& psi, int cap = 0);

/// Largest subdivided diameter over components of psi^-1(H), and whether
/// that preimage is homeomorphic to a forest.
struct PreimageShape {
  bool is_forest = false;
  int max_diameter = 0;
};
PreimageShape preimage_shape(const GraphMap& psi);

}  // namespace tht
