// SPDX-License-Identifier: Apache-2.0
//
// Brute-force oracles, exhaustive enumeration of immersed complexes into a
// mapping torus, and the audit of the negative-immersions bounds.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tht/torus.hpp"

namespace tht {

struct BruteForcePreimage {
  bool is_forest = false;
  Subgraph largest_subgraph;  // inside F
};

/// psi^-i(H) computed on the subdivided domain of psi^i. i > cap is an Input
/// error.
BruteForcePreimage brute_force_preimage(const GraphMap& psi, int i, int cap = 8);

/// An immersed complex Y -> X with faces written bottom edge first, like X.
struct ImmersedComplex {
  TwoComplex y;
  ComplexMap to_x;
  std::string canonical;
  std::size_t face_count() const { return y.faces.size(); }
};

struct EnumerationResult {
  std::vector<ImmersedComplex> complexes;  // collapsed, no isolated edges; by (faces, canonical)
  std::vector<std::size_t> partial_per_level;  // connected partial complexes kept per face count
  int max_faces_reached = 0;
};

/// Every isomorphism class of connected, collapsed immersions Y -> X without
/// isolated edges with at most max_faces faces. X is the mapping torus of psi.
EnumerationResult enumerate_immersions(const GraphMap& psi, int max_faces, int jobs = 1);

/// Label-respecting canonical form of an immersed complex.
std::string canonical_label(const TwoComplex& y, const ComplexMap& to_x);

struct AuditEntry {
  std::string canonical;
  int faces = 0;
  std::int64_t chi = 0;
  std::int64_t chi_outgoing = 0;
  bool bound_ok = false;
  bool splitting_ok = false;
  bool structure_ok = false;
  bool boundary_ok = false;
  std::optional<bool> malnormal_ok;
};

struct AuditFailure {
  std::string reason;
  TwoComplex y;
};

struct ExtensionSummary {
  std::size_t checked = 0;
  std::size_t failures = 0;
};

struct AuditReport {
  std::string instance;
  Rational c;
  std::optional<Rational> malnormal_c;
  int max_faces = 0;
  int max_faces_reached = 0;
  std::vector<std::size_t> partial_per_level;
  std::vector<AuditEntry> entries;
  std::vector<AuditFailure> failures;
  std::optional<ExtensionSummary> isolated_edges;
  double elapsed_ms = 0;
  bool ok() const {
    return failures.empty() && (!isolated_edges || isolated_edges->failures == 0);
  }
};

struct AuditOptions {
  int max_faces = 4;
  int jobs = 1;
  int isolated_edge_cap = 0;  // 0 skips the isolated-edge extension
};

/// Requires a NegativeImmersions certificate (Contract error otherwise).
AuditReport audit_instance(const GraphMap& psi, const AuditOptions& options, const std::string& name = "");

/// Re-checks the bound on complexes obtained from valid ones by adding up to
/// `cap` isolated edges, inside one complex or joining two of them.
ExtensionSummary check_isolated_edge_extension(const GraphMap& psi, const EnumerationResult& valid, const Rational& c,
                                               int max_faces, int cap, std::vector<AuditFailure>* failures = nullptr);

struct RandomParams {
  int petals = 2;
  int h_edges = 1;
  int max_image_len = 1;
};

/// Deterministic for a given seed. Returns nullopt when rejection sampling
/// runs out of attempts.
std::optional<GraphMap> random_instance(std::uint64_t seed, const RandomParams& params);

struct CorpusEntry {
  std::string name;
  GraphMap psi;
};

/// Immersions of a sub-rose H (first k petals) into the rose with at most
/// max_petals petals, images of length <= max_norm. With `dedup`, instances
/// related by permuting or inverting petals (keeping H) are listed once.
std::vector<CorpusEntry> rose_corpus(int max_petals = 3, int max_norm = 2, bool dedup = true);

}  // namespace tht
