// SPDX-License-Identifier: Apache-2.0
//
// JSON forms of graphs, maps, instances, complexes, certificates and audit
// reports, plus DOT export.
#pragma once

#include "json.hpp"
#include <optional>
#include <string>
#include <vector>

#include "tht/folding.hpp"
#include "tht/torus.hpp"
#include "tht/verifier.hpp"

namespace tht {

using Json = nlohmann::ordered_json;

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json subgraph_to_json(const Graph& g, const Subgraph& s);
Subgraph subgraph_from_json(const Graph& g, const Json& j);

/// {"vertex_images": {v: w}, "edge_images": {e: ["x+", ...] | {"at": w}}};
/// the support is spanned by the keys.
Json map_to_json(const GraphMap& m);
GraphMap map_from_json(const Graph& domain, const Graph& codomain, const Json& j);

struct AlgebraicForm {
  std::vector<std::string> basis;
  std::vector<std::string> h_generators;
  std::vector<std::pair<std::string, std::string>> images;  // generator -> word
};

struct Instance {
  std::string name;
  std::string comment;
  GraphMap psi;
  std::optional<AlgebraicForm> algebraic;
};

/// Accepts exactly one of the geometric form {"graph", "H", "map"} or the
/// algebraic form {"rank", "basis", "H_generators", "images"}, the latter
/// optionally wrapped as {"algebraic": {...}}.
Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);
Instance load_instance(const std::string& path);

Json word_to_json(const std::vector<std::string>& basis, const Word& w);
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json height_to_json(const Height& h);

Json complex_to_json(const TwoComplex& c);
TwoComplex complex_from_json(const Json& j);
Json complex_map_to_json(const ComplexMap& m);
ComplexMap complex_map_from_json(const Json& j);

Json certificate_to_json(const Certificate& c, const GraphMap& psi);
Json factorization_to_json(const Factorization& f);
Json audit_to_json(const AuditReport& r, bool timings = false);

std::string instance_dot(const GraphMap& psi);
std::string complex_dot(const TwoComplex& c, const std::string& name = "X");

}  // namespace tht
