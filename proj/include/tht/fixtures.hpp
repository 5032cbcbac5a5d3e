// SPDX-License-Identifier: Apache-2.0
//
// Small named instances used by tests, the acceptance suite and the CLI's
// self-check. FIX-A..FIX-E cover heights 1, infinite, 2, the ascending HNN
// case and a map that is not pi1-injective.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tht/graph_map.hpp"

namespace tht {

/// One vertex "v" and loops named by `petals` (default a, b, c, ...).
Graph rose(int petals);

/// Builds the partial self-map of `f` whose support is spanned by the keys of
/// `images` (plus their endpoints and `extra_vertices`). Each image is a list
/// of "x+" / "x-" tokens; vertex images follow from the paths, and vertices
/// without incident support edges map to `vertex_images` entries.
GraphMap make_partial_map(const Graph& f, const std::map<std::string, std::vector<std::string>>& images,
                          const std::map<std::string, std::string>& vertex_images = {});

Step parse_step(const Graph& g, const std::string& token);
std::string step_token(const Graph& g, Step s);

GraphMap fixture_a();  // R2, H = {a}, a -> b
GraphMap fixture_b();  // R2, H = {a}, a -> a
GraphMap fixture_c();  // R3, H = {a, b}, a -> b, b -> c
GraphMap fixture_d();  // H = F = R2, a -> ab, b -> a
GraphMap fixture_e();  // 2-cycle v -a1-> w -a2-> v, a1 -> a1, a2 -> a1^-1
GraphMap fixture(const std::string& name);  // "A".."E"

}  // namespace tht
