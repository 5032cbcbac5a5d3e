// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "tht/verifier.hpp"

namespace tht::testing {

// Glues copies of faces of X along every label-respecting vertex partition
// and keeps the quotients that are connected collapsed immersions.
inline std::set<std::string> slow_enumeration(const GraphMap& psi, int max_faces) {
  MappingTorus mt = build_mapping_torus(psi);
  const TwoComplex& x = mt.complex;
  const Graph& gx = x.skeleton;
  const int nf = static_cast<int>(x.faces.size());
  std::set<std::string> found;

  std::vector<int> pick;
  std::function<void(int)> choose = [&](int from) {
    if (!pick.empty()) {
      // Corners of all chosen polygons.
      std::vector<VertexId> label;
      std::vector<std::pair<int, int>> corner;  // (polygon, position)
      for (int i = 0; i < static_cast<int>(pick.size()); ++i) {
        VertexId at = x.faces[pick[i]].boundary.base;
        int k = 0;
        for (Step s : x.faces[pick[i]].boundary.steps) {
          label.push_back(at);
          corner.push_back({i, k++});
          at = step_end(gx, s);
        }
      }
      std::vector<int> offset(pick.size() + 1, 0);
      for (std::size_t i = 0; i < pick.size(); ++i)
        offset[i + 1] = offset[i] + static_cast<int>(x.faces[pick[i]].boundary.steps.size());
      const int n = static_cast<int>(label.size());
      std::vector<int> block(n, -1);
      std::vector<VertexId> block_label;
      std::function<void(int)> partition = [&](int i) {
        if (i == n) {
          // Polygon edges: (label, tail block, head block).
          struct PE { EdgeId label; int tail, head; };
          std::vector<PE> pes;
          for (std::size_t p = 0; p < pick.size(); ++p) {
            const auto& steps = x.faces[pick[p]].boundary.steps;
            int len = static_cast<int>(steps.size());
            for (int k = 0; k < len; ++k) {
              int a = block[offset[p] + k];
              int b = block[offset[p] + (k + 1) % len];
              pes.push_back(steps[k].forward ? PE{steps[k].edge, a, b} : PE{steps[k].edge, b, a});
            }
          }
          std::map<std::pair<EdgeId, int>, int> by_tail, by_head;
          std::vector<int> edge_of(pes.size());
          std::vector<PE> edges;
          for (std::size_t q = 0; q < pes.size(); ++q) {
            auto t = by_tail.find({pes[q].label, pes[q].tail});
            auto h = by_head.find({pes[q].label, pes[q].head});
            int e = -1;
            if (t != by_tail.end()) e = t->second;
            if (h != by_head.end()) {
              if (e >= 0 && e != h->second) return;
              e = h->second;
            }
            if (e >= 0) {
              if (edges[e].tail != pes[q].tail || edges[e].head != pes[q].head) return;
            } else {
              e = static_cast<int>(edges.size());
              edges.push_back(pes[q]);
              by_tail[{pes[q].label, pes[q].tail}] = e;
              by_head[{pes[q].label, pes[q].head}] = e;
            }
            edge_of[q] = e;
          }
          TwoComplex y;
          ComplexMap f;
          for (std::size_t b = 0; b < block_label.size(); ++b) {
            y.skeleton.add_vertex("b" + std::to_string(b));
            f.vertex_image.push_back(block_label[b]);
          }
          for (std::size_t e = 0; e < edges.size(); ++e) {
            std::string name = "e" + std::to_string(e);
            if (x.kind[edges[e].label] == EdgeKind::Vertical)
              y.add_vertical(name, edges[e].tail, edges[e].head, x.origin[edges[e].label]);
            else
              y.add_horizontal(name, edges[e].tail, edges[e].head, x.origin[edges[e].label]);
            f.edge_image.push_back(edges[e].label);
          }
          std::size_t q = 0;
          for (std::size_t p = 0; p < pick.size(); ++p) {
            const auto& steps = x.faces[pick[p]].boundary.steps;
            EdgePath bd{block[offset[p]], {}};
            for (Step s : steps) bd.steps.push_back({edge_of[q++], s.forward});
            y.faces.push_back({"p" + std::to_string(p), bd, x.faces[pick[p]].origin});
            f.face_image.push_back(pick[p]);
          }
          ComplexChecks c = complex_checks(y);
          if (!c.connected || !c.collapsed || !c.isolated_edges.empty()) return;
          if (!is_combinatorial_immersion(y, x, f)) return;
          found.insert(canonical_label(y, f));
          return;
        }
        for (int b = 0; b < static_cast<int>(block_label.size()); ++b) {
          if (block_label[b] != label[i]) continue;
          block[i] = b;
          partition(i + 1);
        }
        block[i] = static_cast<int>(block_label.size());
        block_label.push_back(label[i]);
        partition(i + 1);
        block_label.pop_back();
        block[i] = -1;
      };
      partition(0);
    }
    if (static_cast<int>(pick.size()) == max_faces) return;
    for (int f = from; f < nf; ++f) {
      pick.push_back(f);
      choose(f);
      pick.pop_back();
    }
  };
  choose(0);
  return found;
}

}  // namespace tht::testing
