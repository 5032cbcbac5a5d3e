// SPDX-License-Identifier: Apache-2.0
//
// Stallings factorization of cellular maps into collapses and folds followed
// by an immersion, and the free-group utilities built on it.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tht/graph_map.hpp"

namespace tht {

struct FoldMove {
  enum class Kind { Collapse, Fold };
  Kind kind = Kind::Fold;
  std::string edge;   // collapsed edge, or the fold's surviving edge
  std::string other;  // fold only: the edge identified into `edge`
  bool same_orientation = true;  // fold only: tails are identified with tails
  bool rank_preserving = true;
};

struct Factorization {
  /// Support of the input, restricted and subdivided to combinatorial form.
  /// origin is relative to the input's domain.
  Subdivided normal_form;
  std::vector<FoldMove> moves;
  GraphMap rho;    // normal_form.map.domain -> folded, total, combinatorial or collapsing
  GraphMap theta;  // folded -> codomain, total immersion
  bool pi1_injective = true;
};

struct FoldOptions {
  /// When set, the next fold is drawn uniformly from all available folds.
  std::mt19937_64* shuffle = nullptr;
};

Factorization fold_to_immersion(const GraphMap& m, const FoldOptions& options = {});

bool is_pi1_injective(const GraphMap& m);

/// Independent check of the pi1 verdict: rho is a homotopy equivalence iff it
/// is a bijection on components preserving each component's Euler
/// characteristic.
bool homotopy_equivalence_by_euler(const Factorization& f);

/// Cell-by-cell check that theta o rho equals the normal form.
bool factorization_commutes(const Factorization& f);

/// Replays the recorded moves on the normal-form domain and compares the
/// result with rho's target.
bool replay_matches(const Factorization& f);

struct ImageTrace {
  std::vector<Subgraph> stages;  // A_0 = H, A_1, ...
  int stabilization_index = 0;
  bool stable_rank_positive = false;
};

/// cap <= 0 picks |H| cells + 2.
ImageTrace image_trace(const GraphMap& psi, int cap = 0);

/// Height through folded powers; see Height for the unknown verdict.
Height directed_height_general(const GraphMap& psi, int cap = 0);

// -- Free groups ------------------------------------------------------------

/// Letters are +k / -k for the k-th basis element (1-based).
using Word = std::vector<int>;

Word parse_word(const std::vector<std::string>& basis, const std::string& text);
std::string word_to_string(const std::vector<std::string>& basis, const Word& w);
Word free_reduce(const Word& w);
Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);

struct CoreGraph {
  GraphMap immersion;  // total immersion into the rose on the basis
  VertexId base = kNoVertex;
};

/// Rose whose petals are named by the basis.
Graph rose_on(const std::vector<std::string>& basis);

/// Folded wedge of the word loops; hanging trees are kept so the base stays.
CoreGraph core_graph_of_words(const std::vector<std::string>& basis, const std::vector<Word>& words);
CoreGraph core_graph_of_words(int rank, const std::vector<Word>& words);

/// Reads w from the base; member iff it returns to the base.
bool is_member(const CoreGraph& g, const Word& w);

/// Pullback of two immersions with a common codomain.
Graph fiber_product(const GraphMap& alpha, const GraphMap& beta);

}  // namespace tht
