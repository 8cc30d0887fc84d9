/**
 * Copyright 2026 The merglab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "merg/graph.hpp"
#include "merg/random.hpp"
#include "merg/robustness.hpp"

namespace merg {

enum class MergKind { gamma, gamma_gamma };

/// Everything needed to rebuild a constructed graph edge for edge.
///
/// gamma, odd n:   hub_set is the (gamma+1)-clique; every other node is
///                 joined to its attachment list.
/// gamma, even n:  hub_set nodes are adjacent to every other node, then the
///                 removed_pairs (disjoint, inside the hub set) are deleted.
/// gamma_gamma:    start from K_n, delete removed_pairs (a perfect matching
///                 for even n), then restore added_pairs.
/// All node ids are final labels, i.e. after any variant relabelling.
struct ConstructionRecipe {
  MergKind kind = MergKind::gamma;
  std::size_t n = 0;
  std::size_t gamma = 0;
  std::vector<NodeId> hub_set;
  std::vector<std::pair<NodeId, std::vector<NodeId>>> attachments;
  std::vector<Edge> removed_pairs;
  std::vector<Edge> added_pairs;
  std::optional<std::uint64_t> variant_seed;
  std::vector<NodeId> relabel;  // canonical id -> final id; identity when no variant
};

inline Graph replay(const ConstructionRecipe& recipe) {
  const std::size_t n = recipe.n;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  auto link = [&](NodeId a, NodeId b, bool on) {
    if (a >= n || b >= n || a == b) throw std::invalid_argument("recipe references an invalid node pair");
    adj[a][b] = on;
    adj[b][a] = on;
  };

  if (recipe.kind == MergKind::gamma && n % 2 == 1) {
    for (std::size_t a = 0; a < recipe.hub_set.size(); ++a)
      for (std::size_t b = a + 1; b < recipe.hub_set.size(); ++b) link(recipe.hub_set[a], recipe.hub_set[b], true);
    for (const auto& [node, targets] : recipe.attachments)
      for (NodeId t : targets) link(node, t, true);
  } else if (recipe.kind == MergKind::gamma) {
    for (NodeId h : recipe.hub_set)
      for (NodeId j = 0; j < n; ++j)
        if (j != h) link(h, j, true);
  } else {
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j) link(i, j, true);
  }
  for (Edge e : recipe.removed_pairs) link(e.u, e.v, false);
  for (Edge e : recipe.added_pairs) link(e.u, e.v, true);

  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (adj[i][j]) edges.push_back({i, j});
  return Graph(n, edges);
}

namespace detail {

inline void require_constructible(std::size_t n) {
  if (n < 2) throw std::invalid_argument("constructions need n >= 2");
}

inline void apply_variant(ConstructionRecipe& recipe, std::optional<std::uint64_t> seed) {
  recipe.relabel.resize(recipe.n);
  std::iota(recipe.relabel.begin(), recipe.relabel.end(), NodeId{0});
  if (!seed) return;
  recipe.variant_seed = seed;
  Rng rng(*seed);
  shuffle(recipe.relabel, rng);
  const auto& p = recipe.relabel;
  for (NodeId& h : recipe.hub_set) h = p[h];
  for (auto& [node, targets] : recipe.attachments) {
    node = p[node];
    for (NodeId& t : targets) t = p[t];
  }
  for (Edge& e : recipe.removed_pairs) e = normalized({p[e.u], p[e.v]});
  for (Edge& e : recipe.added_pairs) e = normalized({p[e.u], p[e.v]});
}

}  // namespace detail

/// Minimal-edge graph with the maximum r-robustness ceil(n/2).
///
/// Odd n: nodes 0..gamma form a clique and each remaining node attaches to
/// nodes 0..gamma-1. Even n: nodes 0..gamma-1 are joined to everything, then
/// the pairs (0,1), (2,3), ... are cut, ceil((gamma-2)/2) of them.
/// `variant` relabels nodes by a seeded permutation.
inline std::pair<Graph, ConstructionRecipe> construct_gamma_merg(std::size_t n,
                                                                 std::optional<std::uint64_t> variant = {}) {
  detail::require_constructible(n);
  ConstructionRecipe recipe;
  recipe.kind = MergKind::gamma;
  recipe.n = n;
  recipe.gamma = ceil_half(n);
  const std::size_t gamma = recipe.gamma;

  if (n % 2 == 1) {
    for (NodeId i = 0; i <= gamma; ++i) recipe.hub_set.push_back(i);
    std::vector<NodeId> targets(gamma);
    std::iota(targets.begin(), targets.end(), NodeId{0});
    for (NodeId i = gamma + 1; i < n; ++i) recipe.attachments.emplace_back(i, targets);
  } else {
    for (NodeId i = 0; i < gamma; ++i) recipe.hub_set.push_back(i);
    const std::size_t cuts = gamma >= 2 ? (gamma - 1) / 2 : 0;  // ceil((gamma-2)/2)
    for (std::size_t k = 0; k < cuts; ++k) recipe.removed_pairs.push_back({2 * k, 2 * k + 1});
  }

  detail::apply_variant(recipe, variant);
  return {replay(recipe), std::move(recipe)};
}

/// Minimal-edge graph with the maximum (r,s)-robustness (gamma, gamma).
///
/// Odd n gives K_n. Even n deletes the matching (0,1), (2,3), ... from K_n,
/// leaving every degree at 2*gamma - 2, then restores the first
/// ceil(gamma/2) matching pairs.
inline std::pair<Graph, ConstructionRecipe> construct_gamma_gamma_merg(std::size_t n,
                                                                       std::optional<std::uint64_t> variant = {}) {
  detail::require_constructible(n);
  ConstructionRecipe recipe;
  recipe.kind = MergKind::gamma_gamma;
  recipe.n = n;
  recipe.gamma = ceil_half(n);
  const std::size_t gamma = recipe.gamma;

  if (n % 2 == 0) {
    for (std::size_t k = 0; k < gamma; ++k) recipe.removed_pairs.push_back({2 * k, 2 * k + 1});
    for (std::size_t k = 0; k < (gamma + 1) / 2; ++k) recipe.added_pairs.push_back({2 * k, 2 * k + 1});
  }

  detail::apply_variant(recipe, variant);
  return {replay(recipe), std::move(recipe)};
}

inline std::pair<Graph, ConstructionRecipe> construct_merg(MergKind kind, std::size_t n,
                                                           std::optional<std::uint64_t> variant = {}) {
  return kind == MergKind::gamma ? construct_gamma_merg(n, variant) : construct_gamma_gamma_merg(n, variant);
}

}  // namespace merg
