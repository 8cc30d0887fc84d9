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

// Definition-level reference checks for tests. Deliberately slow and
// structurally unrelated to the bitmask enumerator: plain vectors, every
// ordered assignment in {0,1,2}^n, neighbour counting through has_edge.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "merg/graph.hpp"

namespace merg::testing {

struct NaivePair {
  std::vector<NodeId> s1;
  std::vector<NodeId> s2;
};

inline std::size_t naive_outside(const Graph& g, NodeId i, const std::vector<bool>& in_set) {
  std::size_t c = 0;
  for (NodeId j = 0; j < g.n(); ++j)
    if (j != i && !in_set[j] && g.has_edge(i, j)) ++c;
  return c;
}

inline std::size_t naive_x(const Graph& g, const std::vector<NodeId>& s, std::size_t r) {
  std::vector<bool> in(g.n(), false);
  for (NodeId i : s) in[i] = true;
  std::size_t c = 0;
  for (NodeId i : s)
    if (naive_outside(g, i, in) >= r) ++c;
  return c;
}

/// Calls fn(s1, s2) for every ordered pair of nonempty disjoint subsets.
template <class Fn>
void naive_for_each_ordered_pair(std::size_t n, Fn&& fn) {
  std::vector<int> a(n, 0);
  for (;;) {
    std::vector<NodeId> s1, s2;
    for (NodeId i = 0; i < n; ++i) {
      if (a[i] == 1) s1.push_back(i);
      if (a[i] == 2) s2.push_back(i);
    }
    if (!s1.empty() && !s2.empty()) fn(s1, s2);
    std::size_t k = 0;
    while (k < n && a[k] == 2) a[k++] = 0;
    if (k == n) return;
    ++a[k];
  }
}

inline bool naive_r_robust(const Graph& g, std::size_t r) {
  bool ok = true;
  naive_for_each_ordered_pair(g.n(), [&](const auto& s1, const auto& s2) {
    if (naive_x(g, s1, r) == 0 && naive_x(g, s2, r) == 0) ok = false;
  });
  return ok;
}

inline bool naive_rs_robust(const Graph& g, std::size_t r, std::size_t s) {
  bool ok = true;
  naive_for_each_ordered_pair(g.n(), [&](const auto& s1, const auto& s2) {
    const std::size_t x1 = naive_x(g, s1, r);
    const std::size_t x2 = naive_x(g, s2, r);
    if (!(x1 == s1.size() || x2 == s2.size() || x1 + x2 >= s)) ok = false;
  });
  return ok;
}

inline std::size_t naive_max_r(const Graph& g) {
  std::size_t best = 0;
  for (std::size_t r = 1; r <= g.n(); ++r)
    if (naive_r_robust(g, r)) best = r;
  return best;
}

inline std::size_t naive_max_clique(const Graph& g) {
  const std::size_t n = g.n();
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<NodeId> v;
    for (NodeId i = 0; i < n; ++i)
      if ((mask >> i) & 1U) v.push_back(i);
    if (v.size() <= best) continue;
    bool clique = true;
    for (std::size_t a = 0; a < v.size() && clique; ++a)
      for (std::size_t b = a + 1; b < v.size() && clique; ++b) clique = g.has_edge(v[a], v[b]);
    if (clique) best = v.size();
  }
  return best;
}

/// Erdos-Renyi style graph with edge probability p.
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({i, j});
  return Graph(n, edges);
}

}  // namespace merg::testing
