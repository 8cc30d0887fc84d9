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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace merg {

using NodeId = std::size_t;

/// Unordered node pair, stored normalized as (min, max) once it belongs to a Graph.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr Edge normalized(Edge e) { return e.u <= e.v ? e : Edge{e.v, e.u}; }

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Node subsets used by the exact toolchain are single 64-bit words.
inline constexpr std::size_t kMaskNodes = 64;

/// Subset of {0, ..., 63} packed in one machine word.
class NodeSet {
 public:
  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}
  NodeSet(std::initializer_list<NodeId> nodes) {
    for (NodeId i : nodes) insert(i);
  }

  static NodeSet of(std::span<const NodeId> nodes) {
    NodeSet s;
    for (NodeId i : nodes) s.insert(i);
    return s;
  }

  /// {0, ..., n-1}
  static constexpr NodeSet first(std::size_t n) {
    return NodeSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(NodeId i) const { return i < 64 && ((bits_ >> i) & 1U) != 0; }

  void insert(NodeId i) {
    if (i >= kMaskNodes) throw GraphError("node " + std::to_string(i) + " does not fit a 64-node set");
    bits_ |= std::uint64_t{1} << i;
  }
  void erase(NodeId i) {
    if (i < kMaskNodes) bits_ &= ~(std::uint64_t{1} << i);
  }

  std::vector<NodeId> to_vector() const {
    std::vector<NodeId> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<NodeId>(std::countr_zero(b)));
    return out;
  }

  friend constexpr NodeSet operator&(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & b.bits_); }
  friend constexpr NodeSet operator|(NodeSet a, NodeSet b) { return NodeSet(a.bits_ | b.bits_); }
  friend constexpr NodeSet operator-(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(NodeSet, NodeSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Simple undirected graph on nodes 0..n-1. Immutable once built.
///
/// Adjacency is kept as one bit row per node, so neighbourhood intersections
/// are word-parallel. Any n >= 1 is representable; operations that need a
/// single-word mask (neighbor_mask) require n <= 64.
class Graph {
 public:
  Graph(std::size_t n, const std::vector<Edge>& edges) : Graph(n) {
    for (Edge e : edges) {
      if (e.u == e.v) throw GraphError("self-loop at node " + std::to_string(e.u));
      if (e.u >= n || e.v >= n) {
        throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") has an endpoint >= n = " +
                         std::to_string(n));
      }
      set_bit(e.u, e.v);
      set_bit(e.v, e.u);
    }
    rebuild_edges();
  }

  static Graph empty(std::size_t n) { return Graph(n, {}); }

  static Graph complete(std::size_t n) {
    Graph g(n);
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j) {
        g.set_bit(i, j);
        g.set_bit(j, i);
      }
    g.rebuild_edges();
    return g;
  }

  std::size_t n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  /// Normalized (u < v) and lexicographically sorted.
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    return test_bit(u, v);
  }

  std::size_t degree(NodeId i) const {
    check_node(i);
    std::size_t d = 0;
    for (std::uint64_t w : row(i)) d += static_cast<std::size_t>(std::popcount(w));
    return d;
  }

  std::vector<NodeId> neighbors(NodeId i) const {
    check_node(i);
    std::vector<NodeId> out;
    auto r = row(i);
    for (std::size_t w = 0; w < r.size(); ++w)
      for (std::uint64_t b = r[w]; b != 0; b &= b - 1)
        out.push_back(w * 64 + static_cast<NodeId>(std::countr_zero(b)));
    return out;
  }

  NodeSet neighbor_mask(NodeId i) const {
    check_node(i);
    if (n_ > kMaskNodes) throw GraphError("neighbor_mask needs n <= 64");
    return NodeSet(rows_[i]);
  }

  /// Raw adjacency row of node i (words_per_row() words, little-endian bit order).
  std::span<const std::uint64_t> row(NodeId i) const { return {rows_.data() + i * words_, words_}; }
  std::size_t words_per_row() const { return words_; }

  std::size_t min_degree() const {
    std::size_t d = n_;
    for (NodeId i = 0; i < n_; ++i) d = std::min(d, degree(i));
    return d;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (NodeId i = 0; i < n_; ++i) d = std::max(d, degree(i));
    return d;
  }

  Graph without_edge(Edge e) const {
    if (e.u == e.v || !has_edge(e.u, e.v)) {
      throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not in the graph");
    }
    Graph g = *this;
    g.clear_bit(e.u, e.v);
    g.clear_bit(e.v, e.u);
    g.rebuild_edges();
    return g;
  }

  Graph with_edge(Edge e) const {
    check_node(e.u);
    check_node(e.v);
    if (e.u == e.v) throw GraphError("self-loop at node " + std::to_string(e.u));
    Graph g = *this;
    g.set_bit(e.u, e.v);
    g.set_bit(e.v, e.u);
    g.rebuild_edges();
    return g;
  }

  Graph complement() const {
    Graph g(n_);
    for (NodeId i = 0; i < n_; ++i)
      for (NodeId j = 0; j < n_; ++j)
        if (i != j && !test_bit(i, j)) g.set_bit(i, j);
    g.rebuild_edges();
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  explicit Graph(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {
    if (n == 0) throw GraphError("graph needs at least one node");
  }

  void check_node(NodeId i) const {
    if (i >= n_) throw GraphError("node " + std::to_string(i) + " out of range for n = " + std::to_string(n_));
  }

  bool test_bit(NodeId i, NodeId j) const { return ((rows_[i * words_ + j / 64] >> (j % 64)) & 1U) != 0; }
  void set_bit(NodeId i, NodeId j) { rows_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  void clear_bit(NodeId i, NodeId j) { rows_[i * words_ + j / 64] &= ~(std::uint64_t{1} << (j % 64)); }

  void rebuild_edges() {
    edges_.clear();
    for (NodeId i = 0; i < n_; ++i)
      for (NodeId j = i + 1; j < n_; ++j)
        if (test_bit(i, j)) edges_.push_back({i, j});
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
  std::vector<Edge> edges_;
};

inline std::vector<NodeId> neighbors(const Graph& g, NodeId i) { return g.neighbors(i); }

inline Graph complement(const Graph& g) { return g.complement(); }

/// True iff every edge of h is an edge of g (same node set).
inline bool is_spanning_subgraph(const Graph& g, const Graph& h) {
  if (g.n() != h.n()) throw GraphError("spanning-subgraph test needs equal node counts");
  return std::ranges::all_of(h.edges(), [&](Edge e) { return g.has_edge(e.u, e.v); });
}

/// Number of edges with both endpoints in s. Repeated entries count once.
inline std::size_t induced_edge_count(const Graph& g, std::span<const NodeId> s) {
  std::vector<NodeId> nodes(s.begin(), s.end());
  std::ranges::sort(nodes);
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (NodeId i : nodes)
    if (i >= g.n()) throw GraphError("node " + std::to_string(i) + " out of range for n = " + std::to_string(g.n()));
  std::size_t count = 0;
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (g.has_edge(nodes[a], nodes[b])) ++count;
  return count;
}

namespace detail {

// Branch and bound over candidate sets with greedy colouring bounds.
class CliqueSearch {
 public:
  explicit CliqueSearch(const Graph& g) : g_(g), words_(g.words_per_row()) {}

  std::size_t run() {
    std::vector<std::uint64_t> all(words_, 0);
    for (NodeId i = 0; i < g_.n(); ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
    best_ = 1;
    expand(0, std::move(all));
    return best_;
  }

 private:
  using Bits = std::vector<std::uint64_t>;

  static bool any(const Bits& b) {
    return std::ranges::any_of(b, [](std::uint64_t w) { return w != 0; });
  }

  static NodeId lowest(const Bits& b) {
    for (std::size_t w = 0; w < b.size(); ++w)
      if (b[w] != 0) return w * 64 + static_cast<NodeId>(std::countr_zero(b[w]));
    return 0;
  }

  static void clear(Bits& b, NodeId v) { b[v / 64] &= ~(std::uint64_t{1} << (v % 64)); }

  void expand(std::size_t depth, Bits candidates) {
    std::vector<NodeId> order;
    std::vector<std::size_t> colour_of;
    Bits uncoloured = candidates;
    std::size_t colour = 0;
    while (any(uncoloured)) {
      ++colour;
      Bits independent = uncoloured;
      while (any(independent)) {
        NodeId v = lowest(independent);
        clear(independent, v);
        clear(uncoloured, v);
        auto adj = g_.row(v);
        for (std::size_t w = 0; w < words_; ++w) independent[w] &= ~adj[w];
        order.push_back(v);
        colour_of.push_back(colour);
      }
    }

    for (std::size_t k = order.size(); k-- > 0;) {
      if (depth + colour_of[k] <= best_) return;
      NodeId v = order[k];
      Bits next(words_);
      auto adj = g_.row(v);
      for (std::size_t w = 0; w < words_; ++w) next[w] = candidates[w] & adj[w];
      if (any(next)) {
        expand(depth + 1, std::move(next));
      } else {
        best_ = std::max(best_, depth + 1);
      }
      clear(candidates, v);
    }
  }

  const Graph& g_;
  std::size_t words_;
  std::size_t best_ = 1;
};

}  // namespace detail

/// Exact size of the largest clique.
inline std::size_t max_clique_size(const Graph& g) { return detail::CliqueSearch(g).run(); }

}  // namespace merg
