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
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "merg/graph.hpp"

namespace merg {

/// Raised when an exact check is asked for a graph it cannot enumerate.
class InfeasibleCheck : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 3^n assignment indices must fit in 64 bits.
inline constexpr std::size_t kMaxEnumerationNodes = 40;

struct OracleOptions {
  /// Largest n the exhaustive checks accept (clamped to kMaxEnumerationNodes).
  std::size_t max_nodes = 22;
  /// Worker threads for large sweeps; 0 picks hardware_concurrency().
  unsigned threads = 0;
};

/// Two nonempty disjoint node sets.
struct SubsetPair {
  NodeSet s1;
  NodeSet s2;

  friend bool operator==(const SubsetPair&, const SubsetPair&) = default;
};

struct RobustnessVerdict {
  bool holds = true;
  std::optional<SubsetPair> witness;  // set iff !holds
  std::size_t r = 0;
  std::optional<std::size_t> s;  // set for (r,s) checks
};

enum class TargetKind { r, rs };

struct RobustnessTarget {
  TargetKind kind = TargetKind::r;
  std::size_t r = 1;
  std::size_t s = 1;  // ignored for TargetKind::r
};

struct EdgeRemoval {
  Edge edge;
  RobustnessVerdict verdict;  // target check on g - edge
};

struct MinimalityReport {
  RobustnessTarget target;
  std::vector<EdgeRemoval> removals;
  bool minimal = true;  // every removal breaks the target
};

inline std::size_t ceil_half(std::size_t n) { return (n + 1) / 2; }

inline std::uint64_t pow3(std::size_t n) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 3;
  return p;
}

/// Number of unordered pairs {S1, S2} of nonempty disjoint subsets of n nodes.
inline std::uint64_t canonical_pair_count(std::size_t n) {
  return (pow3(n) - 2 * (std::uint64_t{1} << n) + 1) / 2;
}

/// Visits canonical subset pairs whose assignment index lies in [begin, end).
///
/// An assignment gives every node a digit 0 (neither), 1 (S1) or 2 (S2); the
/// index reads the digits as a base-3 number with node 0 most significant, so
/// index order is lexicographic order of the digit vector. A pair is canonical
/// when both sides are nonempty and the lowest assigned node sits in S1.
/// `visit(index, s1, s2)` returns false to stop; the stopping index is returned.
template <class Visit>
std::optional<std::uint64_t> for_each_canonical_pair(std::size_t n, std::uint64_t begin, std::uint64_t end,
                                                     Visit&& visit) {
  if (n == 0 || begin >= end) return std::nullopt;
  std::array<std::uint8_t, kMaxEnumerationNodes> digit{};
  std::uint64_t s1 = 0;
  std::uint64_t s2 = 0;
  std::uint64_t rest = begin;
  for (std::size_t k = n; k-- > 0;) {
    digit[k] = static_cast<std::uint8_t>(rest % 3);
    rest /= 3;
    if (digit[k] == 1) s1 |= std::uint64_t{1} << k;
    if (digit[k] == 2) s2 |= std::uint64_t{1} << k;
  }

  for (std::uint64_t index = begin;;) {
    if (s1 != 0 && s2 != 0) {
      std::uint64_t both = s1 | s2;
      if ((both & (~both + 1) & s1) != 0 && !visit(index, NodeSet(s1), NodeSet(s2))) return index;
    }
    if (++index >= end) return std::nullopt;
    for (std::size_t k = n; k-- > 0;) {
      std::uint64_t bit = std::uint64_t{1} << k;
      if (digit[k] == 0) {
        digit[k] = 1;
        s1 |= bit;
        break;
      }
      if (digit[k] == 1) {
        digit[k] = 2;
        s1 &= ~bit;
        s2 |= bit;
        break;
      }
      digit[k] = 0;
      s2 &= ~bit;
    }
  }
}

namespace detail {

struct MaskGraph {
  std::size_t n = 0;
  std::array<std::uint64_t, kMaskNodes> adj{};

  explicit MaskGraph(const Graph& g) : n(g.n()) {
    for (NodeId i = 0; i < n; ++i) adj[i] = g.neighbor_mask(i).bits();
  }

  /// |X_S^r|: members of s with at least r neighbours outside s.
  std::size_t reachable_count(std::uint64_t s, std::size_t r) const {
    std::size_t count = 0;
    for (std::uint64_t b = s; b != 0; b &= b - 1) {
      auto i = static_cast<std::size_t>(std::countr_zero(b));
      if (static_cast<std::size_t>(std::popcount(adj[i] & ~s)) >= r) ++count;
    }
    return count;
  }

  bool reachable(std::uint64_t s, std::size_t r) const {
    for (std::uint64_t b = s; b != 0; b &= b - 1) {
      auto i = static_cast<std::size_t>(std::countr_zero(b));
      if (static_cast<std::size_t>(std::popcount(adj[i] & ~s)) >= r) return true;
    }
    return false;
  }

  bool pair_ok_r(std::uint64_t s1, std::uint64_t s2, std::size_t r) const {
    return reachable(s1, r) || reachable(s2, r);
  }

  bool pair_ok_rs(std::uint64_t s1, std::uint64_t s2, std::size_t r, std::size_t s) const {
    std::size_t x1 = reachable_count(s1, r);
    if (x1 == static_cast<std::size_t>(std::popcount(s1))) return true;
    std::size_t x2 = reachable_count(s2, r);
    return x2 == static_cast<std::size_t>(std::popcount(s2)) || x1 + x2 >= s;
  }
};

inline void require_enumerable(const Graph& g, const OracleOptions& options) {
  if (g.n() > kMaskNodes) {
    throw InfeasibleCheck("exact check infeasible: n = " + std::to_string(g.n()) + " exceeds the 64-node bitset cap");
  }
  std::size_t limit = std::min(options.max_nodes, kMaxEnumerationNodes);
  if (g.n() > limit) {
    throw InfeasibleCheck("exact check infeasible: n = " + std::to_string(g.n()) + " needs 3^" +
                          std::to_string(g.n()) + " assignments (limit n <= " + std::to_string(limit) + ")");
  }
}

inline unsigned worker_count(const OracleOptions& options) {
  unsigned t = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  return std::max(1U, t);
}

inline constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 20;

/// Lexicographically first pair for which `ok(s1, s2)` is false.
///
/// Large spaces are cut into contiguous index chunks scanned by a pool; the
/// smallest failing index wins, so the answer matches a serial scan.
template <class PairOk>
std::optional<SubsetPair> first_violation(std::size_t n, const PairOk& ok, const OracleOptions& options) {
  const std::uint64_t total = pow3(n);
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
    return for_each_canonical_pair(n, lo, hi, [&](std::uint64_t, NodeSet a, NodeSet b) {
      return ok(a.bits(), b.bits());
    });
  };

  std::optional<std::uint64_t> fail;
  unsigned workers = worker_count(options);
  if (workers == 1 || total < kParallelThreshold) {
    fail = scan(0, total);
  } else {
    const std::uint64_t chunks = std::uint64_t{workers} * 32;
    const std::uint64_t width = (total + chunks - 1) / chunks;
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (;;) {
            std::uint64_t c = next.fetch_add(1);
            std::uint64_t lo = c * width;
            if (c >= chunks || lo >= total || lo >= best.load()) return;
            if (auto hit = scan(lo, std::min(total, lo + width))) {
              std::uint64_t cur = best.load();
              while (*hit < cur && !best.compare_exchange_weak(cur, *hit)) {
              }
              return;
            }
          }
        });
      }
    }
    if (best.load() != std::numeric_limits<std::uint64_t>::max()) fail = best.load();
  }

  if (!fail) return std::nullopt;
  std::optional<SubsetPair> witness;
  for_each_canonical_pair(n, *fail, *fail + 1, [&](std::uint64_t, NodeSet a, NodeSet b) {
    witness = SubsetPair{a, b};
    return false;
  });
  return witness;
}

inline void check_subset(const Graph& g, NodeSet s) {
  if (g.n() > kMaskNodes) throw InfeasibleCheck("subset checks need n <= 64");
  if (s.empty()) throw std::invalid_argument("subset must be nonempty");
  if ((s - NodeSet::first(g.n())) != NodeSet{}) throw GraphError("subset contains nodes outside the graph");
}

inline void check_r(std::size_t r) {
  if (r == 0) throw std::invalid_argument("r must be a positive integer");
}

}  // namespace detail

/// |X_S^r| = number of nodes of s having at least r neighbours outside s.
inline std::size_t reachable_count(const Graph& g, NodeSet s, std::size_t r) {
  detail::check_subset(g, s);
  detail::check_r(r);
  return detail::MaskGraph(g).reachable_count(s.bits(), r);
}

/// Some node of s has at least r neighbours outside s.
inline bool is_r_reachable(const Graph& g, NodeSet s, std::size_t r) { return reachable_count(g, s, r) >= 1; }

/// Replays the r-robustness condition on a single pair.
inline bool pair_satisfies_r(const Graph& g, const SubsetPair& p, std::size_t r) {
  return is_r_reachable(g, p.s1, r) || is_r_reachable(g, p.s2, r);
}

/// Replays the three (r,s)-robustness alternatives on a single pair.
inline bool pair_satisfies_rs(const Graph& g, const SubsetPair& p, std::size_t r, std::size_t s) {
  std::size_t x1 = reachable_count(g, p.s1, r);
  std::size_t x2 = reachable_count(g, p.s2, r);
  return x1 == p.s1.size() || x2 == p.s2.size() || x1 + x2 >= s;
}

inline RobustnessVerdict is_r_robust(const Graph& g, std::size_t r, const OracleOptions& options = {}) {
  detail::check_r(r);
  detail::require_enumerable(g, options);
  detail::MaskGraph m(g);
  RobustnessVerdict v;
  v.r = r;
  v.witness = detail::first_violation(
      g.n(), [&](std::uint64_t a, std::uint64_t b) { return m.pair_ok_r(a, b, r); }, options);
  v.holds = !v.witness.has_value();
  return v;
}

/// Largest r with is_r_robust, or 0 when the graph is not even 1-robust.
/// A single node has no admissible pair and is reported as 1-robust.
inline std::size_t max_r_robustness(const Graph& g, const OracleOptions& options = {}) {
  detail::require_enumerable(g, options);
  for (std::size_t r = ceil_half(g.n()); r >= 1; --r)
    if (is_r_robust(g, r, options).holds) return r;
  return 0;
}

inline RobustnessVerdict is_rs_robust(const Graph& g, std::size_t r, std::size_t s, const OracleOptions& options = {}) {
  detail::check_r(r);
  if (s == 0 || s > g.n()) throw std::invalid_argument("s must lie in [1, n]");
  detail::require_enumerable(g, options);
  detail::MaskGraph m(g);
  RobustnessVerdict v;
  v.r = r;
  v.s = s;
  v.witness = detail::first_violation(
      g.n(), [&](std::uint64_t a, std::uint64_t b) { return m.pair_ok_rs(a, b, r, s); }, options);
  v.holds = !v.witness.has_value();
  return v;
}

/// Largest s in [1, n] with (r,s)-robustness, 0 if not (r,1)-robust.
///
/// One sweep: a pair constrains s only when neither side is fully
/// r-reachable, and then caps it at |X_S1^r| + |X_S2^r|.
inline std::size_t max_s_given_r(const Graph& g, std::size_t r, const OracleOptions& options = {}) {
  detail::check_r(r);
  detail::require_enumerable(g, options);
  detail::MaskGraph m(g);
  std::size_t best = g.n();
  // Scanning for "pair would fail at s = best" and tightening is equivalent
  // to taking the minimum over constraining pairs, and lets chunks stop early.
  for (;;) {
    auto fail = detail::first_violation(
        g.n(), [&](std::uint64_t a, std::uint64_t b) { return m.pair_ok_rs(a, b, r, best); }, options);
    if (!fail) return best;
    std::size_t cap = m.reachable_count(fail->s1.bits(), r) + m.reachable_count(fail->s2.bits(), r);
    best = cap;
    if (best == 0) return 0;
  }
}

inline RobustnessVerdict check_target(const Graph& g, const RobustnessTarget& t, const OracleOptions& options = {}) {
  return t.kind == TargetKind::r ? is_r_robust(g, t.r, options) : is_rs_robust(g, t.r, t.s, options);
}

/// Re-checks the target on g minus each edge in turn.
inline MinimalityReport minimality_sweep(const Graph& g, const RobustnessTarget& target,
                                         const OracleOptions& options = {}) {
  detail::require_enumerable(g, options);
  if (!check_target(g, target, options).holds) {
    throw std::invalid_argument("graph does not satisfy the target robustness before edge removal");
  }
  MinimalityReport report;
  report.target = target;
  for (Edge e : g.edges()) {
    auto verdict = check_target(g.without_edge(e), target, options);
    if (verdict.holds) report.minimal = false;
    report.removals.push_back({e, std::move(verdict)});
  }
  return report;
}

}  // namespace merg
