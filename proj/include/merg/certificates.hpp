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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "merg/graph.hpp"
#include "merg/robustness.hpp"

namespace merg {

// Closed-form necessary conditions for maximum robustness. Apart from the
// (gamma,gamma) spanning-subgraph characterization, none of these are
// sufficient; a passing certificate only fails to rule a level out.

enum class Parity { odd, even, unknown };

inline Parity parity_of(std::size_t n) { return n % 2 == 0 ? Parity::even : Parity::odd; }

/// Fewest edges of a gamma-robust graph on n = 2*gamma - 1 nodes: 3g(g-1)/2.
inline std::int64_t edge_lb_gamma_odd(std::int64_t gamma) { return 3 * gamma * (gamma - 1) / 2; }

/// Fewest edges of a gamma-robust graph on n = 2*gamma nodes: floor((g(3g-2)+2)/2).
inline std::int64_t edge_lb_gamma_even(std::int64_t gamma) { return (gamma * (3 * gamma - 2) + 2) / 2; }

/// Edge lower bound for any r-robust graph; the even-n bound is the stronger one.
inline std::int64_t edge_lb_any_r(std::int64_t r, Parity n_parity) {
  return n_parity == Parity::even ? edge_lb_gamma_even(r) : edge_lb_gamma_odd(r);
}

/// Largest r (at most ceil(n/2)) whose edge lower bound m still meets; 0 if none.
inline std::int64_t r_upper_bound_from_edges(std::size_t n, std::int64_t m) {
  const auto gamma = static_cast<std::int64_t>(ceil_half(n));
  const Parity p = parity_of(n);
  std::int64_t best = 0;
  for (std::int64_t r = 1; r <= gamma; ++r) {
    if (edge_lb_any_r(r, p) > m) break;
    best = r;
  }
  return best;
}

/// Minimum degree forced by (r,s)-robustness.
inline std::int64_t min_degree_lb_rs(std::int64_t r, std::int64_t s) { return s >= r ? 2 * r - 2 : r + s - 1; }

/// Fewest edges of a (gamma,gamma)-robust graph on n nodes.
inline std::int64_t edge_lb_gamma_gamma(std::size_t n) {
  const auto g = static_cast<std::int64_t>(ceil_half(n));
  if (n % 2 == 1) return (g - 1) * (2 * g - 1);
  return 2 * g * (g - 1) + (g + 1) / 2;
}

/// Edge count of the Turan graph T(n, parts): the most edges an n-node graph
/// can carry without a (parts+1)-clique.
inline std::int64_t turan_number(std::int64_t n, std::int64_t parts) {
  if (parts <= 0) return 0;
  if (parts >= n) return n * (n - 1) / 2;
  const std::int64_t q = n / parts;
  const std::int64_t big = n % parts;  // parts of size q + 1
  const std::int64_t small = parts - big;
  const std::int64_t inside = big * (q + 1) * q / 2 + small * q * (q - 1) / 2;
  return n * (n - 1) / 2 - inside;
}

/// Clique size guaranteed in every graph on 2*gamma nodes that has at least
/// edge_lb_gamma_gamma(2*gamma) edges: the largest k with m > t(n, k-1).
inline std::int64_t turan_clique_threshold(std::int64_t gamma) {
  const std::int64_t n = 2 * gamma;
  const std::int64_t m = edge_lb_gamma_gamma(static_cast<std::size_t>(n));
  std::int64_t k = 2;
  while (k + 1 <= n && m > turan_number(n, k)) ++k;
  return k;
}

/// Clique size every gamma-robust graph on n nodes contains.
inline std::int64_t necessary_clique_size(std::size_t n) {
  const auto g = static_cast<std::int64_t>(ceil_half(n));
  return n % 2 == 1 ? g + 1 : (g + 4) / 2;
}

/// Edge count the densest (gamma+1)-node induced subgraph of a gamma-robust
/// even-n graph must reach.
inline std::int64_t dense_subgraph_threshold(std::int64_t gamma) { return (gamma * gamma + 2) / 2; }

/// Subset sizes beyond this make the k-subset scan infeasible.
inline constexpr std::size_t kMaxSubsetScanNodes = 30;

/// Most edges induced by any k-node subset (exhaustive over C(n, k)).
/// Stops early once `stop_at` is reached.
inline std::size_t max_induced_edges(const Graph& g, std::size_t k,
                                     std::size_t stop_at = static_cast<std::size_t>(-1)) {
  if (g.n() > kMaxSubsetScanNodes) {
    throw InfeasibleCheck("dense-subgraph scan infeasible for n = " + std::to_string(g.n()));
  }
  const std::size_t n = g.n();
  if (k > n) throw std::invalid_argument("subset size exceeds node count");
  if (k < 2) return 0;
  std::vector<std::uint64_t> adj(n);
  for (NodeId i = 0; i < n; ++i) adj[i] = g.neighbor_mask(i).bits();

  std::size_t best = 0;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    std::uint64_t s = 0;
    for (std::size_t i : pick) s |= std::uint64_t{1} << i;
    std::size_t twice = 0;
    for (std::size_t i : pick) twice += static_cast<std::size_t>(std::popcount(adj[i] & s));
    best = std::max(best, twice / 2);
    if (best >= stop_at) return best;

    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return best;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

/// Some (gamma+1)-node subset of the even-n graph g induces enough edges.
inline bool lemma4_dense_subgraph_holds(const Graph& g) {
  if (g.n() % 2 != 0) throw std::invalid_argument("dense-subgraph condition applies to even n only");
  const auto gamma = static_cast<std::int64_t>(g.n() / 2);
  const auto need = static_cast<std::size_t>(dense_subgraph_threshold(gamma));
  return max_induced_edges(g, static_cast<std::size_t>(gamma) + 1, need) >= need;
}

/// Exact (gamma,gamma)-robustness test via the spanning-subgraph
/// characterization.
///
/// Odd n: only the complete graph qualifies. Even n: the minimal
/// constructions are complements of matchings with floor(gamma/2) edges, so g
/// contains one as a spanning subgraph iff its complement is a matching
/// (max degree <= 1) of at most floor(gamma/2) edges.
inline bool prop1_gamma_gamma_check(const Graph& g) {
  const std::size_t n = g.n();
  if (n < 2) throw std::invalid_argument("(gamma,gamma) check needs n >= 2");
  const std::size_t possible = n * (n - 1) / 2;
  const std::size_t missing = possible - g.edge_count();
  if (n % 2 == 1) return missing == 0;
  const std::size_t gamma = n / 2;
  if (missing > gamma / 2) return false;
  return g.min_degree() + 2 >= n;  // complement max degree <= 1
}

enum class CertificateStatus { pass, fail, not_evaluated, not_applicable };

inline const char* to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::pass: return "pass";
    case CertificateStatus::fail: return "fail";
    case CertificateStatus::not_evaluated: return "not_evaluated";
    case CertificateStatus::not_applicable: return "not_applicable";
  }
  return "?";
}

/// One necessary condition: `observed >= threshold` must hold for `level`.
struct Certificate {
  std::string name;
  std::string level;  // "gamma" or "gamma_gamma"
  std::string quantity;
  std::int64_t threshold = 0;
  std::optional<std::int64_t> observed;
  CertificateStatus status = CertificateStatus::not_evaluated;
  bool sufficient = false;
};

struct CertificateReport {
  std::size_t n = 0;
  std::size_t gamma = 0;
  std::size_t edge_count = 0;
  std::vector<Certificate> certificates;
  std::int64_t implied_r_upper_bound = 0;
  bool prop1_gamma_gamma = false;
  std::vector<std::string> flags;

  const Certificate* find(const std::string& name) const {
    for (const auto& c : certificates)
      if (c.name == name) return &c;
    return nullptr;
  }
};

struct ReportOptions {
  /// Clique search is skipped above this size.
  std::size_t max_clique_nodes = 64;
  /// Dense-subgraph scan is skipped above this size.
  std::size_t max_subset_nodes = 24;
};

namespace detail {

inline Certificate measured(std::string name, std::string level, std::string quantity, std::int64_t threshold,
                            std::optional<std::int64_t> observed) {
  Certificate c{std::move(name), std::move(level), std::move(quantity), threshold, observed};
  c.status = !observed ? CertificateStatus::not_evaluated
                       : (*observed >= threshold ? CertificateStatus::pass : CertificateStatus::fail);
  return c;
}

inline Certificate not_applicable(std::string name, std::string level, std::string quantity) {
  Certificate c;
  c.name = std::move(name);
  c.level = std::move(level);
  c.quantity = std::move(quantity);
  c.status = CertificateStatus::not_applicable;
  return c;
}

}  // namespace detail

inline CertificateReport certificate_report(const Graph& g, const ReportOptions& options = {}) {
  CertificateReport rep;
  rep.n = g.n();
  rep.gamma = ceil_half(g.n());
  rep.edge_count = g.edge_count();
  const auto n = g.n();
  const auto gamma = static_cast<std::int64_t>(rep.gamma);
  const auto m = static_cast<std::int64_t>(rep.edge_count);
  const bool even = n % 2 == 0;

  std::optional<std::int64_t> clique;
  if (n <= options.max_clique_nodes) clique = static_cast<std::int64_t>(max_clique_size(g));
  const auto min_deg = static_cast<std::int64_t>(g.min_degree());

  auto& certs = rep.certificates;
  certs.push_back(detail::measured("edge_count_gamma", "gamma", "edges",
                                   even ? edge_lb_gamma_even(gamma) : edge_lb_gamma_odd(gamma), m));
  certs.push_back(detail::measured("clique_gamma", "gamma", "max_clique", necessary_clique_size(n), clique));
  certs.push_back(detail::measured("min_degree_gamma", "gamma", "min_degree", min_degree_lb_rs(gamma, 1), min_deg));
  if (even) {
    std::optional<std::int64_t> dense;
    if (n <= std::min(options.max_subset_nodes, kMaxSubsetScanNodes)) {
      const auto need = static_cast<std::size_t>(dense_subgraph_threshold(gamma));
      dense = static_cast<std::int64_t>(max_induced_edges(g, rep.gamma + 1, need));
    }
    certs.push_back(detail::measured("dense_subgraph_gamma", "gamma", "induced_edges",
                                     dense_subgraph_threshold(gamma), dense));
  } else {
    certs.push_back(detail::not_applicable("dense_subgraph_gamma", "gamma", "induced_edges"));
  }

  certs.push_back(detail::measured("edge_count_gamma_gamma", "gamma_gamma", "edges", edge_lb_gamma_gamma(n), m));
  certs.push_back(detail::measured("min_degree_gamma_gamma", "gamma_gamma", "min_degree",
                                   min_degree_lb_rs(gamma, gamma), min_deg));
  certs.push_back(detail::measured("edge_count_rr_gamma", "gamma_gamma", "edges",
                                   static_cast<std::int64_t>(n) * (gamma - 1), m));
  if (even) {
    certs.push_back(detail::measured("clique_gamma_gamma", "gamma_gamma", "max_clique",
                                     turan_clique_threshold(gamma), clique));
  } else {
    certs.push_back(detail::measured("clique_gamma_gamma", "gamma_gamma", "max_clique",
                                     static_cast<std::int64_t>(n), clique));
  }

  if (n >= 2) {
    rep.prop1_gamma_gamma = prop1_gamma_gamma_check(g);
    Certificate c{"spanning_merg_gamma_gamma", "gamma_gamma", "contains_merg", 1,
                  rep.prop1_gamma_gamma ? 1 : 0};
    c.status = rep.prop1_gamma_gamma ? CertificateStatus::pass : CertificateStatus::fail;
    c.sufficient = true;
    certs.push_back(std::move(c));
  }

  rep.implied_r_upper_bound = r_upper_bound_from_edges(n, m);
  if (rep.implied_r_upper_bound < gamma) {
    rep.flags.push_back("cannot be " + std::to_string(rep.implied_r_upper_bound + 1) + "-robust");
  }
  for (const auto& c : certs) {
    if (c.status != CertificateStatus::fail) continue;
    const std::string flag =
        c.level == "gamma" ? "cannot be " + std::to_string(gamma) + "-robust"
                           : "cannot be (" + std::to_string(gamma) + "," + std::to_string(gamma) + ")-robust";
    if (std::ranges::find(rep.flags, flag) == rep.flags.end()) rep.flags.push_back(flag);
  }
  return rep;
}

}  // namespace merg
