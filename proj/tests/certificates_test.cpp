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

#include <gtest/gtest.h>

#include <random>

#include "merg/certificates.hpp"
#include "merg/construction.hpp"
#include "support/naive_oracle.hpp"

namespace merg {
namespace {

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, e);
}

TEST(EdgeBounds, Values) {
  EXPECT_EQ(edge_lb_gamma_odd(5), 30);
  EXPECT_EQ(edge_lb_gamma_odd(1), 0);
  EXPECT_EQ(edge_lb_gamma_odd(25), 900);
  EXPECT_EQ(edge_lb_gamma_even(5), 33);
  EXPECT_EQ(edge_lb_gamma_even(1), 1);
  EXPECT_EQ(edge_lb_gamma_even(25), 913);
  EXPECT_EQ(edge_lb_any_r(5, Parity::unknown), 30);
  EXPECT_EQ(edge_lb_any_r(5, Parity::odd), 30);
  EXPECT_EQ(edge_lb_any_r(5, Parity::even), 33);
  EXPECT_EQ(edge_lb_any_r(2, Parity::even), 5);
}

TEST(EdgeBounds, EvenBoundIsStronger) {
  for (std::int64_t r = 2; r <= 60; ++r) EXPECT_GT(edge_lb_gamma_even(r), edge_lb_gamma_odd(r));
}

TEST(EdgeBounds, UpperBoundFromEdges) {
  EXPECT_EQ(r_upper_bound_from_edges(9, 30), 5);
  EXPECT_EQ(r_upper_bound_from_edges(9, 29), 4);
  EXPECT_EQ(r_upper_bound_from_edges(10, 32), 4);
  EXPECT_EQ(r_upper_bound_from_edges(10, 45), 5);
  EXPECT_EQ(r_upper_bound_from_edges(4, 4), 1);
  EXPECT_EQ(r_upper_bound_from_edges(4, 0), 0);
}

TEST(DegreeBounds, Values) {
  EXPECT_EQ(min_degree_lb_rs(5, 5), 8);
  EXPECT_EQ(min_degree_lb_rs(5, 1), 5);
  EXPECT_EQ(min_degree_lb_rs(1, 1), 0);
}

TEST(GammaGammaBounds, Values) {
  EXPECT_EQ(edge_lb_gamma_gamma(9), 36);
  EXPECT_EQ(edge_lb_gamma_gamma(10), 43);
  EXPECT_EQ(edge_lb_gamma_gamma(2), 1);
}

TEST(Turan, NumbersMatchBruteForceOnSmallN) {
  // t(n, p) is the most edges without a (p+1)-clique; check by exhausting all
  // graphs on up to 6 nodes.
  for (std::size_t n = 2; n <= 6; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<Edge> all;
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j) all.push_back({i, j});
    std::vector<std::size_t> most(n + 1, 0);  // most edges with max clique <= k
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      std::vector<Edge> e;
      for (std::size_t b = 0; b < pairs; ++b)
        if ((mask >> b) & 1U) e.push_back(all[b]);
      Graph g(n, e);
      const std::size_t w = testing::naive_max_clique(g);
      for (std::size_t k = w; k <= n; ++k) most[k] = std::max(most[k], e.size());
    }
    for (std::size_t k = 1; k <= n; ++k)
      EXPECT_EQ(turan_number(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k)),
                static_cast<std::int64_t>(most[k]))
          << "n=" << n << " k=" << k;
  }
}

TEST(Turan, CliqueThreshold) {
  EXPECT_EQ(turan_clique_threshold(1), 2);
  EXPECT_EQ(turan_clique_threshold(6), 9);
  // The (5,5)-MERG on 10 nodes has an 8-clique, so the guarantee cannot exceed 8.
  const auto t5 = turan_clique_threshold(5);
  EXPECT_LE(t5, 8);
  EXPECT_EQ(t5, 8);
  for (std::int64_t g = 1; g <= 30; ++g) {
    const auto t = turan_clique_threshold(g);
    const auto n = 2 * g;
    const auto m = edge_lb_gamma_gamma(static_cast<std::size_t>(n));
    EXPECT_GT(m, turan_number(n, t - 1)) << g;
    if (t < n) {
      EXPECT_LE(m, turan_number(n, t)) << g;
    }
    EXPECT_GE(t, 4 * g / 3 + 1) << g;
  }
}

TEST(Turan, GammaSixGuaranteeIsSharp) {
  // 12 nodes, 63 edges: more than t(12, 8) forces a 9-clique, and t(12, 9)
  // = 63 means a 10-clique is not forced.
  const std::int64_t m = edge_lb_gamma_gamma(12);
  EXPECT_EQ(m, 63);
  EXPECT_EQ(turan_number(12, 8), 62);
  EXPECT_EQ(turan_number(12, 9), 63);
  // The (6,6)-MERG meets the edge count and must hold a 9-clique.
  auto [g, recipe] = construct_gamma_gamma_merg(12);
  EXPECT_GE(static_cast<std::int64_t>(max_clique_size(g)), turan_clique_threshold(6));
  EXPECT_EQ(max_clique_size(g), testing::naive_max_clique(g));
  // K12 minus three disjoint edges: 63 edges, largest clique exactly 9.
  Graph t = Graph::complete(12).without_edge({0, 1}).without_edge({2, 3}).without_edge({4, 5});
  EXPECT_EQ(t.edge_count(), 63u);
  EXPECT_EQ(testing::naive_max_clique(t), 9u);
}

TEST(Clique, NecessarySizes) {
  EXPECT_EQ(necessary_clique_size(9), 6);
  EXPECT_EQ(necessary_clique_size(10), 4);
  EXPECT_EQ(necessary_clique_size(2), 2);
}

TEST(DenseSubgraph, Examples) {
  EXPECT_EQ(dense_subgraph_threshold(5), 13);
  EXPECT_TRUE(lemma4_dense_subgraph_holds(construct_gamma_merg(10).first));
  EXPECT_FALSE(lemma4_dense_subgraph_holds(cycle(10)));
  EXPECT_TRUE(lemma4_dense_subgraph_holds(Graph::complete(10)));
  EXPECT_THROW(lemma4_dense_subgraph_holds(Graph::complete(9)), std::invalid_argument);
  EXPECT_EQ(max_induced_edges(cycle(10), 6), 5u);
  EXPECT_THROW(max_induced_edges(Graph::complete(31), 2), InfeasibleCheck);
}

TEST(GammaGammaCheck, Examples) {
  EXPECT_TRUE(prop1_gamma_gamma_check(Graph::complete(9)));
  auto [g10, recipe] = construct_gamma_gamma_merg(10);
  EXPECT_TRUE(prop1_gamma_gamma_check(g10));
  Graph c = complement(g10);
  EXPECT_EQ(c.edge_count(), 2u);
  EXPECT_EQ(c.max_degree(), 1u);
  EXPECT_FALSE(prop1_gamma_gamma_check(cycle(6)));
  EXPECT_FALSE(prop1_gamma_gamma_check(Graph::complete(9).without_edge({0, 1})));
  EXPECT_THROW(prop1_gamma_gamma_check(Graph::empty(1)), std::invalid_argument);
}

TEST(Report, GammaMergNine) {
  auto rep = certificate_report(construct_gamma_merg(9).first);
  EXPECT_EQ(rep.gamma, 5u);
  EXPECT_EQ(rep.implied_r_upper_bound, 5);
  for (const auto& c : rep.certificates) {
    if (c.level != "gamma") continue;
    EXPECT_NE(c.status, CertificateStatus::fail) << c.name;
    EXPECT_FALSE(c.sufficient);
  }
  EXPECT_EQ(rep.find("dense_subgraph_gamma")->status, CertificateStatus::not_applicable);
  EXPECT_FALSE(rep.prop1_gamma_gamma);
}

TEST(Report, CycleFourFlagsTwoRobustness) {
  auto rep = certificate_report(cycle(4));
  EXPECT_EQ(rep.find("edge_count_gamma")->status, CertificateStatus::fail);
  EXPECT_EQ(rep.find("edge_count_gamma")->threshold, 5);
  EXPECT_LE(rep.implied_r_upper_bound, 1);
  EXPECT_NE(std::ranges::find(rep.flags, "cannot be 2-robust"), rep.flags.end());
}

TEST(Report, CompleteTen) {
  auto rep = certificate_report(Graph::complete(10));
  for (const auto& c : rep.certificates) EXPECT_EQ(c.status, CertificateStatus::pass) << c.name;
  EXPECT_TRUE(rep.prop1_gamma_gamma);
  EXPECT_TRUE(rep.flags.empty());
  EXPECT_TRUE(rep.find("spanning_merg_gamma_gamma")->sufficient);
}

TEST(Report, GammaMergTenBound) {
  EXPECT_EQ(certificate_report(construct_gamma_merg(10).first).implied_r_upper_bound, 5);
}

TEST(Report, SkipsExpensiveChecksAboveCaps) {
  ReportOptions opts;
  opts.max_clique_nodes = 5;
  opts.max_subset_nodes = 5;
  auto rep = certificate_report(Graph::complete(10), opts);
  EXPECT_EQ(rep.find("clique_gamma")->status, CertificateStatus::not_evaluated);
  EXPECT_EQ(rep.find("dense_subgraph_gamma")->status, CertificateStatus::not_evaluated);
}

TEST(Report, ThresholdsDependOnNOnly) {
  std::mt19937_64 rng(201);
  for (std::size_t n = 2; n <= 12; ++n) {
    auto a = certificate_report(testing::random_graph(n, 0.3, rng));
    auto b = certificate_report(testing::random_graph(n, 0.9, rng));
    ASSERT_EQ(a.certificates.size(), b.certificates.size());
    for (std::size_t k = 0; k < a.certificates.size(); ++k)
      EXPECT_EQ(a.certificates[k].threshold, b.certificates[k].threshold);
  }
}

// Soundness against the exact oracle.

TEST(CertificateProperty, EdgeBoundIsSound) {
  std::mt19937_64 rng(202);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + rng() % 9;
    const double p = 0.2 + 0.8 * static_cast<double>(k % 10) / 10.0;
    Graph g = testing::random_graph(n, p, rng);
    const auto implied = r_upper_bound_from_edges(n, static_cast<std::int64_t>(g.edge_count()));
    ASSERT_LE(static_cast<std::int64_t>(max_r_robustness(g)), implied) << "n=" << n;
    EXPECT_EQ(certificate_report(g).implied_r_upper_bound, implied);
  }
}

TEST(CertificateProperty, ConstructionsAreTight) {
  for (std::size_t n = 3; n <= 14; ++n) {
    const auto gamma = static_cast<std::int64_t>(ceil_half(n));
    const auto m = static_cast<std::int64_t>(construct_gamma_merg(n).first.edge_count());
    EXPECT_EQ(m, n % 2 ? edge_lb_gamma_odd(gamma) : edge_lb_gamma_even(gamma)) << n;
  }
  for (std::size_t n = 2; n <= 14; ++n)
    EXPECT_EQ(static_cast<std::int64_t>(construct_gamma_gamma_merg(n).first.edge_count()), edge_lb_gamma_gamma(n));
}

TEST(CertificateProperty, NecessaryConditionsHoldOnRobustGraphs) {
  std::mt19937_64 rng(203);
  int robust_seen = 0;
  for (int k = 0; k < 400; ++k) {
    const std::size_t n = 3 + rng() % 8;
    const double p = 0.6 + 0.4 * static_cast<double>(k % 8) / 8.0;
    Graph g = testing::random_graph(n, p, rng);
    const std::size_t gamma = ceil_half(n);
    if (is_r_robust(g, gamma).holds) {
      ++robust_seen;
      EXPECT_GE(static_cast<std::int64_t>(max_clique_size(g)), necessary_clique_size(n));
      EXPECT_GE(static_cast<std::int64_t>(g.edge_count()), edge_lb_any_r(static_cast<std::int64_t>(gamma), parity_of(n)));
      if (n % 2 == 0) {
        EXPECT_TRUE(lemma4_dense_subgraph_holds(g));
      }
    }
    for (std::size_t r = 1; r <= gamma; ++r) {
      if (!is_rs_robust(g, r, r).holds) continue;
      EXPECT_GE(static_cast<std::int64_t>(g.min_degree()), 2 * static_cast<std::int64_t>(r) - 2);
      EXPECT_GE(g.edge_count(), n * (r - 1));
    }
    if (n % 2 == 0 && is_rs_robust(g, gamma, gamma).holds) {
      EXPECT_GE(static_cast<std::int64_t>(max_clique_size(g)), turan_clique_threshold(static_cast<std::int64_t>(gamma)));
    }
  }
  EXPECT_GT(robust_seen, 20);
}

TEST(CertificateProperty, GammaGammaCheckMatchesOracle) {
  std::mt19937_64 rng(204);
  for (int k = 0; k < 600; ++k) {
    const std::size_t n = 2 + rng() % 9;
    // Mostly near-complete graphs, where the answer is interesting.
    const std::size_t possible = n * (n - 1) / 2;
    Graph g = Graph::complete(n);
    const std::size_t cut = rng() % (1 + std::min<std::size_t>(possible, n));
    for (std::size_t c = 0; c < cut; ++c) {
      auto e = g.edges();
      if (e.empty()) break;
      g = g.without_edge(e[rng() % e.size()]);
    }
    const std::size_t gamma = ceil_half(n);
    ASSERT_EQ(prop1_gamma_gamma_check(g), is_rs_robust(g, gamma, gamma).holds) << "n=" << n << " m=" << g.edge_count();
  }
}

}  // namespace
}  // namespace merg
