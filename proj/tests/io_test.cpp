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

#include "merg/construction.hpp"
#include "merg/io.hpp"

namespace merg {
namespace {

TEST(GraphJson, ExactText) {
  Graph g(4, {{2, 1}, {0, 3}, {0, 1}});
  EXPECT_EQ(io::graph_to_json(g), "{\"n\": 4, \"edges\": [[0,1], [0,3], [1,2]]}\n");
  EXPECT_EQ(io::graph_to_json(Graph::empty(2)), "{\"n\": 2, \"edges\": []}\n");
}

TEST(GraphJson, RoundTrip) {
  for (std::size_t n = 2; n <= 20; ++n) {
    Graph g = construct_gamma_merg(n, n).first;
    EXPECT_EQ(io::parse_graph(io::graph_to_json(g)), g);
  }
}

TEST(GraphJson, AcceptsUnsortedInput) {
  EXPECT_EQ(io::parse_graph(R"({"edges": [[2,1],[1,0]], "n": 3})"), Graph(3, {{0, 1}, {1, 2}}));
}

TEST(EdgeList, Parses) {
  EXPECT_EQ(io::parse_graph("3\n0 1\n1 2\n"), Graph(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(io::parse_graph("  4\n\n3 0   \n"), Graph(4, {{0, 3}}));
  EXPECT_EQ(io::parse_graph("1\n"), Graph::empty(1));
}

TEST(Parsing, Errors) {
  EXPECT_THROW(io::parse_graph(""), io::ParseError);
  EXPECT_THROW(io::parse_graph("3\n0 1\n2\n"), io::ParseError);
  EXPECT_THROW(io::parse_graph("3\n0 x\n"), io::ParseError);
  EXPECT_THROW(io::parse_graph("3\n0 -1\n"), io::ParseError);
  EXPECT_THROW(io::parse_graph("3\n1 1\n"), io::ParseError);
  EXPECT_THROW(io::parse_graph("3\n0 3\n"), io::ParseError);
  EXPECT_THROW(io::parse_graph("0\n"), io::ParseError);
  EXPECT_THROW(io::parse_graph("{\"n\": 3}"), io::ParseError);
  EXPECT_THROW(io::parse_graph("{\"n\": 3, \"edges\": [[0]]}"), io::ParseError);
  EXPECT_THROW(io::parse_graph("{\"n\": -3, \"edges\": []}"), io::ParseError);
  EXPECT_THROW(io::parse_graph("{\"n\": 3, "), io::ParseError);
}

TEST(Recipe, JsonRoundTrip) {
  for (MergKind kind : {MergKind::gamma, MergKind::gamma_gamma}) {
    for (std::size_t n : {2U, 7U, 10U}) {
      auto [g, recipe] = construct_merg(kind, n, 77);
      auto back = io::recipe_from_json(io::to_json(recipe));
      EXPECT_EQ(replay(back), g);
      EXPECT_EQ(back.relabel, recipe.relabel);
      EXPECT_EQ(back.variant_seed, recipe.variant_seed);
    }
  }
  auto plain = io::to_json(construct_gamma_merg(9).second);
  EXPECT_TRUE(plain["variant_seed"].is_null());
  EXPECT_EQ(plain["kind"], "gamma");
  EXPECT_THROW(io::recipe_from_json(io::json{{"kind", "other"}}), io::ParseError);
}

TEST(Verdict, Json) {
  auto v = is_r_robust(Graph(3, {{0, 1}, {1, 2}}), 2);
  auto j = io::to_json(v);
  EXPECT_EQ(j["holds"], false);
  EXPECT_EQ(j["witness"]["s1"], io::json::array({0}));
  EXPECT_EQ(j["witness"]["s2"], io::json::array({2}));
  EXPECT_FALSE(j.contains("s"));
  auto k = io::to_json(is_rs_robust(Graph::complete(4), 2, 3));
  EXPECT_EQ(k["s"], 3);
  EXPECT_TRUE(k["witness"].is_null());
}

TEST(Report, JsonFields) {
  auto j = io::to_json(certificate_report(Graph::complete(4)));
  EXPECT_EQ(j["n"], 4);
  EXPECT_EQ(j["gamma"], 2);
  EXPECT_EQ(j["prop1_gamma_gamma"], true);
  for (const auto& c : j["certificates"]) {
    for (const char* key : {"name", "level", "quantity", "threshold", "observed", "status", "necessary_only"})
      EXPECT_TRUE(c.contains(key)) << key;
    EXPECT_EQ(c["necessary_only"], c["name"] != "spanning_merg_gamma_gamma");
  }
}

TEST(Trajectory, CsvFormat) {
  Trajectory tr;
  tr.roles = {AgentRole::normal, AgentRole::malicious};
  tr.states = {{0.1, 1080.0}, {1.0 / 3.0, -2.5e-7}};
  EXPECT_EQ(io::trajectory_csv(tr),
            "t,node_0,node_1\n"
            "0,0.10000000000000001,1080\n"
            "1,0.33333333333333331,-2.4999999999999999e-07\n");
  EXPECT_EQ(io::format_real(100.0), "100");
  EXPECT_EQ(std::stod(io::format_real(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(Trajectory, RolesJson) {
  Trajectory tr;
  tr.roles = {AgentRole::byzantine, AgentRole::normal, AgentRole::malicious};
  tr.f = 2;
  EXPECT_EQ(io::roles_json(tr).dump(), R"({"F":2,"roles":["byzantine","normal","malicious"]})");
}

}  // namespace
}  // namespace merg
