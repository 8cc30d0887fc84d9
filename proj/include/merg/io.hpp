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

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "merg/certificates.hpp"
#include "merg/construction.hpp"
#include "merg/graph.hpp"
#include "merg/robustness.hpp"
#include "merg/wmsr.hpp"

namespace merg::io {

using nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Graph files ---------------------------------------------------------------

/// `{"n": <int>, "edges": [[u,v], ...]}` with u < v, pairs sorted, one trailing newline.
inline std::string graph_to_json(const Graph& g) {
  std::string out = "{\"n\": " + std::to_string(g.n()) + ", \"edges\": [";
  bool first = true;
  for (Edge e : g.edges()) {
    if (!first) out += ", ";
    first = false;
    out += "[" + std::to_string(e.u) + "," + std::to_string(e.v) + "]";
  }
  out += "]}\n";
  return out;
}

namespace detail {

inline std::size_t as_index(const json& v, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < 0) throw ParseError(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(x);
}

inline Graph build(std::size_t n, const std::vector<Edge>& edges) {
  try {
    return Graph(n, edges);
  } catch (const GraphError& e) {
    throw ParseError(e.what());
  }
}

inline Graph graph_from_json_value(const json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw ParseError("graph JSON needs \"n\" and \"edges\"");
  }
  const std::size_t n = as_index(doc.at("n"), "n");
  const json& arr = doc.at("edges");
  if (!arr.is_array()) throw ParseError("\"edges\" must be an array");
  std::vector<Edge> edges;
  for (const json& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) throw ParseError("every edge must be a [u, v] pair");
    edges.push_back({as_index(pair[0], "edge endpoint"), as_index(pair[1], "edge endpoint")});
  }
  return build(n, edges);
}

inline Graph graph_from_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::int64_t> tokens;
  std::string tok;
  while (in >> tok) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 0) {
      throw ParseError("edge list: bad token '" + tok + "'");
    }
    tokens.push_back(v);
  }
  if (tokens.empty()) throw ParseError("edge list: missing node count");
  if ((tokens.size() - 1) % 2 != 0) throw ParseError("edge list: odd number of endpoints");
  std::vector<Edge> edges;
  for (std::size_t k = 1; k < tokens.size(); k += 2) {
    edges.push_back({static_cast<std::size_t>(tokens[k]), static_cast<std::size_t>(tokens[k + 1])});
  }
  return build(static_cast<std::size_t>(tokens[0]), edges);
}

}  // namespace detail

/// Accepts graph JSON or the plain edge-list form (`n` then one `u v` per line).
inline Graph parse_graph(std::string_view text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text[start] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("graph JSON: ") + e.what());
    }
    return detail::graph_from_json_value(doc);
  }
  return detail::graph_from_edge_list(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

// Structured records -------------------------------------------------------

inline json to_json(Edge e) { return json::array({e.u, e.v}); }

inline json to_json(NodeSet s) { return json(s.to_vector()); }

inline json to_json(const RobustnessVerdict& v) {
  json j = {{"holds", v.holds}, {"r", v.r}};
  if (v.s) j["s"] = *v.s;
  j["witness"] = v.witness ? json{{"s1", to_json(v.witness->s1)}, {"s2", to_json(v.witness->s2)}} : json(nullptr);
  return j;
}

inline json to_json(const MinimalityReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.removals) rows.push_back({{"edge", to_json(r.edge)}, {"verdict", to_json(r.verdict)}});
  json target = {{"kind", rep.target.kind == TargetKind::r ? "r" : "rs"}, {"r", rep.target.r}};
  if (rep.target.kind == TargetKind::rs) target["s"] = rep.target.s;
  return {{"target", target}, {"removals", rows}, {"minimal", rep.minimal}};
}

inline const char* to_string(MergKind k) { return k == MergKind::gamma ? "gamma" : "gamma_gamma"; }

inline json to_json(const ConstructionRecipe& r) {
  json attachments = json::array();
  for (const auto& [node, targets] : r.attachments) attachments.push_back({{"node", node}, {"targets", targets}});
  json removed = json::array();
  for (Edge e : r.removed_pairs) removed.push_back(to_json(e));
  json added = json::array();
  for (Edge e : r.added_pairs) added.push_back(to_json(e));
  return {{"kind", to_string(r.kind)},
          {"n", r.n},
          {"gamma", r.gamma},
          {"hub_set", r.hub_set},
          {"attachments", attachments},
          {"removed_pairs", removed},
          {"added_pairs", added},
          {"variant_seed", r.variant_seed ? json(*r.variant_seed) : json(nullptr)},
          {"relabel", r.relabel}};
}

inline ConstructionRecipe recipe_from_json(const json& j) {
  try {
    ConstructionRecipe r;
    const auto kind = j.at("kind").get<std::string>();
    if (kind != "gamma" && kind != "gamma_gamma") throw ParseError("unknown recipe kind '" + kind + "'");
    r.kind = kind == "gamma" ? MergKind::gamma : MergKind::gamma_gamma;
    r.n = j.at("n").get<std::size_t>();
    r.gamma = j.at("gamma").get<std::size_t>();
    r.hub_set = j.at("hub_set").get<std::vector<NodeId>>();
    for (const json& a : j.at("attachments"))
      r.attachments.emplace_back(a.at("node").get<NodeId>(), a.at("targets").get<std::vector<NodeId>>());
    for (const json& e : j.at("removed_pairs")) r.removed_pairs.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>()});
    for (const json& e : j.at("added_pairs")) r.added_pairs.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>()});
    if (!j.at("variant_seed").is_null()) r.variant_seed = j.at("variant_seed").get<std::uint64_t>();
    r.relabel = j.at("relabel").get<std::vector<NodeId>>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("recipe JSON: ") + e.what());
  }
}

inline json to_json(const CertificateReport& rep) {
  json certs = json::array();
  for (const auto& c : rep.certificates) {
    certs.push_back({{"name", c.name},
                     {"level", c.level},
                     {"quantity", c.quantity},
                     {"threshold", c.threshold},
                     {"observed", c.observed ? json(*c.observed) : json(nullptr)},
                     {"status", to_string(c.status)},
                     {"necessary_only", !c.sufficient}});
  }
  return {{"n", rep.n},
          {"gamma", rep.gamma},
          {"edge_count", rep.edge_count},
          {"implied_r_upper_bound", rep.implied_r_upper_bound},
          {"prop1_gamma_gamma", rep.prop1_gamma_gamma},
          {"flags", rep.flags},
          {"certificates", certs}};
}

// Simulation outputs --------------------------------------------------------

/// 17 significant digits, same text as printf("%.17g").
inline std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf, ptr};
}

/// Header `t,node_0,...,node_{n-1}`, then one row per step.
inline std::string trajectory_csv(const Trajectory& tr) {
  std::string out = "t";
  const std::size_t n = tr.roles.size();
  for (std::size_t i = 0; i < n; ++i) out += ",node_" + std::to_string(i);
  out += '\n';
  for (std::size_t t = 0; t < tr.states.size(); ++t) {
    out += std::to_string(t);
    for (double v : tr.states[t]) {
      out += ',';
      out += format_real(v);
    }
    out += '\n';
  }
  return out;
}

inline json roles_json(const Trajectory& tr) {
  json roles = json::array();
  for (AgentRole r : tr.roles) roles.push_back(to_string(r));
  return {{"roles", roles}, {"F", tr.f}};
}

}  // namespace merg::io
