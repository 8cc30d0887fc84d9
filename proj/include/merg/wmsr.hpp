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
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "merg/graph.hpp"
#include "merg/random.hpp"

namespace merg {

enum class AgentRole { normal, malicious, byzantine };

inline const char* to_string(AgentRole r) {
  switch (r) {
    case AgentRole::normal: return "normal";
    case AgentRole::malicious: return "malicious";
    case AgentRole::byzantine: return "byzantine";
  }
  return "?";
}

/// Plain consensus update with uniform weights over own value and all neighbours.
/// The mean is clamped to the input range so rounding never leaves it.
inline double nominal_step(double own, std::span<const double> neighbor_values) {
  double sum = own;
  double lo = own;
  double hi = own;
  for (double v : neighbor_values) {
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return std::clamp(sum / static_cast<double>(neighbor_values.size() + 1), lo, hi);
}

/// Neighbour values that survive W-MSR trimming, in their original order.
///
/// Up to F values strictly above `own` are dropped from the top and up to F
/// values strictly below it from the bottom. Among equal extreme values the
/// later-listed one goes first; equal values are interchangeable, so the
/// retained multiset does not depend on this.
inline std::vector<double> wmsr_retained(double own, std::span<const double> neighbor_values, std::size_t f) {
  const std::size_t k = neighbor_values.size();
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return neighbor_values[a] < neighbor_values[b]; });
  const auto above = static_cast<std::size_t>(std::ranges::count_if(neighbor_values, [own](double x) { return x > own; }));
  const auto below = static_cast<std::size_t>(std::ranges::count_if(neighbor_values, [own](double x) { return x < own; }));
  const std::size_t drop_top = std::min(f, above);
  const std::size_t drop_bottom = std::min(f, below);

  std::vector<bool> dropped(k, false);
  for (std::size_t i = 0; i < drop_bottom; ++i) dropped[order[i]] = true;
  for (std::size_t i = 0; i < drop_top; ++i) dropped[order[k - 1 - i]] = true;
  std::vector<double> kept;
  kept.reserve(k - drop_bottom - drop_top);
  for (std::size_t i = 0; i < k; ++i)
    if (!dropped[i]) kept.push_back(neighbor_values[i]);
  return kept;
}

/// One W-MSR update: trim, then uniform average of own and retained values.
inline double wmsr_step(double own, std::span<const double> neighbor_values, std::size_t f) {
  return nominal_step(own, wmsr_retained(own, neighbor_values, f));
}

/// Values an adversary emits. Malicious agents use `broadcast` (one value
/// per step for every neighbour); Byzantine agents use `targeted`, which may
/// differ per receiver.
struct AdversaryStrategy {
  std::function<double(NodeId agent, std::size_t t)> broadcast;
  std::function<double(NodeId agent, NodeId receiver, std::size_t t)> targeted;
};

struct SimConfig {
  Graph graph = Graph::empty(1);
  std::vector<AgentRole> roles;
  std::size_t f = 0;
  std::size_t steps = 30;
  std::uint64_t seed = 0;
  std::vector<double> initial_states;
  double alpha_floor = 0.0;
};

struct Trajectory {
  /// states[t][i] for t = 0..steps. Adversaries hold the value they emit at
  /// t towards their lowest-indexed neighbour.
  std::vector<std::vector<double>> states;
  std::vector<AgentRole> roles;
  std::size_t f = 0;
  /// max - min over normal agents at each t.
  std::vector<double> spread;
  double hull_min = 0.0;  // min of normal initial states
  double hull_max = 0.0;  // max of normal initial states
  double min_weight = 1.0;  // smallest uniform weight used by a normal agent
  std::size_t weight_floor_violations = 0;

  double normal_min(std::size_t t) const { return extreme(t, true); }
  double normal_max(std::size_t t) const { return extreme(t, false); }

  bool within_hull(std::size_t t) const {
    return normal_min(t) >= hull_min && normal_max(t) <= hull_max;
  }

  double spread_ratio() const { return spread.front() > 0.0 ? spread.back() / spread.front() : 0.0; }

 private:
  double extreme(std::size_t t, bool lowest) const {
    double best = lowest ? INFINITY : -INFINITY;
    for (std::size_t i = 0; i < roles.size(); ++i) {
      if (roles[i] != AgentRole::normal) continue;
      best = lowest ? std::min(best, states[t][i]) : std::max(best, states[t][i]);
    }
    return best;
  }
};

/// At most F misbehaving agents in total.
inline bool is_f_total(std::span<const AgentRole> roles, std::size_t f) {
  return static_cast<std::size_t>(std::ranges::count_if(roles, [](AgentRole r) { return r != AgentRole::normal; })) <=
         f;
}

/// Every node outside s has at most F neighbours in s.
inline bool is_f_local(const Graph& g, std::span<const NodeId> s, std::size_t f) {
  std::vector<bool> in(g.n(), false);
  for (NodeId i : s) {
    if (i >= g.n()) throw GraphError("node " + std::to_string(i) + " out of range");
    in[i] = true;
  }
  for (NodeId i = 0; i < g.n(); ++i) {
    if (in[i]) continue;
    std::size_t hits = 0;
    for (NodeId j : g.neighbors(i)) hits += in[j] ? 1 : 0;
    if (hits > f) return false;
  }
  return true;
}

inline Trajectory run_simulation(const SimConfig& config, const AdversaryStrategy& adversary) {
  const Graph& g = config.graph;
  const std::size_t n = g.n();
  if (config.roles.size() != n) throw std::invalid_argument("roles must list every node");
  if (config.initial_states.size() != n) throw std::invalid_argument("initial_states must list every node");
  if (config.steps == 0) throw std::invalid_argument("steps must be positive");
  for (AgentRole r : config.roles) {
    if (r == AgentRole::malicious && !adversary.broadcast)
      throw std::invalid_argument("malicious agents need a broadcast strategy");
    if (r == AgentRole::byzantine && !adversary.targeted)
      throw std::invalid_argument("byzantine agents need a per-receiver strategy");
  }

  std::vector<std::vector<NodeId>> nbrs(n);
  for (NodeId i = 0; i < n; ++i) nbrs[i] = g.neighbors(i);

  auto sent = [&](const std::vector<double>& x, NodeId from, NodeId to, std::size_t t) {
    switch (config.roles[from]) {
      case AgentRole::normal: return x[from];
      case AgentRole::malicious: return adversary.broadcast(from, t);
      case AgentRole::byzantine: return adversary.targeted(from, to, t);
    }
    return x[from];
  };

  auto logged_row = [&](const std::vector<double>& x, std::size_t t) {
    std::vector<double> row = x;
    for (NodeId i = 0; i < n; ++i) {
      if (config.roles[i] == AgentRole::normal || nbrs[i].empty()) continue;
      row[i] = sent(x, i, nbrs[i].front(), t);
    }
    return row;
  };

  Trajectory traj;
  traj.roles = config.roles;
  traj.f = config.f;
  traj.states.reserve(config.steps + 1);

  std::vector<double> x = config.initial_states;
  std::vector<double> next(n);
  std::vector<double> inbox;
  traj.states.push_back(logged_row(x, 0));
  for (std::size_t t = 0; t < config.steps; ++t) {
    for (NodeId i = 0; i < n; ++i) {
      if (config.roles[i] != AgentRole::normal) {
        next[i] = x[i];
        continue;
      }
      inbox.clear();
      for (NodeId j : nbrs[i]) inbox.push_back(sent(x, j, i, t));
      auto kept = wmsr_retained(x[i], inbox, config.f);
      const double w = 1.0 / static_cast<double>(kept.size() + 1);
      traj.min_weight = std::min(traj.min_weight, w);
      if (w < config.alpha_floor) ++traj.weight_floor_violations;
      next[i] = nominal_step(x[i], kept);
    }
    std::swap(x, next);
    traj.states.push_back(logged_row(x, t + 1));
  }

  const bool any_normal = std::ranges::any_of(config.roles, [](AgentRole r) { return r == AgentRole::normal; });
  if (any_normal) {
    traj.hull_min = traj.normal_min(0);
    traj.hull_max = traj.normal_max(0);
    for (std::size_t t = 0; t < traj.states.size(); ++t) traj.spread.push_back(traj.normal_max(t) - traj.normal_min(t));
  } else {
    traj.spread.assign(traj.states.size(), 0.0);
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Adversary behaviours and scenario setups from the evaluation runs.

enum class Scenario { viiA_malicious, viiB_gamma, viiB_gamma_gamma, none };

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::viiA_malicious: return "viiA-malicious";
    case Scenario::viiB_gamma: return "viiB-gamma";
    case Scenario::viiB_gamma_gamma: return "viiB-gammagamma";
    case Scenario::none: return "none";
  }
  return "?";
}

inline Scenario parse_scenario(std::string_view name) {
  for (Scenario s : {Scenario::viiA_malicious, Scenario::viiB_gamma, Scenario::viiB_gamma_gamma, Scenario::none})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

/// 1080 cos(t/5) from even agents, 1080 sin(t/5) from odd ones.
inline double trig_malicious_value(NodeId agent, std::size_t t) {
  const double phase = static_cast<double>(t) / 5.0;
  return 1080.0 * (agent % 2 == 0 ? std::cos(phase) : std::sin(phase));
}

/// Byzantine message values. viiB-gamma: 100 to receivers 0..ceil(n/2),
/// 0 to the rest. viiB-gammagamma: agent 3 sends 100, the others 0.
inline double byzantine_split_value(NodeId agent, NodeId receiver, std::size_t n, std::size_t /*t*/,
                                    Scenario scenario) {
  switch (scenario) {
    case Scenario::viiB_gamma: return receiver <= (n + 1) / 2 ? 100.0 : 0.0;
    case Scenario::viiB_gamma_gamma: return agent == 3 ? 100.0 : 0.0;
    default: throw std::invalid_argument("scenario has no Byzantine split strategy");
  }
}

inline AdversaryStrategy scenario_strategy(Scenario scenario, std::size_t n) {
  AdversaryStrategy s;
  switch (scenario) {
    case Scenario::viiA_malicious:
      s.broadcast = [](NodeId agent, std::size_t t) { return trig_malicious_value(agent, t); };
      break;
    case Scenario::viiB_gamma:
    case Scenario::viiB_gamma_gamma:
      s.targeted = [n, scenario](NodeId agent, NodeId receiver, std::size_t t) {
        return byzantine_split_value(agent, receiver, n, t, scenario);
      };
      break;
    case Scenario::none: break;
  }
  return s;
}

/// W-MSR parameter each scenario was designed around; viiA takes it from the caller.
inline std::optional<std::size_t> scenario_default_f(Scenario scenario) {
  switch (scenario) {
    case Scenario::viiB_gamma: return 2;
    case Scenario::viiB_gamma_gamma: return 4;
    case Scenario::none: return 0;
    case Scenario::viiA_malicious: return std::nullopt;
  }
  return std::nullopt;
}

/// viiA: agents 0..F-1 malicious. viiB-gamma: 0,1 Byzantine.
/// viiB-gammagamma: 0..3 Byzantine.
inline std::vector<AgentRole> scenario_roles(Scenario scenario, std::size_t n, std::size_t f) {
  std::vector<AgentRole> roles(n, AgentRole::normal);
  auto mark = [&](std::size_t count, AgentRole r) {
    if (count > n) throw std::invalid_argument("more adversaries than nodes");
    for (std::size_t i = 0; i < count; ++i) roles[i] = r;
  };
  switch (scenario) {
    case Scenario::viiA_malicious: mark(f, AgentRole::malicious); break;
    case Scenario::viiB_gamma: mark(2, AgentRole::byzantine); break;
    case Scenario::viiB_gamma_gamma: mark(4, AgentRole::byzantine); break;
    case Scenario::none: break;
  }
  return roles;
}

struct Interval {
  double lo;
  double hi;
};

/// Sampling interval of node i's initial state; nullopt pins it to 0.
inline std::optional<Interval> initial_interval(Scenario scenario, std::size_t n, NodeId i) {
  switch (scenario) {
    case Scenario::viiA_malicious:
    case Scenario::none: return Interval{-1000.0, 1000.0};
    case Scenario::viiB_gamma:
      if (i < 2) return std::nullopt;
      if (i == n - 1) return Interval{8.0, 14.0};
      if (i <= 5) return Interval{15.0, 100.0};
      return Interval{0.0, 7.0};
    case Scenario::viiB_gamma_gamma:
      if (i < 4) return std::nullopt;
      if (i == n - 1) return Interval{1.0, 50.0};
      return Interval{50.0, 100.0};
  }
  return std::nullopt;
}

/// One uniform draw per node with an interval, in index order, from Rng(seed).
inline std::vector<double> initial_states(std::size_t n, Scenario scenario, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n, 0.0);
  for (NodeId i = 0; i < n; ++i)
    if (auto iv = initial_interval(scenario, n, i)) x[i] = uniform_real(rng, iv->lo, iv->hi);
  return x;
}

/// Edge whose removal the edge-removal runs use for each scenario and size.
inline std::optional<Edge> scenario_default_removed_edge(Scenario scenario, std::size_t n) {
  if (scenario == Scenario::viiB_gamma && n == 9) return Edge{3, 8};
  if (scenario == Scenario::viiB_gamma && n == 10) return Edge{4, 9};
  if (scenario == Scenario::viiB_gamma_gamma && n == 9) return Edge{7, 8};
  if (scenario == Scenario::viiB_gamma_gamma && n == 10) return Edge{0, 2};
  return std::nullopt;
}

}  // namespace merg
