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

// merg: construct, verify, bound and simulate maximum-robustness graphs.
//
// Exit codes: 0 success / requested level holds, 1 error, 2 requested level
// does not hold, 3 exact check infeasible for this graph size.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "merg/certificates.hpp"
#include "merg/construction.hpp"
#include "merg/graph.hpp"
#include "merg/io.hpp"
#include "merg/robustness.hpp"
#include "merg/wmsr.hpp"

namespace {

using merg::io::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFails = 2;
constexpr int kExitInfeasible = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

merg::MergKind parse_kind(const std::string& s) {
  if (s == "r") return merg::MergKind::gamma;
  if (s == "rs") return merg::MergKind::gamma_gamma;
  throw UsageError("--kind must be r or rs");
}

merg::Edge parse_edge(const std::string& text) {
  std::string spaced = text;
  for (char& c : spaced)
    if (c == ',') c = ' ';
  std::istringstream in(spaced);
  long long u = -1;
  long long v = -1;
  std::string rest;
  if (!(in >> u >> v) || (in >> rest) || u < 0 || v < 0) throw UsageError("edge must be written u,v");
  return {static_cast<merg::NodeId>(u), static_cast<merg::NodeId>(v)};
}

merg::Graph remove_edge(const merg::Graph& g, merg::Edge e) {
  if (e.u >= g.n() || e.v >= g.n() || !g.has_edge(e.u, e.v)) {
    throw UsageError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not in the graph");
  }
  return g.without_edge(e);
}

/// `out/graph.json` -> `out/graph`; the sidecars hang off this stem.
std::string stem_of(const std::string& path) {
  std::filesystem::path p(path);
  return (p.parent_path() / p.stem()).string();
}

std::string witness_text(const merg::SubsetPair& w) {
  auto list = [](merg::NodeSet s) {
    std::string out = "{";
    bool first = true;
    for (merg::NodeId i : s.to_vector()) {
      if (!first) out += ",";
      first = false;
      out += std::to_string(i);
    }
    return out + "}";
  };
  return "S1=" + list(w.s1) + " S2=" + list(w.s2);
}

std::string edge_text(merg::Edge e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; }

// construct -------------------------------------------------------------------

struct ConstructArgs {
  std::size_t n = 0;
  std::string kind = "r";
  std::optional<std::uint64_t> variant;
  std::string out;
};

int run_construct(const ConstructArgs& a, bool as_json) {
  if (a.n < 2) throw UsageError("--n must be at least 2");
  auto [g, recipe] = merg::construct_merg(parse_kind(a.kind), a.n, a.variant);
  json summary = {{"kind", a.kind}, {"n", g.n()}, {"gamma", recipe.gamma}, {"edges", g.edge_count()}};

  std::ostream* report = &std::cout;
  if (a.out.empty()) {
    std::cout << merg::io::graph_to_json(g);
    report = &std::cerr;
  } else {
    const std::string recipe_path = stem_of(a.out) + ".recipe.json";
    merg::io::write_file(a.out, merg::io::graph_to_json(g));
    merg::io::write_file(recipe_path, merg::io::to_json(recipe).dump(2) + "\n");
    summary["graph"] = a.out;
    summary["recipe"] = recipe_path;
  }
  if (as_json) {
    *report << summary.dump() << "\n";
  } else {
    *report << "edges: " << g.edge_count() << "\ngamma: " << recipe.gamma << "\n";
    if (!a.out.empty()) *report << "wrote " << a.out << " and " << summary["recipe"].get<std::string>() << "\n";
  }
  return kExitOk;
}

// robustness ------------------------------------------------------------------

struct RobustnessArgs {
  std::string graph;
  bool rs = false;
  std::optional<std::size_t> r;
  std::optional<std::size_t> s;
  std::string remove;
  std::size_t max_exact_n = merg::OracleOptions{}.max_nodes;
  unsigned threads = 0;
};

int run_robustness(const RobustnessArgs& a, bool as_json) {
  merg::Graph g = merg::io::load_graph(a.graph);
  if (!a.remove.empty()) g = remove_edge(g, parse_edge(a.remove));
  merg::OracleOptions opts;
  opts.max_nodes = a.max_exact_n;
  opts.threads = a.threads;

  const std::size_t gamma = merg::ceil_half(g.n());
  json out = {{"n", g.n()}, {"edges", g.edge_count()}, {"gamma", gamma}};
  std::ostringstream text;
  int code = kExitOk;

  if (!a.rs && !a.s) {
    if (a.r) {
      auto v = merg::is_r_robust(g, *a.r, opts);
      out["verdict"] = merg::io::to_json(v);
      text << *a.r << "-robust: " << (v.holds ? "holds" : "fails") << "\n";
      if (v.witness) text << "witness: " << witness_text(*v.witness) << "\n";
      code = v.holds ? kExitOk : kExitFails;
    } else {
      const std::size_t best = merg::max_r_robustness(g, opts);
      out["max_r"] = best;
      text << "max_r: " << best << " (gamma = " << gamma << ")\n";
      if (best < gamma) {
        auto v = merg::is_r_robust(g, best + 1, opts);
        out["verdict"] = merg::io::to_json(v);
        if (v.witness) text << "witness against " << best + 1 << "-robust: " << witness_text(*v.witness) << "\n";
      }
    }
  } else {
    const std::size_t r = a.r.value_or(gamma);
    if (a.s) {
      auto v = merg::is_rs_robust(g, r, *a.s, opts);
      out["verdict"] = merg::io::to_json(v);
      text << "(" << r << "," << *a.s << ")-robust: " << (v.holds ? "holds" : "fails") << "\n";
      if (v.witness) text << "witness: " << witness_text(*v.witness) << "\n";
      code = v.holds ? kExitOk : kExitFails;
    } else {
      const std::size_t s = merg::max_s_given_r(g, r, opts);
      out["r"] = r;
      out["max_s"] = s;
      text << "r: " << r << "\nmax_s: " << s << "\n";
      code = s >= 1 ? kExitOk : kExitFails;
    }
  }
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return code;
}

// bounds ----------------------------------------------------------------------

int run_bounds(const std::string& path) {
  const merg::Graph g = merg::io::load_graph(path);
  std::cout << merg::io::to_json(merg::certificate_report(g)).dump(2) << "\n";
  return kExitOk;
}

// minimality ------------------------------------------------------------------

struct MinimalityArgs {
  std::string graph;
  std::string kind = "r";
  std::size_t max_exact_n = merg::OracleOptions{}.max_nodes;
  unsigned threads = 0;
};

int run_minimality(const MinimalityArgs& a, bool as_json) {
  const merg::Graph g = merg::io::load_graph(a.graph);
  const std::size_t gamma = merg::ceil_half(g.n());
  merg::RobustnessTarget target;
  target.kind = parse_kind(a.kind) == merg::MergKind::gamma ? merg::TargetKind::r : merg::TargetKind::rs;
  target.r = gamma;
  target.s = gamma;
  merg::OracleOptions opts;
  opts.max_nodes = a.max_exact_n;
  opts.threads = a.threads;

  const auto rep = merg::minimality_sweep(g, target, opts);
  if (as_json) {
    std::cout << merg::io::to_json(rep).dump(2) << "\n";
    return kExitOk;
  }
  const std::string level = target.kind == merg::TargetKind::r
                                ? std::to_string(gamma) + "-robust"
                                : "(" + std::to_string(gamma) + "," + std::to_string(gamma) + ")-robust";
  std::cout << "edge      " << level << " after removal\n";
  for (const auto& row : rep.removals) {
    std::string e = edge_text(row.edge);
    e.resize(std::max<std::size_t>(e.size(), 10), ' ');
    std::cout << e << (row.verdict.holds ? "holds" : "breaks");
    if (row.verdict.witness) std::cout << "  " << witness_text(*row.verdict.witness);
    std::cout << "\n";
  }
  std::cout << "minimal: " << (rep.minimal ? "true" : "false") << "\n";
  return kExitOk;
}

// simulate --------------------------------------------------------------------

struct SimulateArgs {
  std::string graph;
  std::optional<std::size_t> n;
  std::string kind = "r";
  std::optional<std::uint64_t> variant;
  std::string scenario = "none";
  std::optional<std::size_t> f;
  std::size_t steps = 30;
  std::uint64_t seed = 1;
  std::string remove;
  bool remove_default = false;
  double tol = 1e-6;
  std::string out;
};

int run_simulate(const SimulateArgs& a, bool as_json) {
  if (a.graph.empty() == !a.n) throw UsageError("give exactly one of --graph or --n");
  if (!a.remove.empty() && a.remove_default) throw UsageError("--remove-edge and --remove-default-edge conflict");
  const merg::Scenario scenario = merg::parse_scenario(a.scenario);

  merg::Graph g = a.n ? merg::construct_merg(parse_kind(a.kind), *a.n, a.variant).first : merg::io::load_graph(a.graph);
  std::optional<merg::Edge> removed;
  if (!a.remove.empty()) removed = parse_edge(a.remove);
  if (a.remove_default) {
    removed = merg::scenario_default_removed_edge(scenario, g.n());
    if (!removed) throw UsageError("no default edge for this scenario and size");
  }
  if (removed) g = remove_edge(g, *removed);

  const std::optional<std::size_t> f = a.f ? a.f : merg::scenario_default_f(scenario);
  if (!f) throw UsageError("--f is required for scenario " + a.scenario);

  merg::SimConfig cfg;
  cfg.graph = g;
  cfg.roles = merg::scenario_roles(scenario, g.n(), *f);
  cfg.f = *f;
  cfg.steps = a.steps;
  cfg.seed = a.seed;
  cfg.initial_states = merg::initial_states(g.n(), scenario, a.seed);
  cfg.alpha_floor = 1.0 / static_cast<double>(g.n());
  const merg::Trajectory tr = merg::run_simulation(cfg, merg::scenario_strategy(scenario, g.n()));

  bool within = true;
  json normal_min = json::array();
  json normal_max = json::array();
  for (std::size_t t = 0; t < tr.states.size(); ++t) {
    within = within && tr.within_hull(t);
    normal_min.push_back(tr.normal_min(t));
    normal_max.push_back(tr.normal_max(t));
  }
  const double final_spread = tr.spread.back();
  json metrics = {{"scenario", a.scenario},
                  {"n", g.n()},
                  {"edges", g.edge_count()},
                  {"F", tr.f},
                  {"steps", a.steps},
                  {"seed", a.seed},
                  {"removed_edge", removed ? merg::io::to_json(*removed) : json(nullptr)},
                  {"f_total", merg::is_f_total(tr.roles, tr.f)},
                  {"hull_min", tr.hull_min},
                  {"hull_max", tr.hull_max},
                  {"within_hull", within},
                  {"spread", tr.spread},
                  {"normal_min", normal_min},
                  {"normal_max", normal_max},
                  {"final_spread", final_spread},
                  {"spread_ratio", tr.spread_ratio()},
                  {"min_weight", tr.min_weight},
                  {"tol", a.tol},
                  {"converged", final_spread <= a.tol}};

  if (!a.out.empty()) {
    const std::string stem = stem_of(a.out);
    merg::io::write_file(a.out, merg::io::trajectory_csv(tr));
    merg::io::write_file(stem + ".metrics.json", metrics.dump(2) + "\n");
    merg::io::write_file(stem + ".roles.json", merg::io::roles_json(tr).dump() + "\n");
  }
  if (as_json) {
    std::cout << metrics.dump(2) << "\n";
  } else {
    std::cout << "scenario: " << a.scenario << "  n: " << g.n() << "  edges: " << g.edge_count() << "  F: " << tr.f;
    if (removed) std::cout << "  removed: " << edge_text(*removed);
    std::cout << "\nspread(0): " << merg::io::format_real(tr.spread.front())
              << "\nspread(" << a.steps << "): " << merg::io::format_real(final_spread)
              << "\nwithin hull: " << (within ? "true" : "false")
              << "\nconverged: " << (final_spread <= a.tol ? "true" : "false") << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"merg: maximum-robustness graph construction, verification and W-MSR simulation"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable JSON on stdout");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a gamma-MERG (r) or (gamma,gamma)-MERG (rs)");
  construct->add_option("--n", ca.n, "Node count (>= 2)")->required();
  construct->add_option("--kind", ca.kind, "r or rs")->check(CLI::IsMember({"r", "rs"}));
  construct->add_option("--variant", ca.variant, "Relabel nodes with this seed");
  construct->add_option("--out", ca.out, "Graph JSON path; recipe goes to <stem>.recipe.json");

  RobustnessArgs ra;
  auto* robustness = app.add_subcommand("robustness", "Exact r- or (r,s)-robustness check");
  robustness->add_option("--graph", ra.graph, "Graph JSON or edge-list file")->required();
  robustness->add_flag("--rs", ra.rs, "Check (r,s)-robustness (r defaults to gamma)");
  robustness->add_option("--r", ra.r, "Target r")->check(CLI::PositiveNumber);
  robustness->add_option("--s", ra.s, "Target s (implies --rs)")->check(CLI::PositiveNumber);
  robustness->add_option("--remove-edge", ra.remove, "Delete edge u,v before checking");
  robustness->add_option("--max-exact-n", ra.max_exact_n, "Largest n the exhaustive check accepts");
  robustness->add_option("--threads", ra.threads, "Worker threads (0 = all cores)");

  std::string bounds_graph;
  auto* bounds = app.add_subcommand("bounds", "Necessary-condition certificate report (JSON)");
  bounds->add_option("--graph", bounds_graph, "Graph JSON or edge-list file")->required();

  MinimalityArgs ma;
  auto* minimality = app.add_subcommand("minimality", "Re-check the maximum level after each single-edge removal");
  minimality->add_option("--graph", ma.graph, "Graph JSON or edge-list file")->required();
  minimality->add_option("--kind", ma.kind, "r (gamma-robust) or rs ((gamma,gamma)-robust)")
      ->check(CLI::IsMember({"r", "rs"}));
  minimality->add_option("--max-exact-n", ma.max_exact_n, "Largest n the exhaustive check accepts");
  minimality->add_option("--threads", ma.threads, "Worker threads (0 = all cores)");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Run W-MSR consensus under a named adversary scenario");
  simulate->add_option("--graph", sa.graph, "Graph JSON or edge-list file");
  simulate->add_option("--n", sa.n, "Construct the graph instead of loading one");
  simulate->add_option("--kind", sa.kind, "Construction kind with --n: r or rs")->check(CLI::IsMember({"r", "rs"}));
  simulate->add_option("--variant", sa.variant, "Relabel seed for the constructed graph");
  simulate->add_option("--scenario", sa.scenario, "viiA-malicious | viiB-gamma | viiB-gammagamma | none")
      ->check(CLI::IsMember({"viiA-malicious", "viiB-gamma", "viiB-gammagamma", "none"}));
  simulate->add_option("--f", sa.f, "W-MSR parameter F");
  simulate->add_option("--steps", sa.steps, "Number of update rounds")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sa.seed, "Seed for initial states");
  simulate->add_option("--remove-edge", sa.remove, "Delete edge u,v before simulating");
  simulate->add_flag("--remove-default-edge", sa.remove_default, "Delete the scenario's designated edge");
  simulate->add_option("--tol", sa.tol, "Agreement tolerance on the final spread")->check(CLI::NonNegativeNumber);
  simulate->add_option("--out", sa.out, "Trajectory CSV; metrics and roles go beside it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*construct) return run_construct(ca, as_json);
    if (*robustness) return run_robustness(ra, as_json);
    if (*bounds) return run_bounds(bounds_graph);
    if (*minimality) return run_minimality(ma, as_json);
    if (*simulate) return run_simulate(sa, as_json);
  } catch (const merg::InfeasibleCheck& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
