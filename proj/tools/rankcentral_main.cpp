// Copyright 2026 The rankcentral Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: rank, bounds, experiment, simulate, generate-graph.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rankcentral/baselines.hpp"
#include "rankcentral/bounds.hpp"
#include "rankcentral/btl.hpp"
#include "rankcentral/error.hpp"
#include "rankcentral/experiment.hpp"
#include "rankcentral/graph.hpp"
#include "rankcentral/spectral_ranker.hpp"

namespace rankcentral {
namespace {

std::string Format(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- rank ------------------------------------------------------------------

struct RankOptions {
  std::string graph;
  std::string obs;
  Index k = 1;
  double tol = kDefaultTolerance;
  std::uint64_t max_iter = 0;
  bool scores = false;
  std::string method = "rank-centrality";
  int mle_rounds = 0;
  double mle_threshold = 0.0;
  double mle_lo = MleParams{}.w_lo;
  double mle_hi = MleParams{}.w_hi;
  double mle_inner_tol = MleParams{}.inner_tol;
};

void AddRank(CLI::App& app, RankOptions& o) {
  app.add_option("--graph", o.graph, "edge-list file")->required();
  app.add_option("--obs", o.obs, "observation file")->required();
  app.add_option("--k", o.k, "number of items to select")->required();
  app.add_option("--tol", o.tol, "l1 change per step at which iteration stops");
  app.add_option("--max-iter", o.max_iter, "iteration limit (0 = adaptive)");
  app.add_flag("--scores", o.scores, "also print the normalized estimate");
  app.add_option("--method", o.method, "rank-centrality | spectral-mle | borda")
      ->check(CLI::IsMember({"rank-centrality", "spectral-mle", "borda"}));
  app.add_option("--mle-rounds", o.mle_rounds, "refinement sweeps (0 = ceil(log2 n))");
  app.add_option("--mle-threshold", o.mle_threshold, "minimum accepted coordinate change");
  app.add_option("--mle-lo", o.mle_lo, "lower end of the score bracket");
  app.add_option("--mle-hi", o.mle_hi, "upper end of the score bracket");
  app.add_option("--mle-inner-tol", o.mle_inner_tol, "1-D optimizer tolerance");
}

int RunRank(const RankOptions& o) {
  const auto g = ReadEdgeListFile(o.graph);
  const auto obs = ReadObservationsFile(o.obs);
  const PowerParams power{.tol = o.tol, .max_iter = o.max_iter};
  RankingResult result;
  switch (ParseMethod(o.method)) {
    case Method::kRankCentrality:
      result = RankCentrality(g, obs, o.k, power);
      break;
    case Method::kSpectralMle:
      result = SpectralMle(g, obs, o.k,
                           {.rounds = o.mle_rounds,
                            .w_lo = o.mle_lo,
                            .w_hi = o.mle_hi,
                            .inner_tol = o.mle_inner_tol,
                            .replace_threshold = o.mle_threshold},
                           power);
      break;
    case Method::kBorda:
      result = BordaCount(g, obs, o.k);
      break;
  }
  if (!result.converged) {
    std::cerr << "warning: power iteration stopped after " << result.iterations
              << " steps with residual " << result.residual << '\n';
  }
  for (Index i : result.top_k) std::cout << i << '\n';
  if (o.scores) {
    std::cout << "# scores\n";
    for (Index i = 0; i < result.estimate.size(); ++i) {
      std::cout << i << ' ' << Format(result.estimate[i]) << '\n';
    }
  }
  return 0;
}

// ---- bounds ----------------------------------------------------------------

struct BoundsOptions {
  std::optional<std::string> graph;
  Index n = 500;
  std::optional<double> p;
  std::uint64_t l = 1;
  double delta_k = 0.1;
  Index k = 10;
  Seed seed = 1;
  bool json = false;
  BoundConstants c;
};

void AddBounds(CLI::App& app, BoundsOptions& o) {
  app.add_option("--graph", o.graph, "edge-list file (default: sample ER(n, p))");
  app.add_option("--n", o.n, "number of items when sampling");
  app.add_option("--p", o.p, "edge probability");
  app.add_option("--l", o.l, "comparisons per edge")->required();
  app.add_option("--delta-k", o.delta_k, "separation");
  app.add_option("--k", o.k, "size of the top set the separation refers to");
  app.add_option("--seed", o.seed, "seed for the sampled graph");
  app.add_flag("--json", o.json, "emit JSON");
  app.add_option("--c1", o.c.c1);
  app.add_option("--c2", o.c.c2);
  app.add_option("--c3", o.c.c3);
  app.add_option("--c4", o.c.c4);
  app.add_option("--c5", o.c.c5);
  app.add_option("--c6", o.c.c6);
  app.add_option("--epsilon", o.c.epsilon);
}

nlohmann::json ReportJson(const ConditionReport& r) {
  nlohmann::json j;
  j["theorem"] = r.theorem;
  j["satisfied"] = r.satisfied;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["direction"] = r.direction == BoundDirection::kAtLeast ? ">=" : "<=";
  j["side_conditions"] = nlohmann::json::array();
  for (const auto& s : r.side_conditions) {
    j["side_conditions"].push_back({{"name", s.name},
                                    {"lhs", s.lhs},
                                    {"rhs", s.rhs},
                                    {"holds", s.holds}});
  }
  nlohmann::json echo = nlohmann::json::object();
  for (const auto& [key, value] : r.inputs_echo) echo[key] = value;
  j["inputs"] = echo;
  return j;
}

void PrintReport(const ConditionReport& r) {
  const bool at_least = r.direction == BoundDirection::kAtLeast;
  // For the converse, "below" means no scheme can be reliable at this budget.
  const char* status = at_least ? (r.satisfied ? "holds" : "fails")
                                : (r.satisfied ? "below" : "above");
  std::printf("%-26s %-9s lhs=%-14.6g %s rhs=%.6g\n", r.theorem.c_str(), status, r.lhs,
              at_least ? ">=" : "<=", r.rhs);
  for (const auto& s : r.side_conditions) {
    std::printf("  %-52s %-5s (%.6g vs %.6g)\n", s.name.c_str(), s.holds ? "ok" : "no",
                s.lhs, s.rhs);
  }
}

int RunBounds(const BoundsOptions& o) {
  if (!o.graph && !o.p) {
    throw Error(ErrorCode::kInvalidConfig, "bounds needs --graph or --p");
  }
  const auto g = o.graph ? ReadEdgeListFile(*o.graph) : SampleErdosRenyi(o.n, *o.p, o.seed);
  const Index n = g.num_vertices();
  if (o.k < 1 || o.k >= n) throw Error(ErrorCode::kInvalidK, "K must satisfy 1 <= K < n");
  const auto spectra = ComputeSpectra(g);

  std::vector<ConditionReport> reports;
  reports.push_back(Thm1Sufficient(g, spectra, o.l, o.delta_k, o.c));
  reports.push_back(Thm2Necessary(n, g.num_edges(), o.l, o.delta_k, o.c));
  if (o.p) reports.push_back(Thm3ErSufficient(n, *o.p, o.l, o.delta_k, o.c));
  const std::optional<bool> degrees =
      o.p ? std::optional<bool>(DegreeConcentrationCheck(g, *o.p)) : std::nullopt;

  if (o.json) {
    nlohmann::json out;
    out["k"] = o.k;
    out["delta_k"] = o.delta_k;
    out["graph"] = {{"n", n},
                    {"edges", g.num_edges()},
                    {"d_min", spectra.d_min},
                    {"d_max", spectra.d_max},
                    {"gamma", spectra.gamma},
                    {"l2inf_of_L2", spectra.l2inf_of_L2},
                    {"sqrt_n_l2inf_of_L2", std::sqrt(static_cast<double>(n)) * spectra.l2inf_of_L2}};
    out["reports"] = nlohmann::json::array();
    for (const auto& r : reports) out["reports"].push_back(ReportJson(r));
    if (degrees) out["degree_concentration"] = *degrees;
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::printf("K=%zu delta_K=%g\n", o.k, o.delta_k);
  std::printf("graph: n=%zu edges=%zu d_min=%zu d_max=%zu gamma=%.6g "
              "||L^2||_2,inf=%.6g sqrt(n)*||L^2||_2,inf=%.6g\n",
              n, g.num_edges(), spectra.d_min, spectra.d_max, spectra.gamma,
              spectra.l2inf_of_L2, std::sqrt(static_cast<double>(n)) * spectra.l2inf_of_L2);
  for (const auto& r : reports) PrintReport(r);
  if (degrees) std::printf("degree concentration: %s\n", *degrees ? "holds" : "fails");
  return 0;
}

// ---- experiment ------------------------------------------------------------

struct ExperimentOptions {
  std::optional<std::string> config;
  std::string preset = "dense";
  std::vector<std::string> sets;
  std::optional<std::string> out;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void AddExperiment(CLI::App& app, ExperimentOptions& o) {
  app.add_option("--config", o.config, "key = value configuration file");
  app.add_option("--preset", o.preset, "dense | sparse (base before --config)")
      ->check(CLI::IsMember({"dense", "sparse"}));
  app.add_option("--set", o.sets, "override any key: --set key=value (repeatable)");
  app.add_option("--out", o.out, "directory for sweep.csv, plot.dat, meta.txt");
  // Per-key override flags, applied after --config and before --set.
  for (const char* key : {"n", "k", "delta_k", "scheme", "p", "l_values", "trials",
                          "methods", "master_seed", "threads", "tol", "max_iter",
                          "mle_rounds", "mle_threshold", "mle_bracket"}) {
    std::string flag = std::string("--") + key;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    app.add_option_function<std::string>(
        flag, [&o, key](const std::string& v) { o.overrides.emplace_back(key, v); },
        std::string("override ") + key);
  }
}

int RunExperiment(const ExperimentOptions& o) {
  ExperimentConfig config =
      o.preset == "sparse" ? ExperimentConfig::Sparse() : ExperimentConfig::Dense();
  if (o.config) config = ReadConfigFile(*o.config, std::move(config));
  for (const auto& [key, value] : o.overrides) ApplyConfigValue(config, key, value);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidConfig, "--set expects key=value, got '" + kv + "'");
    }
    ApplyConfigValue(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  ValidateConfig(config);
  const SweepResult result = RunSweep(config);
  if (o.out) WriteSweepOutputs(result, *o.out);
  WriteCsv(result, std::cout);
  if (!result.failures.empty()) {
    std::cerr << result.failures.size() << " trial(s) failed; see meta.txt\n";
  }
  return 0;
}

// ---- simulate / generate-graph --------------------------------------------

struct SimulateOptions {
  Index n = 500;
  Index k = 10;
  double delta_k = 0.1;
  std::string scheme = "two-level";
  double p = 0.25;
  std::uint64_t l = 20;
  Seed seed = 1;
  bool exact = false;
  bool permute = false;
  std::string out = ".";
};

void AddSimulate(CLI::App& app, SimulateOptions& o) {
  app.add_option("--n", o.n);
  app.add_option("--k", o.k);
  app.add_option("--delta-k", o.delta_k);
  app.add_option("--scheme", o.scheme)->check(CLI::IsMember({"two-level", "linear"}));
  app.add_option("--p", o.p);
  app.add_option("--l", o.l, "comparisons per edge");
  app.add_option("--seed", o.seed);
  app.add_flag("--exact", o.exact, "store y_ij = w_i / (w_i + w_j)");
  app.add_flag("--permute", o.permute, "shuffle which items form the top group");
  app.add_option("--out", o.out, "directory for graph.txt, obs.txt, truth.txt");
}

int RunSimulate(const SimulateOptions& o) {
  ExperimentConfig config;
  config.n = o.n;
  config.k = o.k;
  config.delta_k = o.delta_k;
  config.scheme = ParseScoreScheme(o.scheme);
  config.p = o.p;
  config.exact_statistics = o.exact;
  config.permute_items = o.permute;
  config.l_values = {o.exact ? 1 : o.l};
  ValidateConfig(config);
  const auto draw = Simulate(config, o.exact ? ObservationSet::kExact : o.l, o.seed);
  std::filesystem::create_directories(o.out);
  const std::filesystem::path dir(o.out);
  WriteEdgeListFile(draw.graph, (dir / "graph.txt").string());
  WriteObservationsFile(draw.observations, (dir / "obs.txt").string());
  std::ofstream truth(dir / "truth.txt");
  if (!truth) throw Error(ErrorCode::kIoFailure, "cannot write truth.txt");
  WriteTruth(draw.truth, o.k, truth);
  std::cout << "wrote " << (dir / "graph.txt").string() << ", "
            << (dir / "obs.txt").string() << ", " << (dir / "truth.txt").string()
            << " (connectivity retries: " << draw.connected_retry_count << ")\n";
  return 0;
}

struct GenerateOptions {
  Index n = 500;
  double p = 0.25;
  Seed seed = 1;
  bool connected = false;
  std::optional<std::string> out;
};

void AddGenerate(CLI::App& app, GenerateOptions& o) {
  app.add_option("--n", o.n);
  app.add_option("--p", o.p);
  app.add_option("--seed", o.seed);
  app.add_flag("--connected", o.connected, "resample until connected");
  app.add_option("--out", o.out, "edge-list file (default: stdout)");
}

int RunGenerate(const GenerateOptions& o) {
  auto g = SampleErdosRenyi(o.n, o.p, o.seed);
  int retry = 0;
  while (o.connected && !IsConnected(g)) {
    if (++retry > kMaxConnectivityRetries) {
      throw Error(ErrorCode::kTooManyRetries, "no connected sample within the retry limit");
    }
    g = SampleErdosRenyi(o.n, o.p, DeriveSeed(o.seed, retry));
  }
  if (o.out) {
    WriteEdgeListFile(g, *o.out);
  } else {
    WriteEdgeList(g, std::cout);
  }
  return 0;
}

}  // namespace
}  // namespace rankcentral

int main(int argc, char** argv) {
  using namespace rankcentral;
  CLI::App app{"Select the K best items from noisy pairwise comparisons"};
  app.require_subcommand(1);

  RankOptions rank;
  BoundsOptions bounds;
  ExperimentOptions experiment;
  SimulateOptions simulate;
  GenerateOptions generate;
  auto* rank_cmd = app.add_subcommand("rank", "rank items from a graph and observations");
  AddRank(*rank_cmd, rank);
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate sample-complexity conditions");
  AddBounds(*bounds_cmd, bounds);
  auto* experiment_cmd = app.add_subcommand("experiment", "run a Monte Carlo sweep over L");
  AddExperiment(*experiment_cmd, experiment);
  auto* simulate_cmd = app.add_subcommand("simulate", "write one graph/observation/truth triple");
  AddSimulate(*simulate_cmd, simulate);
  auto* generate_cmd = app.add_subcommand("generate-graph", "sample an Erdos-Renyi edge list");
  AddGenerate(*generate_cmd, generate);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*rank_cmd) return RunRank(rank);
    if (*bounds_cmd) return RunBounds(bounds);
    if (*experiment_cmd) return RunExperiment(experiment);
    if (*simulate_cmd) return RunSimulate(simulate);
    if (*generate_cmd) return RunGenerate(generate);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
