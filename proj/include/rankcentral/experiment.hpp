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

// Monte Carlo sweeps over the per-edge comparison count L: sample a
// connected Erdos-Renyi graph, plant separated scores, draw observations,
// rank, and score the result against the planted truth.

#ifndef RANKCENTRAL_EXPERIMENT_HPP_
#define RANKCENTRAL_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankcentral/baselines.hpp"
#include "rankcentral/bounds.hpp"
#include "rankcentral/btl.hpp"
#include "rankcentral/random.hpp"
#include "rankcentral/spectral_ranker.hpp"

namespace rankcentral {

enum class Method { kRankCentrality, kSpectralMle, kBorda };

std::string_view MethodName(Method method);
Method ParseMethod(std::string_view name);

inline constexpr int kMaxConnectivityRetries = 100;

struct ExperimentConfig {
  Index n = 500;
  Index k = 10;
  double delta_k = 0.1;
  ScoreScheme scheme = ScoreScheme::kTwoLevel;
  double w_max = 1.0;
  double p = 0.25;
  std::vector<std::uint64_t> l_values{5, 10, 20, 40, 80, 160};
  int trials = 200;
  std::vector<Method> methods{Method::kRankCentrality, Method::kSpectralMle};
  Seed master_seed = 1;
  // Use y_ij = w_i / (w_i + w_j) instead of sampling.
  bool exact_statistics = false;
  // Randomly relabel items each trial so that index order carries no
  // information about the planted ranking.
  bool permute_items = true;
  PowerParams power;
  MleParams mle;
  // When set, the MLE bracket is the planted [w_min, w_max] of each trial
  // and mle.w_lo / mle.w_hi are ignored.
  bool mle_bracket_from_truth = true;
  BoundConstants constants;
  // Worker threads; 0 uses the hardware concurrency. Does not affect output.
  int threads = 0;
  bool retain_records = true;

  // Dense-regime protocol: p = 0.25, L in {5, ..., 160}.
  static ExperimentConfig Dense();
  // Sparse-regime protocol: p = 0.025, L in {20, ..., 640}.
  static ExperimentConfig Sparse();
};

// Throws kInvalidConfig.
void ValidateConfig(const ExperimentConfig& config);

// Applies one `key = value` setting. Lists are comma separated. Throws
// kInvalidConfig for unknown keys and kParseError for malformed values.
void ApplyConfigValue(ExperimentConfig& config, std::string_view key,
                      std::string_view value);

// Key-value text; '#' starts a comment line. Keys not present keep the
// values from `base`.
ExperimentConfig ReadConfig(std::istream& in, ExperimentConfig base = {});
ExperimentConfig ReadConfigFile(const std::string& path,
                                ExperimentConfig base = {});
// Every key, including defaulted ones; readable by ReadConfig.
void WriteConfig(const ExperimentConfig& config, std::ostream& out);

struct TrialRecord {
  Method method = Method::kRankCentrality;
  std::uint64_t comparisons = 0;
  int trial_index = 0;
  Seed seed = 0;
  double linf = 0.0;
  double l2 = 0.0;
  bool success = false;
  std::uint64_t iterations = 0;
  bool converged = false;
  int connected_retry_count = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct TrialFailure {
  Method method = Method::kRankCentrality;
  std::uint64_t comparisons = 0;
  int trial_index = 0;
  Seed seed = 0;
  std::string message;
};

struct Aggregate {
  Method method = Method::kRankCentrality;
  std::uint64_t comparisons = 0;
  int trials = 0;  // completed trials
  int failed = 0;
  int nonconverged = 0;
  double mean_linf = 0.0;
  double mean_l2 = 0.0;
  double success_rate = 0.0;
  double mean_retries = 0.0;
};

struct SweepResult {
  ExperimentConfig config;
  // Ordered by method name, then L ascending.
  std::vector<Aggregate> aggregates;
  std::vector<TrialRecord> records;  // empty unless retain_records
  std::vector<TrialFailure> failures;

  const Aggregate* Find(Method method, std::uint64_t comparisons) const;
};

// Seed of one trial; depends on the method's name, not its list position.
Seed TrialSeed(Seed master_seed, Method method, std::uint64_t comparisons,
               int trial_index);

// Throws kTooManyRetries when more than kMaxConnectivityRetries resamples
// are needed for a connected graph.
TrialRecord RunTrial(const ExperimentConfig& config, Method method,
                     std::uint64_t comparisons, int trial_index);

// Runs every (method, L, trial) combination. Trials execute concurrently;
// failed trials are collected in `failures` without aborting the sweep.
SweepResult RunSweep(const ExperimentConfig& config);

// Means over completed records, independent of record order. Failures are
// counted per (method, L).
std::vector<Aggregate> AggregateRecords(const ExperimentConfig& config,
                                        std::vector<TrialRecord> records,
                                        const std::vector<TrialFailure>& failures);

// method,L,trials,mean_linf,mean_l2,success_rate with 10 significant digits.
void WriteCsv(const SweepResult& result, std::ostream& out);
void EmitCsv(const SweepResult& result, const std::string& path);

// One block per method, separated by blank lines, columns
// "L mean_linf success_rate".
void WritePlotData(const SweepResult& result, std::ostream& out);
void EmitPlotData(const SweepResult& result, const std::string& path);

// Config echo plus run summary.
void WriteMeta(const SweepResult& result, std::ostream& out);

// sweep.csv, plot.dat and meta.txt under `dir` (created if missing).
void WriteSweepOutputs(const SweepResult& result, const std::string& dir);

// A single (graph, observations, truth) draw.
struct SimulationDraw {
  ComparisonGraph graph;
  ObservationSet observations;
  PreferenceVector truth;
  std::vector<Index> true_top;
  int connected_retry_count = 0;
};

// Same sampling path as RunTrial; L == 0 yields exact statistics.
SimulationDraw Simulate(const ExperimentConfig& config,
                        std::uint64_t comparisons, Seed seed);

// "n K" header then one "i w_i" line per item, 17 significant digits.
void WriteTruth(const PreferenceVector& w, Index k, std::ostream& out);

}  // namespace rankcentral

#endif  // RANKCENTRAL_EXPERIMENT_HPP_
