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

#include "rankcentral/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "rankcentral/error.hpp"

namespace rankcentral {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitList(std::string_view s) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = s.find(',');
    parts.push_back(Trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return parts;
}

[[noreturn]] void BadValue(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::kParseError, "cannot parse value '" + std::string(value) +
                                          "' for key '" + std::string(key) + "'");
}

std::uint64_t ParseUnsigned(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) BadValue(key, value);
  return out;
}

double ParseDouble(std::string_view key, std::string_view value) {
  const std::string text(value);
  char* end = nullptr;
  errno = 0;
  const double out = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    BadValue(key, value);
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  BadValue(key, value);
}

std::string FormatDouble(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string Join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ",";
    out += parts[i];
  }
  return out;
}

// Canonical order for records and aggregates.
auto RecordKey(const TrialRecord& r) {
  return std::make_tuple(MethodName(r.method), r.comparisons, r.trial_index);
}

void OpenForWrite(std::ofstream& out, const std::string& path) {
  out.open(path);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path);
}

void FinishWrite(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path);
}

std::vector<Method> MethodsByName(const std::vector<Method>& methods) {
  std::vector<Method> sorted = methods;
  std::sort(sorted.begin(), sorted.end(), [](Method a, Method b) {
    return MethodName(a) < MethodName(b);
  });
  return sorted;
}

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kRankCentrality: return "rank-centrality";
    case Method::kSpectralMle: return "spectral-mle";
    case Method::kBorda: return "borda";
  }
  return "unknown";
}

Method ParseMethod(std::string_view name) {
  for (Method m : {Method::kRankCentrality, Method::kSpectralMle, Method::kBorda}) {
    if (MethodName(m) == name) return m;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown method '" + std::string(name) + "'");
}

ExperimentConfig ExperimentConfig::Dense() { return ExperimentConfig{}; }

ExperimentConfig ExperimentConfig::Sparse() {
  ExperimentConfig config;
  config.p = 0.025;
  config.l_values = {20, 40, 80, 160, 320, 640};
  return config;
}

void ValidateConfig(const ExperimentConfig& config) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, what);
  };
  if (config.n < 2) fail("n must be at least 2");
  if (config.k < 1 || config.k >= config.n) fail("K must satisfy 1 <= K < n");
  if (!(config.delta_k > 0.0 && config.delta_k < 1.0)) fail("delta_k must lie in (0, 1)");
  if (!(config.w_max > 0.0)) fail("w_max must be positive");
  if (!(config.p > 0.0 && config.p <= 1.0)) fail("p must lie in (0, 1]");
  if (config.trials < 1) fail("trials must be at least 1");
  if (config.l_values.empty()) fail("l_values must be non-empty");
  for (std::size_t i = 0; i < config.l_values.size(); ++i) {
    if (config.l_values[i] < 1) fail("every L must be at least 1");
    if (i > 0 && config.l_values[i] <= config.l_values[i - 1]) {
      fail("l_values must be strictly increasing");
    }
  }
  if (config.methods.empty()) fail("at least one method is required");
  const auto sorted = MethodsByName(config.methods);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail("methods must not repeat");
  }
  if (!(config.power.tol > 0.0)) fail("tol must be positive");
  if (config.threads < 0) fail("threads must be non-negative");
  if (!config.mle_bracket_from_truth) ValidateMleParams(config.mle);
  ValidateConstants(config.constants);
}

void ApplyConfigValue(ExperimentConfig& config, std::string_view key,
                      std::string_view value) {
  key = Trim(key);
  value = Trim(value);
  if (key == "n") {
    config.n = ParseUnsigned(key, value);
  } else if (key == "k") {
    config.k = ParseUnsigned(key, value);
  } else if (key == "delta_k") {
    config.delta_k = ParseDouble(key, value);
  } else if (key == "scheme") {
    config.scheme = ParseScoreScheme(value);
  } else if (key == "w_max") {
    config.w_max = ParseDouble(key, value);
  } else if (key == "p") {
    config.p = ParseDouble(key, value);
  } else if (key == "l_values") {
    config.l_values.clear();
    for (auto part : SplitList(value)) config.l_values.push_back(ParseUnsigned(key, part));
  } else if (key == "trials") {
    config.trials = static_cast<int>(ParseUnsigned(key, value));
  } else if (key == "methods") {
    config.methods.clear();
    for (auto part : SplitList(value)) config.methods.push_back(ParseMethod(part));
  } else if (key == "master_seed") {
    config.master_seed = ParseUnsigned(key, value);
  } else if (key == "exact_statistics") {
    config.exact_statistics = ParseBool(key, value);
  } else if (key == "permute_items") {
    config.permute_items = ParseBool(key, value);
  } else if (key == "tol") {
    config.power.tol = ParseDouble(key, value);
  } else if (key == "max_iter") {
    config.power.max_iter = ParseUnsigned(key, value);
  } else if (key == "mle_rounds") {
    config.mle.rounds = static_cast<int>(ParseUnsigned(key, value));
  } else if (key == "mle_inner_tol") {
    config.mle.inner_tol = ParseDouble(key, value);
  } else if (key == "mle_threshold") {
    config.mle.replace_threshold = ParseDouble(key, value);
  } else if (key == "mle_bracket") {
    if (value == "auto") {
      config.mle_bracket_from_truth = true;
    } else {
      const auto parts = SplitList(value);
      if (parts.size() != 2) BadValue(key, value);
      config.mle_bracket_from_truth = false;
      config.mle.w_lo = ParseDouble(key, parts[0]);
      config.mle.w_hi = ParseDouble(key, parts[1]);
    }
  } else if (key == "c1") {
    config.constants.c1 = ParseDouble(key, value);
  } else if (key == "c2") {
    config.constants.c2 = ParseDouble(key, value);
  } else if (key == "c3") {
    config.constants.c3 = ParseDouble(key, value);
  } else if (key == "c4") {
    config.constants.c4 = ParseDouble(key, value);
  } else if (key == "c5") {
    config.constants.c5 = ParseDouble(key, value);
  } else if (key == "c6") {
    config.constants.c6 = ParseDouble(key, value);
  } else if (key == "epsilon") {
    config.constants.epsilon = ParseDouble(key, value);
  } else if (key == "threads") {
    config.threads = static_cast<int>(ParseUnsigned(key, value));
  } else if (key == "retain_records") {
    config.retain_records = ParseBool(key, value);
  } else {
    throw Error(ErrorCode::kInvalidConfig, "unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig ReadConfig(std::istream& in, ExperimentConfig base) {
  ExperimentConfig config = std::move(base);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParseError,
                  "config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    ApplyConfigValue(config, text.substr(0, eq), text.substr(eq + 1));
  }
  return config;
}

ExperimentConfig ReadConfigFile(const std::string& path,
                                ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  return ReadConfig(in, std::move(base));
}

void WriteConfig(const ExperimentConfig& config, std::ostream& out) {
  std::vector<std::string> ls;
  for (auto l : config.l_values) ls.push_back(std::to_string(l));
  std::vector<std::string> ms;
  for (auto m : config.methods) ms.emplace_back(MethodName(m));
  auto d = [](double v) { return FormatDouble(v, 17); };
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  out << "n = " << config.n << '\n'
      << "k = " << config.k << '\n'
      << "delta_k = " << d(config.delta_k) << '\n'
      << "scheme = " << ScoreSchemeName(config.scheme) << '\n'
      << "w_max = " << d(config.w_max) << '\n'
      << "p = " << d(config.p) << '\n'
      << "l_values = " << Join(ls) << '\n'
      << "trials = " << config.trials << '\n'
      << "methods = " << Join(ms) << '\n'
      << "master_seed = " << config.master_seed << '\n'
      << "exact_statistics = " << b(config.exact_statistics) << '\n'
      << "permute_items = " << b(config.permute_items) << '\n'
      << "tol = " << d(config.power.tol) << '\n'
      << "max_iter = " << config.power.max_iter << '\n'
      << "mle_rounds = " << config.mle.rounds << '\n'
      << "mle_inner_tol = " << d(config.mle.inner_tol) << '\n'
      << "mle_threshold = " << d(config.mle.replace_threshold) << '\n'
      << "mle_bracket = "
      << (config.mle_bracket_from_truth
              ? std::string("auto")
              : d(config.mle.w_lo) + "," + d(config.mle.w_hi))
      << '\n'
      << "c1 = " << d(config.constants.c1) << '\n'
      << "c2 = " << d(config.constants.c2) << '\n'
      << "c3 = " << d(config.constants.c3) << '\n'
      << "c4 = " << d(config.constants.c4) << '\n'
      << "c5 = " << d(config.constants.c5) << '\n'
      << "c6 = " << d(config.constants.c6) << '\n'
      << "epsilon = " << d(config.constants.epsilon) << '\n'
      << "threads = " << config.threads << '\n'
      << "retain_records = " << b(config.retain_records) << '\n';
}

const Aggregate* SweepResult::Find(Method method, std::uint64_t comparisons) const {
  for (const Aggregate& a : aggregates) {
    if (a.method == method && a.comparisons == comparisons) return &a;
  }
  return nullptr;
}

Seed TrialSeed(Seed master_seed, Method method, std::uint64_t comparisons,
               int trial_index) {
  return DeriveSeed(master_seed, StableHash(MethodName(method)), comparisons,
                    static_cast<std::uint64_t>(trial_index));
}

SimulationDraw Simulate(const ExperimentConfig& config,
                        std::uint64_t comparisons, Seed seed) {
  int retries = 0;
  std::optional<ComparisonGraph> graph;
  while (true) {
    ComparisonGraph candidate =
        SampleErdosRenyi(config.n, config.p, DeriveSeed(seed, 1, retries));
    if (IsConnected(candidate)) {
      graph.emplace(std::move(candidate));
      break;
    }
    if (++retries > kMaxConnectivityRetries) {
      throw Error(ErrorCode::kTooManyRetries,
                  "no connected graph after " + std::to_string(kMaxConnectivityRetries) +
                      " resamples (p far below log n / n?)");
    }
  }

  const PreferenceVector planted = MakePlantedScores(
      config.n, config.k, config.delta_k, config.scheme, config.w_max);
  std::vector<double> scores = planted.scores();
  if (config.permute_items) {
    Engine engine = MakeEngine(DeriveSeed(seed, 3));
    std::shuffle(scores.begin(), scores.end(), engine);
  }
  PreferenceVector truth(std::move(scores), planted.w_min(), planted.w_max());

  ObservationSet obs = comparisons == ObservationSet::kExact
                           ? ExactObservations(*graph, truth)
                           : SampleObservations(*graph, truth, comparisons,
                                                DeriveSeed(seed, 2));
  std::vector<Index> top = TrueTopK(truth, config.k);
  return SimulationDraw{std::move(*graph), std::move(obs), std::move(truth),
                        std::move(top), retries};
}

TrialRecord RunTrial(const ExperimentConfig& config, Method method,
                     std::uint64_t comparisons, int trial_index) {
  TrialRecord record;
  record.method = method;
  record.comparisons = comparisons;
  record.trial_index = trial_index;
  record.seed = TrialSeed(config.master_seed, method, comparisons, trial_index);

  const SimulationDraw draw = Simulate(
      config, config.exact_statistics ? ObservationSet::kExact : comparisons,
      record.seed);
  record.connected_retry_count = draw.connected_retry_count;

  RankingResult result;
  switch (method) {
    case Method::kRankCentrality:
      result = RankCentrality(draw.graph, draw.observations, config.k, config.power);
      break;
    case Method::kSpectralMle: {
      MleParams mle = config.mle;
      if (config.mle_bracket_from_truth) {
        mle.w_lo = draw.truth.w_min();
        mle.w_hi = draw.truth.w_max();
      }
      result = SpectralMle(draw.graph, draw.observations, config.k, mle,
                           config.power);
      break;
    }
    case Method::kBorda:
      result = BordaCount(draw.graph, draw.observations, config.k);
      break;
  }
  record.linf = LinfError(result.estimate, draw.truth);
  record.l2 = L2Error(result.estimate, draw.truth);
  record.success = TopKSuccess(result, draw.true_top);
  record.iterations = result.iterations;
  record.converged = result.converged;
  return record;
}

std::vector<Aggregate> AggregateRecords(const ExperimentConfig& config,
                                        std::vector<TrialRecord> records,
                                        const std::vector<TrialFailure>& failures) {
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              return RecordKey(a) < RecordKey(b);
            });
  std::vector<Aggregate> out;
  for (Method method : MethodsByName(config.methods)) {
    for (std::uint64_t l : config.l_values) {
      Aggregate agg;
      agg.method = method;
      agg.comparisons = l;
      double linf = 0.0;
      double l2 = 0.0;
      double retries = 0.0;
      int successes = 0;
      for (const TrialRecord& r : records) {
        if (r.method != method || r.comparisons != l) continue;
        ++agg.trials;
        linf += r.linf;
        l2 += r.l2;
        retries += r.connected_retry_count;
        successes += r.success ? 1 : 0;
        agg.nonconverged += r.converged ? 0 : 1;
      }
      for (const TrialFailure& f : failures) {
        if (f.method == method && f.comparisons == l) ++agg.failed;
      }
      if (agg.trials > 0) {
        const double count = static_cast<double>(agg.trials);
        agg.mean_linf = linf / count;
        agg.mean_l2 = l2 / count;
        agg.success_rate = static_cast<double>(successes) / count;
        agg.mean_retries = retries / count;
      }
      out.push_back(agg);
    }
  }
  return out;
}

SweepResult RunSweep(const ExperimentConfig& config) {
  ValidateConfig(config);
  struct Task {
    Method method;
    std::uint64_t comparisons;
    int trial_index;
  };
  std::vector<Task> tasks;
  for (Method m : config.methods) {
    for (std::uint64_t l : config.l_values) {
      for (int t = 0; t < config.trials; ++t) tasks.push_back({m, l, t});
    }
  }

  std::vector<std::optional<TrialRecord>> slots(tasks.size());
  std::vector<TrialFailure> failures;
  std::mutex failure_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < tasks.size(); idx = next++) {
      const Task& task = tasks[idx];
      try {
        slots[idx] = RunTrial(config, task.method, task.comparisons, task.trial_index);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failures.push_back(TrialFailure{
            task.method, task.comparisons, task.trial_index,
            TrialSeed(config.master_seed, task.method, task.comparisons,
                      task.trial_index),
            e.what()});
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(
      config.threads > 0 ? static_cast<std::size_t>(config.threads) : hw,
      tasks.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::sort(failures.begin(), failures.end(),
            [](const TrialFailure& a, const TrialFailure& b) {
              return std::make_tuple(MethodName(a.method), a.comparisons, a.trial_index) <
                     std::make_tuple(MethodName(b.method), b.comparisons, b.trial_index);
            });
  std::vector<TrialRecord> records;
  records.reserve(slots.size());
  for (auto& slot : slots) {
    if (slot) records.push_back(*slot);
  }
  SweepResult result;
  result.config = config;
  result.aggregates = AggregateRecords(config, records, failures);
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              return RecordKey(a) < RecordKey(b);
            });
  if (config.retain_records) result.records = std::move(records);
  result.failures = std::move(failures);
  return result;
}

void WriteCsv(const SweepResult& result, std::ostream& out) {
  out << "method,L,trials,mean_linf,mean_l2,success_rate\n";
  for (const Aggregate& a : result.aggregates) {
    out << MethodName(a.method) << ',' << a.comparisons << ',' << a.trials << ','
        << FormatDouble(a.mean_linf, 10) << ',' << FormatDouble(a.mean_l2, 10)
        << ',' << FormatDouble(a.success_rate, 10) << '\n';
  }
}

void EmitCsv(const SweepResult& result, const std::string& path) {
  std::ofstream out;
  OpenForWrite(out, path);
  WriteCsv(result, out);
  FinishWrite(out, path);
}

void WritePlotData(const SweepResult& result, std::ostream& out) {
  bool first = true;
  for (Method method : MethodsByName(result.config.methods)) {
    if (!first) out << '\n';
    first = false;
    out << "# " << MethodName(method) << '\n' << "# L mean_linf success_rate\n";
    for (const Aggregate& a : result.aggregates) {
      if (a.method != method) continue;
      out << a.comparisons << ' ' << FormatDouble(a.mean_linf, 10) << ' '
          << FormatDouble(a.success_rate, 10) << '\n';
    }
  }
}

void EmitPlotData(const SweepResult& result, const std::string& path) {
  std::ofstream out;
  OpenForWrite(out, path);
  WritePlotData(result, out);
  FinishWrite(out, path);
}

void WriteMeta(const SweepResult& result, std::ostream& out) {
  const ExperimentConfig& config = result.config;
  out << "# rankcentral sweep configuration (all keys, defaults resolved below)\n";
  WriteConfig(config, out);
  out << "# resolved: mle_rounds_effective = "
      << ResolvedRounds(config.mle, config.n) << '\n'
      << "# resolved: mle_bracket_effective = "
      << (config.mle_bracket_from_truth
              ? "planted [w_min, w_max] of each trial"
              : FormatDouble(config.mle.w_lo, 17) + "," +
                    FormatDouble(config.mle.w_hi, 17))
      << '\n'
      << "# resolved: max_iter_effective = "
      << (config.power.max_iter == 0
              ? std::string("adaptive, cap ") + std::to_string(kIterationCap)
              : std::to_string(config.power.max_iter))
      << '\n'
      << "# error gauge: estimate and truth normalized to unit sum; "
         "linf relative to max normalized truth\n"
      << "# connectivity: graphs resampled until connected, at most "
      << kMaxConnectivityRetries << " resamples\n";
  int failed = 0;
  int nonconverged = 0;
  for (const Aggregate& a : result.aggregates) {
    failed += a.failed;
    nonconverged += a.nonconverged;
  }
  out << "# summary: failed_trials = " << failed
      << ", nonconverged_trials = " << nonconverged << '\n';
  for (const Aggregate& a : result.aggregates) {
    out << "# summary: " << MethodName(a.method) << " L=" << a.comparisons
        << " mean_retries = " << FormatDouble(a.mean_retries, 10) << '\n';
  }
  for (const TrialFailure& f : result.failures) {
    out << "# failure: " << MethodName(f.method) << " L=" << f.comparisons
        << " trial=" << f.trial_index << " seed=" << f.seed << " : " << f.message
        << '\n';
  }
}

void WriteSweepOutputs(const SweepResult& result, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + dir + ": " + ec.message());
  const std::filesystem::path base(dir);
  EmitCsv(result, (base / "sweep.csv").string());
  EmitPlotData(result, (base / "plot.dat").string());
  const std::string meta_path = (base / "meta.txt").string();
  std::ofstream meta;
  OpenForWrite(meta, meta_path);
  WriteMeta(result, meta);
  FinishWrite(meta, meta_path);
}

void WriteTruth(const PreferenceVector& w, Index k, std::ostream& out) {
  out << w.size() << ' ' << k << '\n';
  for (Index i = 0; i < w.size(); ++i) {
    out << i << ' ' << FormatDouble(w[i], 17) << '\n';
  }
}

}  // namespace rankcentral
