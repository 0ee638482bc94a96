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

#include "rankcentral/btl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rankcentral/error.hpp"

namespace rankcentral {
namespace {

void ValidateScores(const std::vector<double>& scores, double w_min,
                    double w_max) {
  if (scores.empty()) throw Error(ErrorCode::kInvalidScores, "empty score vector");
  if (!(w_min > 0.0) || !(w_min <= w_max) || !std::isfinite(w_max)) {
    throw Error(ErrorCode::kInvalidScores, "bounds must satisfy 0 < w_min <= w_max");
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!(scores[i] >= w_min && scores[i] <= w_max)) {
      throw Error(ErrorCode::kInvalidScores,
                  "score " + std::to_string(i) + " outside [w_min, w_max]");
    }
  }
}

void ValidateK(Index n, Index k) {
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::kInvalidK, "K must satisfy 1 <= K < n (K=" +
                                          std::to_string(k) + ", n=" +
                                          std::to_string(n) + ")");
  }
}

}  // namespace

PreferenceVector::PreferenceVector(std::vector<double> scores)
    : scores_(std::move(scores)), w_min_(0.0), w_max_(0.0) {
  if (scores_.empty()) throw Error(ErrorCode::kInvalidScores, "empty score vector");
  auto [lo, hi] = std::minmax_element(scores_.begin(), scores_.end());
  w_min_ = *lo;
  w_max_ = *hi;
  ValidateScores(scores_, w_min_, w_max_);
}

PreferenceVector::PreferenceVector(std::vector<double> scores, double w_min,
                                   double w_max)
    : scores_(std::move(scores)), w_min_(w_min), w_max_(w_max) {
  ValidateScores(scores_, w_min_, w_max_);
}

std::vector<double> PreferenceVector::Normalized() const {
  const double total = std::accumulate(scores_.begin(), scores_.end(), 0.0);
  std::vector<double> out(scores_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = scores_[i] / total;
  return out;
}

std::string_view ScoreSchemeName(ScoreScheme scheme) {
  return scheme == ScoreScheme::kTwoLevel ? "two-level" : "linear";
}

ScoreScheme ParseScoreScheme(std::string_view name) {
  if (name == "two-level") return ScoreScheme::kTwoLevel;
  if (name == "linear") return ScoreScheme::kLinear;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown score scheme '" + std::string(name) + "'");
}

PreferenceVector MakePlantedScores(Index n, Index k, double delta_k,
                                   ScoreScheme scheme, double w_max) {
  ValidateK(n, k);
  if (!(delta_k > 0.0 && delta_k < 1.0)) {
    throw Error(ErrorCode::kInvalidDelta, "delta_K must lie in (0, 1)");
  }
  if (!(w_max > 0.0)) {
    throw Error(ErrorCode::kInvalidScores, "w_max must be positive");
  }
  std::vector<double> w(n);
  if (scheme == ScoreScheme::kTwoLevel) {
    for (Index i = 0; i < n; ++i) w[i] = i < k ? w_max : w_max * (1.0 - delta_k);
    return PreferenceVector(std::move(w), w_max * (1.0 - delta_k), w_max);
  }

  // The lower group spans [w_max/2, w_max(1 - 3 delta/2)], which is empty
  // once delta exceeds 1/3.
  if (delta_k > 1.0 / 3.0) {
    throw Error(ErrorCode::kInvalidDelta,
                "the linear scheme requires delta_K <= 1/3");
  }
  const double top_low = w_max * (1.0 - delta_k / 2.0);
  const double rest_high = w_max * (1.0 - 1.5 * delta_k);
  const double rest_low = w_max / 2.0;
  for (Index i = 0; i < k; ++i) {
    w[i] = k == 1 ? top_low
                  : w_max - (w_max - top_low) * static_cast<double>(i) /
                                static_cast<double>(k - 1);
  }
  // Pin both boundary members so the gap is exactly delta_k * w_max.
  w[k - 1] = top_low;
  const Index rest = n - k;
  for (Index r = 0; r < rest; ++r) {
    w[k + r] = rest == 1 ? rest_high
                         : rest_high - (rest_high - rest_low) *
                                           static_cast<double>(r) /
                                           static_cast<double>(rest - 1);
  }
  if (rest > 1) w[n - 1] = rest_low;
  return PreferenceVector(std::move(w), rest_low, w_max);
}

double DeltaK(const PreferenceVector& w, Index k) {
  ValidateK(w.size(), k);
  std::vector<double> sorted = w.scores();
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return (sorted[k - 1] - sorted[k]) / w.w_max();
}

std::vector<Index> TrueTopK(const PreferenceVector& w, Index k) {
  if (k < 1 || k > w.size()) throw Error(ErrorCode::kInvalidK, "K out of range");
  std::vector<Index> order(w.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return w[a] > w[b]; });
  order.resize(k);
  return order;
}

ObservationSet::ObservationSet(Index n, std::uint64_t comparisons,
                               std::vector<Edge> edges,
                               std::vector<double> stats)
    : n_(n),
      comparisons_(comparisons),
      edges_(std::move(edges)),
      stats_(std::move(stats)) {
  if (edges_.size() != stats_.size()) {
    throw Error(ErrorCode::kSizeMismatch, "one statistic per edge required");
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.second >= n_) {
      throw Error(ErrorCode::kIndexOutOfRange, "observation edge outside [0, n)");
    }
    if (!(edge.first < edge.second)) {
      throw Error(ErrorCode::kParseError,
                  "observation edges must be stored with i < j");
    }
    if (e > 0 && !(edges_[e - 1] < edge)) {
      throw Error(ErrorCode::kParseError,
                  "observation edges must be sorted and unique");
    }
    if (!(stats_[e] >= 0.0 && stats_[e] <= 1.0)) {
      throw Error(ErrorCode::kInvalidScores, "y_ij must lie in [0, 1]");
    }
  }
}

double ObservationSet::y(Index i, Index j) const {
  const Edge key{std::min(i, j), std::max(i, j)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (i == j || it == edges_.end() || *it != key) {
    throw Error(ErrorCode::kEdgeMismatch,
                "no observation for pair (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
  }
  const double stored = stats_[static_cast<std::size_t>(it - edges_.begin())];
  return i < j ? stored : 1.0 - stored;
}

bool ObservationSet::Matches(const ComparisonGraph& g) const {
  return n_ == g.num_vertices() && edges_ == g.edges();
}

ObservationSet SampleObservations(const ComparisonGraph& g,
                                  const PreferenceVector& w,
                                  std::uint64_t comparisons, Seed seed) {
  if (comparisons < 1) {
    throw Error(ErrorCode::kInvalidL, "L must be at least 1");
  }
  if (w.size() != g.num_vertices()) {
    throw Error(ErrorCode::kLengthMismatch, "score vector length differs from n");
  }
  const auto& edges = g.edges();
  std::vector<double> stats(edges.size());
  const double inv_l = 1.0 / static_cast<double>(comparisons);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [i, j] = edges[e];
    const double p = w[i] / (w[i] + w[j]);
    SplitMix64 stream(DeriveSeed(seed, i, j));
    std::uint64_t wins = 0;
    if (comparisons <= kBernoulliLimit) {
      std::bernoulli_distribution coin(p);
      for (std::uint64_t t = 0; t < comparisons; ++t) wins += coin(stream);
    } else {
      std::binomial_distribution<std::uint64_t> binom(comparisons, p);
      wins = binom(stream);
    }
    stats[e] = static_cast<double>(wins) * inv_l;
  }
  return ObservationSet(g.num_vertices(), comparisons, edges, std::move(stats));
}

ObservationSet ExactObservations(const ComparisonGraph& g,
                                 const PreferenceVector& w) {
  if (w.size() != g.num_vertices()) {
    throw Error(ErrorCode::kLengthMismatch, "score vector length differs from n");
  }
  const auto& edges = g.edges();
  std::vector<double> stats(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    stats[e] = w[edges[e].first] / (w[edges[e].first] + w[edges[e].second]);
  }
  return ObservationSet(g.num_vertices(), ObservationSet::kExact, edges,
                        std::move(stats));
}

ObservationSet ReadObservations(std::istream& in) {
  std::string line;
  bool have_header = false;
  Index n = 0;
  std::uint64_t comparisons = 0;
  std::vector<Edge> edges;
  std::vector<double> stats;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    if (!have_header) {
      long long nn = -1;
      long long ll = -1;
      if (!(fields >> nn >> ll) || nn < 2 || ll < 0) {
        throw Error(ErrorCode::kParseError, "observation header must be 'n L'");
      }
      n = static_cast<Index>(nn);
      comparisons = static_cast<std::uint64_t>(ll);
      have_header = true;
      continue;
    }
    long long i = -1;
    long long j = -1;
    double y = 0.0;
    if (!(fields >> i >> j >> y) || i < 0 || j < 0) {
      throw Error(ErrorCode::kParseError,
                  "observation line " + std::to_string(line_no) + ": expected 'i j y'");
    }
    if (!(i < j)) {
      throw Error(ErrorCode::kParseError,
                  "observation line " + std::to_string(line_no) + ": requires i < j");
    }
    edges.push_back(Edge{static_cast<Index>(i), static_cast<Index>(j)});
    stats.push_back(y);
  }
  if (!have_header) throw Error(ErrorCode::kParseError, "observation file is empty");
  // Files need not list edges in canonical order.
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  std::vector<Edge> sorted_edges(edges.size());
  std::vector<double> sorted_stats(edges.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    sorted_edges[r] = edges[order[r]];
    sorted_stats[r] = stats[order[r]];
  }
  return ObservationSet(n, comparisons, std::move(sorted_edges),
                        std::move(sorted_stats));
}

ObservationSet ReadObservationsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  return ReadObservations(in);
}

void WriteObservations(const ObservationSet& obs, std::ostream& out) {
  out << obs.num_vertices() << ' ' << obs.comparisons() << '\n';
  char buf[64];
  for (std::size_t e = 0; e < obs.edges().size(); ++e) {
    std::snprintf(buf, sizeof(buf), "%.17g", obs.stats()[e]);
    out << obs.edges()[e].first << ' ' << obs.edges()[e].second << ' ' << buf
        << '\n';
  }
}

void WriteObservationsFile(const ObservationSet& obs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path);
  WriteObservations(obs, out);
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path);
}

}  // namespace rankcentral
