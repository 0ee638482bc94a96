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

#include "rankcentral/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rankcentral/error.hpp"

namespace rankcentral {
namespace {

void RequireMatching(const ComparisonGraph& g, const ObservationSet& obs) {
  if (!obs.Matches(g)) {
    throw Error(ErrorCode::kEdgeMismatch,
                "observations do not cover exactly the graph's edges");
  }
}

// Win fraction of i against j read from the per-edge statistics.
double WinFraction(const ComparisonGraph& g, const ObservationSet& obs,
                   Index i, Index j) {
  const double stored = obs.stats()[g.edge_index(i, j)];
  return i < j ? stored : 1.0 - stored;
}

std::vector<double> NeighborWins(const ComparisonGraph& g,
                                 const ObservationSet& obs, Index i) {
  std::vector<double> wins;
  wins.reserve(g.degree(i));
  for (Index j : g.neighbors(i)) wins.push_back(WinFraction(g, obs, i, j));
  return wins;
}

// Derivative of the coordinate objective with respect to log x. Strictly
// decreasing in x.
double LogSlope(std::span<const Index> neighbors, std::span<const double> wins,
                double x, std::span<const double> scores) {
  double slope = 0.0;
  for (std::size_t t = 0; t < neighbors.size(); ++t) {
    slope += wins[t] - x / (x + scores[neighbors[t]]);
  }
  return slope;
}

std::vector<double> NormalizedToUnitSum(std::vector<double> v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= total;
  return v;
}

// Maximizer of the coordinate objective on the bracket; inputs validated
// by the caller.
double BestResponse(Index i, std::span<const double> scores,
                    const ComparisonGraph& g, const ObservationSet& obs,
                    const MleParams& params) {
  const auto neighbors = g.neighbors(i);
  const std::vector<double> wins = NeighborWins(g, obs, i);
  if (LogSlope(neighbors, wins, params.w_lo, scores) <= 0.0) return params.w_lo;
  if (LogSlope(neighbors, wins, params.w_hi, scores) >= 0.0) return params.w_hi;

  // Bisection in log x; the maximizer stays inside [lo, hi] throughout.
  double lo = std::log(params.w_lo);
  double hi = std::log(params.w_hi);
  while (std::exp(hi) - std::exp(lo) > params.inner_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (LogSlope(neighbors, wins, std::exp(mid), scores) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (std::exp(lo) + std::exp(hi));
}

}  // namespace

void ValidateMleParams(const MleParams& params) {
  if (!(params.w_lo > 0.0) || !(params.w_lo < params.w_hi) ||
      !std::isfinite(params.w_hi)) {
    throw Error(ErrorCode::kBracketInvalid,
                "MLE bracket must satisfy 0 < w_lo < w_hi");
  }
  if (params.rounds < 0) {
    throw Error(ErrorCode::kInvalidConfig, "MLE rounds must be >= 1 (0 = auto)");
  }
  if (!(params.inner_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "MLE inner_tol must be positive");
  }
  if (!(params.replace_threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "MLE replace_threshold must be non-negative");
  }
}

int ResolvedRounds(const MleParams& params, Index n) {
  if (params.rounds > 0) return params.rounds;
  return std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))));
}

double CoordinateLogLikelihood(Index i, double x, std::span<const double> scores,
                               const ComparisonGraph& g,
                               const ObservationSet& obs) {
  double acc = 0.0;
  for (Index j : g.neighbors(i)) {
    const double y = WinFraction(g, obs, i, j);
    const double denom = x + scores[j];
    if (y > 0.0) acc += y * std::log(x / denom);
    if (y < 1.0) acc += (1.0 - y) * std::log(scores[j] / denom);
  }
  return acc;
}

double TotalLogLikelihood(std::span<const double> scores,
                          const ComparisonGraph& g, const ObservationSet& obs) {
  double acc = 0.0;
  const auto& edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [i, j] = edges[e];
    const double y = obs.stats()[e];
    const double denom = scores[i] + scores[j];
    if (y > 0.0) acc += y * std::log(scores[i] / denom);
    if (y < 1.0) acc += (1.0 - y) * std::log(scores[j] / denom);
  }
  return acc;
}

double CoordinateMleUpdate(Index i, std::span<const double> scores,
                           const ComparisonGraph& g, const ObservationSet& obs,
                           const MleParams& params) {
  ValidateMleParams(params);
  if (i >= g.num_vertices() || scores.size() != g.num_vertices()) {
    throw Error(ErrorCode::kIndexOutOfRange, "coordinate or score length invalid");
  }
  RequireMatching(g, obs);
  return BestResponse(i, scores, g, obs, params);
}

RankingResult SpectralMle(const ComparisonGraph& g, const ObservationSet& obs,
                          Index k, const MleParams& mle,
                          const PowerParams& power,
                          std::vector<double>* trace) {
  ValidateMleParams(mle);
  RankingResult spectral = RankCentrality(g, obs, k, power);

  const double peak =
      *std::max_element(spectral.estimate.begin(), spectral.estimate.end());
  std::vector<double> scores(spectral.estimate.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = std::clamp(spectral.estimate[i] * (mle.w_hi / peak), mle.w_lo,
                           mle.w_hi);
  }

  if (trace != nullptr) {
    trace->clear();
    trace->push_back(TotalLogLikelihood(scores, g, obs));
  }
  const int rounds = ResolvedRounds(mle, g.num_vertices());
  for (int sweep = 0; sweep < rounds; ++sweep) {
    for (Index i = 0; i < scores.size(); ++i) {
      const double updated = BestResponse(i, scores, g, obs, mle);
      if (std::abs(updated - scores[i]) <= mle.replace_threshold) continue;
      if (CoordinateLogLikelihood(i, updated, scores, g, obs) <
          CoordinateLogLikelihood(i, scores[i], scores, g, obs)) {
        continue;
      }
      scores[i] = updated;
    }
    if (trace != nullptr) trace->push_back(TotalLogLikelihood(scores, g, obs));
  }

  RankingResult result;
  result.estimate = NormalizedToUnitSum(std::move(scores));
  result.top_k = TopK(result.estimate, k);
  result.iterations = spectral.iterations;
  result.residual = spectral.residual;
  result.converged = spectral.converged;
  return result;
}

RankingResult BordaCount(const ComparisonGraph& g, const ObservationSet& obs,
                         Index k) {
  if (!IsConnected(g)) {
    throw Error(ErrorCode::kDisconnectedGraph,
                "Borda counting requires a connected comparison graph");
  }
  if (k < 1 || k >= g.num_vertices()) {
    throw Error(ErrorCode::kInvalidK, "K must satisfy 1 <= K < n");
  }
  RequireMatching(g, obs);
  std::vector<double> rate(g.num_vertices(), 0.0);
  for (Index i = 0; i < rate.size(); ++i) {
    double wins = 0.0;
    for (Index j : g.neighbors(i)) wins += WinFraction(g, obs, i, j);
    rate[i] = wins / static_cast<double>(g.degree(i));
  }
  RankingResult result;
  result.estimate = NormalizedToUnitSum(std::move(rate));
  result.top_k = TopK(result.estimate, k);
  result.converged = true;
  return result;
}

}  // namespace rankcentral
