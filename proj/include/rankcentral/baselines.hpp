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

// Reference rankers: Spectral MLE (Rank Centrality followed by cyclic
// coordinate-wise likelihood maximization) and degree-normalized Borda
// counting.

#ifndef RANKCENTRAL_BASELINES_HPP_
#define RANKCENTRAL_BASELINES_HPP_

#include <span>
#include <vector>

#include "rankcentral/btl.hpp"
#include "rankcentral/graph.hpp"
#include "rankcentral/spectral_ranker.hpp"

namespace rankcentral {

struct MleParams {
  // Refinement sweeps; 0 resolves to ceil(log2 n).
  int rounds = 0;
  double w_lo = 0.01;
  double w_hi = 1.0;
  double inner_tol = 1e-8;
  double replace_threshold = 0.0;
};

// Throws kBracketInvalid or kInvalidConfig.
void ValidateMleParams(const MleParams& params);
int ResolvedRounds(const MleParams& params, Index n);

// sum over neighbors j of y_ij log(x/(x+w_j)) + (1-y_ij) log(w_j/(x+w_j)).
double CoordinateLogLikelihood(Index i, double x, std::span<const double> scores,
                               const ComparisonGraph& g,
                               const ObservationSet& obs);

// Full BTL log-likelihood, each edge counted once.
double TotalLogLikelihood(std::span<const double> scores,
                          const ComparisonGraph& g, const ObservationSet& obs);

// argmax of CoordinateLogLikelihood(i, x, ...) over x in [w_lo, w_hi], to
// within inner_tol.
double CoordinateMleUpdate(Index i, std::span<const double> scores,
                           const ComparisonGraph& g, const ObservationSet& obs,
                           const MleParams& params);

// Rank Centrality estimate rescaled so its maximum is w_hi and clamped into
// the bracket, then `rounds` cyclic coordinate sweeps. An update is kept
// when it moves the coordinate by more than replace_threshold and does not
// lower the coordinate likelihood. When `trace` is given it receives the
// total log-likelihood before the first sweep and after each sweep.
RankingResult SpectralMle(const ComparisonGraph& g, const ObservationSet& obs,
                          Index k, const MleParams& mle = {},
                          const PowerParams& power = {},
                          std::vector<double>* trace = nullptr);

// score_i = (1/d_i) sum_j y_ij, normalized to sum to one.
RankingResult BordaCount(const ComparisonGraph& g, const ObservationSet& obs,
                         Index k);

}  // namespace rankcentral

#endif  // RANKCENTRAL_BASELINES_HPP_
