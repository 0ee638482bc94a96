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

// Bradley-Terry-Luce comparison model: latent scores and the per-edge win
// fractions y_ij observed after L independent comparisons.

#ifndef RANKCENTRAL_BTL_HPP_
#define RANKCENTRAL_BTL_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankcentral/graph.hpp"
#include "rankcentral/random.hpp"

namespace rankcentral {

class PreferenceVector {
 public:
  // Bounds default to the observed min and max of `scores`.
  explicit PreferenceVector(std::vector<double> scores);
  // Throws kInvalidScores unless 0 < w_min <= scores[i] <= w_max.
  PreferenceVector(std::vector<double> scores, double w_min, double w_max);

  Index size() const { return scores_.size(); }
  double operator[](Index i) const { return scores_[i]; }
  const std::vector<double>& scores() const { return scores_; }
  double w_min() const { return w_min_; }
  double w_max() const { return w_max_; }
  double condition_number() const { return w_max_ / w_min_; }

  // Scores divided by their sum.
  std::vector<double> Normalized() const;

 private:
  std::vector<double> scores_;
  double w_min_;
  double w_max_;
};

enum class ScoreScheme { kTwoLevel, kLinear };

std::string_view ScoreSchemeName(ScoreScheme scheme);
ScoreScheme ParseScoreScheme(std::string_view name);

// Items 0..K-1 form the top group and (w_{K-1} - w_K) / w_max == delta_k.
//   two-level: w_max for the top group, w_max (1 - delta_k) for the rest.
//   linear:    top group evenly spaced over [w_max (1 - delta_k/2), w_max],
//              rest evenly spaced over [w_max/2, w_max (1 - 3 delta_k/2)];
//              a group with a single member sits at its boundary-side end.
PreferenceVector MakePlantedScores(Index n, Index k, double delta_k,
                                   ScoreScheme scheme, double w_max = 1.0);

// (w_(K) - w_(K+1)) / w_max over the descending order statistics.
double DeltaK(const PreferenceVector& w, Index k);

// Indices of the K largest true scores, ties broken by lower index.
std::vector<Index> TrueTopK(const PreferenceVector& w, Index k);

// Win fractions for one comparison graph. y is stored once per canonical
// edge (i < j); y_ji is derived as 1 - y_ij.
class ObservationSet {
 public:
  static constexpr std::uint64_t kExact = 0;

  ObservationSet(Index n, std::uint64_t comparisons, std::vector<Edge> edges,
                 std::vector<double> stats);

  Index num_vertices() const { return n_; }
  // Comparisons per edge; kExact marks the L -> infinity idealization.
  std::uint64_t comparisons() const { return comparisons_; }
  bool is_exact() const { return comparisons_ == kExact; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& stats() const { return stats_; }

  // Fraction of comparisons between i and j won by i. Throws
  // kEdgeMismatch when (i, j) was never observed.
  double y(Index i, Index j) const;

  // True when the observed edges are exactly the graph's edges.
  bool Matches(const ComparisonGraph& g) const;

 private:
  Index n_;
  std::uint64_t comparisons_;
  std::vector<Edge> edges_;
  std::vector<double> stats_;
};

// Up to this many comparisons per edge are drawn one Bernoulli trial at a
// time; beyond it a single binomial variate is drawn.
inline constexpr std::uint64_t kBernoulliLimit = 64;

// y_ij = Binomial(L, w_i / (w_i + w_j)) / L on each edge. Each edge draws
// from its own stream seeded by (seed, i, j), so results do not depend on
// iteration order.
ObservationSet SampleObservations(const ComparisonGraph& g,
                                  const PreferenceVector& w,
                                  std::uint64_t comparisons, Seed seed);

// y_ij = w_i / (w_i + w_j).
ObservationSet ExactObservations(const ComparisonGraph& g,
                                 const PreferenceVector& w);

// Text format: "n L" header (L = 0 for exact), then "i j y_ij" per edge with
// i < j and y printed to 17 significant digits.
ObservationSet ReadObservations(std::istream& in);
ObservationSet ReadObservationsFile(const std::string& path);
void WriteObservations(const ObservationSet& obs, std::ostream& out);
void WriteObservationsFile(const ObservationSet& obs, const std::string& path);

}  // namespace rankcentral

#endif  // RANKCENTRAL_BTL_HPP_
