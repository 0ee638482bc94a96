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

// Estimation-error metrics, the top-K success indicator, and evaluators for
// the sample-complexity conditions that govern reliable top-K recovery.
// All logarithms are natural.

#ifndef RANKCENTRAL_BOUNDS_HPP_
#define RANKCENTRAL_BOUNDS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankcentral/btl.hpp"
#include "rankcentral/graph.hpp"
#include "rankcentral/spectral_ranker.hpp"

namespace rankcentral {

// Both vectors are mapped to the unit-sum simplex first; the error is then
// relative to the largest normalized true score.
double LinfError(std::span<const double> estimate, std::span<const double> truth);
double L2Error(std::span<const double> estimate, std::span<const double> truth);
double LinfError(std::span<const double> estimate, const PreferenceVector& w);
double L2Error(std::span<const double> estimate, const PreferenceVector& w);

// Set equality between the reported top-K and the true top-K. Throws
// kSizeMismatch when the sizes differ.
bool TopKSuccess(const RankingResult& result, std::span<const Index> true_top);

// The unnamed numerical constants of the achievability and converse
// conditions. Defaults are all 1 with epsilon = 1/4.
struct BoundConstants {
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
  double c4 = 1.0;
  double c5 = 1.0;
  double c6 = 1.0;
  double epsilon = 0.25;
};

// Throws kInvalidConstant.
void ValidateConstants(const BoundConstants& c);

enum class BoundDirection {
  kAtLeast,  // sufficient condition: lhs >= rhs
  kAtMost,   // necessary condition: lhs <= rhs flags an unreliable budget
};

struct Inequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  BoundDirection direction = BoundDirection::kAtLeast;
  bool holds = false;
};

struct ConditionReport {
  std::string theorem;
  bool satisfied = false;
  // Main inequality; side conditions (hypotheses) are listed separately.
  double lhs = 0.0;
  double rhs = 0.0;
  BoundDirection direction = BoundDirection::kAtLeast;
  std::vector<Inequality> side_conditions;
  std::vector<std::pair<std::string, double>> inputs_echo;

  // Recomputes every `holds` flag and `satisfied` from the stored numbers.
  bool Recheck() const;
};

// L|E| >= (c2 + c3 sqrt(n) d_max / (gamma d_min) ||L^2||_{2,inf})^2
//         |E| log n / (d_max delta_k^2)
// with hypothesis L >= ceil(c1 (log n / d_max) (d_max / (gamma d_min))^2).
ConditionReport Thm1Sufficient(const ComparisonGraph& g,
                               const GraphSpectra& spectra,
                               std::uint64_t comparisons, double delta_k,
                               const BoundConstants& c = {});

// Converse: L|E| <= c4 (1 - eps) n log n / delta_k^2 means no ranking scheme
// is reliable for every score vector with separation delta_k. `satisfied`
// reports that the budget is below this threshold.
ConditionReport Thm2Necessary(Index n, std::uint64_t num_edges,
                              std::uint64_t comparisons, double delta_k,
                              const BoundConstants& c = {});

// Erdos-Renyi achievability: p >= c4 sqrt(log n / n),
// L >= ceil(c5 log n / (n p)), and n^2 p L / 2 >= c6 n log n / delta_k^2.
// c4 < 1 is rejected (kInvalidConstant).
ConditionReport Thm3ErSufficient(Index n, double p, std::uint64_t comparisons,
                                 double delta_k, const BoundConstants& c = {});

// Every degree in [n q / 2, 3 n q / 2].
bool DegreeConcentrationCheck(const ComparisonGraph& g, double q);

}  // namespace rankcentral

#endif  // RANKCENTRAL_BOUNDS_HPP_
