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

#include "rankcentral/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "rankcentral/error.hpp"

namespace rankcentral {
namespace {

std::vector<double> ToSimplex(std::span<const double> v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / total;
  return out;
}

void RequireSameLength(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorCode::kLengthMismatch,
                "estimate and truth must have the same non-zero length");
  }
}

void RequireDelta(double delta_k) {
  if (!(delta_k > 0.0) || !std::isfinite(delta_k)) {
    throw Error(ErrorCode::kInvalidDelta, "delta_K must be positive");
  }
}

bool Holds(BoundDirection direction, double lhs, double rhs) {
  return direction == BoundDirection::kAtLeast ? lhs >= rhs : lhs <= rhs;
}

Inequality MakeInequality(std::string name, double lhs, double rhs,
                          BoundDirection direction) {
  return Inequality{std::move(name), lhs, rhs, direction,
                    Holds(direction, lhs, rhs)};
}

void EchoConstants(ConditionReport& report, const BoundConstants& c) {
  report.inputs_echo.insert(report.inputs_echo.end(),
                            {{"c1", c.c1},
                             {"c2", c.c2},
                             {"c3", c.c3},
                             {"c4", c.c4},
                             {"c5", c.c5},
                             {"c6", c.c6},
                             {"epsilon", c.epsilon}});
}

}  // namespace

double LinfError(std::span<const double> estimate, std::span<const double> truth) {
  RequireSameLength(estimate, truth);
  const std::vector<double> est = ToSimplex(estimate);
  const std::vector<double> ref = ToSimplex(truth);
  double worst = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    worst = std::max(worst, std::abs(est[i] - ref[i]));
  }
  return worst / *std::max_element(ref.begin(), ref.end());
}

double L2Error(std::span<const double> estimate, std::span<const double> truth) {
  RequireSameLength(estimate, truth);
  const std::vector<double> est = ToSimplex(estimate);
  const std::vector<double> ref = ToSimplex(truth);
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    diff += (est[i] - ref[i]) * (est[i] - ref[i]);
    norm += ref[i] * ref[i];
  }
  return std::sqrt(diff) / std::sqrt(norm);
}

double LinfError(std::span<const double> estimate, const PreferenceVector& w) {
  return LinfError(estimate, std::span<const double>(w.scores()));
}

double L2Error(std::span<const double> estimate, const PreferenceVector& w) {
  return L2Error(estimate, std::span<const double>(w.scores()));
}

bool TopKSuccess(const RankingResult& result, std::span<const Index> true_top) {
  if (result.top_k.size() != true_top.size()) {
    throw Error(ErrorCode::kSizeMismatch, "top-K sets differ in size");
  }
  const std::set<Index> reported(result.top_k.begin(), result.top_k.end());
  const std::set<Index> expected(true_top.begin(), true_top.end());
  return reported == expected;
}

void ValidateConstants(const BoundConstants& c) {
  for (double v : {c.c1, c.c2, c.c3, c.c4, c.c5, c.c6}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidConstant, "bound constants must be positive");
    }
  }
  if (!(c.epsilon > 0.0 && c.epsilon < 0.5)) {
    throw Error(ErrorCode::kInvalidConstant, "epsilon must lie in (0, 1/2)");
  }
}

bool ConditionReport::Recheck() const {
  bool all = Holds(direction, lhs, rhs);
  for (const Inequality& side : side_conditions) {
    if (Holds(side.direction, side.lhs, side.rhs) != side.holds) return false;
    all = all && side.holds;
  }
  return all == satisfied;
}

ConditionReport Thm1Sufficient(const ComparisonGraph& g,
                               const GraphSpectra& spectra,
                               std::uint64_t comparisons, double delta_k,
                               const BoundConstants& c) {
  RequireDelta(delta_k);
  ValidateConstants(c);
  if (!(spectra.gamma > 0.0) || spectra.d_min == 0) {
    throw Error(ErrorCode::kDisconnectedGraph,
                "sufficient condition needs gamma > 0 and d_min >= 1");
  }
  const double n = static_cast<double>(g.num_vertices());
  const double edges = static_cast<double>(g.num_edges());
  const double d_max = static_cast<double>(spectra.d_max);
  const double d_min = static_cast<double>(spectra.d_min);
  const double log_n = std::log(n);
  const double spread = d_max / (spectra.gamma * d_min);

  ConditionReport report;
  report.theorem = "general-graph sufficient";
  report.direction = BoundDirection::kAtLeast;
  report.lhs = static_cast<double>(comparisons) * edges;
  const double factor = c.c2 + c.c3 * std::sqrt(n) * spread * spectra.l2inf_of_L2;
  report.rhs = factor * factor * edges * log_n / (d_max * delta_k * delta_k);

  report.side_conditions.push_back(MakeInequality(
      "L >= ceil(c1 (log n / d_max) (d_max / (gamma d_min))^2)",
      static_cast<double>(comparisons),
      std::ceil(c.c1 * (log_n / d_max) * spread * spread),
      BoundDirection::kAtLeast));

  report.satisfied = Holds(report.direction, report.lhs, report.rhs) &&
                     report.side_conditions.front().holds;
  report.inputs_echo = {{"n", n},
                        {"edges", edges},
                        {"L", static_cast<double>(comparisons)},
                        {"delta_k", delta_k},
                        {"d_min", d_min},
                        {"d_max", d_max},
                        {"gamma", spectra.gamma},
                        {"l2inf_of_L2", spectra.l2inf_of_L2}};
  EchoConstants(report, c);
  return report;
}

ConditionReport Thm2Necessary(Index n, std::uint64_t num_edges,
                              std::uint64_t comparisons, double delta_k,
                              const BoundConstants& c) {
  RequireDelta(delta_k);
  ValidateConstants(c);
  const double nn = static_cast<double>(n);
  ConditionReport report;
  report.theorem = "converse (necessary)";
  report.direction = BoundDirection::kAtMost;
  report.lhs = static_cast<double>(comparisons) * static_cast<double>(num_edges);
  report.rhs = c.c4 * (1.0 - c.epsilon) * nn * std::log(nn) / (delta_k * delta_k);
  report.satisfied = Holds(report.direction, report.lhs, report.rhs);
  report.inputs_echo = {{"n", nn},
                        {"edges", static_cast<double>(num_edges)},
                        {"L", static_cast<double>(comparisons)},
                        {"delta_k", delta_k}};
  EchoConstants(report, c);
  return report;
}

ConditionReport Thm3ErSufficient(Index n, double p, std::uint64_t comparisons,
                                 double delta_k, const BoundConstants& c) {
  RequireDelta(delta_k);
  ValidateConstants(c);
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidProbability, "p must lie in (0, 1]");
  }
  if (c.c4 < 1.0) {
    throw Error(ErrorCode::kInvalidConstant,
                "the density constant c4 must be at least 1");
  }
  const double nn = static_cast<double>(n);
  const double l = static_cast<double>(comparisons);
  const double log_n = std::log(nn);

  ConditionReport report;
  report.theorem = "Erdos-Renyi sufficient";
  report.direction = BoundDirection::kAtLeast;
  report.lhs = nn * nn * p * l / 2.0;
  report.rhs = c.c6 * nn * log_n / (delta_k * delta_k);
  report.side_conditions.push_back(MakeInequality(
      "p >= c4 sqrt(log n / n)", p, c.c4 * std::sqrt(log_n / nn),
      BoundDirection::kAtLeast));
  report.side_conditions.push_back(MakeInequality(
      "L >= ceil(c5 log n / (n p))", l, std::ceil(c.c5 * log_n / (nn * p)),
      BoundDirection::kAtLeast));
  report.satisfied = Holds(report.direction, report.lhs, report.rhs) &&
                     report.side_conditions[0].holds &&
                     report.side_conditions[1].holds;
  report.inputs_echo = {
      {"n", nn}, {"p", p}, {"L", l}, {"delta_k", delta_k}};
  EchoConstants(report, c);
  return report;
}

bool DegreeConcentrationCheck(const ComparisonGraph& g, double q) {
  const double center = static_cast<double>(g.num_vertices()) * q;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    if (d < 0.5 * center || d > 1.5 * center) return false;
  }
  return true;
}

}  // namespace rankcentral
