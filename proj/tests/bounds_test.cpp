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

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "rankcentral/bounds.hpp"
#include "rankcentral/error.hpp"
#include "test_util.hpp"

namespace rankcentral {
namespace {

using testing::Complete;
using Pairs = std::vector<std::pair<Index, Index>>;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIoFailure;
}

TEST_CASE("error metrics") {
  const std::vector<double> truth{0.5, 0.5};
  const std::vector<double> est{0.6, 0.4};
  CHECK(LinfError(truth, truth) == 0.0);
  CHECK(L2Error(truth, truth) == 0.0);
  CHECK(LinfError(est, truth) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(L2Error(est, truth) == doctest::Approx(0.2).epsilon(1e-14));
  // Both sides are normalized first.
  CHECK(LinfError(std::vector<double>{6.0, 4.0}, PreferenceVector({1.0, 1.0})) ==
        doctest::Approx(0.2).epsilon(1e-14));
  CHECK(CodeOf([&] { LinfError(est, std::vector<double>{1.0, 1.0, 1.0}); }) ==
        ErrorCode::kLengthMismatch);
  CHECK(CodeOf([&] { L2Error(est, std::vector<double>{1.0}); }) == ErrorCode::kLengthMismatch);
}

TEST_CASE("error metric properties") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 40;
    std::vector<double> a(n);
    std::vector<double> b(n);
    for (auto& x : a) x = u(rng);
    for (auto& x : b) x = u(rng);
    CHECK(L2Error(a, b) <= std::sqrt(static_cast<double>(n)) * LinfError(a, b) + 1e-12);
    CHECK(LinfError(a, a) == 0.0);
    std::vector<double> scaled = a;
    for (auto& x : scaled) x *= 3.0;
    CHECK(LinfError(scaled, a) <= 1e-15);
  }
}

TEST_CASE("error metrics are symmetric for a common denominator") {
  // With equal maxima and equal norms the denominators coincide.
  const std::vector<double> a{0.5, 0.3, 0.2};
  const std::vector<double> b{0.3, 0.5, 0.2};
  CHECK(LinfError(a, b) == LinfError(b, a));
  CHECK(L2Error(a, b) == L2Error(b, a));
}

TEST_CASE("top-k success") {
  RankingResult r;
  r.top_k = {0, 1};
  CHECK(TopKSuccess(r, std::vector<Index>{1, 0}));
  r.top_k = {0, 2};
  CHECK_FALSE(TopKSuccess(r, std::vector<Index>{0, 1}));
  CHECK(CodeOf([&] { TopKSuccess(r, std::vector<Index>{0}); }) == ErrorCode::kSizeMismatch);

  const auto g = SampleErdosRenyi(60, 0.2, 3);
  const auto w = MakePlantedScores(60, 5, 0.05, ScoreScheme::kTwoLevel);
  CHECK(TopKSuccess(RankCentrality(g, ExactObservations(g, w), 5), TrueTopK(w, 5)));
}

TEST_CASE("constants validation") {
  CHECK_NOTHROW(ValidateConstants({}));
  CHECK(CodeOf([] { ValidateConstants({.c3 = 0.0}); }) == ErrorCode::kInvalidConstant);
  CHECK(CodeOf([] { ValidateConstants({.epsilon = 0.5}); }) == ErrorCode::kInvalidConstant);
  CHECK(CodeOf([] { ValidateConstants({.epsilon = 0.0}); }) == ErrorCode::kInvalidConstant);
}

TEST_CASE("general-graph sufficient condition on the triangle") {
  const auto g = Complete(3);
  const GraphSpectra s{.d_min = 2, .d_max = 2, .gamma = 0.5, .l2inf_of_L2 = std::sqrt(0.375)};
  const auto report = Thm1Sufficient(g, s, 10, 0.1);
  // (1 + sqrt(3) * 2 * sqrt(0.375) / (0.5 * 2))^2 * 3 log 3 / (2 * 0.01)
  CHECK(report.rhs == doctest::Approx(1605.5077174420742).epsilon(1e-12));
  CHECK(report.lhs == 30.0);
  CHECK_FALSE(report.satisfied);
  REQUIRE(report.side_conditions.size() == 1);
  CHECK(report.side_conditions[0].rhs == 3.0);  // ceil(4 log 3 / 2)
  CHECK(report.side_conditions[0].holds);
  CHECK(report.Recheck());

  const auto big = Thm1Sufficient(g, s, 600, 0.1);
  CHECK(big.satisfied);
  CHECK(big.Recheck());

  const auto twice = Thm1Sufficient(g, s, 20, 0.1);
  CHECK(twice.lhs == 2.0 * report.lhs);
  CHECK(twice.rhs == report.rhs);

  const auto tiny = Thm1Sufficient(g, s, std::numeric_limits<std::uint32_t>::max(), 1e-9);
  CHECK_FALSE(tiny.satisfied);
  CHECK(CodeOf([&] { Thm1Sufficient(g, s, 10, 0.0); }) == ErrorCode::kInvalidDelta);
}

TEST_CASE("general-graph threshold monotonicity") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::uniform_int_distribution<Index> deg(1, 20);
  const auto g = Complete(30);
  for (int rep = 0; rep < 300; ++rep) {
    GraphSpectra s{.d_min = deg(rng), .d_max = 20, .gamma = u(rng), .l2inf_of_L2 = u(rng)};
    const double base = Thm1Sufficient(g, s, 5, 0.1).rhs;
    GraphSpectra more_gap = s;
    more_gap.gamma = std::min(1.0, s.gamma * 1.5);
    CHECK(Thm1Sufficient(g, more_gap, 5, 0.1).rhs <= base);
    GraphSpectra more_dmin = s;
    more_dmin.d_min = std::min<Index>(20, s.d_min + 1);
    CHECK(Thm1Sufficient(g, more_dmin, 5, 0.1).rhs <= base);
    GraphSpectra more_norm = s;
    more_norm.l2inf_of_L2 = s.l2inf_of_L2 * 1.5;
    CHECK(Thm1Sufficient(g, more_norm, 5, 0.1).rhs >= base);
  }
}

TEST_CASE("converse threshold") {
  CHECK(Thm2Necessary(500, 0, 10, 0.1).satisfied);
  const double c4 = std::pow(0.9, 4) / 8.0;
  const auto report = Thm2Necessary(500, 31000, 1, 0.1, {.c4 = c4, .epsilon = 0.25});
  CHECK(report.rhs == doctest::Approx(19112.833000194376).epsilon(1e-12));
  CHECK_FALSE(report.satisfied);
  CHECK(report.Recheck());
  CHECK(Thm2Necessary(500, 19000, 1, 0.1, {.c4 = c4}).satisfied);

  const double base = Thm2Necessary(100, 1, 1, 0.2).rhs;
  CHECK(Thm2Necessary(100, 1, 1, 0.1).rhs == doctest::Approx(4.0 * base));
  CHECK(Thm2Necessary(400, 1, 1, 0.2).rhs ==
        doctest::Approx(base * 400.0 * std::log(400.0) / (100.0 * std::log(100.0))));
  CHECK(CodeOf([] { Thm2Necessary(10, 1, 1, -0.1); }) == ErrorCode::kInvalidDelta);
}

TEST_CASE("Erdos-Renyi sufficient condition") {
  // sqrt(log 500 / 500) = 0.1114864, so p = 0.25 supports c4 up to 2.2424.
  CHECK(std::sqrt(std::log(500.0) / 500.0) == doctest::Approx(0.11148639467147721));
  const auto dense_ok = Thm3ErSufficient(500, 0.25, 100, 0.1, {.c4 = 2.24});
  CHECK(dense_ok.side_conditions[0].holds);
  const auto dense_bad = Thm3ErSufficient(500, 0.25, 100, 0.1, {.c4 = 2.25});
  CHECK_FALSE(dense_bad.side_conditions[0].holds);
  CHECK_FALSE(dense_bad.satisfied);

  const auto sparse = Thm3ErSufficient(500, 0.025, 1000, 0.1);
  CHECK_FALSE(sparse.side_conditions[0].holds);
  CHECK_FALSE(sparse.satisfied);
  CHECK(sparse.Recheck());

  const auto dense = Thm3ErSufficient(500, 0.25, 100, 0.1);
  CHECK(dense.satisfied);
  CHECK(dense.lhs == doctest::Approx(500.0 * 500.0 * 0.25 * 100 / 2));
  CHECK(dense.Recheck());

  CHECK_FALSE(Thm3ErSufficient(500, 0.25, 100, 1e-6).satisfied);
  CHECK(CodeOf([] { Thm3ErSufficient(500, 0.0, 10, 0.1); }) == ErrorCode::kInvalidProbability);
  CHECK(CodeOf([] { Thm3ErSufficient(500, 0.3, 10, 0.0); }) == ErrorCode::kInvalidDelta);
  CHECK(CodeOf([] { Thm3ErSufficient(500, 0.3, 10, 0.1, {.c4 = 0.5}); }) ==
        ErrorCode::kInvalidConstant);
}

TEST_CASE("sufficient and necessary conditions are consistent") {
  std::mt19937_64 rng(103);
  std::uniform_int_distribution<Index> n_dist(50, 2000);
  std::uniform_real_distribution<double> p_dist(0.01, 1.0);
  std::uniform_int_distribution<std::uint64_t> l_dist(1, 5000);
  std::uniform_real_distribution<double> d_dist(0.01, 0.5);
  int sufficient = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    const Index n = n_dist(rng);
    const double p = p_dist(rng);
    const std::uint64_t l = l_dist(rng);
    const double delta = d_dist(rng);
    const auto er = Thm3ErSufficient(n, p, l, delta);
    if (er.lhs < er.rhs) continue;
    ++sufficient;
    // An ER graph with exactly n^2 p / 2 edges carries the same budget.
    const auto edges = static_cast<std::uint64_t>(std::ceil(static_cast<double>(n * n) * p / 2.0));
    CHECK_FALSE(Thm2Necessary(n, edges, l, delta).satisfied);
  }
  CHECK(sufficient > 100);
}

TEST_CASE("reports are self-verifying") {
  std::mt19937_64 rng(107);
  for (int rep = 0; rep < 50; ++rep) {
    const auto g = testing::RandomConnectedGraph(10 + rep, 0.2, rng);
    const auto report = Thm1Sufficient(g, ComputeSpectra(g), 1 + rep * 50, 0.2);
    CHECK(report.Recheck());
    ConditionReport tampered = report;
    tampered.satisfied = !tampered.satisfied;
    CHECK_FALSE(tampered.Recheck());
  }
}

TEST_CASE("degree concentration") {
  CHECK(DegreeConcentrationCheck(Complete(10), 1.0));
  CHECK(DegreeConcentrationCheck(Complete(2), 1.0));
  const Pairs pairs{{0, 1}, {1, 2}, {2, 0}};
  CHECK_FALSE(DegreeConcentrationCheck(ComparisonGraph::FromEdgeList(4, pairs), 0.5));
  int passed = 0;
  for (Seed s = 0; s < 100; ++s) {
    passed += DegreeConcentrationCheck(SampleErdosRenyi(1000, 0.1, 500 + s), 0.1);
  }
  CHECK(passed >= 95);
}

}  // namespace
}  // namespace rankcentral
