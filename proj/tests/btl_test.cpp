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
#include <random>
#include <sstream>

#include "doctest.h"
#include "rankcentral/btl.hpp"
#include "rankcentral/error.hpp"
#include "rankcentral/spectral_ranker.hpp"
#include "test_util.hpp"

namespace rankcentral {
namespace {

using testing::Complete;
using testing::RandomConnectedGraph;
using testing::RandomScores;
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

// P(lo <= X <= hi) for X ~ Binomial(n, p), summed from log-pmf terms.
double BinomialIntervalProbability(std::uint64_t n, double p, std::uint64_t lo,
                                   std::uint64_t hi) {
  const double nd = static_cast<double>(n);
  const double lg_n1 = std::lgamma(nd + 1.0);
  double total = 0.0;
  for (std::uint64_t k = lo; k <= hi; ++k) {
    const double kd = static_cast<double>(k);
    total += std::exp(lg_n1 - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
                      kd * std::log(p) + (nd - kd) * std::log1p(-p));
  }
  return total;
}

ComparisonGraph SingleEdge() {
  const Pairs e{{0, 1}};
  return ComparisonGraph::FromEdgeList(2, e);
}

TEST_CASE("preference vector validation") {
  const PreferenceVector w({1.0, 0.5, 2.0});
  CHECK(w.w_min() == 0.5);
  CHECK(w.w_max() == 2.0);
  CHECK(w.condition_number() == 4.0);
  const auto norm = w.Normalized();
  CHECK(norm[0] == doctest::Approx(1.0 / 3.5));
  CHECK(CodeOf([] { PreferenceVector({1.0, 0.0}); }) == ErrorCode::kInvalidScores);
  CHECK(CodeOf([] { PreferenceVector({1.0, -1.0}); }) == ErrorCode::kInvalidScores);
  CHECK(CodeOf([] { PreferenceVector({1.0, 3.0}, 0.5, 2.0); }) ==
        ErrorCode::kInvalidScores);
}

TEST_CASE("planted two-level scores") {
  const auto w = MakePlantedScores(4, 2, 0.1, ScoreScheme::kTwoLevel);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == 1.0);
  CHECK(w[1] == 1.0);
  CHECK(w[2] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(w[3] == doctest::Approx(0.9).epsilon(1e-15));

  const auto big = MakePlantedScores(500, 10, 0.1, ScoreScheme::kTwoLevel);
  CHECK(big.size() == 500);
  CHECK(std::abs(DeltaK(big, 10) - 0.1) <= 1e-12);
  CHECK(TrueTopK(big, 10) == std::vector<Index>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

  CHECK(CodeOf([] { MakePlantedScores(4, 4, 0.1, ScoreScheme::kTwoLevel); }) ==
        ErrorCode::kInvalidK);
  CHECK(CodeOf([] { MakePlantedScores(4, 0, 0.1, ScoreScheme::kTwoLevel); }) ==
        ErrorCode::kInvalidK);
  CHECK(CodeOf([] { MakePlantedScores(4, 2, 1.0, ScoreScheme::kTwoLevel); }) ==
        ErrorCode::kInvalidDelta);
  CHECK(CodeOf([] { MakePlantedScores(4, 2, 0.0, ScoreScheme::kTwoLevel); }) ==
        ErrorCode::kInvalidDelta);
}

TEST_CASE("planted linear scores hit the requested separation") {
  for (Index n : {3, 10, 50, 500}) {
    for (Index k = 1; k < n; k += std::max<Index>(1, n / 7)) {
      for (double delta : {0.01, 0.1, 0.3}) {
        const auto w = MakePlantedScores(n, k, delta, ScoreScheme::kLinear, 2.0);
        CHECK(std::abs(DeltaK(w, k) - delta) <= 1e-12);
        CHECK(w.w_max() == 2.0);
        for (Index i = 0; i < k; ++i) {
          CHECK(w[i] >= 2.0 * (1 - delta / 2) - 1e-12);
          CHECK(w[i] <= 2.0);
        }
        for (Index i = k; i < n; ++i) {
          CHECK(w[i] >= 1.0 - 1e-12);
          CHECK(w[i] <= 2.0 * (1 - 1.5 * delta) + 1e-12);
        }
      }
    }
  }
  CHECK(ParseScoreScheme("linear") == ScoreScheme::kLinear);
  CHECK(ScoreSchemeName(ScoreScheme::kTwoLevel) == "two-level");
}

TEST_CASE("delta_k") {
  CHECK(DeltaK(PreferenceVector({1.0, 0.9, 0.5, 0.4}), 2) == doctest::Approx(0.4));
  CHECK(DeltaK(PreferenceVector({0.4, 0.5, 1.0, 0.9}), 2) == doctest::Approx(0.4));
  CHECK(DeltaK(PreferenceVector({0.7, 0.7, 0.7}), 1) == 0.0);
  CHECK(CodeOf([] { DeltaK(PreferenceVector({1.0, 0.5}), 2); }) == ErrorCode::kInvalidK);
  CHECK(CodeOf([] { DeltaK(PreferenceVector({1.0, 0.5}), 0); }) == ErrorCode::kInvalidK);
}

TEST_CASE("exact observations") {
  const auto g = SingleEdge();
  CHECK(ExactObservations(g, PreferenceVector({1.0, 1.0})).y(0, 1) == 0.5);
  const auto obs = ExactObservations(g, PreferenceVector({3.0, 1.0}));
  CHECK(obs.y(0, 1) == 0.75);
  CHECK(obs.y(1, 0) == 0.25);
  CHECK(obs.is_exact());

  const auto tri = ExactObservations(Complete(3), PreferenceVector({2.0, 1.0, 1.0}));
  CHECK(tri.y(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(tri.y(0, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(tri.y(1, 2) == 0.5);
}

TEST_CASE("sample_observations validation and determinism") {
  const auto g = SingleEdge();
  const PreferenceVector w({3.0, 1.0});
  CHECK(CodeOf([&] { SampleObservations(g, w, 0, 1); }) == ErrorCode::kInvalidL);
  CHECK(CodeOf([&] { SampleObservations(g, PreferenceVector({1.0, 1.0, 1.0}), 5, 1); }) ==
        ErrorCode::kLengthMismatch);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const auto h = RandomConnectedGraph(20, 0.3, rng);
    const auto s = RandomScores(20, 0.5, 1.0, rng);
    for (std::uint64_t l : {1ULL, 7ULL, 64ULL, 65ULL, 1000ULL}) {
      const auto a = SampleObservations(h, s, l, 42 + rep);
      const auto b = SampleObservations(h, s, l, 42 + rep);
      CHECK(a.stats() == b.stats());
      CHECK(a.Matches(h));
      // Every statistic is a multiple of 1/L.
      for (double y : a.stats()) {
        const double count = y * static_cast<double>(l);
        CHECK(std::abs(count - std::round(count)) <= 1e-9);
        CHECK(y >= 0.0);
        CHECK(y <= 1.0);
      }
    }
  }
}

TEST_CASE("per-edge streams do not depend on the rest of the graph") {
  // Edge (0,1) draws the same statistic whether or not other edges exist.
  const Pairs small{{0, 1}};
  const Pairs large{{0, 1}, {1, 2}, {0, 3}};
  const PreferenceVector w2({0.8, 0.6});
  const PreferenceVector w4({0.8, 0.6, 0.9, 0.7});
  for (Seed s = 0; s < 20; ++s) {
    const auto a = SampleObservations(ComparisonGraph::FromEdgeList(2, small), w2, 30, s);
    const auto b = SampleObservations(ComparisonGraph::FromEdgeList(4, large), w4, 30, s);
    CHECK(a.y(0, 1) == b.y(0, 1));
  }
}

TEST_CASE("large-L statistics fall inside the 3-sigma band") {
  const auto g = SingleEdge();
  constexpr std::uint64_t kL = 1000000;
  constexpr int kSeeds = 2000;

  const double p_asym = BinomialIntervalProbability(kL, 0.75, 748700, 751300);
  CHECK(p_asym >= 0.997);
  const double p_sym = BinomialIntervalProbability(kL, 0.5, 497000, 503000);
  CHECK(p_sym >= 0.997);

  int inside_asym = 0;
  int inside_sym = 0;
  for (Seed s = 0; s < kSeeds; ++s) {
    const double y = SampleObservations(g, PreferenceVector({3.0, 1.0}), kL, s).y(0, 1);
    inside_asym += (y >= 0.7487 && y <= 0.7513);
    const double z = SampleObservations(g, PreferenceVector({1.0, 1.0}), kL, s).y(0, 1);
    inside_sym += (z >= 0.497 && z <= 0.503);
  }
  // Allow four binomial standard errors of slack on the empirical frequency.
  const auto slack = [](double p) { return 4.0 * std::sqrt(p * (1 - p) / kSeeds); };
  CHECK(inside_asym >= (p_asym - slack(p_asym)) * kSeeds);
  CHECK(inside_sym >= (p_sym - slack(p_sym)) * kSeeds);
}

TEST_CASE("grand mean over seeds matches the BTL probability") {
  const auto g = SingleEdge();
  const PreferenceVector w({0.7, 0.9});
  const double p = 0.7 / 1.6;
  constexpr std::uint64_t kL = 100;
  constexpr int kSeeds = 10000;
  double sum = 0.0;
  for (Seed s = 0; s < kSeeds; ++s) sum += SampleObservations(g, w, kL, s).y(0, 1);
  const double sigma = std::sqrt(p * (1 - p) / kL);
  CHECK(std::abs(sum / kSeeds - p) <= 4.0 * sigma / std::sqrt(double{kSeeds}));

  // Same check on the Bernoulli path.
  constexpr std::uint64_t kSmallL = 16;
  sum = 0.0;
  for (Seed s = 0; s < kSeeds; ++s) sum += SampleObservations(g, w, kSmallL, s).y(0, 1);
  const double sigma_small = std::sqrt(p * (1 - p) / kSmallL);
  CHECK(std::abs(sum / kSeeds - p) <= 4.0 * sigma_small / std::sqrt(double{kSeeds}));
}

TEST_CASE("exact observations reproduce the ideal matrix") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const auto g = RandomConnectedGraph(3 + rep, 0.3, rng);
    const auto w = RandomScores(g.num_vertices(), 0.2, 1.0, rng);
    const auto emp = BuildEmpiricalTransition(g, ExactObservations(g, w)).ToDense();
    const double dmax = static_cast<double>(Degrees(g).d_max);
    for (const Edge& e : g.edges()) {
      const auto i = static_cast<Eigen::Index>(e.first);
      const auto j = static_cast<Eigen::Index>(e.second);
      const double wi = w[e.first];
      const double wj = w[e.second];
      CHECK(std::abs(emp(i, j) - wi / (wi + wj) / dmax) <= 1e-15);
      CHECK(std::abs(emp(j, i) - wj / (wi + wj) / dmax) <= 1e-15);
    }
  }
}

TEST_CASE("reverse orientation reads the complement") {
  std::mt19937_64 rng(17);
  const auto g = RandomConnectedGraph(15, 0.3, rng);
  const auto obs = SampleObservations(g, RandomScores(15, 0.5, 1.0, rng), 9, 5);
  for (const Edge& e : g.edges()) {
    CHECK(obs.y(e.second, e.first) == 1.0 - obs.y(e.first, e.second));
  }
  CHECK(CodeOf([&] {
          for (Index i = 0; i < 15; ++i) {
            for (Index j = 0; j < 15; ++j) {
              if (i != j && !g.has_edge(i, j)) obs.y(i, j);
            }
          }
        }) == ErrorCode::kEdgeMismatch);
}

TEST_CASE("observation file format") {
  std::mt19937_64 rng(19);
  const auto g = RandomConnectedGraph(12, 0.3, rng);
  const auto w = RandomScores(12, 0.5, 1.0, rng);
  for (std::uint64_t l : {0ULL, 3ULL, 100ULL}) {
    const auto obs = l == 0 ? ExactObservations(g, w) : SampleObservations(g, w, l, 8);
    std::stringstream buf;
    WriteObservations(obs, buf);
    const auto back = ReadObservations(buf);
    CHECK(back.comparisons() == l);
    CHECK(back.edges() == obs.edges());
    CHECK(back.stats() == obs.stats());
  }
  std::istringstream text("3 0\n1 2 0.5\n0 1 0.25\n");
  const auto parsed = ReadObservations(text);
  CHECK(parsed.is_exact());
  CHECK(parsed.y(0, 1) == 0.25);
  CHECK(parsed.y(2, 1) == 0.5);
  std::istringstream reversed("3 5\n1 0 0.2\n");
  CHECK(CodeOf([&] { ReadObservations(reversed); }) == ErrorCode::kParseError);
  std::istringstream bad_y("3 5\n0 1 1.5\n");
  CHECK_THROWS_AS(ReadObservations(bad_y), Error);
}

}  // namespace
}  // namespace rankcentral
