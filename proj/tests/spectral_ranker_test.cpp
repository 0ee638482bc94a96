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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>
#include <random>

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

double LinfDistance(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Eigenvector of P for the eigenvalue nearest 1, scaled to the simplex.
std::vector<double> EigenOracle(const Eigen::MatrixXd& p) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(p);
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < p.rows(); ++k) {
    if (std::abs(solver.eigenvalues()[k] - 1.0) < std::abs(solver.eigenvalues()[best] - 1.0)) {
      best = k;
    }
  }
  Eigen::VectorXd v = solver.eigenvectors().col(best).real();
  v /= v.sum();
  return {v.data(), v.data() + v.size()};
}

TEST_CASE("empirical transition for a single edge") {
  const Pairs e{{0, 1}};
  const auto g = ComparisonGraph::FromEdgeList(2, e);
  const ObservationSet obs(2, 4, {Edge{0, 1}}, {0.75});
  const auto p = BuildEmpiricalTransition(g, obs).ToDense();
  CHECK(p(0, 0) == 0.75);
  CHECK(p(0, 1) == 0.75);
  CHECK(p(1, 0) == 0.25);
  CHECK(p(1, 1) == 0.25);

  const Pairs other{{0, 2}};
  CHECK(CodeOf([&] {
          BuildEmpiricalTransition(ComparisonGraph::FromEdgeList(3, other),
                                   ObservationSet(3, 4, {Edge{0, 1}}, {0.5}));
        }) == ErrorCode::kEdgeMismatch);
}

TEST_CASE("ideal transition closed forms") {
  const Pairs e{{0, 1}};
  const auto two = BuildIdealTransition(ComparisonGraph::FromEdgeList(2, e),
                                        PreferenceVector({1.0, 1.0}))
                       .ToDense();
  CHECK(two.isApprox(Eigen::MatrixXd::Constant(2, 2, 0.5)));

  const auto tri = BuildIdealTransition(Complete(3), PreferenceVector({2.0, 1.0, 1.0}));
  CHECK(std::abs(tri.entry(0, 1) - 1.0 / 3.0) <= 1e-15);
  CHECK(std::abs(tri.entry(1, 0) - 1.0 / 6.0) <= 1e-15);
  CHECK(std::abs(tri.entry(1, 2) - 0.25) <= 1e-15);
  CHECK(std::abs(tri.diagonal(0) - (1.0 - 2.0 / 6.0)) <= 1e-15);

  const Pairs split{{0, 1}, {2, 3}};
  CHECK(CodeOf([&] {
          BuildIdealTransition(ComparisonGraph::FromEdgeList(4, split),
                               PreferenceVector({1.0, 1.0, 1.0, 1.0}));
        }) == ErrorCode::kDisconnectedGraph);
}

TEST_CASE("transition matrices are column stochastic with the graph's pattern") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 40; ++rep) {
    const auto g = RandomConnectedGraph(2 + rep, 0.25, rng);
    const auto w = RandomScores(g.num_vertices(), 0.1, 1.0, rng);
    const auto obs = SampleObservations(g, w, 1 + rep, rep);
    for (const auto& p : {BuildEmpiricalTransition(g, obs), BuildIdealTransition(g, w)}) {
      const auto dense = p.ToDense();
      CHECK((dense.array() >= 0.0).all());
      CHECK((dense.array() <= 1.0).all());
      for (Eigen::Index j = 0; j < dense.cols(); ++j) {
        CHECK(std::abs(dense.col(j).sum() - 1.0) <= 1e-12);
        for (Eigen::Index i = 0; i < dense.rows(); ++i) {
          if (i == j) continue;
          if (!g.has_edge(static_cast<Index>(i), static_cast<Index>(j))) {
            CHECK(dense(i, j) == 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("ideal matrix is reversible and scale invariant") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 40; ++rep) {
    const auto g = RandomConnectedGraph(2 + rep, 0.3, rng);
    const auto w = RandomScores(g.num_vertices(), 0.1, 1.0, rng);
    const auto p = BuildIdealTransition(g, w);
    for (const Edge& e : g.edges()) {
      const Index i = e.first;
      const Index j = e.second;
      CHECK(std::abs(w[i] * p.entry(j, i) - w[j] * p.entry(i, j)) <= 1e-15);
    }
    // A power-of-two factor commutes with rounding, so equality is exact.
    for (double factor : {4.0, 7.25}) {
      std::vector<double> scaled = w.scores();
      for (double& x : scaled) x *= factor;
      const auto q = BuildIdealTransition(g, PreferenceVector(scaled));
      const auto a = StationaryPower(p, 1e-12);
      const auto b = StationaryPower(q, 1e-12);
      if (factor == 4.0) {
        CHECK(p.ToDense() == q.ToDense());
        CHECK(a.distribution == b.distribution);
      } else {
        CHECK((p.ToDense() - q.ToDense()).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK(LinfDistance(a.distribution, b.distribution) <= 1e-12);
      }
      CHECK(TopK(a.distribution, 1) == TopK(b.distribution, 1));
    }
  }
}

TEST_CASE("power method examples") {
  Eigen::MatrixXd half = Eigen::MatrixXd::Constant(2, 2, 0.5);
  const auto r = StationaryPower(TransitionMatrix::FromDense(half));
  CHECK(r.distribution == std::vector<double>{0.5, 0.5});
  CHECK(r.iterations == 1);
  CHECK(r.residual == 0.0);
  CHECK(r.converged);

  const auto one = TransitionMatrix::FromDense(Eigen::MatrixXd::Ones(1, 1));
  const std::vector<double> init{1.0};
  const auto single = StationaryPower(one, 1e-10, 10, init);
  CHECK(single.distribution == init);
  CHECK(single.converged);

  const auto tri = BuildIdealTransition(Complete(3), PreferenceVector({2.0, 1.0, 1.0}));
  const auto power = StationaryPower(tri, 1e-14);
  CHECK(LinfDistance(power.distribution, std::vector<double>{0.5, 0.25, 0.25}) <= 1e-12);
  const auto direct = StationaryDirect(tri);
  CHECK(LinfDistance(direct, std::vector<double>{0.5, 0.25, 0.25}) <= 1e-14);

  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.5, 0.6, 0.5;
  CHECK_THROWS_AS(TransitionMatrix::FromDense(bad), Error);
}

TEST_CASE("power iteration flags non-convergence without throwing") {
  Eigen::MatrixXd swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const std::vector<double> init{1.0, 0.0};
  const auto r = StationaryPower(TransitionMatrix::FromDense(swap), 1e-10, 25, init);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 25);
  CHECK(r.residual == doctest::Approx(2.0));
}

TEST_CASE("direct solve rejects reducible chains") {
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(4, 4);
  block.topLeftCorner(2, 2).setConstant(0.5);
  block.bottomRightCorner(2, 2).setConstant(0.5);
  CHECK(CodeOf([&] { StationaryDirect(TransitionMatrix::FromDense(block)); }) ==
        ErrorCode::kSingularSystem);
}

TEST_CASE("power, direct and eigen oracles agree on small graphs") {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 100; ++rep) {
    const Index n = 2 + rep % 6;
    const auto g = RandomConnectedGraph(n, 0.4, rng);
    const auto w = RandomScores(n, 0.5, 1.0, rng);
    const auto p = BuildEmpiricalTransition(g, SampleObservations(g, w, 5, rep));
    const auto power = StationaryPower(p, 1e-12);
    const auto direct = StationaryDirect(p);
    CHECK(power.converged);
    CHECK(LinfDistance(power.distribution, direct) <= 1e-8);
    CHECK(LinfDistance(direct, EigenOracle(p.ToDense())) <= 1e-10);
  }
}

TEST_CASE("ideal chains have stationary distribution w / sum(w)") {
  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 30; ++rep) {
    const auto g = RandomConnectedGraph(3 + 2 * rep, 0.2, rng);
    const auto w = RandomScores(g.num_vertices(), 0.2, 1.0, rng);
    const auto p = BuildIdealTransition(g, w);
    CHECK(LinfDistance(StationaryDirect(p), w.Normalized()) <= 1e-10);
  }
}

TEST_CASE("top_k ordering and ties") {
  CHECK(TopK(std::vector<double>{0.5, 0.3, 0.2}, 1) == std::vector<Index>{0});
  CHECK(TopK(std::vector<double>{0.25, 0.25, 0.25, 0.25}, 2) == std::vector<Index>{0, 1});
  CHECK(TopK(std::vector<double>{0.1, 0.4, 0.4, 0.1}, 2) == std::vector<Index>{1, 2});
  CHECK(TopK(std::vector<double>{0.1, 0.2, 0.3}, 3) == std::vector<Index>{2, 1, 0});
  CHECK(CodeOf([] { TopK(std::vector<double>{0.1, 0.2}, 0); }) == ErrorCode::kInvalidK);
  CHECK(CodeOf([] { TopK(std::vector<double>{0.1, 0.2}, 3); }) == ErrorCode::kInvalidK);

  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> level(0, 4);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> s(20);
    for (double& x : s) x = level(rng);
    const Index k = 1 + rep % 19;
    const auto top = TopK(s, k);
    CHECK(top.size() == k);
    std::vector<bool> in(20, false);
    for (Index i : top) in[i] = true;
    double lowest_in = 1e9;
    double highest_out = -1e9;
    for (Index i = 0; i < 20; ++i) {
      (in[i] ? lowest_in : highest_out) =
          in[i] ? std::min(lowest_in, s[i]) : std::max(highest_out, s[i]);
    }
    CHECK(lowest_in >= highest_out);
  }
}

TEST_CASE("rank centrality examples") {
  const auto tri = Complete(3);
  const PreferenceVector w({2.0, 1.0, 1.0});
  const auto r = RankCentrality(tri, ExactObservations(tri, w), 1);
  CHECK(r.top_k == std::vector<Index>{0});
  CHECK(LinfDistance(r.estimate, std::vector<double>{0.5, 0.25, 0.25}) <= 1e-9);
  CHECK(r.converged);

  const Pairs e{{0, 1}};
  const auto g = ComparisonGraph::FromEdgeList(2, e);
  const auto all_wins = RankCentrality(g, ObservationSet(2, 10, {Edge{0, 1}}, {1.0}), 1);
  CHECK(all_wins.top_k == std::vector<Index>{0});
  CHECK(all_wins.estimate[0] == doctest::Approx(1.0));

  CHECK(CodeOf([&] { RankCentrality(tri, ExactObservations(tri, w), 3); }) ==
        ErrorCode::kInvalidK);
}

TEST_CASE("exact observations recover the scores on random graphs") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 40; ++rep) {
    const Index n = 3 + rep;
    const auto g = RandomConnectedGraph(n, 0.15, rng);
    const auto w = RandomScores(n, 0.3, 1.0, rng);
    const auto obs = ExactObservations(g, w);
    for (Index k = 1; k < n; ++k) {
      if (DeltaK(w, k) <= 0.0) continue;
      const auto r = RankCentrality(g, obs, k, {.tol = 1e-13});
      CHECK(LinfDistance(r.estimate, w.Normalized()) <= 1e-8);
      auto got = r.top_k;
      auto want = TrueTopK(w, k);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      CHECK(got == want);
    }
  }
}

TEST_CASE("ranking results satisfy their invariants") {
  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 30; ++rep) {
    const Index n = 4 + rep;
    const auto g = RandomConnectedGraph(n, 0.2, rng);
    const auto w = RandomScores(n, 0.5, 1.0, rng);
    const auto obs = SampleObservations(g, w, 3, rep);
    const Index k = 1 + rep % (n - 1);
    const auto r = RankCentrality(g, obs, k);
    CHECK(std::abs(std::accumulate(r.estimate.begin(), r.estimate.end(), 0.0) - 1.0) <= 1e-10);
    for (double x : r.estimate) CHECK(x >= 0.0);
    CHECK(r.top_k == TopK(r.estimate, k));
  }
}

TEST_CASE("full pipeline is a pure function of its seeds") {
  const auto run = [] {
    const auto g = SampleErdosRenyi(120, 0.1, 314);
    const auto w = MakePlantedScores(120, 5, 0.1, ScoreScheme::kTwoLevel);
    return RankCentrality(g, SampleObservations(g, w, 20, 2718), 5);
  };
  const auto a = run();
  const auto b = run();
  CHECK(a.estimate == b.estimate);
  CHECK(a.top_k == b.top_k);
  CHECK(a.iterations == b.iterations);
}

}  // namespace
}  // namespace rankcentral
