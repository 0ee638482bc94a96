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

// Rank Centrality: rank items by the stationary distribution of a random
// walk that moves from j to i in proportion to how often i beat j.

#ifndef RANKCENTRAL_SPECTRAL_RANKER_HPP_
#define RANKCENTRAL_SPECTRAL_RANKER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rankcentral/btl.hpp"
#include "rankcentral/graph.hpp"

namespace rankcentral {

// Column-stochastic matrix with the sparsity of a comparison graph.
// Off-diagonal entries are stored column by column (CSC); the diagonal is
// kept separately. Immutable after construction.
class TransitionMatrix {
 public:
  // Accepts any square matrix with entries in [0, 1] whose columns sum to
  // one within 1e-12; exact zeros are not stored. Throws kInvalidConfig.
  static TransitionMatrix FromDense(const Eigen::MatrixXd& dense);

  Index size() const { return n_; }
  Index d_max() const { return d_max_; }
  double diagonal(Index j) const { return diag_[j]; }
  double entry(Index i, Index j) const;
  Eigen::MatrixXd ToDense() const;

  // out = P * in. `out` must not alias `in`.
  void Apply(std::span<const double> in, std::span<double> out) const;

 private:
  friend TransitionMatrix BuildEmpiricalTransition(const ComparisonGraph&,
                                                   const ObservationSet&);
  friend TransitionMatrix BuildIdealTransition(const ComparisonGraph&,
                                               const PreferenceVector&);
  template <typename WinFraction>
  static TransitionMatrix Build(const ComparisonGraph& g, WinFraction&& y);

  TransitionMatrix() = default;

  Index n_ = 0;
  Index d_max_ = 0;
  std::vector<Index> col_offsets_;
  std::vector<Index> rows_;
  std::vector<double> values_;
  std::vector<double> diag_;
};

// P_ij = y_ij / d_max on edges, P_jj = 1 - sum_k y_kj / d_max.
// Throws kEdgeMismatch or kDisconnectedGraph.
TransitionMatrix BuildEmpiricalTransition(const ComparisonGraph& g,
                                          const ObservationSet& obs);

// The L -> infinity limit: y_ij replaced by w_i / (w_i + w_j).
TransitionMatrix BuildIdealTransition(const ComparisonGraph& g,
                                      const PreferenceVector& w);

struct StationaryResult {
  std::vector<double> distribution;
  std::uint64_t iterations = 0;
  // l1 change of the final step.
  double residual = 0.0;
  bool converged = false;
};

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::uint64_t kIterationCap = 100000;

// p <- P p until ||p_t - p_{t-1}||_1 <= tol. With max_iter == 0 the limit is
// 10 * ceil(max(log n, log(1/tol)) / gamma_est), capped at kIterationCap,
// where gamma_est = 1 - rho and rho is the contraction of successive steps
// measured every 16 iterations. Hitting the limit is reported through
// `converged`, never thrown.
StationaryResult StationaryPower(const TransitionMatrix& p, double tol,
                                 std::uint64_t max_iter,
                                 std::span<const double> init);

// Uniform start.
StationaryResult StationaryPower(const TransitionMatrix& p,
                                 double tol = kDefaultTolerance,
                                 std::uint64_t max_iter = 0);

// Dense solve of (P - I) pi = 0 with sum(pi) = 1; a verification oracle
// limited to kDenseEigenLimit states. Throws kSingularSystem when the
// stationary distribution is not unique.
std::vector<double> StationaryDirect(const TransitionMatrix& p);

// Indices of the K largest scores ordered by descending score, ties broken
// by ascending index. Throws kInvalidK unless 1 <= K <= n.
std::vector<Index> TopK(std::span<const double> scores, Index k);

struct PowerParams {
  double tol = kDefaultTolerance;
  std::uint64_t max_iter = 0;  // 0 selects the adaptive limit
};

struct RankingResult {
  std::vector<double> estimate;  // non-negative, sums to one
  std::vector<Index> top_k;
  std::uint64_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Empirical transition matrix, power iteration from the uniform
// distribution, top-K of the last iterate (also when not converged).
RankingResult RankCentrality(const ComparisonGraph& g,
                             const ObservationSet& obs, Index k,
                             const PowerParams& params = {});

}  // namespace rankcentral

#endif  // RANKCENTRAL_SPECTRAL_RANKER_HPP_
