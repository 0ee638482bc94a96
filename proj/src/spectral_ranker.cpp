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

#include "rankcentral/spectral_ranker.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include <Eigen/LU>

#include "rankcentral/error.hpp"

namespace rankcentral {
namespace {

double L1Distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return acc;
}

std::uint64_t AdaptiveLimit(Index n, double tol, double rho) {
  const double gamma_est = std::max(1.0 - rho, 1e-12);
  const double scale = std::max(std::log(static_cast<double>(std::max<Index>(n, 2))),
                                std::log(1.0 / tol));
  const double limit = 10.0 * std::ceil(scale / gamma_est);
  if (!(limit < static_cast<double>(kIterationCap))) return kIterationCap;
  return std::max<std::uint64_t>(static_cast<std::uint64_t>(limit), 1);
}

}  // namespace

template <typename WinFraction>
TransitionMatrix TransitionMatrix::Build(const ComparisonGraph& g,
                                         WinFraction&& y) {
  if (!IsConnected(g)) {
    throw Error(ErrorCode::kDisconnectedGraph,
                "transition matrix requires a connected comparison graph");
  }
  const Index n = g.num_vertices();
  TransitionMatrix p;
  p.n_ = n;
  p.d_max_ = Degrees(g).d_max;
  const double d_max = static_cast<double>(p.d_max_);
  p.col_offsets_.assign(n + 1, 0);
  p.rows_.reserve(2 * g.num_edges());
  p.values_.reserve(2 * g.num_edges());
  p.diag_.resize(n);
  for (Index j = 0; j < n; ++j) {
    double leaving = 0.0;
    for (Index i : g.neighbors(j)) {
      const double v = y(i, j) / d_max;
      p.rows_.push_back(i);
      p.values_.push_back(v);
      leaving += v;
    }
    // Rounding can push 1 - leaving a hair below zero when d_j == d_max.
    p.diag_[j] = std::max(0.0, 1.0 - leaving);
    p.col_offsets_[j + 1] = p.rows_.size();
  }
  return p;
}

TransitionMatrix TransitionMatrix::FromDense(const Eigen::MatrixXd& dense) {
  if (dense.rows() != dense.cols() || dense.rows() == 0) {
    throw Error(ErrorCode::kInvalidConfig, "transition matrix must be square");
  }
  const Index n = static_cast<Index>(dense.rows());
  TransitionMatrix p;
  p.n_ = n;
  p.col_offsets_.assign(n + 1, 0);
  p.diag_.resize(n);
  for (Index j = 0; j < n; ++j) {
    double col_sum = 0.0;
    Index nnz = 0;
    for (Index i = 0; i < n; ++i) {
      const double v = dense(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kInvalidConfig, "entries must lie in [0, 1]");
      }
      col_sum += v;
      if (i == j) {
        p.diag_[j] = v;
      } else if (v != 0.0) {
        p.rows_.push_back(i);
        p.values_.push_back(v);
        ++nnz;
      }
    }
    if (std::abs(col_sum - 1.0) > 1e-12) {
      throw Error(ErrorCode::kInvalidConfig,
                  "column " + std::to_string(j) + " does not sum to one");
    }
    p.d_max_ = std::max(p.d_max_, nnz);
    p.col_offsets_[j + 1] = p.rows_.size();
  }
  return p;
}

double TransitionMatrix::entry(Index i, Index j) const {
  if (i == j) return diag_[j];
  auto first = rows_.begin() + static_cast<std::ptrdiff_t>(col_offsets_[j]);
  auto last = rows_.begin() + static_cast<std::ptrdiff_t>(col_offsets_[j + 1]);
  auto it = std::find(first, last, i);
  return it == last ? 0.0 : values_[static_cast<std::size_t>(it - rows_.begin())];
}

Eigen::MatrixXd TransitionMatrix::ToDense() const {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n_, n_);
  for (Index j = 0; j < n_; ++j) {
    dense(j, j) = diag_[j];
    for (Index k = col_offsets_[j]; k < col_offsets_[j + 1]; ++k) {
      dense(rows_[k], j) = values_[k];
    }
  }
  return dense;
}

void TransitionMatrix::Apply(std::span<const double> in,
                             std::span<double> out) const {
  for (Index i = 0; i < n_; ++i) out[i] = diag_[i] * in[i];
  for (Index j = 0; j < n_; ++j) {
    const double mass = in[j];
    for (Index k = col_offsets_[j]; k < col_offsets_[j + 1]; ++k) {
      out[rows_[k]] += values_[k] * mass;
    }
  }
}

TransitionMatrix BuildEmpiricalTransition(const ComparisonGraph& g,
                                          const ObservationSet& obs) {
  if (!obs.Matches(g)) {
    throw Error(ErrorCode::kEdgeMismatch,
                "observations do not cover exactly the graph's edges");
  }
  // Walk the stored statistics in edge order instead of searching per entry.
  const auto& stats = obs.stats();
  return TransitionMatrix::Build(g, [&](Index i, Index j) {
    const Index e = g.edge_index(i, j);
    return i < j ? stats[e] : 1.0 - stats[e];
  });
}

TransitionMatrix BuildIdealTransition(const ComparisonGraph& g,
                                      const PreferenceVector& w) {
  if (w.size() != g.num_vertices()) {
    throw Error(ErrorCode::kLengthMismatch, "score vector length differs from n");
  }
  return TransitionMatrix::Build(
      g, [&](Index i, Index j) { return w[i] / (w[i] + w[j]); });
}

StationaryResult StationaryPower(const TransitionMatrix& p, double tol,
                                 std::uint64_t max_iter,
                                 std::span<const double> init) {
  const Index n = p.size();
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidConfig, "tol must be positive");
  if (init.size() != n) {
    throw Error(ErrorCode::kLengthMismatch, "initial distribution has wrong length");
  }
  const bool adaptive = max_iter == 0;
  std::uint64_t limit = adaptive ? kIterationCap : max_iter;

  std::vector<double> current(init.begin(), init.end());
  std::vector<double> next(n);
  StationaryResult result;
  constexpr std::uint64_t kProbe = 16;
  double probe_residual = 0.0;
  std::uint64_t adaptive_limit = 0;
  while (result.iterations < limit) {
    p.Apply(current, next);
    ++result.iterations;
    result.residual = L1Distance(current, next);
    current.swap(next);
#ifndef NDEBUG
    const double mass = std::accumulate(current.begin(), current.end(), 0.0);
    assert(std::abs(mass - 1.0) <= 1e-10);
    assert(std::all_of(current.begin(), current.end(),
                       [](double v) { return v >= 0.0; }));
#endif
    if (result.residual <= tol) {
      result.converged = true;
      break;
    }
    if (adaptive && result.iterations % kProbe == 0) {
      if (probe_residual > 0.0) {
        const double rho = std::pow(result.residual / probe_residual,
                                    1.0 / static_cast<double>(kProbe));
        adaptive_limit =
            std::max(adaptive_limit, AdaptiveLimit(n, tol, std::min(rho, 1.0)));
        limit = std::min(kIterationCap,
                         std::max(adaptive_limit, result.iterations + 1));
      }
      probe_residual = result.residual;
    }
  }
  result.distribution = std::move(current);
  return result;
}

StationaryResult StationaryPower(const TransitionMatrix& p, double tol,
                                 std::uint64_t max_iter) {
  const std::vector<double> uniform(p.size(),
                                    1.0 / static_cast<double>(p.size()));
  return StationaryPower(p, tol, max_iter, uniform);
}

std::vector<double> StationaryDirect(const TransitionMatrix& p) {
  const Index n = p.size();
  if (n > kDenseEigenLimit) {
    throw Error(ErrorCode::kInvalidConfig,
                "direct stationary solve is limited to " +
                    std::to_string(kDenseEigenLimit) + " states");
  }
  Eigen::MatrixXd a = p.ToDense() - Eigen::MatrixXd::Identity(n, n);
  Eigen::FullPivLU<Eigen::MatrixXd> rank_check(a);
  rank_check.setThreshold(1e-10);
  if (n > 1 && rank_check.rank() < static_cast<Eigen::Index>(n) - 1) {
    throw Error(ErrorCode::kSingularSystem,
                "stationary distribution is not unique (reducible chain)");
  }
  // Any one balance equation is implied by the others; replace the last with
  // the normalization constraint.
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[n - 1] = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kSingularSystem, "normalized balance system is singular");
  }
  const Eigen::VectorXd pi = lu.solve(rhs);
  return std::vector<double>(pi.data(), pi.data() + n);
}

std::vector<Index> TopK(std::span<const double> scores, Index k) {
  if (k < 1 || k > scores.size()) {
    throw Error(ErrorCode::kInvalidK, "K must satisfy 1 <= K <= n");
  }
  std::vector<Index> order(scores.size());
  std::iota(order.begin(), order.end(), Index{0});
  auto before = [&](Index a, Index b) {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), before);
  order.resize(k);
  return order;
}

RankingResult RankCentrality(const ComparisonGraph& g,
                             const ObservationSet& obs, Index k,
                             const PowerParams& params) {
  if (k < 1 || k >= g.num_vertices()) {
    throw Error(ErrorCode::kInvalidK, "K must satisfy 1 <= K < n");
  }
  const TransitionMatrix p = BuildEmpiricalTransition(g, obs);
  StationaryResult stationary = StationaryPower(p, params.tol, params.max_iter);
  RankingResult result;
  result.estimate = std::move(stationary.distribution);
  result.top_k = TopK(result.estimate, k);
  result.iterations = stationary.iterations;
  result.residual = stationary.residual;
  result.converged = stationary.converged;
  return result;
}

}  // namespace rankcentral
