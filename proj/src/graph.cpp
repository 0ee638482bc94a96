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

#include "rankcentral/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "rankcentral/error.hpp"

namespace rankcentral {
namespace {

void RequireConnected(const ComparisonGraph& g) {
  if (!IsConnected(g)) {
    throw Error(ErrorCode::kDisconnectedGraph,
                "operation requires a connected comparison graph");
  }
}

// y = S x with S = D^{-1/2} A D^{-1/2}.
void SymmetricProduct(const ComparisonGraph& g,
                      const std::vector<double>& inv_sqrt_deg,
                      const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  const Index n = g.num_vertices();
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Index j : g.neighbors(i)) acc += inv_sqrt_deg[j] * x[j];
    y[i] = inv_sqrt_deg[i] * acc;
  }
}

}  // namespace

ComparisonGraph ComparisonGraph::FromEdgeList(
    Index n, std::span<const std::pair<Index, Index>> pairs) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidConfig, "a comparison graph needs n >= 2");
  }
  ComparisonGraph g;
  g.n_ = n;
  g.edges_.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "edge (" + std::to_string(a) + "," + std::to_string(b) +
                      ") outside [0, " + std::to_string(n) + ")");
    }
    if (a == b) {
      throw Error(ErrorCode::kSelfLoop,
                  "self-loop at vertex " + std::to_string(a));
    }
    g.edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  std::vector<Index> deg(n, 0);
  for (const Edge& e : g.edges_) {
    ++deg[e.first];
    ++deg[e.second];
  }
  g.offsets_.assign(n + 1, 0);
  for (Index v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<Index> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted, so each vertex receives its neighbors in ascending
  // order: lower neighbors arrive via e.second, higher ones via e.first.
  for (const Edge& e : g.edges_) {
    g.adjacency_[cursor[e.second]++] = e.first;
  }
  for (const Edge& e : g.edges_) {
    g.adjacency_[cursor[e.first]++] = e.second;
  }
  return g;
}

std::span<const Index> ComparisonGraph::neighbors(Index v) const {
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool ComparisonGraph::has_edge(Index i, Index j) const {
  return edge_index(i, j) < edges_.size();
}

Index ComparisonGraph::edge_index(Index i, Index j) const {
  if (i == j || i >= n_ || j >= n_) return edges_.size();
  const Edge key{std::min(i, j), std::max(i, j)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return edges_.size();
  return static_cast<Index>(it - edges_.begin());
}

ComparisonGraph SampleErdosRenyi(Index n, double p, Seed seed) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidProbability,
                "edge probability must lie in (0, 1], got " + std::to_string(p));
  }
  Engine engine = MakeEngine(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Index, Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.1) + 16);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (p >= 1.0 || coin(engine)) pairs.emplace_back(i, j);
    }
  }
  return ComparisonGraph::FromEdgeList(n, pairs);
}

bool IsConnected(const ComparisonGraph& g) {
  const Index n = g.num_vertices();
  std::vector<char> seen(n, 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  Index reached = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

DegreeStats Degrees(const ComparisonGraph& g) {
  DegreeStats s;
  const Index n = g.num_vertices();
  s.degrees.resize(n);
  for (Index v = 0; v < n; ++v) s.degrees[v] = g.degree(v);
  auto [lo, hi] = std::minmax_element(s.degrees.begin(), s.degrees.end());
  s.d_min = *lo;
  s.d_max = *hi;
  return s;
}

Eigen::MatrixXd Laplacian(const ComparisonGraph& g) {
  const Index n = g.num_vertices();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const Index d = g.degree(i);
    if (d == 0) {
      throw Error(ErrorCode::kDisconnectedGraph,
                  "vertex " + std::to_string(i) + " is isolated");
    }
    const double inv = 1.0 / static_cast<double>(d);
    for (Index j : g.neighbors(i)) lap(i, j) = inv;
  }
  return lap;
}

double SpectralGapDense(const ComparisonGraph& g, bool transpose) {
  RequireConnected(g);
  Eigen::MatrixXd lap = Laplacian(g);
  if (transpose) lap.transposeInPlace();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(lap, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigensolverNoConvergence,
                "dense eigensolver failed on the normalized adjacency matrix");
  }
  std::vector<double> mags(lap.rows());
  for (Eigen::Index k = 0; k < lap.rows(); ++k) {
    mags[k] = std::abs(solver.eigenvalues()[k]);
  }
  std::partial_sort(mags.begin(), mags.begin() + 2, mags.end(),
                    std::greater<>());
  return mags[0] - mags[1];
}

double SpectralGapSparse(const ComparisonGraph& g, double tol, int max_iter) {
  RequireConnected(g);
  const Index n = g.num_vertices();

  std::vector<double> inv_sqrt_deg(n);
  Eigen::VectorXd top(n);
  for (Index v = 0; v < n; ++v) {
    const double d = static_cast<double>(g.degree(v));
    inv_sqrt_deg[v] = 1.0 / std::sqrt(d);
    top[v] = std::sqrt(d);
  }
  top.normalize();

  // The deflated operator lives on the (n-1)-dimensional complement of top.
  const Index max_dim =
      std::min<Index>(n - 1, static_cast<Index>(std::max(max_iter, 1)));
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(max_dim);
  std::vector<double> alpha, beta;

  auto orthogonalize = [&](Eigen::VectorXd& v) {
    // Two passes of classical Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      v -= top.dot(v) * top;
      for (const auto& q : basis) v -= q.dot(v) * q;
    }
  };

  Engine engine = MakeEngine(DeriveSeed(0x5eed, n, g.num_edges()));
  std::normal_distribution<double> gauss;
  Eigen::VectorXd q(n);
  for (Index v = 0; v < n; ++v) q[v] = gauss(engine);
  orthogonalize(q);
  q.normalize();

  Eigen::VectorXd w(n);
  double lambda2 = 0.0;
  for (Index k = 0; k < max_dim; ++k) {
    basis.push_back(q);
    SymmetricProduct(g, inv_sqrt_deg, q, w);
    alpha.push_back(q.dot(w));
    orthogonalize(w);
    const double b = w.norm();

    const Index m = basis.size();
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub(m > 1 ? m - 1 : 0);
    for (Index t = 0; t + 1 < m; ++t) sub[t] = beta[t];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const auto& theta = tri.eigenvalues();
    const auto& s = tri.eigenvectors();
    // Residual of a Ritz pair is |b * last component of its eigenvector|.
    const double res_lo = std::abs(b * s(m - 1, 0));
    const double res_hi = std::abs(b * s(m - 1, m - 1));
    lambda2 = std::max(std::abs(theta[0]), std::abs(theta[m - 1]));
    const bool exhausted = (m == max_dim && m == n - 1);
    if ((res_lo <= tol && res_hi <= tol) || exhausted) {
      return 1.0 - lambda2;
    }
    if (m == max_dim) break;
    beta.push_back(b);
    q = w / b;
  }
  throw Error(ErrorCode::kEigensolverNoConvergence,
              "Lanczos did not resolve the second eigenvalue magnitude within " +
                  std::to_string(max_dim) + " steps");
}

double SpectralGap(const ComparisonGraph& g) {
  if (g.num_vertices() <= kDenseEigenLimit) return SpectralGapDense(g);
  return SpectralGapSparse(g);
}

double L2InfOfLaplacianSquared(const ComparisonGraph& g) {
  RequireConnected(g);
  const Index n = g.num_vertices();
  std::vector<double> inv_deg(n);
  for (Index v = 0; v < n; ++v) inv_deg[v] = 1.0 / static_cast<double>(g.degree(v));

  // Column j of L has entries 1/d_i at rows i in N(j); column j of L^2 is
  // L times that, i.e. entry k gets sum over i in N(j) n N(k) of 1/(d_k d_i).
  std::vector<double> column(n, 0.0);
  std::vector<Index> touched;
  touched.reserve(n);
  double best = 0.0;
  for (Index j = 0; j < n; ++j) {
    for (Index i : g.neighbors(j)) {
      const double lij = inv_deg[i];
      for (Index k : g.neighbors(i)) {
        if (column[k] == 0.0) touched.push_back(k);
        column[k] += inv_deg[k] * lij;
      }
    }
    double sq = 0.0;
    for (Index k : touched) {
      sq += column[k] * column[k];
      column[k] = 0.0;
    }
    touched.clear();
    best = std::max(best, sq);
  }
  return std::sqrt(best);
}

GraphSpectra ComputeSpectra(const ComparisonGraph& g) {
  RequireConnected(g);
  const DegreeStats deg = Degrees(g);
  GraphSpectra s;
  s.d_min = deg.d_min;
  s.d_max = deg.d_max;
  s.gamma = SpectralGap(g);
  s.l2inf_of_L2 = L2InfOfLaplacianSquared(g);
  return s;
}

ComparisonGraph ReadEdgeList(std::istream& in) {
  std::string line;
  bool have_header = false;
  Index n = 0;
  Index m = 0;
  std::vector<std::pair<Index, Index>> pairs;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    long long a = -1;
    long long b = -1;
    if (!(fields >> a >> b) || a < 0 || b < 0) {
      throw Error(ErrorCode::kParseError,
                  "edge list line " + std::to_string(line_no) + ": expected two non-negative integers");
    }
    if (!have_header) {
      n = static_cast<Index>(a);
      m = static_cast<Index>(b);
      have_header = true;
      pairs.reserve(m);
    } else {
      pairs.emplace_back(static_cast<Index>(a), static_cast<Index>(b));
    }
  }
  if (!have_header) throw Error(ErrorCode::kParseError, "edge list is empty");
  if (pairs.size() != m) {
    throw Error(ErrorCode::kParseError,
                "edge list header announces " + std::to_string(m) +
                    " edges but " + std::to_string(pairs.size()) + " were read");
  }
  return ComparisonGraph::FromEdgeList(n, pairs);
}

ComparisonGraph ReadEdgeListFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  return ReadEdgeList(in);
}

void WriteEdgeList(const ComparisonGraph& g, std::ostream& out) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.first << ' ' << e.second << '\n';
}

void WriteEdgeListFile(const ComparisonGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path);
  WriteEdgeList(g, out);
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path);
}

}  // namespace rankcentral
