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

// Comparison graphs: construction, Erdos-Renyi sampling, degree statistics,
// and the spectral diagnostics of the degree-normalized adjacency matrix
// L = D^{-1} A (L_ij = 1/d_i when i and j are compared).

#ifndef RANKCENTRAL_GRAPH_HPP_
#define RANKCENTRAL_GRAPH_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rankcentral/random.hpp"

namespace rankcentral {

using Index = std::size_t;

// Undirected edge stored in canonical order (first < second).
struct Edge {
  Index first = 0;
  Index second = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable undirected simple graph on vertices [0, n).
//
// Edges are deduplicated and sorted lexicographically; neighbor lists are
// sorted ascending and agree exactly with the edge list. Disconnected graphs
// are valid objects; spectral operations reject them.
class ComparisonGraph {
 public:
  // Reversed duplicates such as (1,0) after (0,1) are merged. Throws
  // kIndexOutOfRange, kSelfLoop, or kInvalidConfig (n < 2).
  static ComparisonGraph FromEdgeList(Index n,
                                      std::span<const std::pair<Index, Index>> pairs);

  Index num_vertices() const { return n_; }
  Index num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Index> neighbors(Index v) const;
  Index degree(Index v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Index i, Index j) const;

  // Position of the canonical edge (min(i,j), max(i,j)) in edges(), or
  // num_edges() when absent.
  Index edge_index(Index i, Index j) const;

 private:
  ComparisonGraph() = default;

  Index n_ = 0;
  std::vector<Edge> edges_;
  // CSR adjacency.
  std::vector<Index> offsets_;
  std::vector<Index> adjacency_;
};

// G(n, p): every unordered pair included independently with probability p.
// Bit-identical output for identical (n, p, seed).
ComparisonGraph SampleErdosRenyi(Index n, double p, Seed seed);

bool IsConnected(const ComparisonGraph& g);

struct DegreeStats {
  std::vector<Index> degrees;
  Index d_min = 0;
  Index d_max = 0;
};

DegreeStats Degrees(const ComparisonGraph& g);

// Dense L with L_ij = 1/d_i for (i,j) in E. Throws kDisconnectedGraph when a
// vertex is isolated.
Eigen::MatrixXd Laplacian(const ComparisonGraph& g);

struct GraphSpectra {
  Index d_min = 0;
  Index d_max = 0;
  double gamma = 0.0;
  double l2inf_of_L2 = 0.0;
};

inline constexpr Index kDenseEigenLimit = 2000;
inline constexpr double kSpectralTolerance = 1e-10;
inline constexpr int kSpectralMaxIterations = 10000;

// gamma = |lambda_(1)| - |lambda_(2)| over the eigenvalue magnitudes of L.
// Uses the dense path up to kDenseEigenLimit vertices and the Krylov path
// beyond. Throws kDisconnectedGraph.
double SpectralGap(const ComparisonGraph& g);

// Dense general (non-symmetric) eigensolver applied to L, or to L^T when
// `transpose` is set.
double SpectralGapDense(const ComparisonGraph& g, bool transpose = false);

// Matrix-free path: L is similar to S = D^{-1/2} A D^{-1/2}. The top
// eigenvector of S is known in closed form (sqrt(d)), so after projecting it
// out the remaining extreme eigenvalues come from Lanczos with full
// reorthogonalization using only sparse products. Throws
// kEigensolverNoConvergence when the Ritz residuals stay above `tol`.
double SpectralGapSparse(const ComparisonGraph& g,
                         double tol = kSpectralTolerance,
                         int max_iter = kSpectralMaxIterations);

// max_j ||column j of L^2||_2, computed one column at a time as L * L e_j
// without materializing L^2.
double L2InfOfLaplacianSquared(const ComparisonGraph& g);

GraphSpectra ComputeSpectra(const ComparisonGraph& g);

// Edge-list text format: "n m" header, then m lines "i j". Lines starting
// with '#' are comments.
ComparisonGraph ReadEdgeList(std::istream& in);
ComparisonGraph ReadEdgeListFile(const std::string& path);
void WriteEdgeList(const ComparisonGraph& g, std::ostream& out);
void WriteEdgeListFile(const ComparisonGraph& g, const std::string& path);

}  // namespace rankcentral

#endif  // RANKCENTRAL_GRAPH_HPP_
