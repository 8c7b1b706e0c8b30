#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sknet/csr.hpp"
#include "sknet/graph.hpp"
#include "sknet/linear_op.hpp"

namespace sknet {

struct EmbeddingMatrix {
  // n x k coordinates.
  Eigen::MatrixXd coords;
  // One value per column: Laplacian eigenvalues (ascending) for spectral
  // embeddings, singular values (descending) for SVD.
  std::vector<double> spectrum;
  // Residual norm of the eigen or singular pair behind each column.
  std::vector<double> residuals;

  std::size_t n() const { return static_cast<std::size_t>(coords.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(coords.cols()); }
};

// N = D^-1/2 A_g D^-1/2 with A_g = A + (gamma / n) 1 1^T and D the degrees
// of A_g. The adjacency must be symmetric with positive regularized degrees.
class NormalizedAdjacencyOperator final : public LinearOperator {
 public:
  NormalizedAdjacencyOperator(const CsrMatrix& adjacency, double gamma);
  std::size_t rows() const override { return a_->n_rows(); }
  std::size_t cols() const override { return a_->n_rows(); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  // Diagonal of D^-1/2.
  const std::vector<double>& inv_sqrt_degrees() const { return inv_sqrt_; }

 private:
  const CsrMatrix* a_;
  double gamma_;
  std::vector<double> inv_sqrt_;
  mutable std::vector<double> scratch_;
};

struct LanczosOptions {
  double tol = 1e-6;
  std::size_t max_restarts = 500;
  // Krylov basis size; 0 picks max(2 nev + 1, nev + 16), capped at n.
  std::size_t subspace = 0;
  std::uint64_t seed = 0;
};

struct EigenPairs {
  // Descending.
  std::vector<double> values;
  Eigen::MatrixXd vectors;
  // ||op v - value v||_2 for each pair, measured explicitly.
  std::vector<double> residuals;
  std::size_t restarts = 0;
};

// Largest algebraic eigenpairs of a symmetric operator by thick-restart
// Lanczos with full reorthogonalization. Each vector is flipped so that its
// largest-magnitude entry is positive. Throws ConvergenceError carrying the
// residuals when some pair misses tol after max_restarts.
EigenPairs lanczos_largest(const LinearOperator& op, std::size_t nev,
                           const LanczosOptions& options = {});

struct SpectralParams {
  std::size_t dim = 16;
  double gamma = 0.0;
  std::size_t max_restarts = 500;
  double tol = 1e-6;
  std::uint64_t seed = 0;
};

// The k largest eigenpairs of N for the undirected view of g. Without
// regularization each connected component is solved separately; the
// eigenspace of eigenvalue 1 is then rotated so that its first vector is
// proportional to sqrt(degrees).
// Throws DegenerateInputError for isolated nodes when gamma is 0.
EigenPairs normalized_eigenpairs(const Graph& g, std::size_t k,
                                 const SpectralParams& params = {});

// Drops the top pair of normalized_eigenpairs(g, dim + 1), scales the next dim
// eigenvectors by D^-1/2 and rescales each column to unit norm. spectrum holds
// the normalized Laplacian eigenvalues 1 - mu, ascending.
EmbeddingMatrix spectral_embedding(const Graph& g, const SpectralParams& params = {});

struct SvdParams {
  std::size_t oversampling = 10;
  std::size_t power_iterations = 2;
  // Extra power iterations are run until every triplet meets tol.
  std::size_t max_power_iterations = 200;
  double tol = 1e-6;
  std::uint64_t seed = 0;
};

struct SvdResult {
  Eigen::MatrixXd u;
  std::vector<double> s;
  Eigen::MatrixXd v;
  // ||M v_i - s_i u_i||_2 of the factorized matrix.
  std::vector<double> residuals;
};

// Randomized truncated SVD: Gaussian range finder with oversampling and power
// iterations, then a dense SVD of the projected matrix. Requires
// 1 <= k <= min(n_rows, n_cols). Residuals are at most tol * s_1.
SvdResult truncated_svd(const CsrMatrix& m, std::size_t k, const SvdParams& params);
SvdResult truncated_svd(const CsrMatrix& m, std::size_t k, std::uint64_t seed = 0);

// SVD of D_r^-1/2 B D_c^-1/2 with u and v scaled by D_r^-1/2 and D_c^-1/2.
// Throws DegenerateInputError naming the first empty row or column.
SvdResult gsvd(const CsrMatrix& b, std::size_t k, const SvdParams& params);
SvdResult gsvd(const CsrMatrix& b, std::size_t k, std::uint64_t seed = 0);

}  // namespace sknet
