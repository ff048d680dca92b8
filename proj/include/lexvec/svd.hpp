#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "lexvec/ppmi.hpp"
#include "lexvec/trainer.hpp"

namespace lexvec {

/// Rank-d factors U diag(sigma) V^T of a square sparse matrix.
struct SvdFactors {
  Eigen::MatrixXd U;      // |V| x d, orthonormal columns
  Eigen::VectorXd sigma;  // d, non-increasing, nonnegative
  Eigen::MatrixXd V;      // |V| x d, orthonormal columns
  double p = 0.5;         // singular-value weighting exponent
};

struct SvdOptions {
  std::size_t oversample = 10;
  /// Minimum number of subspace iterations.
  std::size_t power_iterations = 7;
  /// Past the minimum, iterate until no leading singular value moves by more
  /// than this relative amount, or the cap is reached.
  double tolerance = 1e-12;
  std::size_t max_power_iterations = 100;
  double p = 0.5;
};

/// Sparse products used by the range finder. Rows of `x` index columns of A.
Eigen::MatrixXd multiply(const PpmiMatrix& a, const Eigen::MatrixXd& x);
Eigen::MatrixXd multiply_transposed(const PpmiMatrix& a, const Eigen::MatrixXd& x);

/// Randomized subspace iteration touching `ppmi` only through sparse
/// matrix-block products. Without a spectral gap at rank d + oversample the
/// fixed iteration count can leave small singular values off in the fifth
/// digit, hence the convergence test. Each U column is signed so its
/// largest-magnitude entry is nonnegative, with V flipped to match.
/// Throws std::invalid_argument unless 1 <= d <= |V|.
SvdFactors truncated_svd(const PpmiMatrix& ppmi, std::size_t d, std::uint64_t seed, const SvdOptions& opts = {});

/// W = U diag(sigma^p), W~ = V diag(sigma^(1-p)).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> weighted_embeddings(const SvdFactors& f);

/// The weighted factors in the trainer's f32 layout, for the shared export path.
EmbeddingPair to_embedding_pair(const SvdFactors& f);

}  // namespace lexvec
