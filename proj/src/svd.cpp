#include "lexvec/svd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "lexvec/rng.hpp"

namespace lexvec {

namespace {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

}  // namespace

Eigen::MatrixXd multiply(const PpmiMatrix& a, const Eigen::MatrixXd& x) {
  if (static_cast<std::size_t>(x.rows()) != a.dims()) throw std::invalid_argument("block has wrong row count");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.dims(), x.cols());
  for (WordId w = 0; w < a.dims(); ++w) {
    for (const auto& e : a.row(w)) out.row(w).noalias() += static_cast<double>(e.value) * x.row(e.context);
  }
  return out;
}

Eigen::MatrixXd multiply_transposed(const PpmiMatrix& a, const Eigen::MatrixXd& x) {
  if (static_cast<std::size_t>(x.rows()) != a.dims()) throw std::invalid_argument("block has wrong row count");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.dims(), x.cols());
  for (const auto& e : a.entries()) out.row(e.context).noalias() += static_cast<double>(e.value) * x.row(e.word);
  return out;
}

SvdFactors truncated_svd(const PpmiMatrix& ppmi, std::size_t d, std::uint64_t seed, const SvdOptions& opts) {
  const std::size_t n = ppmi.dims();
  if (d < 1 || d > n) {
    throw std::invalid_argument("SVD rank must be in [1, " + std::to_string(n) + "], got " + std::to_string(d));
  }
  const std::size_t l = std::min(n, d + opts.oversample);
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(l);

  Rng rng(derive_seed(seed, kSvdStream, 0));
  Eigen::MatrixXd omega(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) omega(i, j) = rng.uniform(-1.0, 1.0);
  }

  const auto k = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd q = orthonormalize(multiply(ppmi, omega));
  Eigen::VectorXd previous;
  const std::size_t cap = std::max(opts.power_iterations, opts.max_power_iterations);
  for (std::size_t it = 0; it < cap; ++it) {
    const Eigen::MatrixXd z = orthonormalize(multiply_transposed(ppmi, q));
    q = orthonormalize(multiply(ppmi, z));
    if (it + 1 < opts.power_iterations) continue;
    const Eigen::VectorXd sigma =
        Eigen::BDCSVD<Eigen::MatrixXd>(multiply_transposed(ppmi, q)).singularValues().head(k);
    if (previous.size() == k) {
      const double floor = std::max(sigma(0), 1e-300) * 1e-12;
      const double change =
          ((sigma - previous).array().abs() / sigma.array().max(floor)).maxCoeff();
      if (change <= opts.tolerance) break;
    }
    previous = sigma;
  }

  // B = Q^T A, factored through its transpose: A^T Q = Ub S Vb^T.
  const Eigen::MatrixXd bt = multiply_transposed(ppmi, q);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(bt, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SvdFactors f;
  f.p = opts.p;
  f.sigma = svd.singularValues().head(k);
  f.U = q * svd.matrixV().leftCols(k);
  f.V = svd.matrixU().leftCols(k);

  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::Index arg = 0;
    f.U.col(j).cwiseAbs().maxCoeff(&arg);
    if (f.U(arg, j) < 0) {
      f.U.col(j) *= -1.0;
      f.V.col(j) *= -1.0;
    }
  }
  return f;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> weighted_embeddings(const SvdFactors& f) {
  const Eigen::VectorXd left = f.sigma.array().pow(f.p);
  const Eigen::VectorXd right = f.sigma.array().pow(1.0 - f.p);
  return {f.U * left.asDiagonal(), f.V * right.asDiagonal()};
}

EmbeddingPair to_embedding_pair(const SvdFactors& f) {
  const auto [w, wt] = weighted_embeddings(f);
  EmbeddingPair pair(static_cast<std::size_t>(w.rows()), static_cast<std::size_t>(w.cols()));
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    auto target = pair.target(static_cast<WordId>(i));
    auto context = pair.context(static_cast<WordId>(i));
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      target[j] = static_cast<float>(w(i, j));
      context[j] = static_cast<float>(wt(i, j));
    }
  }
  return pair;
}

}  // namespace lexvec
