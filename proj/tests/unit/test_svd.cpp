#include <doctest.h>

#include <cmath>
#include <random>

#include "lexvec/svd.hpp"
#include "oracles.hpp"

using namespace lexvec;

namespace {

PpmiMatrix diagonal(std::vector<float> values) {
  std::vector<PpmiEntry> entries;
  for (WordId i = 0; i < values.size(); ++i) entries.push_back({i, i, values[i]});
  return PpmiMatrix(static_cast<std::uint32_t>(values.size()), 1.0, std::move(entries));
}

PpmiMatrix random_sparse(std::mt19937_64& gen, std::uint32_t n, double density) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PpmiEntry> entries;
  for (WordId i = 0; i < n; ++i) {
    for (WordId j = 0; j < n; ++j) {
      if (u(gen) < density) entries.push_back({i, j, static_cast<float>(0.05 + 4.0 * u(gen))});
    }
  }
  return PpmiMatrix(n, 0.75, std::move(entries));
}

Eigen::MatrixXd dense(const PpmiMatrix& m) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m.dims(), m.dims());
  for (const auto& e : m.entries()) a(e.word, e.context) = e.value;
  return a;
}

oracle::Dense to_oracle(const Eigen::MatrixXd& a) {
  oracle::Dense out(a.rows(), std::vector<long double>(a.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
  }
  return out;
}

}  // namespace

TEST_CASE("identity and diagonal inputs") {
  const auto id = diagonal({1.0f, 1.0f});
  const auto f = truncated_svd(id, 2, 1);
  CHECK(f.sigma(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.sigma(1) == doctest::Approx(1.0).epsilon(1e-12));
  const Eigen::MatrixXd recon = f.U * f.sigma.asDiagonal() * f.V.transpose();
  CHECK((recon - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);

  const auto diag = diagonal({3.0f, 2.0f, 1.0f});
  const auto g = truncated_svd(diag, 2, 1);
  CHECK(g.sigma(0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(g.sigma(1) == doctest::Approx(2.0).epsilon(1e-12));
  const Eigen::MatrixXd r2 = g.U * g.sigma.asDiagonal() * g.V.transpose();
  CHECK((dense(diag) - r2).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("singular values match the Jacobi oracle") {
  std::mt19937_64 gen(50);
  for (int trial = 0; trial < 5; ++trial) {
    const auto m = random_sparse(gen, 50, 0.1);
    const auto f = truncated_svd(m, 10, trial);
    const auto want = oracle::singular_values(to_oracle(dense(m)));
    for (int j = 0; j < 10; ++j) {
      CHECK(std::fabs(f.sigma(j) - static_cast<double>(want[j])) <= 1e-6 * static_cast<double>(want[j]));
    }
  }
}

TEST_CASE("factor invariants") {
  std::mt19937_64 gen(51);
  const auto m = random_sparse(gen, 40, 0.15);
  const auto f = truncated_svd(m, 8, 3);
  REQUIRE(f.U.rows() == 40);
  REQUIRE(f.U.cols() == 8);
  REQUIRE(f.V.rows() == 40);
  CHECK((f.U.transpose() * f.U - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((f.V.transpose() * f.V - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-6);
  for (int j = 0; j < 8; ++j) {
    CHECK(f.sigma(j) >= 0.0);
    if (j > 0) CHECK(f.sigma(j) <= f.sigma(j - 1));
    Eigen::Index arg = 0;
    f.U.col(j).cwiseAbs().maxCoeff(&arg);
    CHECK(f.U(arg, j) >= 0.0);
  }
  // U and V are consistent: A V = U S on the leading factors.
  const Eigen::MatrixXd av = dense(m) * f.V;
  CHECK((av - f.U * f.sigma.asDiagonal()).norm() < 1e-6 * f.sigma(0));

  // Seeded: same seed, same factors.
  const auto g = truncated_svd(m, 8, 3);
  CHECK(f.U == g.U);
  CHECK(f.sigma == g.sigma);
}

TEST_CASE("sparse block products match dense products") {
  std::mt19937_64 gen(52);
  const auto m = random_sparse(gen, 30, 0.2);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(30, 4);
  CHECK((multiply(m, x) - dense(m) * x).norm() < 1e-12);
  CHECK((multiply_transposed(m, x) - dense(m).transpose() * x).norm() < 1e-12);
  CHECK_THROWS(multiply(m, Eigen::MatrixXd::Zero(29, 2)));
}

TEST_CASE("rank bounds") {
  const auto m = diagonal({1.0f, 2.0f, 3.0f});
  CHECK_THROWS_AS(truncated_svd(m, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(truncated_svd(m, 4, 1), std::invalid_argument);
  CHECK_NOTHROW(truncated_svd(m, 3, 1));
}

TEST_CASE("singular value weighting") {
  SvdFactors f;
  f.U = Eigen::MatrixXd::Identity(3, 2);
  f.V = Eigen::MatrixXd::Identity(3, 2);
  f.sigma = Eigen::Vector2d(4.0, 1.0);

  f.p = 1.0;
  auto [w1, wt1] = weighted_embeddings(f);
  CHECK((w1 - f.U * f.sigma.asDiagonal()).norm() == 0.0);
  CHECK((wt1 - f.V).norm() == 0.0);

  f.p = 0.5;
  auto [w, wt] = weighted_embeddings(f);
  CHECK(w(0, 0) == 2.0);
  CHECK(w(1, 1) == 1.0);
  CHECK(wt(0, 0) == 2.0);
  CHECK(wt(1, 1) == 1.0);

  std::mt19937_64 gen(53);
  const auto m = random_sparse(gen, 25, 0.2);
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    auto g = truncated_svd(m, 5, 1, {.p = p});
    const auto [a, b] = weighted_embeddings(g);
    const Eigen::MatrixXd direct = g.U * g.sigma.asDiagonal() * g.V.transpose();
    CHECK((a * b.transpose() - direct).norm() < 1e-10);
  }

  const auto pair = to_embedding_pair(truncated_svd(m, 5, 1));
  CHECK(pair.vocab_size() == 25);
  CHECK(pair.dim() == 5);
  CHECK(pair.all_finite());
}
