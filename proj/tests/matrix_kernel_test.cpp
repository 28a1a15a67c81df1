#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lapsep/dense_linalg.hpp"
#include "lapsep/exact_matrix.hpp"
#include "lapsep/graph.hpp"
#include "lapsep/harness.hpp"
#include "oracle.hpp"

using namespace lapsep;

namespace {

ArrayedGraph star22() { return build_graph(2, 2, {{{1, 1}, {1, 2}}, {{1, 1}, {2, 1}}, {{1, 1}, {2, 2}}}); }

oracle::CMat random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  oracle::CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = {d(rng), d(rng)};
  return 0.5 * (m + m.adjoint());
}

oracle::CMat random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  oracle::CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {d(rng), d(rng)};
  oracle::CMat rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace

TEST(PartialTransposeMatrix, StarBlockForm) {
  const auto pt = partial_transpose_matrix(density_matrix(star22()), {2, 2});
  const int expected[4][4] = {{3, -1, -1, 0}, {-1, 1, -1, 0}, {-1, -1, 1, 0}, {0, 0, 0, 1}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(pt(i, j), Rational(expected[i][j]) / 6) << i << "," << j;
}

TEST(PartialTransposeMatrix, SymmetricBlocksUnchanged) {
  const auto k4 = density_matrix(family("complete", 2, 2));
  EXPECT_EQ(partial_transpose_matrix(k4, {2, 2}), k4);
}

TEST(PartialTransposeMatrix, DegreeCriterionGraphMapsToTransposedGraph) {
  const auto g = counterexample_graph();
  EXPECT_EQ(partial_transpose_matrix(density_matrix(g), g.shape()), density_matrix(partial_transpose_graph(g)));
}

TEST(PartialTransposeMatrix, MatchesOracleOnComplexInput) {
  std::mt19937_64 rng(3);
  const auto rho = random_density(6, rng);
  const auto mine = oracle::to_eigen(partial_transpose_matrix(oracle::from_eigen(rho), ArrayShape{2, 3}));
  EXPECT_LT((mine - oracle::partial_transpose(rho, 2, 3)).norm(), 1e-15);
  EXPECT_THROW(partial_transpose_matrix(oracle::from_eigen(rho), ArrayShape{2, 2}), Error);
}

TEST(SymmetricEigenvalues, Identity) {
  const auto s = symmetric_eigenvalues(RealMatrix::identity(5));
  ASSERT_EQ(s.values.size(), 5u);
  for (double v : s.values) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(SymmetricEigenvalues, OneEdgeLaplacian) {
  const auto s = symmetric_eigenvalues(to_real(laplacian(build_graph(2, 2, {{{1, 2}, {2, 1}}}))));
  EXPECT_NEAR(s.values[0], 2.0, 1e-12);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(s.values[i], 0.0, 1e-12);
}

TEST(SymmetricEigenvalues, StarPartialTransposeMinimum) {
  const auto pt = partial_transpose_matrix(density_matrix(star22()), {2, 2});
  const auto s = symmetric_eigenvalues(to_real(pt));
  EXPECT_NEAR(s.values.back(), (3.0 - std::sqrt(17.0)) / 12.0, 1e-12);
  EXPECT_NEAR(s.values.back(), oracle::min_eigenvalue(oracle::to_eigen(pt)), 1e-12);
}

TEST(SymmetricEigenvalues, RejectsNonSymmetric) {
  RealMatrix m(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(symmetric_eigenvalues(m), Error);
}

TEST(SymmetricEigenvalues, RandomHermitianAgainstOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_hermitian(8, rng);
    const auto eig = hermitian_eigen(oracle::from_eigen(m));
    auto ref = Eigen::SelfAdjointEigenSolver<oracle::CMat>(m).eigenvalues();
    double sum = 0;
    for (int i = 0; i < 8; ++i) {
      EXPECT_NEAR(eig.values[static_cast<std::size_t>(i)], ref[7 - i], 1e-11);
      sum += eig.values[static_cast<std::size_t>(i)];
    }
    EXPECT_NEAR(sum, m.trace().real(), 1e-11);
    // V diag(lambda) V^* reconstructs m.
    const auto v = oracle::to_eigen(eig.vectors);
    Eigen::VectorXd lam(8);
    for (int i = 0; i < 8; ++i) lam[i] = eig.values[static_cast<std::size_t>(i)];
    EXPECT_LT((v * lam.asDiagonal() * v.adjoint() - m).norm(), 1e-9);
  }
}

TEST(SingularValues, DiagonalAndOrthogonal) {
  ComplexDenseMatrix d(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -4.0;
  const auto sv = singular_values(d);
  EXPECT_NEAR(sv[0], 4.0, 1e-14);
  EXPECT_NEAR(sv[1], 3.0, 1e-14);

  std::mt19937_64 rng(5);
  const Eigen::HouseholderQR<oracle::CMat> qr(random_hermitian(6, rng));
  const oracle::CMat q = qr.householderQ();
  for (double s : singular_values(oracle::from_eigen(q))) EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(SingularValues, RandomRectangularAgainstOracle) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    oracle::CMat m(4, 9);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 9; ++j) m(i, j) = {nd(rng), nd(rng)};
    const auto mine = singular_values(oracle::from_eigen(m));
    const auto ref = Eigen::JacobiSVD<oracle::CMat>(m).singularValues();
    double sq = 0;
    for (int i = 0; i < ref.size(); ++i) {
      EXPECT_NEAR(mine[static_cast<std::size_t>(i)], ref[i], 1e-10);
      sq += mine[static_cast<std::size_t>(i)] * mine[static_cast<std::size_t>(i)];
    }
    EXPECT_NEAR(sq, m.squaredNorm(), 1e-9);
  }
}

TEST(Realign, CounterexampleTraceNorm) {
  const auto g = counterexample_graph();
  const auto rho = to_complex(density_matrix(g));
  const double mine = trace_norm(realign(rho, g.shape()));
  const double ref = oracle::trace_norm(oracle::realign(oracle::density(3, 3, oracle::edges_of(g)), 3, 3));
  EXPECT_NEAR(ref, (4 * std::sqrt(2.0) + 2 * std::sqrt(3.0)) / 8, 1e-12);
  EXPECT_NEAR(mine, ref, 1e-12);
}

TEST(Realign, ProductStateIsRankOneWithUnitNorm) {
  const std::vector<Complex> x{Complex(0.6, 0), Complex(0, 0.8)};
  const std::vector<Complex> y{Complex(1, 1) / std::sqrt(3.0), Complex(1, 0) / std::sqrt(3.0), Complex(0, 0)};
  const auto xy = kron(std::span<const Complex>(x), std::span<const Complex>(y));
  const auto rho = outer(xy, xy);
  const auto sv = singular_values(realign(rho, {2, 3}));
  EXPECT_NEAR(sv[0], 1.0, 1e-12);
  for (std::size_t i = 1; i < sv.size(); ++i) EXPECT_NEAR(sv[i], 0.0, 1e-12);
}

TEST(Realign, PermutesEntriesAndPreservesFrobenius) {
  std::mt19937_64 rng(23);
  for (const auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 4}}) {
    const auto rho = random_density(p * q, rng);
    const auto mine = realign(oracle::from_eigen(rho), ArrayShape{p, q});
    EXPECT_EQ(mine.rows(), static_cast<std::size_t>(p * p));
    EXPECT_EQ(mine.cols(), static_cast<std::size_t>(q * q));
    EXPECT_LT((oracle::to_eigen(mine) - oracle::realign(rho, p, q)).norm(), 1e-15);
    EXPECT_NEAR(mine.frobenius_norm(), rho.norm(), 1e-13);
  }
}

TEST(ExactPsd, Laplacians) {
  for (const char* name : {"complete", "star", "crisscross", "nearest_point_sample"})
    EXPECT_TRUE(exact_psd_check(laplacian(family(name, 3, 3))).psd) << name;
}

TEST(ExactPsd, DiagonalWitness) {
  const auto cert = exact_psd_check(RationalSymmetricMatrix::diagonal({1, -1}));
  ASSERT_FALSE(cert.psd);
  EXPECT_EQ(cert.witness, (std::vector<Rational>{0, 1}));
  EXPECT_EQ(cert.witness_value, -1);
}

TEST(ExactPsd, ZeroDiagonalWithCoupling) {
  RationalSymmetricMatrix m(3);
  m.at(0, 0) = 2;
  m.at(2, 1) = Rational(1, 3);
  const auto cert = exact_psd_check(m);
  ASSERT_FALSE(cert.psd);
  EXPECT_LT(cert.witness_value, 0);
  EXPECT_EQ(m.quadratic_form(cert.witness), cert.witness_value);
}

TEST(ExactPsd, CounterexamplePartialTransposeIsPsd) {
  const auto g = counterexample_graph();
  EXPECT_TRUE(exact_psd_check(partial_transpose_matrix(density_matrix(g), g.shape())).psd);
}

TEST(ExactPsd, StarPartialTransposeWitness) {
  const auto pt = partial_transpose_matrix(density_matrix(star22()), {2, 2});
  const auto cert = exact_psd_check(pt);
  ASSERT_FALSE(cert.psd);
  EXPECT_LT(pt.quadratic_form(cert.witness), 0);
}

TEST(ExactPsd, RandomIntegerMatricesAgreeWithOracle) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    // B^T B is PSD; subtracting a small diagonal sometimes breaks that.
    std::vector<std::vector<int>> b(n, std::vector<int>(n));
    for (auto& row : b)
      for (auto& v : row) v = d(rng);
    RationalSymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        int s = 0;
        for (std::size_t k = 0; k < n; ++k) s += b[k][i] * b[k][j];
        m.at(i, j) = s;
      }
    if (trial % 2) m.at(trial % n, trial % n) -= 1;
    const auto cert = exact_psd_check(m);
    const double ref = oracle::min_eigenvalue(oracle::to_eigen(m));
    if (std::abs(ref) > 1e-9) EXPECT_EQ(cert.psd, ref > 0) << "trial " << trial;
    if (!cert.psd) EXPECT_EQ(m.quadratic_form(cert.witness), cert.witness_value);
    if (!cert.psd) EXPECT_LT(cert.witness_value, 0);
  }
}

TEST(PartialTrace, Examples) {
  const auto rho = density_matrix(build_graph(2, 2, {{{1, 1}, {2, 2}}}));
  EXPECT_EQ(partial_trace_B(rho, {2, 2}), RationalSymmetricMatrix::diagonal({Rational(1, 2), Rational(1, 2)}));

  const std::vector<Complex> x{Complex(0.6, 0), Complex(0, 0.8)};
  const std::vector<Complex> y{Complex(0, 1) / std::sqrt(2.0), Complex(1, 0) / std::sqrt(2.0)};
  const auto xy = kron(std::span<const Complex>(x), std::span<const Complex>(y));
  const auto ptr = partial_trace_B(outer(xy, xy), ArrayShape{2, 2});
  const auto px = outer(x, x);
  EXPECT_LT((ptr - px).frobenius_norm(), 1e-15);

  for (const char* name : {"complete", "star", "nearest_point_sample"}) {
    const auto g = family(name, 3, 2);
    EXPECT_EQ(partial_trace_B(density_matrix(g), g.shape()).trace(), 1);
  }
}
