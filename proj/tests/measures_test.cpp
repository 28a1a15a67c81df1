#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lapsep/harness.hpp"
#include "lapsep/measures.hpp"
#include "oracle.hpp"

using namespace lapsep;

namespace {

ArrayedGraph star22() { return build_graph(2, 2, {{{1, 1}, {1, 2}}, {{1, 1}, {2, 1}}, {{1, 1}, {2, 2}}}); }
ArrayedGraph diagonal_edge() { return build_graph(2, 2, {{{1, 1}, {2, 2}}}); }

// Scalar references evaluated independently of the library.
double h2(double x) { return -x * std::log2(x) - (1 - x) * std::log2(1 - x); }

}  // namespace

TEST(PureConcurrence, Examples) {
  const double r = 1 / std::sqrt(2.0);
  const std::vector<Complex> prod{0.6 * r, 0.6 * r, 0.8 * r, 0.8 * r};
  EXPECT_NEAR(pure_concurrence(prod, {2, 2}), 0.0, 1e-7);
  const std::vector<Complex> bell{r, 0, 0, -r};
  EXPECT_NEAR(pure_concurrence(bell, {2, 2}), 1.0, 1e-12);
  const std::vector<Complex> local{r, -r, 0, 0};
  EXPECT_NEAR(pure_concurrence(local, {2, 2}), 0.0, 1e-7);

  const std::vector<Complex> bad{1, 1, 0, 0};
  EXPECT_THROW(pure_concurrence(bad, {2, 2}), Error);
}

TEST(SpinFlip, SquaresToIdentity) {
  const auto y = spin_flip();
  EXPECT_EQ(y(0, 3), -1);
  EXPECT_EQ(y(1, 2), 1);
  EXPECT_EQ(y(2, 1), 1);
  EXPECT_EQ(y(3, 0), -1);
  const auto c = to_complex(y);
  EXPECT_LT((c * c - ComplexDenseMatrix::identity(4)).frobenius_norm(), 1e-15);
}

TEST(Wootters, Examples) {
  EXPECT_NEAR(wootters_concurrence(density_matrix(diagonal_edge())), 1.0, 1e-9);
  EXPECT_NEAR(wootters_concurrence(density_matrix(star22())), 1.0 / 3, 1e-9);
  for (const char* name : {"complete", "crisscross"})
    EXPECT_NEAR(wootters_concurrence(density_matrix(family(name, 2, 2))), 0.0, 1e-9) << name;
}

TEST(Wootters, AgreesWithOracleOnGraphsAndRandomStates) {
  for (const auto& g : enumerate_labeled_graphs({2, 2})) {
    const auto rho = density_matrix(g);
    EXPECT_NEAR(wootters_concurrence(rho), oracle::wootters(oracle::to_eigen(rho).cast<Complex>()), 1e-7)
        << graph_id_hex(g);
  }
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    oracle::CMat a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = {nd(rng), nd(rng)};
    oracle::CMat rho = a * a.adjoint();
    rho /= rho.trace().real();
    EXPECT_NEAR(wootters_concurrence(oracle::from_eigen(rho)), oracle::wootters(rho), 1e-7);
  }
}

TEST(Wootters, Errors) {
  EXPECT_THROW(wootters_concurrence(density_matrix(family("complete", 2, 3))), Error);
  ComplexDenseMatrix neg(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(wootters_concurrence(neg), Error);
}

TEST(UpperBound, Examples) {
  EXPECT_EQ(concurrence_upper_bound(star22()), Rational(1, 3));
  EXPECT_EQ(concurrence_upper_bound(family("crisscross", 2, 2)), 0);
  EXPECT_EQ(concurrence_upper_bound(diagonal_edge()), 1);
  EXPECT_EQ(concurrence_upper_bound(counterexample_graph()), 1);
}

TEST(EntanglementOfFormation, Examples) {
  EXPECT_EQ(entanglement_of_formation_from_concurrence(0.0), 0.0);
  EXPECT_NEAR(entanglement_of_formation_from_concurrence(1.0), 1.0, 1e-15);
  EXPECT_NEAR(entanglement_of_formation_from_concurrence(1.0, LogBase::Natural), std::log(2.0), 1e-15);
  const double x = 0.5 + std::sqrt(8.0) / 6;
  EXPECT_NEAR(entanglement_of_formation_from_concurrence(1.0 / 3), h2(x), 1e-12);
  EXPECT_NEAR(entanglement_of_formation_from_concurrence(1.0 / 3), 0.18729859856877245, 1e-12);
  EXPECT_NEAR(entanglement_of_formation_4dim(to_complex(density_matrix(star22()))), h2(x), 1e-9);
}

TEST(EntanglementOfFormation, MonotoneInConcurrence) {
  double prev = -1;
  for (int i = 0; i <= 100; ++i) {
    const double e = entanglement_of_formation_from_concurrence(i / 100.0);
    EXPECT_GE(e, prev);
    prev = e;
  }
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
}

TEST(LogNegativity, Examples) {
  const auto k4 = family("complete", 2, 3);
  EXPECT_EQ(logarithmic_negativity(density_matrix(k4), k4.shape()), 0.0);
  EXPECT_NEAR(logarithmic_negativity(density_matrix(star22()), {2, 2}), std::log2(1 + (std::sqrt(17.0) - 3) / 6),
              1e-9);
  EXPECT_NEAR(logarithmic_negativity(density_matrix(diagonal_edge()), {2, 2}), 1.0, 1e-9);
}

TEST(LogNegativity, StarHasOneNegativeEigenvalue) {
  const auto pt = oracle::partial_transpose(oracle::to_eigen(density_matrix(star22())), 2, 2);
  const auto ev = oracle::eigenvalues_desc(pt);
  EXPECT_LT(ev[3], 0);
  EXPECT_GT(ev[2], 0);
}

TEST(DegreeDiscrepancy, Examples) {
  EXPECT_EQ(degree_discrepancy_norm(family("complete", 2, 2)), 0.0);
  EXPECT_EQ(degree_discrepancy_squared(star22()), Rational(1, 9));
  EXPECT_NEAR(degree_discrepancy_norm(star22()), 1.0 / 3, 1e-15);
}

TEST(DegreeDiscrepancy, SameEnDifferentLnExists) {
  bool found = false;
  std::vector<std::pair<double, double>> seen;
  for (const auto& g : enumerate_labeled_graphs({2, 2})) {
    const double en = degree_discrepancy_norm(g);
    const double ln = logarithmic_negativity(density_matrix(g), g.shape());
    for (const auto& [e, l] : seen)
      if (std::abs(e - en) < 1e-12 && std::abs(l - ln) > 1e-6) found = true;
    seen.emplace_back(en, ln);
  }
  EXPECT_TRUE(found);
}

TEST(MaximallyEntangled, Examples) {
  EXPECT_EQ(is_maximally_entangled(diagonal_edge()), std::optional<bool>(true));
  EXPECT_EQ(is_maximally_entangled(star22()), std::optional<bool>(false));
  EXPECT_EQ(is_maximally_entangled(family("complete", 3, 3)), std::optional<bool>(false));
  EXPECT_EQ(is_maximally_entangled(counterexample_graph()), std::nullopt);
}

TEST(MeasureReport, ConcurrenceOnlyOnFourDims) {
  const auto r4 = measure_report(star22());
  ASSERT_TRUE(r4.concurrence_exact.has_value());
  EXPECT_NEAR(*r4.concurrence_exact, 1.0 / 3, 1e-9);
  EXPECT_EQ(r4.matched, 2u);
  EXPECT_EQ(r4.unmatched, 1u);
  const auto r6 = measure_report(family("star", 2, 3));
  EXPECT_FALSE(r6.concurrence_exact.has_value());
  EXPECT_FALSE(r6.entanglement_of_formation.has_value());
}
