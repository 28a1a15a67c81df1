#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "lapsep/dense_linalg.hpp"
#include "lapsep/exact_matrix.hpp"
#include "lapsep/graph.hpp"

namespace lapsep {

enum class LogBase { Two, Natural };

std::string_view log_base_name(LogBase base) noexcept;

// sqrt(2 (1 - tr rho_A^2)) for a unit vector on C^p (x) C^q. Throws NotNormalized.
double pure_concurrence(std::span<const Complex> psi, ArrayShape shape);

// The fixed 4x4 matrix sigma_y (x) sigma_y.
RealMatrix spin_flip();

// max(0, l1 - l2 - l3 - l4) where l_i^2 are the eigenvalues of rho * rho~,
// rho~ = (sy(x)sy) rho^T (sy(x)sy). The l_i are taken as singular values of
// sqrt(rho) (sy(x)sy) conj(sqrt(rho)), which equal them exactly.
// Throws DimensionMismatch or NotPSD.
double wootters_concurrence(const ComplexDenseMatrix& rho, double tol = kDefaultTolerance);
double wootters_concurrence(const RationalSymmetricMatrix& rho, double tol = kDefaultTolerance);

// n2 / (n1 + n2) over matched (n1) and unmatched (n2) edges.
Rational concurrence_upper_bound(const ArrayedGraph& g);

// Binary entropy -x log x - (1-x) log(1-x), zero at both ends.
double binary_entropy(double x, LogBase base = LogBase::Two);
double entanglement_of_formation_from_concurrence(double concurrence, LogBase base = LogBase::Two);
double entanglement_of_formation_4dim(const ComplexDenseMatrix& rho, LogBase base = LogBase::Two,
                                      double tol = kDefaultTolerance);

// log2(1 + 2 N), N the summed magnitude of eigenvalues of rho^Gamma below -tol.
double logarithmic_negativity(const ComplexDenseMatrix& rho, ArrayShape shape, double tol = kDefaultTolerance);
double logarithmic_negativity(const RationalSymmetricMatrix& rho, ArrayShape shape, double tol = kDefaultTolerance);

// |Delta(G) - Delta(G^Gamma)|_F / d_G. The squared value is exact.
Rational degree_discrepancy_squared(const ArrayedGraph& g);
double degree_discrepancy_norm(const ArrayedGraph& g);

// 2x2 arrays: Wootters concurrence >= 1 - tol. Larger arrays: false when some
// edge is matched, otherwise unknown (nullopt).
std::optional<bool> is_maximally_entangled(const ArrayedGraph& g, double tol = kDefaultTolerance);

struct MeasureReport {
  std::optional<double> concurrence_exact;  // 2x2 arrays only
  Rational concurrence_upper_bound;
  std::optional<double> entanglement_of_formation;
  LogBase entropy_base = LogBase::Two;
  double logarithmic_negativity = 0.0;
  double degree_discrepancy_norm = 0.0;
  std::optional<bool> maximally_entangled;
  std::size_t matched = 0;    // n1
  std::size_t unmatched = 0;  // n2
};

MeasureReport measure_report(const ArrayedGraph& g, double tol = kDefaultTolerance, LogBase base = LogBase::Two);

}  // namespace lapsep
