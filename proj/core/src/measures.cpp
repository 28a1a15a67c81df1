#include "lapsep/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lapsep/errors.hpp"

namespace lapsep {

namespace {

// Eigenvalues of rho this close to zero are floating noise around an exact
// zero; their square roots would otherwise leak ~1e-8 into the l_i.
constexpr double kSqrtClip = 64 * 2.220446049250313e-16;

}  // namespace

std::string_view log_base_name(LogBase base) noexcept { return base == LogBase::Two ? "2" : "e"; }

double pure_concurrence(std::span<const Complex> psi, ArrayShape shape) {
  if (psi.size() != shape.dim()) throw Error(ErrorCode::DimensionMismatch, "state length is not p*q");
  double norm2 = 0;
  for (const auto& z : psi) norm2 += std::norm(z);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) throw Error(ErrorCode::NotNormalized, "state is not a unit vector");
  const auto reduced = partial_trace_B(outer(psi, psi), shape);
  double purity = 0;
  for (std::size_t i = 0; i < reduced.rows(); ++i)
    for (std::size_t j = 0; j < reduced.cols(); ++j) purity += std::norm(reduced(i, j));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

RealMatrix spin_flip() {
  RealMatrix y(4, 4);
  y(0, 3) = -1;
  y(1, 2) = 1;
  y(2, 1) = 1;
  y(3, 0) = -1;
  return y;
}

double wootters_concurrence(const ComplexDenseMatrix& rho, double tol) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw Error(ErrorCode::DimensionMismatch, "Wootters concurrence needs a 4x4 density matrix");
  const auto spectrum = symmetric_eigenvalues(rho, tol);
  if (spectrum.values.back() < -tol * std::max(1.0, rho.frobenius_norm()))
    throw Error(ErrorCode::NotPSD, "density matrix has a negative eigenvalue");

  const auto root = psd_sqrt(rho, kSqrtClip);
  ComplexDenseMatrix root_conj(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) root_conj(i, j) = std::conj(root(i, j));
  const auto lambdas = singular_values(root * to_complex(spin_flip()) * root_conj, tol);
  return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

double wootters_concurrence(const RationalSymmetricMatrix& rho, double tol) {
  return wootters_concurrence(to_complex(rho), tol);
}

Rational concurrence_upper_bound(const ArrayedGraph& g) {
  const auto c = classify_edges(g);
  return ratio(c.unmatched, c.matched + c.unmatched);
}

double binary_entropy(double x, LogBase base) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double h = -x * std::log(x) - (1.0 - x) * std::log1p(-x);
  return base == LogBase::Two ? h / std::numbers::ln2 : h;
}

double entanglement_of_formation_from_concurrence(double concurrence, LogBase base) {
  const double c = std::clamp(concurrence, 0.0, 1.0);
  return binary_entropy(0.5 + 0.5 * std::sqrt(1.0 - c * c), base);
}

double entanglement_of_formation_4dim(const ComplexDenseMatrix& rho, LogBase base, double tol) {
  return entanglement_of_formation_from_concurrence(wootters_concurrence(rho, tol), base);
}

double logarithmic_negativity(const ComplexDenseMatrix& rho, ArrayShape shape, double tol) {
  const auto spectrum = symmetric_eigenvalues(partial_transpose_matrix(rho, shape), tol);
  double negativity = 0;
  for (double v : spectrum.values)
    if (v < -tol) negativity -= v;
  return std::log2(1.0 + 2.0 * negativity);
}

double logarithmic_negativity(const RationalSymmetricMatrix& rho, ArrayShape shape, double tol) {
  return logarithmic_negativity(to_complex(rho), shape, tol);
}

Rational degree_discrepancy_squared(const ArrayedGraph& g) {
  const auto diff = degree_matrix(g) - degree_matrix(partial_transpose_graph(g));
  Rational s = 0;
  for (std::size_t i = 0; i < diff.dim(); ++i) s += diff(i, i) * diff(i, i);
  const Rational d(static_cast<unsigned long>(g.degree_sum()));
  return s / (d * d);
}

double degree_discrepancy_norm(const ArrayedGraph& g) {
  const auto diff = degree_matrix(g) - degree_matrix(partial_transpose_graph(g));
  Rational s = 0;
  for (std::size_t i = 0; i < diff.dim(); ++i) s += diff(i, i) * diff(i, i);
  return std::sqrt(s.get_d()) / static_cast<double>(g.degree_sum());
}

std::optional<bool> is_maximally_entangled(const ArrayedGraph& g, double tol) {
  if (g.p() == 1 || g.q() == 1) return false;
  if (g.p() == 2 && g.q() == 2) return wootters_concurrence(density_matrix(g), tol) >= 1.0 - tol;
  if (classify_edges(g).matched > 0) return false;
  return std::nullopt;
}

MeasureReport measure_report(const ArrayedGraph& g, double tol, LogBase base) {
  const auto rho = density_matrix(g);
  const auto classes = classify_edges(g);
  MeasureReport report;
  report.entropy_base = base;
  report.matched = classes.matched;
  report.unmatched = classes.unmatched;
  report.concurrence_upper_bound = ratio(classes.unmatched, g.edge_count());
  if (g.p() == 2 && g.q() == 2) {
    const double c = wootters_concurrence(rho, tol);
    report.concurrence_exact = c;
    report.entanglement_of_formation = entanglement_of_formation_from_concurrence(c, base);
  }
  report.logarithmic_negativity = logarithmic_negativity(rho, g.shape(), tol);
  report.degree_discrepancy_norm = degree_discrepancy_norm(g);
  report.maximally_entangled = is_maximally_entangled(g, tol);
  return report;
}

}  // namespace lapsep
