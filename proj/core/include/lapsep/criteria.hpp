#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "lapsep/decomposer.hpp"
#include "lapsep/dense_linalg.hpp"
#include "lapsep/exact_matrix.hpp"
#include "lapsep/graph.hpp"

namespace lapsep {

// Delta(G) == Delta(G^Gamma), compared exactly.
bool degree_criterion(const ArrayedGraph& g);

struct PptResult {
  bool holds = false;
  double min_eigenvalue = 0.0;
  bool exact = false;  // decided by exact_psd_check
};

// holds iff lambda_min(rho^Gamma) >= -tol * max(1, |rho|_F). Rational input
// whose floating minimum lies within 10*tol of zero is settled exactly.
PptResult ppt_criterion(const RationalSymmetricMatrix& rho, ArrayShape shape, double tol = kDefaultTolerance);
PptResult ppt_criterion(const ComplexDenseMatrix& rho, ArrayShape shape, double tol = kDefaultTolerance);

struct RealignmentResult {
  double trace_norm = 0.0;
  bool flags_entangled = false;  // trace_norm > 1 + tol; silence proves nothing
};

RealignmentResult realignment_criterion(const ComplexDenseMatrix& rho, ArrayShape shape,
                                        double tol = kDefaultTolerance);
RealignmentResult realignment_criterion(const RationalSymmetricMatrix& rho, ArrayShape shape,
                                        double tol = kDefaultTolerance);

struct LineSumReport {
  bool blocks_line_sum_symmetric = false;
  bool nonnegative_row_sums = false;
  bool nonpositive_off_diagonal = false;

  // Membership in the class of density matrices with nonnegative row sums
  // and nonpositive off-diagonal entries.
  bool in_class_s() const noexcept { return nonnegative_row_sums && nonpositive_off_diagonal; }
  // Sufficient condition for separability.
  bool certifies_separable() const noexcept { return in_class_s() && blocks_line_sum_symmetric; }
};

LineSumReport line_sum_symmetric_blocks(const RationalSymmetricMatrix& rho, ArrayShape shape);

struct RangeMembership {
  bool in_range_of_rho = false;     // x (x) y
  bool in_range_of_rho_pt = false;  // x (x) conj(y)
};

// Membership by projection residual onto eigenvectors with eigenvalue above
// tol * max(1, |M|_F). Throws ZeroVector.
RangeMembership range_membership(const ComplexDenseMatrix& rho, ArrayShape shape, std::span<const Complex> x,
                                 std::span<const Complex> y, double tol = kDefaultTolerance);

// Precomputed spectral data for repeated range queries against one state.
class RangeOracle {
 public:
  RangeOracle(const ComplexDenseMatrix& rho, ArrayShape shape, double tol = kDefaultTolerance);
  RangeMembership query(std::span<const Complex> x, std::span<const Complex> y) const;

 private:
  ArrayShape shape_;
  double tol_;
  ComplexDenseMatrix kernel_rho_;  // columns span ker(rho)
  ComplexDenseMatrix kernel_pt_;   // columns span ker(rho^Gamma)
};

struct Theorem1Check {
  bool consistent = false;
  bool degree = false;
  bool ppt = false;
};

// Both sides computed independently; consistent iff they agree.
Theorem1Check theorem1_check(const ArrayedGraph& g, double tol = kDefaultTolerance);

enum class Verdict { SeparableCertified, EntangledNpt, EntangledPptRealignment, UndecidedPpt };

std::string_view verdict_name(Verdict v) noexcept;

struct CriteriaReport {
  bool degree_criterion = false;
  PptResult ppt;
  RealignmentResult realignment;
  LineSumReport line_sum;
  Verdict verdict = Verdict::UndecidedPpt;
  // Present exactly when verdict == SeparableCertified and a constructive
  // decomposition backs it (always, except for the line-sum certificate).
  std::optional<SeparableDecomposition> decomposition;
};

CriteriaReport verdict(const ArrayedGraph& g, double tol = kDefaultTolerance);

}  // namespace lapsep
