#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "lapsep/shape.hpp"

namespace lapsep {

using Rational = mpq_class;

std::string to_string(const Rational& r);

// num/den in lowest terms. mpq_class(num, den) alone is not canonical.
inline Rational ratio(std::size_t num, std::size_t den) {
  Rational r(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  r.canonicalize();
  return r;
}

// Exact symmetric matrix. Only the lower triangle is stored, so symmetry
// holds by construction. Indices are 0-based.
class RationalSymmetricMatrix {
 public:
  RationalSymmetricMatrix() = default;
  explicit RationalSymmetricMatrix(std::size_t n);

  static RationalSymmetricMatrix identity(std::size_t n);
  static RationalSymmetricMatrix diagonal(const std::vector<Rational>& diag);

  std::size_t dim() const noexcept { return n_; }

  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[offset(i, j)]; }
  Rational& at(std::size_t i, std::size_t j) { return data_[offset(i, j)]; }

  Rational trace() const;
  std::vector<Rational> row_sums() const;
  bool is_diagonal() const;

  RationalSymmetricMatrix scaled(const Rational& factor) const;
  // y = M x
  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  // x^T M x
  Rational quadratic_form(const std::vector<Rational>& x) const;

  RationalSymmetricMatrix& operator+=(const RationalSymmetricMatrix& other);
  RationalSymmetricMatrix& operator-=(const RationalSymmetricMatrix& other);
  friend RationalSymmetricMatrix operator+(RationalSymmetricMatrix a, const RationalSymmetricMatrix& b) { return a += b; }
  friend RationalSymmetricMatrix operator-(RationalSymmetricMatrix a, const RationalSymmetricMatrix& b) { return a -= b; }
  friend bool operator==(const RationalSymmetricMatrix& a, const RationalSymmetricMatrix& b);

  // Row-major dense copy, mostly for diagnostics and tests.
  std::vector<double> to_doubles() const;

 private:
  std::size_t offset(std::size_t i, std::size_t j) const noexcept {
    if (i < j) std::swap(i, j);
    return i * (i + 1) / 2 + j;
  }

  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

// Transpose every q x q block of the p x p block grid. Symmetric input
// stays symmetric: entry ((i,j),(k,l)) becomes entry ((i,l),(k,j)).
RationalSymmetricMatrix partial_transpose_matrix(const RationalSymmetricMatrix& m, ArrayShape shape);

// (i,i') entry = sum_j M((i,j),(i',j)).
RationalSymmetricMatrix partial_trace_B(const RationalSymmetricMatrix& m, ArrayShape shape);

struct PsdCertificate {
  bool psd = true;
  // Only set when psd == false: an exact vector with witness^T M witness < 0.
  std::vector<Rational> witness;
  Rational witness_value;
};

// Exact decision by symmetric-pivoted rational elimination. Pivot on the
// largest remaining diagonal; a negative diagonal, or a zero diagonal with a
// nonzero off-diagonal in its row, certifies indefiniteness.
PsdCertificate exact_psd_check(const RationalSymmetricMatrix& m);

}  // namespace lapsep
