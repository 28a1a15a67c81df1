#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lapsep/errors.hpp"
#include "lapsep/exact_matrix.hpp"
#include "lapsep/shape.hpp"

namespace lapsep {

using Complex = std::complex<double>;

// Row-major dense matrix with finite entries.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> values() const noexcept { return data_; }

  double frobenius_norm() const;
  T trace() const;
  DenseMatrix adjoint() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexDenseMatrix = DenseMatrix<Complex>;

ComplexDenseMatrix to_complex(const RationalSymmetricMatrix& m);
ComplexDenseMatrix to_complex(const RealMatrix& m);
RealMatrix to_real(const RationalSymmetricMatrix& m);

ComplexDenseMatrix operator*(const ComplexDenseMatrix& a, const ComplexDenseMatrix& b);
ComplexDenseMatrix operator-(const ComplexDenseMatrix& a, const ComplexDenseMatrix& b);
ComplexDenseMatrix kron(const ComplexDenseMatrix& a, const ComplexDenseMatrix& b);
ComplexDenseMatrix outer(std::span<const Complex> u, std::span<const Complex> v);  // u v^*
std::vector<Complex> kron(std::span<const Complex> x, std::span<const Complex> y);

// Same block rule as the exact overloads; square input of dimension p*q.
template <class T>
DenseMatrix<T> partial_transpose_matrix(const DenseMatrix<T>& m, ArrayShape shape);
template <class T>
DenseMatrix<T> partial_trace_B(const DenseMatrix<T>& m, ArrayShape shape);

// p^2 x q^2 reshuffle: entry ((i,i'),(j,j')) = rho((i,j),(i',j')).
ComplexDenseMatrix realign(const ComplexDenseMatrix& rho, ArrayShape shape);

struct Spectrum {
  std::vector<double> values;      // descending
  double residual = 0.0;           // off-diagonal Frobenius mass left by the solver
};

struct EigenDecomposition {
  std::vector<double> values;      // descending
  ComplexDenseMatrix vectors;      // column k pairs with values[k]
  double residual = 0.0;
};

// Cyclic Jacobi; stops once the off-diagonal Frobenius mass drops below
// 1e-13 of the input norm. Throws NotSymmetric when |M - M^*| > tol*|M|_F.
Spectrum symmetric_eigenvalues(const ComplexDenseMatrix& m, double tol = kDefaultTolerance);
Spectrum symmetric_eigenvalues(const RealMatrix& m, double tol = kDefaultTolerance);
EigenDecomposition hermitian_eigen(const ComplexDenseMatrix& m, double tol = kDefaultTolerance);

// One-sided (Hestenes) Jacobi. Descending.
std::vector<double> singular_values(const ComplexDenseMatrix& m, double tol = kDefaultTolerance);
double trace_norm(const ComplexDenseMatrix& m, double tol = kDefaultTolerance);

// Principal square root of a PSD Hermitian matrix. Eigenvalues within
// clip*|M|_F of zero (or below) are treated as exact zeros.
ComplexDenseMatrix psd_sqrt(const ComplexDenseMatrix& m, double clip);

}  // namespace lapsep
