#include "lapsep/dense_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lapsep {

namespace {

inline double conj_of(double x) { return x; }
inline Complex conj_of(Complex x) { return std::conj(x); }
inline double abs2(double x) { return x * x; }
inline double abs2(Complex x) { return std::norm(x); }
inline double real_of(double x) { return x; }
inline double real_of(Complex x) { return x.real(); }

// Unit-modulus phase of c (c != 0).
inline double phase_of(double c) { return c < 0 ? -1.0 : 1.0; }
inline Complex phase_of(Complex c) { return c / std::abs(c); }

void check_shape(std::size_t rows, std::size_t cols, ArrayShape shape) {
  if (rows != cols || shape.p < 1 || shape.q < 1 || rows != shape.dim())
    throw Error(ErrorCode::DimensionMismatch, "matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                                                  ", expected square of dimension p*q = " +
                                                  std::to_string(shape.dim()));
}

// 2x2 unitary that annihilates the (p, q) entry of the Hermitian pencil
// [[a, c], [conj(c), b]]. Column form: J = diag(1, conj(phase(c))) * R(theta).
template <class T>
struct Rotation {
  T pp, pq, qp, qq;
};

template <class T>
Rotation<T> jacobi_rotation(double a, double b, T c) {
  const double mag = std::sqrt(abs2(c));
  const T e = phase_of(c);
  const double tau = (b - a) / (2.0 * mag);
  const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double cs = 1.0 / std::sqrt(1.0 + t * t);
  const double sn = t * cs;
  return {T(cs), T(sn), -conj_of(e) * sn, conj_of(e) * cs};
}

template <class T>
double off_diagonal_mass(const DenseMatrix<T>& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += abs2(a(i, j));
  return std::sqrt(s);
}

template <class T>
void check_hermitian(const DenseMatrix<T>& m, double tol) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "eigensolve of a non-square matrix");
  double diff = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) diff += abs2(m(i, j) - conj_of(m(j, i)));
  if (std::sqrt(diff) > tol * std::max(1.0, m.frobenius_norm()))
    throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric/Hermitian within tolerance");
}

// Cyclic Jacobi on a Hermitian copy; returns the diagonalised matrix and
// accumulates rotations into v when requested.
template <class T>
double jacobi_diagonalize(DenseMatrix<T>& a, DenseMatrix<T>* v) {
  const std::size_t n = a.rows();
  const double scale = a.frobenius_norm();
  const double threshold = 1e-13 * scale;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T c = a(p, q);
        if (abs2(c) == 0.0) continue;
        const auto r = jacobi_rotation<T>(real_of(a(p, p)), real_of(a(q, q)), c);
        for (std::size_t k = 0; k < n; ++k) {
          const T akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * r.pp + akq * r.qp;
          a(k, q) = akp * r.pq + akq * r.qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = a(p, k), aqk = a(q, k);
          a(p, k) = conj_of(r.pp) * apk + conj_of(r.qp) * aqk;
          a(q, k) = conj_of(r.pq) * apk + conj_of(r.qq) * aqk;
        }
        a(p, q) = T{};
        a(q, p) = T{};
        a(p, p) = T(real_of(a(p, p)));
        a(q, q) = T(real_of(a(q, q)));
        if (v) {
          for (std::size_t k = 0; k < n; ++k) {
            const T vkp = (*v)(k, p), vkq = (*v)(k, q);
            (*v)(k, p) = vkp * r.pp + vkq * r.qp;
            (*v)(k, q) = vkp * r.pq + vkq * r.qq;
          }
        }
      }
    }
  }
  return off_diagonal_mass(a);
}

template <class T>
Spectrum eigenvalues_impl(const DenseMatrix<T>& m, double tol) {
  check_hermitian(m, tol);
  DenseMatrix<T> a = m;
  Spectrum s;
  s.residual = jacobi_diagonalize<T>(a, nullptr);
  s.values.resize(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) s.values[i] = real_of(a(i, i));
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

}  // namespace

template <class T>
double DenseMatrix<T>::frobenius_norm() const {
  double s = 0;
  for (const auto& x : data_) s += abs2(x);
  return std::sqrt(s);
}

template <class T>
T DenseMatrix<T>::trace() const {
  T t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

template <class T>
DenseMatrix<T> DenseMatrix<T>::adjoint() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = conj_of((*this)(i, j));
  return out;
}

template class DenseMatrix<double>;
template class DenseMatrix<Complex>;

ComplexDenseMatrix to_complex(const RationalSymmetricMatrix& m) {
  ComplexDenseMatrix out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

ComplexDenseMatrix to_complex(const RealMatrix& m) {
  ComplexDenseMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

RealMatrix to_real(const RationalSymmetricMatrix& m) {
  RealMatrix out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

ComplexDenseMatrix operator*(const ComplexDenseMatrix& a, const ComplexDenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  ComplexDenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexDenseMatrix operator-(const ComplexDenseMatrix& a, const ComplexDenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  ComplexDenseMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

ComplexDenseMatrix kron(const ComplexDenseMatrix& a, const ComplexDenseMatrix& b) {
  ComplexDenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

ComplexDenseMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
  ComplexDenseMatrix out(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * std::conj(v[j]);
  return out;
}

std::vector<Complex> kron(std::span<const Complex> x, std::span<const Complex> y) {
  std::vector<Complex> out;
  out.reserve(x.size() * y.size());
  for (const auto& a : x)
    for (const auto& b : y) out.push_back(a * b);
  return out;
}

template <class T>
DenseMatrix<T> partial_transpose_matrix(const DenseMatrix<T>& m, ArrayShape shape) {
  check_shape(m.rows(), m.cols(), shape);
  const auto p = static_cast<std::size_t>(shape.p);
  const auto q = static_cast<std::size_t>(shape.q);
  DenseMatrix<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) out(i * q + j, k * q + l) = m(i * q + l, k * q + j);
  return out;
}

template <class T>
DenseMatrix<T> partial_trace_B(const DenseMatrix<T>& m, ArrayShape shape) {
  check_shape(m.rows(), m.cols(), shape);
  const auto p = static_cast<std::size_t>(shape.p);
  const auto q = static_cast<std::size_t>(shape.q);
  DenseMatrix<T> out(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t j = 0; j < q; ++j) out(i, k) += m(i * q + j, k * q + j);
  return out;
}

template RealMatrix partial_transpose_matrix(const RealMatrix&, ArrayShape);
template ComplexDenseMatrix partial_transpose_matrix(const ComplexDenseMatrix&, ArrayShape);
template RealMatrix partial_trace_B(const RealMatrix&, ArrayShape);
template ComplexDenseMatrix partial_trace_B(const ComplexDenseMatrix&, ArrayShape);

ComplexDenseMatrix realign(const ComplexDenseMatrix& rho, ArrayShape shape) {
  check_shape(rho.rows(), rho.cols(), shape);
  const auto p = static_cast<std::size_t>(shape.p);
  const auto q = static_cast<std::size_t>(shape.q);
  ComplexDenseMatrix out(p * p, q * q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t ip = 0; ip < p; ++ip)
      for (std::size_t j = 0; j < q; ++j)
        for (std::size_t jp = 0; jp < q; ++jp) out(i * p + ip, j * q + jp) = rho(i * q + j, ip * q + jp);
  return out;
}

Spectrum symmetric_eigenvalues(const ComplexDenseMatrix& m, double tol) { return eigenvalues_impl(m, tol); }
Spectrum symmetric_eigenvalues(const RealMatrix& m, double tol) { return eigenvalues_impl(m, tol); }

EigenDecomposition hermitian_eigen(const ComplexDenseMatrix& m, double tol) {
  check_hermitian(m, tol);
  const std::size_t n = m.rows();
  ComplexDenseMatrix a = m;
  ComplexDenseMatrix v = ComplexDenseMatrix::identity(n);
  EigenDecomposition out;
  out.residual = jacobi_diagonalize<Complex>(a, &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
  out.values.resize(n);
  out.vectors = ComplexDenseMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> singular_values(const ComplexDenseMatrix& m, double /*tol*/) {
  // Work on whichever orientation has fewer columns.
  ComplexDenseMatrix a = m.cols() > m.rows() ? m.adjoint() : m;
  const std::size_t rows = a.rows();
  const std::size_t n = a.cols();
  constexpr int kMaxSweeps = 100;
  constexpr double kOrthogonality = 1e-14;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0;
        Complex gamma{};
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += std::norm(a(k, p));
          beta += std::norm(a(k, q));
          gamma += std::conj(a(k, p)) * a(k, q);
        }
        if (std::abs(gamma) <= kOrthogonality * std::sqrt(alpha * beta) || std::abs(gamma) == 0.0) continue;
        rotated = true;
        const auto r = jacobi_rotation<Complex>(alpha, beta, gamma);
        for (std::size_t k = 0; k < rows; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * r.pp + akq * r.qp;
          a(k, q) = akp * r.pq + akq * r.qq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t c = 0; c < n; ++c) {
    double s = 0;
    for (std::size_t k = 0; k < rows; ++k) s += std::norm(a(k, c));
    sv[c] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double trace_norm(const ComplexDenseMatrix& m, double tol) {
  const auto sv = singular_values(m, tol);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

ComplexDenseMatrix psd_sqrt(const ComplexDenseMatrix& m, double clip) {
  const auto eig = hermitian_eigen(m);
  const double cutoff = clip * std::max(1.0, m.frobenius_norm());
  const std::size_t n = m.rows();
  ComplexDenseMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] <= cutoff) continue;
    const double root = std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += root * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return out;
}

}  // namespace lapsep
