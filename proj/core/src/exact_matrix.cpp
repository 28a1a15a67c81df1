#include "lapsep/exact_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "lapsep/errors.hpp"

namespace lapsep {

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

RationalSymmetricMatrix::RationalSymmetricMatrix(std::size_t n) : n_(n), data_(n * (n + 1) / 2) {}

RationalSymmetricMatrix RationalSymmetricMatrix::identity(std::size_t n) {
  RationalSymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalSymmetricMatrix RationalSymmetricMatrix::diagonal(const std::vector<Rational>& diag) {
  RationalSymmetricMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.at(i, i) = diag[i];
  return m;
}

Rational RationalSymmetricMatrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

std::vector<Rational> RationalSymmetricMatrix::row_sums() const {
  std::vector<Rational> sums(n_, Rational(0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) sums[i] += (*this)(i, j);
  return sums;
}

bool RationalSymmetricMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (sgn((*this)(i, j)) != 0) return false;
  return true;
}

RationalSymmetricMatrix RationalSymmetricMatrix::scaled(const Rational& factor) const {
  RationalSymmetricMatrix out = *this;
  for (auto& v : out.data_) v *= factor;
  return out;
}

std::vector<Rational> RationalSymmetricMatrix::apply(const std::vector<Rational>& x) const {
  if (x.size() != n_) throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix dimension");
  std::vector<Rational> y(n_, Rational(0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

Rational RationalSymmetricMatrix::quadratic_form(const std::vector<Rational>& x) const {
  const auto y = apply(x);
  Rational s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += x[i] * y[i];
  return s;
}

RationalSymmetricMatrix& RationalSymmetricMatrix::operator+=(const RationalSymmetricMatrix& other) {
  if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "matrix sum of different dimensions");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

RationalSymmetricMatrix& RationalSymmetricMatrix::operator-=(const RationalSymmetricMatrix& other) {
  if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "matrix difference of different dimensions");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

bool operator==(const RationalSymmetricMatrix& a, const RationalSymmetricMatrix& b) {
  return a.n_ == b.n_ && a.data_ == b.data_;
}

std::vector<double> RationalSymmetricMatrix::to_doubles() const {
  std::vector<double> out(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i * n_ + j] = (*this)(i, j).get_d();
  return out;
}

namespace {

void check_shape(std::size_t n, ArrayShape shape) {
  if (shape.p < 1 || shape.q < 1 || n != shape.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "matrix dimension " + std::to_string(n) + " is not p*q = " + std::to_string(shape.p) + "*" +
                    std::to_string(shape.q));
}

}  // namespace

RationalSymmetricMatrix partial_transpose_matrix(const RationalSymmetricMatrix& m, ArrayShape shape) {
  check_shape(m.dim(), shape);
  const auto p = static_cast<std::size_t>(shape.p);
  const auto q = static_cast<std::size_t>(shape.q);
  RationalSymmetricMatrix out(m.dim());
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) {
          const std::size_t row = i * q + j;
          const std::size_t col = k * q + l;
          if (col > row) continue;
          out.at(row, col) = m(i * q + l, k * q + j);
        }
  return out;
}

RationalSymmetricMatrix partial_trace_B(const RationalSymmetricMatrix& m, ArrayShape shape) {
  check_shape(m.dim(), shape);
  const auto p = static_cast<std::size_t>(shape.p);
  const auto q = static_cast<std::size_t>(shape.q);
  RationalSymmetricMatrix out(p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k <= i; ++k) {
      Rational s = 0;
      for (std::size_t j = 0; j < q; ++j) s += m(i * q + j, k * q + j);
      out.at(i, k) = s;
    }
  return out;
}

namespace {

// One elimination step, kept so a witness found in a Schur complement can be
// lifted back to the original coordinates.
struct PivotStep {
  std::size_t pivot;
  Rational pivot_value;
  std::vector<std::pair<std::size_t, Rational>> row;  // entries (j, S_pj) over the active set at that stage
};

std::vector<Rational> lift_witness(std::vector<Rational> x, const std::vector<PivotStep>& steps) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    Rational acc = 0;
    for (const auto& [j, v] : it->row) acc += v * x[j];
    x[it->pivot] = -acc / it->pivot_value;
  }
  return x;
}

}  // namespace

PsdCertificate exact_psd_check(const RationalSymmetricMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);

  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  std::vector<PivotStep> steps;

  auto fail = [&](std::vector<Rational> local) {
    PsdCertificate cert;
    cert.psd = false;
    cert.witness = lift_witness(std::move(local), steps);
    cert.witness_value = m.quadratic_form(cert.witness);
    return cert;
  };

  while (!active.empty()) {
    // Negative diagonal: e_i is already a witness in the current complement.
    for (std::size_t i : active) {
      if (sgn(a[i][i]) < 0) {
        std::vector<Rational> x(n, Rational(0));
        x[i] = 1;
        return fail(std::move(x));
      }
    }
    // Zero diagonal with a nonzero row: use the 2x2 principal block
    // [[0, b], [b, c]] and x = s e_i + e_j with 2bs = -(c + 1), value -1.
    for (std::size_t i : active) {
      if (sgn(a[i][i]) != 0) continue;
      for (std::size_t j : active) {
        if (j == i || sgn(a[i][j]) == 0) continue;
        std::vector<Rational> x(n, Rational(0));
        x[i] = -(a[j][j] + 1) / (2 * a[i][j]);
        x[j] = 1;
        return fail(std::move(x));
      }
    }

    auto best = std::max_element(active.begin(), active.end(),
                                 [&](std::size_t u, std::size_t v) { return a[u][u] < a[v][v]; });
    const std::size_t k = *best;
    if (sgn(a[k][k]) == 0) break;  // every remaining row is identically zero

    PivotStep step{k, a[k][k], {}};
    active.erase(best);
    for (std::size_t j : active)
      if (sgn(a[k][j]) != 0) step.row.emplace_back(j, a[k][j]);

    for (std::size_t i : active) {
      if (sgn(a[i][k]) == 0) continue;
      const Rational factor = a[i][k] / a[k][k];
      for (const auto& [j, v] : step.row) a[i][j] -= factor * v;
    }
    steps.push_back(std::move(step));
  }
  return {};
}

}  // namespace lapsep
