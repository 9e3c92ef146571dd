#include "surround/numerics.hpp"

#include "surround/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace surround {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("matrix entry count " + std::to_string(entries_.size()) +
                         " does not match " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double CMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (const auto& e : entries_) best = std::max(best, std::abs(e));
  return best;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

LuFactors::LuFactors(const CMatrix& m) : lu_(m) {
  if (!m.square() || m.rows() == 0) {
    throw DimensionError("LU factorization needs a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const std::size_t n = m.rows();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  smallest_pivot_ = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot_row = k;
    double pivot_abs = std::abs(lu_(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double a = std::abs(lu_(r, k));
      if (a > pivot_abs) {
        pivot_abs = a;
        pivot_row = r;
      }
    }
    if (pivot_row != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(pivot_row, c));
      std::swap(perm_[k], perm_[pivot_row]);
      sign_ = -sign_;
    }
    largest_pivot_ = std::max(largest_pivot_, pivot_abs);
    smallest_pivot_ = std::min(smallest_pivot_, pivot_abs);
    if (pivot_abs == 0.0) continue;

    const Complex pivot = lu_(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex factor = lu_(r, k) / pivot;
      lu_(r, k) = factor;
      if (factor == Complex{}) continue;
      for (std::size_t c = k + 1; c < n; ++c) lu_(r, c) -= factor * lu_(k, c);
    }
  }
}

Complex LuFactors::determinant() const noexcept {
  Complex det = static_cast<double>(sign_);
  for (std::size_t k = 0; k < size(); ++k) det *= lu_(k, k);
  return det;
}

CVector LuFactors::solve(std::span<const Complex> b, double singular_tol) const {
  const std::size_t n = size();
  if (b.size() != n) throw DimensionError("LU solve: right-hand side length mismatch");
  if (smallest_pivot_ <= singular_tol * largest_pivot_) {
    throw DegeneracyError("LU solve: matrix is singular to working tolerance");
  }
  CVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = b[perm_[i]];
    for (std::size_t k = 0; k < i; ++k) s -= lu_(i, k) * y[k];
    y[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex s = y[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= lu_(i, k) * y[k];
    y[i] = s / lu_(i, i);
  }
  return y;
}

Complex lu_determinant(const CMatrix& m) { return LuFactors(m).determinant(); }

double hadamard_bound(const CMatrix& m) {
  double bound = 1.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sq = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) sq += std::norm(m(r, c));
    bound *= std::sqrt(sq);
  }
  return bound;
}

CVector left_null_vector(const CMatrix& m, double tol) {
  if (!m.square() || m.rows() == 0) throw DimensionError("left_null_vector needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 1) {
    if (std::abs(m(0, 0)) > tol) throw DegeneracyError("left kernel is trivial");
    return {Complex{1.0}};
  }

  // Complete pivoting on mᵀ so the rank deficiency lands on the last pivot.
  CMatrix a = m.transpose();
  std::vector<std::size_t> col(n);
  std::iota(col.begin(), col.end(), std::size_t{0});
  double largest = 0.0;
  std::size_t rank = n;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    double best = -1.0;
    for (std::size_t r = k; r < n; ++r)
      for (std::size_t c = k; c < n; ++c) {
        const double v = std::abs(a(r, c));
        if (v > best) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    largest = std::max(largest, best);
    if (best <= tol * largest || best == 0.0) {
      rank = k;
      break;
    }
    if (pr != k)
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(pr, c));
    if (pc != k) {
      for (std::size_t r = 0; r < n; ++r) std::swap(a(r, k), a(r, pc));
      std::swap(col[k], col[pc]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex f = a(r, k) / a(k, k);
      if (f == Complex{}) continue;
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  if (rank != n - 1) {
    throw DegeneracyError("left kernel has dimension " + std::to_string(n - rank) +
                          ", expected 1");
  }

  // Free variable is the last permuted unknown; back-substitute the rest.
  CVector y(n);
  y[n - 1] = 1.0;
  for (std::size_t i = n - 1; i-- > 0;) {
    Complex s = 0.0;
    for (std::size_t c = i + 1; c < n; ++c) s -= a(i, c) * y[c];
    y[i] = s / a(i, i);
  }
  CVector v(n);
  for (std::size_t k = 0; k < n; ++k) v[col[k]] = y[k];

  Complex sum = std::accumulate(v.begin(), v.end(), Complex{});
  double vmax = 0.0;
  for (const auto& e : v) vmax = std::max(vmax, std::abs(e));
  if (std::abs(sum) <= tol * vmax) {
    throw DegeneracyError("left kernel vector sums to zero and cannot be normalized");
  }
  for (auto& e : v) e /= sum;

  const double scale = std::max(1.0, m.max_abs());
  for (std::size_t c = 0; c < n; ++c) {
    Complex r = 0.0;
    for (std::size_t k = 0; k < n; ++k) r += v[k] * m(k, c);
    if (std::abs(r) >= tol * scale) {
      throw DegeneracyError("left kernel residual " + std::to_string(std::abs(r)) +
                            " exceeds tolerance");
    }
  }
  return v;
}

std::vector<double> positive_left_null_vector(const CMatrix& m, double tol) {
  const CVector v = left_null_vector(m, tol);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i].imag()) >= 1e-10 || v[i].real() <= 0.0) {
      throw DegeneracyError("left kernel vector is not strictly positive at component " +
                            std::to_string(i));
    }
    out[i] = v[i].real();
  }
  return out;
}

CVector mat_vec(const CMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) {
    throw DimensionError("mat_vec: matrix has " + std::to_string(m.cols()) +
                         " columns, vector has " + std::to_string(v.size()) + " entries");
  }
  CVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

} // namespace surround
