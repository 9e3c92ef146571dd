#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace surround {

/// A point or vector of the plane, stored as re + im·ι.
using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Euclidean inner product of two plane vectors: re(a)·re(b) + im(a)·im(b).
inline double inner(Complex a, Complex b) noexcept {
  return a.real() * b.real() + a.imag() * b.imag();
}

/// Dense row-major complex matrix. Sized for tens of rows, not thousands.
class CMatrix {
public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static CMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  Complex operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return entries_; }

  CMatrix transpose() const;

  /// Largest modulus over all entries.
  double max_abs() const noexcept;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// LU factors of a square matrix with row pivoting on complex modulus (PA = LU).
class LuFactors {
public:
  explicit LuFactors(const CMatrix& m);

  std::size_t size() const noexcept { return lu_.rows(); }
  Complex determinant() const noexcept;

  /// Solves m·x = b. Throws DegeneracyError when a pivot is below the
  /// singular tolerance relative to the largest pivot.
  CVector solve(std::span<const Complex> b, double singular_tol = 1e-9) const;

  double largest_pivot() const noexcept { return largest_pivot_; }
  double smallest_pivot() const noexcept { return smallest_pivot_; }

private:
  CMatrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  double largest_pivot_ = 0.0;
  double smallest_pivot_ = 0.0;
};

/// Determinant by Gaussian elimination with partial pivoting.
Complex lu_determinant(const CMatrix& m);

/// Product of row norms, the Hadamard bound on |det(m)|. Used as the scale
/// against which a small determinant counts as zero.
double hadamard_bound(const CMatrix& m);

/// Returns v with vᵀ·m ≈ 0, normalized so its components sum to 1.
/// Throws DegeneracyError unless the left kernel is one-dimensional at the
/// given tolerance or if the kernel vector sums to zero.
CVector left_null_vector(const CMatrix& m, double tol = 1e-9);

/// left_null_vector restricted to the case where the kernel vector is a
/// strictly positive real probability vector (irreducible Laplacians).
std::vector<double> positive_left_null_vector(const CMatrix& m, double tol = 1e-9);

CVector mat_vec(const CMatrix& m, std::span<const Complex> v);

} // namespace surround
