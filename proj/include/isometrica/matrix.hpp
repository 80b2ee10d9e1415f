#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace isometrica {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense rectangular complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zero(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  /// Column vector with the given entries.
  static ComplexMatrix column_vector(std::span<const Complex> v);
  /// The rank-one operator h -> (h, g) f, i.e. f g*.
  static ComplexMatrix rank_one(std::span<const Complex> f, std::span<const Complex> g);
  /// Block-diagonal sum a (+) b.
  static ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  ComplexVector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Complex> v);
  /// Submatrix formed by the listed columns, in order.
  ComplexMatrix columns(std::span<const std::size_t> indices) const;

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// Largest entry modulus; cheap exact-zero and closeness checks.
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// Euclidean inner product (h, g) = sum h_i conj(g_i), linear in h.
Complex inner(std::span<const Complex> h, std::span<const Complex> g);
double norm(std::span<const Complex> v);

}  // namespace isometrica
