#pragma once

// Dense nonnegative matrices and vectors with arithmetic in both the
// classical semiring (+, *) and the max-times semiring (max, *).

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace maxspec {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Nonnegative vector. Every entry is finite and >= 0.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double fill = 0.0);
  explicit Vector(std::vector<double> entries);
  Vector(std::initializer_list<double> entries);

  static Vector unit(std::size_t n, std::size_t i);
  static Vector ones(std::size_t n) { return Vector(n, 1.0); }

  std::size_t size() const { return data_.size(); }
  double operator[](std::size_t i) const { return data_[i]; }
  void set(std::size_t i, double v);

  std::span<const double> entries() const { return data_; }
  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> data_;
};

/// Square nonnegative matrix stored row-major. Every entry is finite and >= 0.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0);
  /// Takes ownership of n*n row-major entries; throws if any entry is
  /// negative or non-finite.
  Matrix(std::size_t n, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix ones(std::size_t n) { return Matrix(n, 1.0); }
  static Matrix diagonal(std::span<const double> d);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v);

  std::span<const double> entries() const { return data_; }
  std::vector<double> column(std::size_t j) const;
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Max-times semiring.
Matrix max_mul(const Matrix& a, const Matrix& b);
Vector max_vec_mul(const Matrix& a, const Vector& x);
/// k-th max power; k = 0 gives the max-algebra identity.
Matrix max_power(const Matrix& a, unsigned k);
Matrix oplus(const Matrix& a, const Matrix& b);

// Classical semiring.
Matrix mul(const Matrix& a, const Matrix& b);
Vector mul_vec(const Matrix& a, const Vector& x);
Matrix classical_power(const Matrix& a, unsigned k);
Matrix add(const Matrix& a, const Matrix& b);

// Entrywise operations.
Matrix hadamard(const Matrix& a, const Matrix& b);
/// Entrywise t-th power with 0^t = 0. Requires t > 0.
Matrix hadamard_power(const Matrix& a, double t);
Matrix scale(const Matrix& a, double c);
Matrix transpose(const Matrix& a);

/// Largest entry.
double norm(const Matrix& a);
double norm(const Vector& x);

/// Left folds over a nonempty list.
Matrix max_product(std::span<const Matrix> factors);
Matrix product(std::span<const Matrix> factors);
Matrix hadamard_product(std::span<const Matrix> factors);

}  // namespace maxspec
