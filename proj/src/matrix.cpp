#include "maxspec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace maxspec {

namespace {

void check_entry(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument("matrix entries must be finite and nonnegative, got " +
                                std::to_string(v));
  }
}

void require_same(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Vector::Vector(std::size_t n, double fill) : data_(n, fill) { check_entry(fill); }

Vector::Vector(std::vector<double> entries) : data_(std::move(entries)) {
  for (double v : data_) check_entry(v);
}

Vector::Vector(std::initializer_list<double> entries) : Vector(std::vector<double>(entries)) {}

Vector Vector::unit(std::size_t n, std::size_t i) {
  if (i >= n) throw std::out_of_range("unit vector index out of range");
  Vector e(n);
  e.data_[i] = 1.0;
  return e;
}

void Vector::set(std::size_t i, double v) {
  check_entry(v);
  data_.at(i) = v;
}

Matrix::Matrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) { check_entry(fill); }

Matrix::Matrix(std::size_t n, std::vector<double> entries) : n_(n), data_(std::move(entries)) {
  if (data_.size() != n * n) {
    throw DimensionError("matrix needs " + std::to_string(n * n) + " entries, got " +
                         std::to_string(data_.size()));
  }
  for (double v : data_) check_entry(v);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  n_ = rows.size();
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("matrix rows must form a square");
    for (double v : row) {
      check_entry(v);
      data_.push_back(v);
    }
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw DimensionError("matrix rows must form a square");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Matrix(n, std::move(entries));
}

void Matrix::set(std::size_t i, std::size_t j, double v) {
  check_entry(v);
  if (i >= n_ || j >= n_) throw std::out_of_range("matrix index out of range");
  data_[i * n_ + j] = v;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = data_[i * n_ + j];
  return c;
}

Matrix max_mul(const Matrix& a, const Matrix& b) {
  require_same(a.size(), b.size(), "max_mul");
  const std::size_t n = a.size();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        out[i * n + j] = std::max(out[i * n + j], aik * b(k, j));
      }
    }
  }
  return Matrix(n, std::move(out));
}

Vector max_vec_mul(const Matrix& a, const Vector& x) {
  require_same(a.size(), x.size(), "max_vec_mul");
  const std::size_t n = a.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] = std::max(out[i], a(i, j) * x[j]);
  }
  return Vector(std::move(out));
}

Matrix max_power(const Matrix& a, unsigned k) {
  if (k == 0) return Matrix::identity(a.size());
  Matrix result = a;
  for (unsigned step = 1; step < k; ++step) result = max_mul(result, a);
  return result;
}

Matrix oplus(const Matrix& a, const Matrix& b) {
  require_same(a.size(), b.size(), "oplus");
  std::vector<double> out(a.entries().begin(), a.entries().end());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = std::max(out[p], b.entries()[p]);
  return Matrix(a.size(), std::move(out));
}

Matrix mul(const Matrix& a, const Matrix& b) {
  require_same(a.size(), b.size(), "mul");
  const std::size_t n = a.size();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += aik * b(k, j);
    }
  }
  return Matrix(n, std::move(out));
}

Vector mul_vec(const Matrix& a, const Vector& x) {
  require_same(a.size(), x.size(), "mul_vec");
  const std::size_t n = a.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += a(i, j) * x[j];
  }
  return Vector(std::move(out));
}

Matrix classical_power(const Matrix& a, unsigned k) {
  Matrix result = Matrix::identity(a.size());
  for (unsigned step = 0; step < k; ++step) result = mul(result, a);
  return result;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same(a.size(), b.size(), "add");
  std::vector<double> out(a.entries().begin(), a.entries().end());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] += b.entries()[p];
  return Matrix(a.size(), std::move(out));
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  require_same(a.size(), b.size(), "hadamard");
  std::vector<double> out(a.entries().begin(), a.entries().end());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] *= b.entries()[p];
  return Matrix(a.size(), std::move(out));
}

Matrix hadamard_power(const Matrix& a, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("hadamard_power requires a finite exponent t > 0");
  }
  std::vector<double> out(a.entries().begin(), a.entries().end());
  for (double& v : out) v = v == 0.0 ? 0.0 : std::pow(v, t);
  return Matrix(a.size(), std::move(out));
}

Matrix scale(const Matrix& a, double c) {
  std::vector<double> out(a.entries().begin(), a.entries().end());
  for (double& v : out) v *= c;
  return Matrix(a.size(), std::move(out));
}

Matrix transpose(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j * n + i] = a(i, j);
  }
  return Matrix(n, std::move(out));
}

double norm(const Matrix& a) {
  double m = 0.0;
  for (double v : a.entries()) m = std::max(m, v);
  return m;
}

double norm(const Vector& x) {
  double m = 0.0;
  for (double v : x.entries()) m = std::max(m, v);
  return m;
}

namespace {

template <typename Op>
Matrix fold(std::span<const Matrix> factors, Op op, const char* name) {
  if (factors.empty()) throw std::invalid_argument(std::string(name) + ": empty factor list");
  Matrix acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = op(acc, factors[k]);
  return acc;
}

}  // namespace

Matrix max_product(std::span<const Matrix> factors) { return fold(factors, max_mul, "max_product"); }
Matrix product(std::span<const Matrix> factors) { return fold(factors, mul, "product"); }
Matrix hadamard_product(std::span<const Matrix> factors) {
  return fold(factors, hadamard, "hadamard_product");
}

}  // namespace maxspec
