#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "veesys/rational.hpp"

namespace veesys {

using VectorQ = std::vector<Rational>;

Rational dot(const VectorQ& a, const VectorQ& b);

/// Dense row-major rational matrix.
class MatrixQ {
 public:
  MatrixQ() = default;
  MatrixQ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  MatrixQ(std::initializer_list<std::initializer_list<Rational>> rows);

  static MatrixQ identity(std::size_t n);
  static MatrixQ from_rows(const std::vector<VectorQ>& rows);
  /// Column vector times row vector.
  static MatrixQ outer(const VectorQ& column, const VectorQ& row);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  VectorQ row(std::size_t i) const;
  VectorQ column(std::size_t j) const;

  MatrixQ transpose() const;
  bool is_zero() const;
  bool is_symmetric() const;
  Rational trace() const;

  MatrixQ& operator+=(const MatrixQ& o);
  MatrixQ& operator-=(const MatrixQ& o);
  MatrixQ& operator*=(const Rational& c);
  friend MatrixQ operator+(MatrixQ a, const MatrixQ& b) { return a += b; }
  friend MatrixQ operator-(MatrixQ a, const MatrixQ& b) { return a -= b; }
  friend MatrixQ operator*(MatrixQ a, const Rational& c) { return a *= c; }
  friend MatrixQ operator*(const Rational& c, MatrixQ a) { return a *= c; }
  friend MatrixQ operator*(const MatrixQ& a, const MatrixQ& b);
  friend VectorQ operator*(const MatrixQ& a, const VectorQ& v);
  friend bool operator==(const MatrixQ&, const MatrixQ&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

MatrixQ commutator(const MatrixQ& a, const MatrixQ& b);

/// Exact inverse by fraction-free Gauss-Jordan elimination on the row-scaled
/// integer matrix. Throws SingularMatrixError (with the rank) when singular.
MatrixQ matrix_inverse(const MatrixQ& m);

/// Exact determinant (Bareiss).
Rational determinant(const MatrixQ& m);

std::size_t rank(const MatrixQ& m);

/// Reduced row echelon form with unit pivots; zero rows removed.
MatrixQ rref(const MatrixQ& m);

/// Dense n x n x n rational array, index order (i, j, k).
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t n) : n_(n), data_(n * n * n) {}
  std::size_t dim() const { return n_; }
  Rational& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n_ + j) * n_ + k];
  }
  /// Invariant under every permutation of the three indices.
  bool fully_symmetric() const;
  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

/// Dense rank-4 rational array, index order (a, b, c, d).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n) {}
  std::size_t dim() const { return n_; }
  Rational& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return data_[((a * n_ + b) * n_ + c) * n_ + d];
  }
  const Rational& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return data_[((a * n_ + b) * n_ + c) * n_ + d];
  }
  friend bool operator==(const Tensor4&, const Tensor4&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

}  // namespace veesys
