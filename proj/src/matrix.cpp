#include "veesys/matrix.hpp"

#include <sstream>
#include <utility>

#include "veesys/error.hpp"

namespace veesys {

Rational dot(const VectorQ& a, const VectorQ& b) {
  if (a.size() != b.size()) throw InputError("dot product of vectors of different length");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

MatrixQ::MatrixQ(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

MatrixQ MatrixQ::identity(std::size_t n) {
  MatrixQ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatrixQ MatrixQ::from_rows(const std::vector<VectorQ>& rows) {
  MatrixQ m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

MatrixQ MatrixQ::outer(const VectorQ& column, const VectorQ& row) {
  MatrixQ m(column.size(), row.size());
  for (std::size_t i = 0; i < column.size(); ++i)
    for (std::size_t j = 0; j < row.size(); ++j) m(i, j) = column[i] * row[j];
  return m;
}

VectorQ MatrixQ::row(std::size_t i) const {
  return VectorQ(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

VectorQ MatrixQ::column(std::size_t j) const {
  VectorQ c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

MatrixQ MatrixQ::transpose() const {
  MatrixQ t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool MatrixQ::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool MatrixQ::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Rational MatrixQ::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

MatrixQ& MatrixQ::operator+=(const MatrixQ& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

MatrixQ& MatrixQ::operator-=(const MatrixQ& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

MatrixQ& MatrixQ::operator*=(const Rational& c) {
  for (auto& x : data_) x *= c;
  return *this;
}

MatrixQ operator*(const MatrixQ& a, const MatrixQ& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
  MatrixQ out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

VectorQ operator*(const MatrixQ& a, const VectorQ& v) {
  if (a.cols_ != v.size()) throw InputError("matrix-vector shape mismatch");
  VectorQ out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
  return out;
}

std::string MatrixQ::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

MatrixQ commutator(const MatrixQ& a, const MatrixQ& b) { return a * b - b * a; }

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

// Scales every row by the lcm of its denominators; returns the scale factors.
std::vector<Integer> integer_rows(const MatrixQ& m, IntMatrix& out) {
  out.assign(m.rows(), std::vector<Integer>(m.cols()));
  std::vector<Integer> scale(m.rows(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    scale[i] = l;
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  return scale;
}

void divexact(Integer& x, const Integer& d) { mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t()); }

}  // namespace

MatrixQ matrix_inverse(const MatrixQ& m) {
  if (!m.is_square()) throw InputError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix a;
  const std::vector<Integer> scale = integer_rows(m, a);
  for (std::size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n);
    a[i][n + i] = 1;
  }
  // Fraction-free Gauss-Jordan: after step k every entry is a minor of the
  // augmented matrix, so each division by the previous pivot is exact.
  Integer previous = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k] == 0) ++pivot;
    if (pivot == n) throw SingularMatrixError(rank(m), "singular matrix");
    if (pivot != k) std::swap(a[pivot], a[k]);
    const Integer& akk = a[k][k];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Integer aik = a[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        a[i][j] = akk * a[i][j] - aik * a[k][j];
        divexact(a[i][j], previous);
      }
      a[i][k] = 0;
    }
    previous = akk;
  }
  // Left block is now previous * Id.
  MatrixQ inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational x(a[i][n + j] * scale[j], previous);
      x.canonicalize();
      inv(i, j) = x;
    }
  return inv;
}

Rational determinant(const MatrixQ& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a;
  const std::vector<Integer> scale = integer_rows(m, a);
  int sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        divexact(a[i][j], previous);
      }
      a[i][k] = 0;
    }
    previous = a[k][k];
  }
  Integer denominator = 1;
  for (const auto& s : scale) denominator *= s;
  Rational det(sign * a[n - 1][n - 1], denominator);
  det.canonicalize();
  return det;
}

MatrixQ rref(const MatrixQ& m) {
  MatrixQ a = m;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(lead_row, j));
    const Rational inv = 1 / a(lead_row, col);
    for (std::size_t j = 0; j < a.cols(); ++j) a(lead_row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == lead_row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(lead_row, j);
    }
    ++lead_row;
  }
  MatrixQ out(lead_row, a.cols());
  for (std::size_t i = 0; i < lead_row; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

std::size_t rank(const MatrixQ& m) { return rref(m).rows(); }

bool Tensor3::fully_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        const Rational& x = (*this)(i, j, k);
        if (x != (*this)(j, i, k) || x != (*this)(i, k, j) || x != (*this)(k, j, i)) return false;
      }
  return true;
}

}  // namespace veesys
