#include "lpa/linalg.hpp"

#include <sstream>
#include <utility>

#include "lpa/error.hpp"

namespace lpa {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix Matrix::from_rows(Field field, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ShapeMismatch("row length does not match column count");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::row_vector(std::size_t r) const {
  auto span = row(r);
  return Vector(span.begin(), span.end());
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Vector Matrix::apply(std::span<const Scalar> x) const {
  if (x.size() != cols_) throw ShapeMismatch("vector length does not match column count");
  Vector y(rows_, field_.zero());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (!a.is_zero() && !x[c].is_zero()) y[r] += a * x[c];
    }
  }
  return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product shape mismatch");
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (!y.is_zero()) out(i, j) += x * y;
      }
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("matrix sum shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

std::vector<std::size_t> Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> support;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t p = rank;
    while (p < rows_ && (*this)(p, c).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != rank) {
      for (std::size_t j = c; j < cols_; ++j) std::swap((*this)(p, j), (*this)(rank, j));
    }
    Scalar inv = (*this)(rank, c).inverse();
    support.clear();
    for (std::size_t j = c; j < cols_; ++j) {
      Scalar& x = (*this)(rank, j);
      if (x.is_zero()) continue;
      x *= inv;
      support.push_back(j);
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == rank) continue;
      if ((*this)(r, c).is_zero()) continue;
      Scalar factor = (*this)(r, c);
      for (std::size_t j : support) (*this)(r, j).sub_mul(factor, (*this)(rank, j));
    }
    pivots.push_back(c);
    ++rank;
  }
  rows_ = rank;
  data_.resize(rank * cols_);
  return pivots;
}

std::vector<Vector> Matrix::nullspace() const {
  Matrix e = *this;
  auto pivots = e.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols_, field_.zero());
    v[free] = field_.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -e(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> Matrix::solve(std::span<const Scalar> b) const {
  if (b.size() != rows_) throw ShapeMismatch("right-hand side length does not match row count");
  Matrix aug(field_, rows_, cols_ + 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) aug(r, c) = (*this)(r, c);
    aug(r, cols_) = b[r];
  }
  auto pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  Vector x(cols_, field_.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, cols_);
  return x;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) throw ShapeMismatch("inverse of a non-square matrix");
  std::size_t n = rows_;
  Matrix aug(field_, n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
    aug(r, n + r) = field_.one();
  }
  auto pivots = aug.rref();
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(field_, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  }
  return inv;
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  for (std::size_t r = 0; r < rows_; ++r) {
    out << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c > 0) out << ", ";
      out << (*this)(r, c).coefficient_string();
    }
    out << "]\n";
  }
  return out.str();
}

Subspace Subspace::span(Field field, std::size_t dim, const std::vector<Vector>& generators) {
  return from_matrix(Matrix::from_rows(field, dim, generators));
}

Subspace Subspace::from_matrix(Matrix rows) {
  auto pivots = rows.rref();
  return Subspace(std::move(rows), std::move(pivots));
}

Subspace Subspace::zero(Field field, std::size_t dim) { return Subspace(Matrix(field, 0, dim), {}); }

Subspace Subspace::full(Field field, std::size_t dim) {
  std::vector<std::size_t> pivots(dim);
  for (std::size_t i = 0; i < dim; ++i) pivots[i] = i;
  return Subspace(Matrix::identity(field, dim), std::move(pivots));
}

std::vector<Vector> Subspace::basis() const {
  std::vector<Vector> out;
  out.reserve(rank());
  for (std::size_t r = 0; r < rank(); ++r) out.push_back(echelon_.row_vector(r));
  return out;
}

bool Subspace::contains(std::span<const Scalar> v) const {
  if (v.size() != ambient_dim()) throw ShapeMismatch("vector length does not match subspace dimension");
  Vector residual(v.begin(), v.end());
  for (std::size_t r = 0; r < rank(); ++r) {
    Scalar factor = residual[pivots_[r]];
    if (factor.is_zero()) continue;
    for (std::size_t c = pivots_[r]; c < ambient_dim(); ++c) {
      const Scalar& x = echelon_(r, c);
      if (!x.is_zero()) residual[c].sub_mul(factor, x);
    }
  }
  for (const auto& x : residual) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  for (std::size_t r = 0; r < other.rank(); ++r) {
    if (!contains(other.echelon_.row(r))) return false;
  }
  return true;
}

}  // namespace lpa
