#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpa/scalar.hpp"

namespace lpa {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a Field.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);
  static Matrix identity(Field field, std::size_t n);
  /// Rows taken from `rows`, each of length `cols`.
  static Matrix from_rows(Field field, std::size_t cols, const std::vector<Vector>& rows);

  Field field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const;
  Vector column(std::size_t c) const;

  Matrix transpose() const;
  Vector apply(std::span<const Scalar> x) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  bool is_zero() const;

  /// Reduces in place to reduced row echelon form (pivot = first nonzero
  /// column) and drops zero rows. Returns the pivot columns.
  std::vector<std::size_t> rref();
  /// Rows form a basis of {x : A x = 0}; one vector per free column, with
  /// that free variable 1 and the other free variables 0.
  std::vector<Vector> nullspace() const;
  /// A solution of A x = b with every free variable 0, or nullopt.
  std::optional<Vector> solve(std::span<const Scalar> b) const;
  /// Inverse of a square matrix, or nullopt if singular.
  std::optional<Matrix> inverse() const;

  /// Rows as `[a, b, ...]` lines of field-element text.
  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// A linear subspace of field^dim, stored canonically as its reduced row
/// echelon basis. Two subspaces are equal iff the echelon matrices coincide.
class Subspace {
 public:
  /// The span of `generators`, each of length `dim`.
  static Subspace span(Field field, std::size_t dim, const std::vector<Vector>& generators);
  static Subspace from_matrix(Matrix rows);
  static Subspace zero(Field field, std::size_t dim);
  static Subspace full(Field field, std::size_t dim);

  Field field() const noexcept { return echelon_.field(); }
  std::size_t ambient_dim() const noexcept { return echelon_.cols(); }
  std::size_t rank() const noexcept { return echelon_.rows(); }
  const Matrix& echelon() const noexcept { return echelon_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  std::vector<Vector> basis() const;

  /// Membership by reducing v against the echelon rows.
  bool contains(std::span<const Scalar> v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.echelon_ == b.echelon_; }

 private:
  Subspace(Matrix echelon, std::vector<std::size_t> pivots)
      : echelon_(std::move(echelon)), pivots_(std::move(pivots)) {}

  Matrix echelon_;
  std::vector<std::size_t> pivots_;
};

}  // namespace lpa
