#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/linalg.hpp"

namespace lpa {

inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// All normal monomials of an acyclic algebra in basis order.
/// Throws InfiniteDimensional for a cyclic graph and DimensionCapExceeded
/// when the basis would be larger than `dimension_cap`.
std::vector<Monomial> enumerate_basis(const Algebra& algebra, std::size_t dimension_cap = kDefaultDimensionCap);

/// Normal monomials whose paths have length at most `max_path_length` and whose
/// total length is at most `max_degree`, in basis order. Works for any graph.
std::vector<Monomial> enumerate_normal_monomials(const Algebra& algebra, std::size_t max_path_length,
                                                 std::size_t max_degree);

/// An acyclic Leavitt path algebra viewed as a finite-dimensional algebra over
/// its normal-monomial basis. Coordinates are indexed by basis position.
class FiniteAlgebra {
 public:
  explicit FiniteAlgebra(Algebra algebra, std::size_t dimension_cap = kDefaultDimensionCap);

  const Algebra& algebra() const noexcept { return algebra_; }
  Field field() const noexcept { return algebra_.field(); }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  std::size_t index_of(const Monomial& m) const;

  Vector coordinates(const Element& a) const;
  Element element(std::span<const Scalar> coords) const;
  std::vector<Element> elements(const Subspace& s) const;
  Subspace span(std::span<const Element> generators) const;

  /// Coordinates of x*y computed from the structure constants.
  Vector multiply(std::span<const Scalar> x, std::span<const Scalar> y) const;

  /// Matrix of t -> a*t; column j holds the coordinates of a*b_j.
  Matrix left_multiplication(const Element& a) const;
  /// Matrix of x -> x*a; column i holds the coordinates of b_i*a.
  Matrix right_multiplication(const Element& a) const;

  /// r(a) = {t : a t = 0}.
  Subspace right_annihilator(const Element& a) const;
  /// l(S) = {x : x s = 0 for all s in S}, as an intersection of kernels.
  Subspace left_annihilator(const Subspace& s) const;
  /// R a = {x a : x in R}.
  Subspace principal_left_ideal(const Element& a) const;

  bool member(const Element& a, const Subspace& s) const { return s.contains(coordinates(a)); }
  Subspace zero_subspace() const { return Subspace::zero(field(), dim()); }
  Subspace full_subspace() const { return Subspace::full(field(), dim()); }

 private:
  struct Entry {
    std::size_t index;
    Scalar coefficient;
  };

  /// Sparse coordinates of b_i * b_j.
  std::span<const Entry> product(std::size_t i, std::size_t j) const;
  /// Coordinates of b_i * y for every i, as columns of a matrix.
  Matrix products_with(std::span<const Scalar> y, bool y_on_right) const;

  Algebra algebra_;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t, MonomialLess> index_;
  std::vector<std::size_t> offsets_;  // CSR over pairs (i, j)
  std::vector<Entry> entries_;
};

}  // namespace lpa
