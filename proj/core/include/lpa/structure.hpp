#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/findim.hpp"
#include "lpa/linalg.hpp"

namespace lpa {

/// One square matrix per block of a matricial decomposition.
struct BlockMatrix {
  struct Block {
    VertexId vertex;
    Matrix matrix;
  };
  std::vector<Block> blocks;

  BlockMatrix transpose() const;
  friend BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b);
  friend BlockMatrix operator+(const BlockMatrix& a, const BlockMatrix& b);
  friend bool operator==(const BlockMatrix& a, const BlockMatrix& b);
};

/// The isomorphism L(E) = sum over w of M_{n(w)}(K) for a finite acyclic
/// graph, with one block per sink and per infinite emitter w. Block w has
/// unit q_w (w itself for a sink, w - sum of e e^* over listed edges e
/// leaving w for an infinite emitter) and matrix units p q_w q^* indexed by
/// the paths p, q ending at w in descending (length, lexicographic) order, so
/// on the line graph index i is the path leaving v_i.
class MatricialDecomposition {
 public:
  struct Block {
    VertexId vertex;
    std::vector<Path> paths;
    Element unit;
  };

  /// Throws CyclicGraph, or DimensionCapExceeded.
  static MatricialDecomposition decompose(const Algebra& algebra, std::size_t dimension_cap = kDefaultDimensionCap);

  const Algebra& algebra() const noexcept { return algebra_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  /// Sum of n(w)^2.
  std::size_t dimension() const noexcept { return basis_.size(); }

  /// p q_w q^* for the paths at positions (row, col) of `block`.
  Element matrix_unit(std::size_t block, std::size_t row, std::size_t col) const;

  /// Image of `a`, obtained by expanding it in the matrix-unit basis.
  BlockMatrix to_matrices(const Element& a) const;
  /// Sum of entries times matrix units. Throws ShapeMismatch.
  Element from_matrices(const BlockMatrix& m) const;

  BlockMatrix zero_matrices() const;
  BlockMatrix identity_matrices() const;

 private:
  explicit MatricialDecomposition(Algebra algebra) : algebra_(std::move(algebra)) {}

  Algebra algebra_;
  std::vector<Block> blocks_;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t, MonomialLess> index_;
  std::vector<std::size_t> block_offset_;
  Matrix to_units_{Field(), 0, 0};  // normal-monomial coordinates -> matrix-unit coordinates
};

/// A Laurent polynomial: finitely many nonzero coefficients at integer exponents.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(Field field) : field_(field) {}
  static LaurentPoly monomial(const Scalar& k, std::int64_t exponent);

  Field field() const noexcept { return field_; }
  const std::map<std::int64_t, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Scalar coefficient(std::int64_t exponent) const;
  std::optional<std::int64_t> lowest_exponent() const;
  Scalar lowest_coefficient() const;
  /// The image under x -> 1: the sum of the coefficients.
  Scalar evaluate_at_one() const;

  LaurentPoly& operator+=(const LaurentPoly& rhs);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// `c_k x^k` terms sorted by exponent, e.g. `1 x^0 + -1 x^1`; `0` when empty.
  std::string to_string() const;

 private:
  void add_term(std::int64_t exponent, const Scalar& k);

  Field field_;
  std::map<std::int64_t, Scalar> terms_;
};

/// One vertex, one loop, no infinite-emitter flag.
bool is_loop_graph(const Graph& g);

/// The isomorphism onto K[x, x^-1] given by v -> 1, c -> x, c^* -> x^-1.
/// Throws WrongGraph unless the algebra is that of the loop graph.
LaurentPoly laurent_of_loop(const Element& a);

/// Exact proof that the loop algebra is not P-injective at a = v - c:
/// c^* lies in l(r(a)) but not in R a.
struct LoopCertificate {
  std::uint64_t seed = 0;
  std::string element;              // v - c
  LaurentPoly element_image;        // 1 - x
  std::string ghost;                // c^*
  LaurentPoly ghost_image;          // x^-1
  // r(a) = 0: the lowest term of 1 - x has a nonzero coefficient, so for every
  // nonzero f the lowest term of (1 - x) f is a nonzero multiple of the lowest term of f.
  std::int64_t element_lowest_exponent = 0;
  Scalar element_lowest_coefficient;
  struct LowestTermSample {
    LaurentPoly f;
    LaurentPoly product;  // (1 - x) f
    bool preserved;       // product has f's lowest exponent and coefficient
  };
  std::vector<LowestTermSample> samples;
  bool right_annihilator_trivial = false;
  bool ghost_in_double_annihilator = false;
  // c^* not in R a: evaluation at 1 is a ring map killing 1 - x but not x^-1.
  Scalar element_at_one;
  Scalar ghost_at_one;
  bool evaluation_multiplicative = false;
  bool ghost_outside_principal_ideal = false;

  bool holds() const noexcept {
    return right_annihilator_trivial && ghost_in_double_annihilator && ghost_outside_principal_ideal;
  }
};

/// Builds and checks the certificate; `samples` random f drive the sampled checks.
LoopCertificate loop_counterexample_certificate(const Algebra& algebra, std::uint64_t seed = 0,
                                                std::size_t samples = 20);

}  // namespace lpa
