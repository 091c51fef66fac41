#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/scalar.hpp"

namespace lpa {

/// The monomial alpha * beta^*, where both paths end at `mid`.
/// A vertex v is the monomial with both paths empty and mid = v.
struct Monomial {
  std::vector<EdgeId> alpha;
  std::vector<EdgeId> beta;
  VertexId mid = 0;

  std::size_t degree() const noexcept { return alpha.size() + beta.size(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Basis order: total length, then alpha lexicographically, then beta, then mid.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

namespace detail {
struct AlgebraData;
}

class Algebra;

/// A finite linear combination of normal monomials with nonzero coefficients.
/// Normal forms are canonical, so equality is equality of term maps.
class Element {
 public:
  using Terms = std::map<Monomial, Scalar, MonomialLess>;

  Algebra algebra() const;
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Zero when the monomial is not in the support.
  Scalar coefficient(const Monomial& m) const;

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(const Scalar& k, const Element& a);
  Element operator-() const;

  /// Equal iff same algebra instance and identical normal forms.
  friend bool operator==(const Element& a, const Element& b);

  std::string to_string() const;

 private:
  friend class Algebra;
  Element(std::shared_ptr<const detail::AlgebraData> data, Terms terms)
      : data_(std::move(data)), terms_(std::move(terms)) {}

  void check_same(const Element& rhs) const;

  std::shared_ptr<const detail::AlgebraData> data_;
  Terms terms_;
};

/// A coefficient times a composable but possibly non-normal monomial.
struct RawTerm {
  Scalar coefficient;
  Monomial monomial;
};

enum class RewriteOrder {
  /// Depth-first: each new term is rewritten before older pending terms.
  JunctionFirst,
  /// Merge like terms first, then rewrite pending terms in random order.
  Randomized,
};

/// The Leavitt path algebra of a finite graph over a field. A cheap handle;
/// copies share one immutable instance, and elements from distinct instances
/// never mix.
///
/// Normal form: for a regular vertex v the special edge is its outgoing edge
/// with the greatest identifier. A monomial alpha*beta^* is normal unless alpha
/// and beta end in the same edge f and f is the special edge of s(f). CK-2 is
/// applied as the rewrite
///   alpha' f f^* beta'^*  ->  alpha' beta'^* - sum_{e != f, s(e) = s(f)} alpha' e e^* beta'^*
/// and never at infinite emitters.
class Algebra {
 public:
  explicit Algebra(Graph graph, Field field = Field::rationals());

  const Graph& graph() const noexcept;
  Field field() const noexcept;

  /// Special edge of a regular vertex; nullopt for sinks and infinite emitters.
  std::optional<EdgeId> special_edge(VertexId v) const;
  /// Paths are valid, end at mid, and the junction is not a special pair.
  bool is_normal(const Monomial& m) const;
  /// Paths are valid and both end at mid.
  bool is_composable(const Monomial& m) const;

  Element zero() const;
  /// Sum of all vertices; the unit of the algebra of a finite graph.
  Element one() const;
  Element scalar(const Scalar& k) const;
  Element vertex(VertexId v) const;
  Element vertex(std::string_view name) const;
  Element edge(EdgeId e) const;
  Element edge(std::string_view name) const;
  Element ghost(EdgeId e) const;
  Element ghost(std::string_view name) const;
  /// k * alpha * beta^*; the monomial must be composable and is normalized.
  Element monomial(const Monomial& m, const Scalar& k) const;
  Element monomial(const Monomial& m) const;

  /// Rewrites composable raw monomials to normal form. Throws PreconditionError
  /// on a non-composable monomial. `rng` is required for RewriteOrder::Randomized.
  Element normalize(std::span<const RawTerm> raw, RewriteOrder order = RewriteOrder::JunctionFirst,
                    std::mt19937_64* rng = nullptr) const;

  Element mul(const Element& a, const Element& b) const;
  Element add(const Element& a, const Element& b) const;
  Element scalar_mul(const Scalar& k, const Element& a) const;
  /// The involution (alpha beta^*)^* = beta alpha^*, coefficients fixed.
  Element star(const Element& a) const;
  /// Sum of the source vertices of alpha and beta over every monomial in `elements`.
  Element local_unit(std::span<const Element> elements) const;

  /// Product of two monomials before normalization, or nullopt if it vanishes.
  std::optional<Monomial> multiply_monomials(const Monomial& a, const Monomial& b) const;

  /// Parses `k1*alpha1.beta1^* + ...`; see README for the grammar.
  Element parse_element(std::string_view text) const;
  std::string monomial_string(const Monomial& m) const;

  VertexId source_of_alpha(const Monomial& m) const;
  VertexId source_of_beta(const Monomial& m) const;

  friend bool operator==(const Algebra& a, const Algebra& b) { return a.data_ == b.data_; }

 private:
  friend class Element;
  explicit Algebra(std::shared_ptr<const detail::AlgebraData> data) : data_(std::move(data)) {}
  Element make(Element::Terms terms) const { return Element(data_, std::move(terms)); }
  void check_owned(const Element& a) const;

  std::shared_ptr<const detail::AlgebraData> data_;
};

/// The monomial for a path (alpha = p, beta empty).
Monomial path_monomial(const Graph& g, const Path& p);
/// The monomial for a ghost path (alpha empty, beta = p).
Monomial ghost_path_monomial(const Graph& g, const Path& p);

}  // namespace lpa
