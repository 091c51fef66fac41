#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/findim.hpp"
#include "lpa/linalg.hpp"
#include "lpa/structure.hpp"

namespace lpa {

/// Outcome of comparing l(r(a)) with R a.
struct PInjectivityCheck {
  bool holds;
  Subspace double_annihilator;  // l(r(a))
  Subspace principal_ideal;     // R a
};

/// l(r(a)) == R a, computed exactly over the normal basis.
PInjectivityCheck is_p_injective_at(const FiniteAlgebra& algebra, const Element& a);

/// A pair (a, r) with a r a = a, re-checked by element multiplication on construction.
class RegularityWitness {
 public:
  /// nullopt unless a * r * a == a.
  static std::optional<RegularityWitness> verify(Element a, Element r);

  const Element& a() const noexcept { return a_; }
  const Element& r() const noexcept { return r_; }

 private:
  RegularityWitness(Element a, Element r) : a_(std::move(a)), r_(std::move(r)) {}
  Element a_;
  Element r_;
};

/// Solves a x a = a over the basis, free parameters set to zero.
/// nullopt only if `a` is not regular, which cannot happen for acyclic graphs.
std::optional<RegularityWitness> regularity_witness(const FiniteAlgebra& algebra, const Element& a);

struct XravaCheck {
  bool holds;          // x == x r a v a
  Element x;
  Element local_unit;  // v
  Element rhs;         // x r a v a
  bool unit_holds;     // x == x r a v
  Element unit_rhs;    // x r a v
};

/// Checks x = x r a v a with v the local unit of {x}. That identity can fail
/// (a = x = e, r = e^* on a single edge e gives 0), so the check also reports
/// x = x r a v, which always holds because v - r a v lies in r(a).
/// Throws PreconditionError unless x lies in l(r(a)); pass `double_annihilator`
/// to reuse a computed l(r(a)).
XravaCheck verify_xrava_identity(const FiniteAlgebra& algebra, const RegularityWitness& witness, const Element& x,
                                 const Subspace* double_annihilator = nullptr);

/// The corner e R e of an idempotent e, a unital algebra with unit e.
/// Subspaces are expressed in the ambient basis coordinates.
class CornerAlgebra {
 public:
  /// Throws NotIdempotent unless e e = e.
  CornerAlgebra(const FiniteAlgebra& ambient, Element idempotent);

  const Element& idempotent() const noexcept { return idempotent_; }
  std::size_t dim() const noexcept { return space_.rank(); }
  const Subspace& space() const noexcept { return space_; }
  std::vector<Element> basis() const { return ambient_->elements(space_); }
  bool contains(const Element& a) const { return ambient_->member(a, space_); }
  /// e (x) e, the projection of an ambient element into the corner.
  Element compress(const Element& x) const { return idempotent_ * x * idempotent_; }

  /// Annihilators and principal ideals taken inside e R e. Elements must lie in
  /// the corner (PreconditionError otherwise).
  Subspace right_annihilator(const Element& a) const;
  Subspace left_annihilator(const Subspace& s) const;
  Subspace principal_left_ideal(const Element& a) const;
  PInjectivityCheck is_p_injective_at(const Element& a) const;

 private:
  void require_member(const Element& a) const;
  /// Combinations sum_i c_i b_i of corner basis vectors with sum_i c_i f(b_i) = 0.
  template <typename Map>
  Subspace kernel_in_corner(Map&& image) const;

  const FiniteAlgebra* ambient_;
  Element idempotent_;
  Subspace space_;
};

struct BoundedSearchResult {
  std::size_t max_length;
  std::size_t unknowns;
  std::size_t equations;
  std::optional<RegularityWitness> witness;

  bool found() const noexcept { return witness.has_value(); }
};

/// Solves a x a = a exactly with x restricted to the span of normal monomials
/// of total length at most `max_length`. Works for cyclic graphs; failure is
/// evidence, not proof.
BoundedSearchResult bounded_regularity_search(const Algebra& algebra, const Element& a, std::size_t max_length);

/// Seeded random elements: support of 1..4 normal monomials whose paths have
/// length at most 3, coefficients in {-2,-1,1,2} over Q or nonzero in F_p.
class ElementSampler {
 public:
  ElementSampler(Algebra algebra, std::uint64_t seed);

  Element element();
  /// One of: a vertex, a sum of distinct vertices, or p p^* for a path p.
  Element idempotent();
  Scalar coefficient();
  std::mt19937_64& rng() noexcept { return rng_; }

 private:
  Algebra algebra_;
  std::mt19937_64 rng_;
  std::vector<Monomial> pool_;
  std::vector<Path> paths_;
};

// ---------------------------------------------------------------------------
// Classification

struct WitnessEvidence {
  std::string a;
  std::string r;
};

struct PInjectivityEvidence {
  std::string a;
  bool holds;
  Matrix double_annihilator;
  Matrix principal_ideal;
};

struct CycleEvidence {
  Path cycle;
};

struct BoundedSearchEvidence {
  std::string a;
  std::size_t max_length;
  std::size_t unknowns;
  std::optional<std::string> r;
};

struct DecompositionEvidence {
  std::size_t dimension;
  std::vector<std::pair<VertexId, std::size_t>> blocks;  // vertex, n(w)
};

struct LoopCertificateEvidence {
  LoopCertificate certificate;
};

using Evidence = std::variant<WitnessEvidence, PInjectivityEvidence, CycleEvidence, BoundedSearchEvidence,
                              DecompositionEvidence, LoopCertificateEvidence>;

struct ClassifyOptions {
  Field field;
  std::uint64_t seed = 0;
  std::size_t samples = 50;
  std::size_t dimension_cap = kDefaultDimensionCap;
  std::size_t search_length = 6;
};

/// Acyclic graphs have regular, P-injective, locally matricial algebras;
/// graphs with a cycle have none of the three. The booleans are derived from
/// the classification; evidence records the per-element checks.
class Verdict {
 public:
  Verdict(std::optional<Path> cycle, std::vector<Evidence> evidence);

  bool acyclic() const noexcept { return !cycle_.has_value(); }
  const std::optional<Path>& cycle() const noexcept { return cycle_; }
  bool regular() const noexcept { return acyclic(); }
  bool p_injective() const noexcept { return acyclic(); }
  bool locally_matricial() const noexcept { return acyclic(); }
  const std::vector<Evidence>& evidence() const noexcept { return evidence_; }

 private:
  std::optional<Path> cycle_;
  std::vector<Evidence> evidence_;
};

/// The element v - c for a cycle c based at v.
Element vertex_minus_cycle(const Algebra& algebra, const Path& cycle);

Verdict classify(const Graph& graph, const ClassifyOptions& options = {});

}  // namespace lpa
