#include "lpa/checkers.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "lpa/error.hpp"

namespace lpa {

PInjectivityCheck is_p_injective_at(const FiniteAlgebra& algebra, const Element& a) {
  Subspace lr = algebra.left_annihilator(algebra.right_annihilator(a));
  Subspace ra = algebra.principal_left_ideal(a);
  bool holds = lr == ra;
  return {holds, std::move(lr), std::move(ra)};
}

std::optional<RegularityWitness> RegularityWitness::verify(Element a, Element r) {
  if (!(a * r * a == a)) return std::nullopt;
  return RegularityWitness(std::move(a), std::move(r));
}

std::optional<RegularityWitness> regularity_witness(const FiniteAlgebra& algebra, const Element& a) {
  // x -> a x a is linear; column j of the system holds a b_j a.
  Vector coords = algebra.coordinates(a);
  Matrix left = algebra.left_multiplication(a);
  Matrix system(algebra.field(), algebra.dim(), algebra.dim());
  for (std::size_t j = 0; j < algebra.dim(); ++j) {
    Vector column = algebra.multiply(left.column(j), coords);
    for (std::size_t i = 0; i < algebra.dim(); ++i) system(i, j) = std::move(column[i]);
  }
  auto x = system.solve(coords);
  if (!x) return std::nullopt;
  auto witness = RegularityWitness::verify(a, algebra.element(*x));
  if (!witness) throw InvariantViolation("linear solution of a x a = a failed re-verification");
  return witness;
}

XravaCheck verify_xrava_identity(const FiniteAlgebra& algebra, const RegularityWitness& witness, const Element& x,
                                 const Subspace* double_annihilator) {
  const Element& a = witness.a();
  if (double_annihilator != nullptr) {
    if (!algebra.member(x, *double_annihilator)) throw PreconditionError("x is not in l(r(a))");
  } else if (!algebra.member(x, algebra.left_annihilator(algebra.right_annihilator(a)))) {
    throw PreconditionError("x is not in l(r(a))");
  }
  Element v = algebra.algebra().local_unit(std::span<const Element>(&x, 1));
  Element unit_rhs = x * witness.r() * a * v;
  Element rhs = unit_rhs * a;
  bool holds = rhs == x;
  bool unit_holds = unit_rhs == x;
  return {holds, x, std::move(v), std::move(rhs), unit_holds, std::move(unit_rhs)};
}

// ---------------------------------------------------------------------------
// CornerAlgebra

CornerAlgebra::CornerAlgebra(const FiniteAlgebra& ambient, Element idempotent)
    : ambient_(&ambient), idempotent_(std::move(idempotent)), space_(ambient.zero_subspace()) {
  if (!(idempotent_ * idempotent_ == idempotent_)) {
    throw NotIdempotent(idempotent_.to_string() + " is not idempotent");
  }
  Vector e = ambient.coordinates(idempotent_);
  Matrix left = ambient.left_multiplication(idempotent_);
  std::vector<Vector> images;
  images.reserve(ambient.dim());
  for (std::size_t j = 0; j < ambient.dim(); ++j) images.push_back(ambient.multiply(left.column(j), e));
  space_ = Subspace::span(ambient.field(), ambient.dim(), images);
}

void CornerAlgebra::require_member(const Element& a) const {
  if (!contains(a)) throw PreconditionError(a.to_string() + " is not in the corner");
}

template <typename Map>
Subspace CornerAlgebra::kernel_in_corner(Map&& image) const {
  const std::size_t k = dim();
  std::vector<Vector> images;
  images.reserve(k);
  for (std::size_t i = 0; i < k; ++i) images.push_back(image(space_.echelon().row(i)));
  std::size_t rows = images.empty() ? 0 : images.front().size();
  Matrix m(ambient_->field(), rows, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < rows; ++r) m(r, i) = images[i][r];
  }
  std::vector<Vector> combos = m.nullspace();
  std::vector<Vector> ambient_vectors;
  for (const Vector& c : combos) {
    Vector v(ambient_->dim(), ambient_->field().zero());
    for (std::size_t i = 0; i < k; ++i) {
      if (c[i].is_zero()) continue;
      auto row = space_.echelon().row(i);
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (!row[j].is_zero()) v[j] += c[i] * row[j];
      }
    }
    ambient_vectors.push_back(std::move(v));
  }
  return Subspace::span(ambient_->field(), ambient_->dim(), ambient_vectors);
}

Subspace CornerAlgebra::right_annihilator(const Element& a) const {
  require_member(a);
  Vector ca = ambient_->coordinates(a);
  return kernel_in_corner([&](std::span<const Scalar> t) { return ambient_->multiply(ca, t); });
}

Subspace CornerAlgebra::left_annihilator(const Subspace& s) const {
  if (!space_.contains(s)) throw PreconditionError("subspace is not inside the corner");
  if (s.rank() == 0) return space_;
  std::vector<Vector> generators = s.basis();
  return kernel_in_corner([&](std::span<const Scalar> x) {
    Vector stacked;
    stacked.reserve(generators.size() * ambient_->dim());
    for (const Vector& g : generators) {
      Vector p = ambient_->multiply(x, g);
      stacked.insert(stacked.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    }
    return stacked;
  });
}

Subspace CornerAlgebra::principal_left_ideal(const Element& a) const {
  require_member(a);
  Vector ca = ambient_->coordinates(a);
  std::vector<Vector> images;
  for (std::size_t i = 0; i < dim(); ++i) images.push_back(ambient_->multiply(space_.echelon().row(i), ca));
  return Subspace::span(ambient_->field(), ambient_->dim(), images);
}

PInjectivityCheck CornerAlgebra::is_p_injective_at(const Element& a) const {
  Subspace lr = left_annihilator(right_annihilator(a));
  Subspace ra = principal_left_ideal(a);
  bool holds = lr == ra;
  return {holds, std::move(lr), std::move(ra)};
}

// ---------------------------------------------------------------------------
// Bounded search

namespace {

using Combination = std::map<std::size_t, Scalar>;

void axpy(Element::Terms& y, const Scalar& k, const Element::Terms& x) {
  for (const auto& [m, c] : x) {
    auto [it, inserted] = y.try_emplace(m, k.field().zero());
    it->second.sub_mul(k, c);
    if (it->second.is_zero()) y.erase(it);
  }
}

void axpy(Combination& y, const Scalar& k, const Combination& x) {
  for (const auto& [j, c] : x) {
    auto [it, inserted] = y.try_emplace(j, k.field().zero());
    it->second.sub_mul(k, c);
    if (it->second.is_zero()) y.erase(it);
  }
}

/// Sparse row echelon form keyed by leading monomial; each row remembers
/// which combination of the inserted vectors produced it.
class SparseEchelon {
 public:
  struct Row {
    Element::Terms terms;  // leading coefficient 1
    Combination combination;
  };

  /// Cancels leading terms against stored rows until the leading monomial is new.
  void reduce(Element::Terms& terms, Combination& combination) const {
    while (!terms.empty()) {
      auto row = rows_.find(terms.begin()->first);
      if (row == rows_.end()) return;
      Scalar k = terms.begin()->second;
      axpy(terms, k, row->second.terms);
      axpy(combination, k, row->second.combination);
    }
  }

  void insert(Element::Terms terms, Combination combination) {
    reduce(terms, combination);
    if (terms.empty()) return;
    Scalar inverse = terms.begin()->second.inverse();
    for (auto& [m, k] : terms) k *= inverse;
    for (auto& [j, k] : combination) k *= inverse;
    Monomial lead = terms.begin()->first;
    rows_.emplace(std::move(lead), Row{std::move(terms), std::move(combination)});
  }

 private:
  std::map<Monomial, Row, MonomialLess> rows_;
};

}  // namespace

BoundedSearchResult bounded_regularity_search(const Algebra& algebra, const Element& a, std::size_t max_length) {
  if (!(a.algebra() == algebra)) throw MixedAlgebra("element belongs to a different algebra instance");
  // a = u_l a u_r, so a x a depends only on u_r x u_l: restrict x to monomials
  // leaving a right source of a on the real side and a left source on the ghost side.
  std::vector<bool> left_source(algebra.graph().vertex_count(), false);
  std::vector<bool> right_source(algebra.graph().vertex_count(), false);
  for (const auto& [m, k] : a.terms()) {
    left_source[algebra.source_of_alpha(m)] = true;
    right_source[algebra.source_of_beta(m)] = true;
  }
  std::vector<Monomial> unknowns;
  for (Monomial& m : enumerate_normal_monomials(algebra, max_length, max_length)) {
    if (right_source[algebra.source_of_alpha(m)] && left_source[algebra.source_of_beta(m)]) {
      unknowns.push_back(std::move(m));
    }
  }

  const Field field = algebra.field();
  SparseEchelon echelon;
  std::set<Monomial, MonomialLess> rows;
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    Element image = a * algebra.monomial(unknowns[j]) * a;
    for (const auto& [m, k] : image.terms()) rows.insert(m);
    echelon.insert(image.terms(), Combination{{j, field.one()}});
  }
  for (const auto& [m, k] : a.terms()) rows.insert(m);

  BoundedSearchResult result{max_length, unknowns.size(), rows.size(), std::nullopt};
  Element::Terms residual = a.terms();
  Combination combination;
  echelon.reduce(residual, combination);
  if (residual.empty()) {
    // a - sum_j c_j image_j = 0 with c = -combination.
    Element r = algebra.zero();
    for (const auto& [j, k] : combination) r -= algebra.monomial(unknowns[j], k);
    result.witness = RegularityWitness::verify(a, std::move(r));
    if (!result.witness) throw InvariantViolation("truncated solution of a x a = a failed re-verification");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Sampling

ElementSampler::ElementSampler(Algebra algebra, std::uint64_t seed)
    : algebra_(std::move(algebra)), rng_(seed), pool_(enumerate_normal_monomials(algebra_, 3, 6)) {
  const Graph& g = algebra_.graph();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (Path& p : g.paths_ending_at_up_to(v, 3)) {
      if (!p.empty()) paths_.push_back(std::move(p));
    }
  }
  std::sort(paths_.begin(), paths_.end(), path_less);
}

Scalar ElementSampler::coefficient() {
  const Field field = algebra_.field();
  if (field.is_rational()) {
    static constexpr int kChoices[] = {-2, -1, 1, 2};
    std::uniform_int_distribution<int> pick(0, 3);
    return field.from_int(kChoices[pick(rng_)]);
  }
  std::uniform_int_distribution<std::uint32_t> pick(1, field.characteristic() - 1);
  return field.from_int(pick(rng_));
}

Element ElementSampler::element() {
  std::uniform_int_distribution<std::size_t> size_dist(1, std::min<std::size_t>(4, pool_.size()));
  std::size_t size = size_dist(rng_);
  std::vector<std::size_t> chosen;
  std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
  while (chosen.size() < size) {
    std::size_t i = pick(rng_);
    if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) chosen.push_back(i);
  }
  std::sort(chosen.begin(), chosen.end());
  Element out = algebra_.zero();
  for (std::size_t i : chosen) out += algebra_.monomial(pool_[i], coefficient());
  return out;
}

Element ElementSampler::idempotent() {
  const Graph& g = algebra_.graph();
  std::uniform_int_distribution<int> kind_dist(0, paths_.empty() ? 1 : 2);
  int kind = kind_dist(rng_);
  if (kind == 0) {
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(g.vertex_count() - 1));
    return algebra_.vertex(pick(rng_));
  }
  if (kind == 1) {
    std::bernoulli_distribution coin(0.5);
    Element out = algebra_.zero();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (coin(rng_)) out += algebra_.vertex(v);
    }
    if (out.is_zero()) out = algebra_.vertex(VertexId{0});
    return out;
  }
  std::uniform_int_distribution<std::size_t> pick(0, paths_.size() - 1);
  const Path& p = paths_[pick(rng_)];
  return algebra_.monomial(path_monomial(g, p)) * algebra_.monomial(ghost_path_monomial(g, p));
}

// ---------------------------------------------------------------------------
// Classification

Verdict::Verdict(std::optional<Path> cycle, std::vector<Evidence> evidence)
    : cycle_(std::move(cycle)), evidence_(std::move(evidence)) {
  if (evidence_.empty()) throw InvariantViolation("a verdict needs evidence");
}

Element vertex_minus_cycle(const Algebra& algebra, const Path& cycle) {
  if (!algebra.graph().is_cycle(cycle)) throw PreconditionError("path is not a cycle");
  return algebra.vertex(cycle.base) - algebra.monomial(path_monomial(algebra.graph(), cycle));
}

Verdict classify(const Graph& graph, const ClassifyOptions& options) {
  Algebra algebra(graph, options.field);
  std::vector<Evidence> evidence;

  if (auto cycle = graph.find_cycle()) {
    evidence.push_back(CycleEvidence{*cycle});
    Element a = vertex_minus_cycle(algebra, *cycle);
    BoundedSearchResult search = bounded_regularity_search(algebra, a, options.search_length);
    BoundedSearchEvidence record{a.to_string(), search.max_length, search.unknowns, std::nullopt};
    if (search.witness) record.r = search.witness->r().to_string();
    evidence.push_back(std::move(record));
    if (is_loop_graph(graph)) {
      evidence.push_back(LoopCertificateEvidence{loop_counterexample_certificate(algebra, options.seed)});
    }
    return Verdict(std::move(cycle), std::move(evidence));
  }

  auto decomposition = MatricialDecomposition::decompose(algebra, options.dimension_cap);
  DecompositionEvidence dims{decomposition.dimension(), {}};
  for (const auto& b : decomposition.blocks()) dims.blocks.emplace_back(b.vertex, b.paths.size());
  evidence.push_back(std::move(dims));

  FiniteAlgebra finite(algebra, options.dimension_cap);
  ElementSampler sampler(algebra, options.seed);
  for (std::size_t i = 0; i < options.samples; ++i) {
    Element a = sampler.element();
    auto witness = regularity_witness(finite, a);
    if (!witness) throw InvariantViolation("no regularity witness for " + a.to_string() + " in an acyclic algebra");
    evidence.push_back(WitnessEvidence{a.to_string(), witness->r().to_string()});
    PInjectivityCheck check = is_p_injective_at(finite, a);
    evidence.push_back(PInjectivityEvidence{a.to_string(), check.holds, check.double_annihilator.echelon(),
                                            check.principal_ideal.echelon()});
  }
  return Verdict(std::nullopt, std::move(evidence));
}

}  // namespace lpa
