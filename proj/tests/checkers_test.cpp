#include <gtest/gtest.h>

#include <random>

#include "lpa/checkers.hpp"
#include "lpa/error.hpp"
#include "lpa/sample_graphs.hpp"

using namespace lpa;

namespace {

Subspace span_of(const FiniteAlgebra& fd, std::initializer_list<const char*> texts) {
  std::vector<Element> gens;
  for (const char* t : texts) gens.push_back(fd.algebra().parse_element(t));
  return fd.span(gens);
}

template <class T>
std::size_t count_evidence(const Verdict& v) {
  std::size_t n = 0;
  for (const Evidence& e : v.evidence()) n += std::holds_alternative<T>(e) ? 1 : 0;
  return n;
}

}  // namespace

TEST(PInjectivity, Examples) {
  FiniteAlgebra fd(Algebra(line_graph(2)));
  const Algebra& alg = fd.algebra();
  auto e1 = is_p_injective_at(fd, alg.edge("e1"));
  EXPECT_TRUE(e1.holds);
  EXPECT_EQ(e1.double_annihilator, span_of(fd, {"v2", "e1"}));
  EXPECT_EQ(e1.principal_ideal, span_of(fd, {"v2", "e1"}));
  EXPECT_TRUE(is_p_injective_at(fd, alg.zero()).holds);
  auto v1 = is_p_injective_at(fd, alg.vertex("v1"));
  EXPECT_TRUE(v1.holds);
  EXPECT_EQ(v1.principal_ideal, span_of(fd, {"v1", "e1^*"}));
}

TEST(RegularityWitness, Examples) {
  FiniteAlgebra fd(Algebra(line_graph(2)));
  const Algebra& alg = fd.algebra();
  EXPECT_EQ(regularity_witness(fd, alg.vertex("v1"))->r(), alg.vertex("v1"));
  EXPECT_EQ(regularity_witness(fd, alg.edge("e1"))->r(), alg.ghost("e1"));
  EXPECT_TRUE(regularity_witness(fd, alg.zero())->r().is_zero());
  EXPECT_FALSE(RegularityWitness::verify(alg.edge("e1"), alg.edge("e1")).has_value());
  EXPECT_TRUE(RegularityWitness::verify(alg.edge("e1"), alg.ghost("e1")).has_value());
}

TEST(Xrava, Examples) {
  FiniteAlgebra fd(Algebra(line_graph(2)));
  const Algebra& alg = fd.algebra();
  auto witness = *RegularityWitness::verify(alg.edge("e1"), alg.ghost("e1"));
  auto check = verify_xrava_identity(fd, witness, alg.edge("e1"));
  EXPECT_EQ(check.local_unit, alg.parse_element("v1 + v2"));
  // e1 e1^* e1 (v1 + v2) e1 = e1 e1 = 0
  EXPECT_FALSE(check.holds);
  EXPECT_TRUE(check.rhs.is_zero());
  EXPECT_TRUE(check.unit_holds);
  EXPECT_EQ(check.unit_rhs, alg.edge("e1"));
  auto vertex = verify_xrava_identity(fd, *RegularityWitness::verify(alg.vertex("v2"), alg.vertex("v2")), alg.vertex("v2"));
  EXPECT_TRUE(vertex.holds);
  EXPECT_TRUE(verify_xrava_identity(fd, witness, alg.zero()).holds);
  EXPECT_THROW(verify_xrava_identity(fd, witness, alg.vertex("v1")), PreconditionError);
}

TEST(Corner, Examples) {
  FiniteAlgebra fd(Algebra(line_graph(2)));
  const Algebra& alg = fd.algebra();
  CornerAlgebra v1(fd, alg.vertex("v1"));
  EXPECT_EQ(v1.dim(), 1u);
  EXPECT_EQ(v1.space(), span_of(fd, {"v1"}));
  EXPECT_TRUE(v1.is_p_injective_at(alg.vertex("v1")).holds);
  EXPECT_THROW(v1.is_p_injective_at(alg.vertex("v2")), PreconditionError);

  CornerAlgebra whole(fd, alg.one());
  EXPECT_EQ(whole.space(), fd.full_subspace());
  EXPECT_EQ(whole.principal_left_ideal(alg.edge("e1")), fd.principal_left_ideal(alg.edge("e1")));
  EXPECT_EQ(whole.right_annihilator(alg.edge("e1")), fd.right_annihilator(alg.edge("e1")));

  EXPECT_THROW(CornerAlgebra(fd, alg.edge("e1")), NotIdempotent);
}

TEST(Corner, FullMatrixCorner) {
  // e = e1 e1^* in the line graph with three vertices is the matrix unit f_{11}
  // of M_3; its corner is one-dimensional.
  FiniteAlgebra fd(Algebra(line_graph(3)));
  const Algebra& alg = fd.algebra();
  CornerAlgebra c(fd, alg.parse_element("e2.e2^*"));
  EXPECT_EQ(c.dim(), 1u);
  CornerAlgebra sum(fd, alg.parse_element("v1 + v3"));
  EXPECT_EQ(sum.dim(), 4u);
  EXPECT_TRUE(sum.is_p_injective_at(alg.parse_element("(e1.e2)^*")).holds);
}

TEST(BoundedSearch, LoopGraph) {
  Algebra alg(loop_graph());
  auto vc = bounded_regularity_search(alg, alg.parse_element("v - c"), 6);
  EXPECT_FALSE(vc.found());
  EXPECT_EQ(vc.max_length, 6u);
  auto v = bounded_regularity_search(alg, alg.vertex("v"), 3);
  ASSERT_TRUE(v.found());
  EXPECT_EQ(v.witness->r(), alg.vertex("v"));
  EXPECT_TRUE(bounded_regularity_search(alg, alg.vertex("v"), 0).found());
  auto c = bounded_regularity_search(alg, alg.edge("c"), 1);
  ASSERT_TRUE(c.found());
  EXPECT_EQ(c.witness->r(), alg.ghost("c"));
  EXPECT_FALSE(bounded_regularity_search(alg, alg.edge("c"), 0).found());
}

TEST(BoundedSearch, AcyclicAgreesWithExactWitness) {
  Algebra alg(line_graph(3));
  auto result = bounded_regularity_search(alg, alg.parse_element("e1 + 2*e1.e2"), 4);
  ASSERT_TRUE(result.found());
  Element a = alg.parse_element("e1 + 2*e1.e2");
  EXPECT_EQ(a * result.witness->r() * a, a);
}

TEST(Classify, LineGraph) {
  Verdict v = classify(line_graph(3));
  EXPECT_TRUE(v.acyclic());
  EXPECT_TRUE(v.regular());
  EXPECT_TRUE(v.p_injective());
  EXPECT_TRUE(v.locally_matricial());
  EXPECT_EQ(count_evidence<DecompositionEvidence>(v), 1u);
  EXPECT_EQ(count_evidence<WitnessEvidence>(v), 50u);
  EXPECT_EQ(count_evidence<PInjectivityEvidence>(v), 50u);
  for (const Evidence& e : v.evidence()) {
    if (const auto* p = std::get_if<PInjectivityEvidence>(&e)) EXPECT_TRUE(p->holds);
    if (const auto* d = std::get_if<DecompositionEvidence>(&e)) EXPECT_EQ(d->dimension, 9u);
  }
}

TEST(Classify, LoopGraph) {
  Verdict v = classify(loop_graph());
  ASSERT_FALSE(v.acyclic());
  EXPECT_FALSE(v.regular());
  EXPECT_FALSE(v.p_injective());
  EXPECT_FALSE(v.locally_matricial());
  EXPECT_EQ(v.cycle()->edges, std::vector<EdgeId>{0});
  EXPECT_EQ(count_evidence<CycleEvidence>(v), 1u);
  EXPECT_EQ(count_evidence<BoundedSearchEvidence>(v), 1u);
  ASSERT_EQ(count_evidence<LoopCertificateEvidence>(v), 1u);
  for (const Evidence& e : v.evidence()) {
    if (const auto* l = std::get_if<LoopCertificateEvidence>(&e)) EXPECT_TRUE(l->certificate.holds());
    if (const auto* b = std::get_if<BoundedSearchEvidence>(&e)) {
      EXPECT_EQ(b->a, "v - c");
      EXPECT_FALSE(b->r.has_value());
    }
  }
}

TEST(Classify, TwoCycle) {
  Graph g = parse_graph("vertex v; vertex w; edge e: v -> w; edge f: w -> v");
  Verdict v = classify(g);
  ASSERT_FALSE(v.acyclic());
  EXPECT_TRUE(g.is_cycle(*v.cycle()));
  EXPECT_EQ(v.cycle()->length(), 2u);
  EXPECT_FALSE(v.regular() || v.p_injective() || v.locally_matricial());
  EXPECT_EQ(count_evidence<BoundedSearchEvidence>(v), 1u);
  EXPECT_EQ(count_evidence<LoopCertificateEvidence>(v), 0u);
}

TEST(Classify, VerdictNeedsEvidence) { EXPECT_THROW(Verdict(std::nullopt, {}), InvariantViolation); }

TEST(Classify, DeterministicForSeed) {
  ClassifyOptions options;
  options.seed = 42;
  options.samples = 5;
  Verdict a = classify(line_graph(4), options), b = classify(line_graph(4), options);
  ASSERT_EQ(a.evidence().size(), b.evidence().size());
  for (std::size_t i = 0; i < a.evidence().size(); ++i) {
    if (const auto* w = std::get_if<WitnessEvidence>(&a.evidence()[i])) {
      EXPECT_EQ(w->a, std::get<WitnessEvidence>(b.evidence()[i]).a);
      EXPECT_EQ(w->r, std::get<WitnessEvidence>(b.evidence()[i]).r);
    }
  }
}

TEST(Sampler, ShapesAndIdempotents) {
  Algebra alg(parse_graph("vertex u; vertex v [infinite]; vertex w; edge a: u -> v; edge b: v -> w; edge c: u -> w"));
  ElementSampler sampler(alg, 3);
  for (int i = 0; i < 200; ++i) {
    Element a = sampler.element();
    EXPECT_GE(a.terms().size(), 1u);
    EXPECT_LE(a.terms().size(), 4u);
    for (const auto& [m, k] : a.terms()) {
      EXPECT_LE(m.alpha.size(), 3u);
      EXPECT_LE(m.beta.size(), 3u);
      EXPECT_TRUE(k == Field().from_int(-2) || k == Field().from_int(-1) || k.is_one() || k == Field().from_int(2));
    }
    Element e = sampler.idempotent();
    EXPECT_FALSE(e.is_zero());
    EXPECT_EQ(e * e, e);
  }
}

// ---------------------------------------------------------------------------
// Properties on random acyclic algebras

class CheckerProperties : public testing::TestWithParam<std::uint32_t> {
 protected:
  Field field() const { return GetParam() == 0 ? Field::rationals() : Field::prime(GetParam()); }
};

TEST_P(CheckerProperties, WitnessesAndPInjectivity) {
  std::mt19937_64 rng(GetParam() + 400);
  for (int i = 0; i < 30; ++i) {
    FiniteAlgebra fd(Algebra(random_acyclic_graph(rng), field()));
    ElementSampler sampler(fd.algebra(), static_cast<std::uint64_t>(i));
    for (int k = 0; k < 6; ++k) {
      Element a = sampler.element();
      auto witness = regularity_witness(fd, a);
      ASSERT_TRUE(witness.has_value()) << a.to_string();
      EXPECT_EQ(a * witness->r() * a, a);
      auto p = is_p_injective_at(fd, a);
      EXPECT_TRUE(p.holds);
      for (const Element& x : fd.elements(p.double_annihilator)) {
        auto check = verify_xrava_identity(fd, *witness, x, &p.double_annihilator);
        EXPECT_TRUE(check.unit_holds);
        EXPECT_EQ(check.holds, check.rhs == x);
        EXPECT_TRUE(fd.member(x, p.principal_ideal));
      }
    }
  }
}

TEST_P(CheckerProperties, CornersArePInjective) {
  std::mt19937_64 rng(GetParam() + 500);
  for (int i = 0; i < 20; ++i) {
    FiniteAlgebra fd(Algebra(random_acyclic_graph(rng), field()));
    ElementSampler sampler(fd.algebra(), static_cast<std::uint64_t>(i));
    CornerAlgebra corner(fd, sampler.idempotent());
    EXPECT_TRUE(corner.contains(corner.idempotent()));
    for (int k = 0; k < 4; ++k) {
      Element a = corner.compress(sampler.element());
      EXPECT_TRUE(corner.contains(a));
      auto p = corner.is_p_injective_at(a);
      EXPECT_TRUE(p.holds);
      EXPECT_TRUE(corner.space().contains(p.principal_ideal));
      EXPECT_TRUE(corner.space().contains(p.double_annihilator));
    }
  }
}

TEST_P(CheckerProperties, VerdictMatchesAcyclicity) {
  std::mt19937_64 rng(GetParam() + 600);
  ClassifyOptions options;
  options.field = field();
  options.samples = 3;
  options.search_length = 3;
  for (int i = 0; i < 20; ++i) {
    Graph g = i % 2 ? random_acyclic_graph(rng) : random_cyclic_graph(rng);
    Verdict v = classify(g, options);
    EXPECT_EQ(v.acyclic(), g.is_acyclic());
    EXPECT_EQ(v.regular(), g.is_acyclic());
    EXPECT_EQ(v.p_injective(), g.is_acyclic());
    EXPECT_EQ(v.locally_matricial(), g.is_acyclic());
    EXPECT_FALSE(v.evidence().empty());
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, CheckerProperties, testing::Values(0u, 5u));
