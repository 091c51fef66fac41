#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lpa/checkers.hpp"
#include "lpa/error.hpp"
#include "lpa/findim.hpp"
#include "lpa/sample_graphs.hpp"

using namespace lpa;

namespace {

std::vector<std::string> basis_names(const FiniteAlgebra& fd) {
  std::vector<std::string> out;
  for (const Monomial& m : fd.basis()) out.push_back(fd.algebra().monomial_string(m));
  return out;
}

Subspace span_of(const FiniteAlgebra& fd, std::initializer_list<const char*> texts) {
  std::vector<Element> gens;
  for (const char* t : texts) gens.push_back(fd.algebra().parse_element(t));
  return fd.span(gens);
}

std::size_t sum_of_squares(const Graph& g) {
  std::size_t total = 0;
  for (VertexId w = 0; w < g.vertex_count(); ++w) {
    if (g.kind(w) == VertexKind::Regular) continue;
    std::size_t n = g.paths_ending_at(w).size();
    total += n * n;
  }
  return total;
}

}  // namespace

TEST(Basis, LineGraphTwo) {
  FiniteAlgebra fd(Algebra(line_graph(2)));
  EXPECT_EQ(basis_names(fd), (std::vector<std::string>{"v1", "v2", "e1^*", "e1"}));
}

TEST(Basis, SingleVertexAndLoop) {
  EXPECT_EQ(FiniteAlgebra(Algebra(parse_graph("vertex v"))).dim(), 1u);
  EXPECT_THROW(FiniteAlgebra(Algebra(loop_graph())), InfiniteDimensional);
  EXPECT_THROW(enumerate_basis(Algebra(loop_graph())), InfiniteDimensional);
}

TEST(Basis, FlaggedVertex) {
  FiniteAlgebra fd(Algebra(parse_graph("vertex v [infinite]; vertex w; edge e: v -> w")));
  EXPECT_EQ(basis_names(fd), (std::vector<std::string>{"v", "w", "e^*", "e", "e.e^*"}));
}

TEST(Basis, DimensionCap) {
  EXPECT_THROW(FiniteAlgebra(Algebra(line_graph(5)), 24), DimensionCapExceeded);
  EXPECT_EQ(FiniteAlgebra(Algebra(line_graph(5)), 25).dim(), 25u);
  try {
    enumerate_basis(Algebra(line_graph(70)));
    FAIL();
  } catch (const DimensionCapExceeded& e) {
    EXPECT_EQ(e.required(), 4900u);
    EXPECT_EQ(e.cap(), kDefaultDimensionCap);
  }
}

TEST(RightAnnihilator, Examples) {
  FiniteAlgebra fd(Algebra(line_graph(2)));
  const Algebra& alg = fd.algebra();
  EXPECT_EQ(fd.right_annihilator(alg.edge("e1")), span_of(fd, {"v1", "e1"}));
  EXPECT_EQ(fd.right_annihilator(alg.zero()), fd.full_subspace());
  EXPECT_EQ(fd.right_annihilator(alg.one()), fd.zero_subspace());
}

TEST(LeftAnnihilator, Examples) {
  FiniteAlgebra fd(Algebra(line_graph(2)));
  const Algebra& alg = fd.algebra();
  EXPECT_EQ(fd.left_annihilator(fd.right_annihilator(alg.edge("e1"))), span_of(fd, {"v2", "e1"}));
  EXPECT_EQ(fd.left_annihilator(fd.zero_subspace()), fd.full_subspace());
  EXPECT_EQ(fd.left_annihilator(fd.full_subspace()), fd.zero_subspace());
}

TEST(PrincipalLeftIdeal, Examples) {
  FiniteAlgebra fd(Algebra(line_graph(2)));
  const Algebra& alg = fd.algebra();
  EXPECT_EQ(fd.principal_left_ideal(alg.edge("e1")), span_of(fd, {"e1", "v2"}));
  EXPECT_EQ(fd.principal_left_ideal(alg.zero()), fd.zero_subspace());
  EXPECT_EQ(fd.principal_left_ideal(alg.vertex("v1")), span_of(fd, {"v1", "e1^*"}));
}

TEST(Subspace, EqualityAndMembership) {
  FiniteAlgebra fd(Algebra(line_graph(2)));
  const Algebra& alg = fd.algebra();
  EXPECT_EQ(span_of(fd, {"e1", "v2"}), fd.principal_left_ideal(alg.edge("e1")));
  EXPECT_EQ(span_of(fd, {"e1 + v2", "e1 - v2", "3*e1"}), span_of(fd, {"v2", "e1"}));
  EXPECT_TRUE(fd.member(alg.zero(), span_of(fd, {"v2"})));
  EXPECT_TRUE(fd.member(alg.zero(), fd.zero_subspace()));
  EXPECT_FALSE(fd.member(alg.vertex("v1"), span_of(fd, {"v2"})));
  EXPECT_TRUE(span_of(fd, {"v1", "v2"}).contains(span_of(fd, {"v1 + v2"})));
  EXPECT_FALSE(span_of(fd, {"v1 + v2"}).contains(span_of(fd, {"v1", "v2"})));
}

TEST(Coordinates, RoundTrip) {
  FiniteAlgebra fd(Algebra(line_graph(3)));
  Element a = fd.algebra().parse_element("2*e1.e2 - 1/3*(e1.e2)^* + v3");
  EXPECT_EQ(fd.element(fd.coordinates(a)), a);
  EXPECT_THROW(fd.coordinates(Algebra(line_graph(3)).vertex("v1")), MixedAlgebra);
}

TEST(Linalg, NullspaceSolveInverse) {
  Field q;
  auto row = [&](std::initializer_list<int> xs) {
    Vector v;
    for (int x : xs) v.push_back(q.from_int(x));
    return v;
  };
  Matrix m = Matrix::from_rows(q, 3, {row({1, 2, 3}), row({2, 4, 6}), row({0, 1, 1})});
  auto kernel = m.nullspace();
  ASSERT_EQ(kernel.size(), 1u);
  EXPECT_EQ(kernel[0], row({-1, -1, 1}));
  auto x = m.solve(row({3, 6, 1}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m.apply(*x), row({3, 6, 1}));
  EXPECT_FALSE(m.solve(row({1, 0, 0})).has_value());
  EXPECT_FALSE(m.inverse().has_value());
  Matrix n = Matrix::from_rows(q, 2, {row({2, 1}), row({1, 1})});
  EXPECT_EQ(*n.inverse() * n, Matrix::identity(q, 2));
}

// ---------------------------------------------------------------------------
// Properties

class FindimProperties : public testing::TestWithParam<std::uint32_t> {
 protected:
  Field field() const { return GetParam() == 0 ? Field::rationals() : Field::prime(GetParam()); }
};

TEST_P(FindimProperties, DimensionIsSumOfSquares) {
  std::mt19937_64 rng(GetParam() + 100);
  for (int i = 0; i < 100; ++i) {
    Graph g = random_acyclic_graph(rng);
    FiniteAlgebra fd(Algebra(g, field()));
    EXPECT_EQ(fd.dim(), sum_of_squares(g)) << g.serialize();
  }
}

TEST_P(FindimProperties, AnnihilatorsAndIdeals) {
  std::mt19937_64 rng(GetParam() + 200);
  for (int i = 0; i < 30; ++i) {
    FiniteAlgebra fd(Algebra(random_acyclic_graph(rng), field()));
    ElementSampler sampler(fd.algebra(), static_cast<std::uint64_t>(i));
    for (int k = 0; k < 5; ++k) {
      Element a = sampler.element();
      Subspace r = fd.right_annihilator(a);
      Subspace ra = fd.principal_left_ideal(a);
      Subspace lr = fd.left_annihilator(r);
      // Ra is contained in l(r(a)), and a lies in Ra.
      EXPECT_TRUE(lr.contains(ra));
      EXPECT_TRUE(fd.member(a, ra));
      // r(a) is a right ideal and Ra a left ideal.
      for (const Element& t : fd.elements(r)) {
        EXPECT_TRUE((a * t).is_zero());
        for (const Monomial& m : fd.basis()) {
          Element b = fd.algebra().monomial(m);
          EXPECT_TRUE(fd.member(t * b, r));
        }
      }
      for (const Element& x : fd.elements(ra)) {
        for (const Monomial& m : fd.basis()) EXPECT_TRUE(fd.member(fd.algebra().monomial(m) * x, ra));
      }
      // Structure-constant products agree with element products.
      Element b = sampler.element();
      EXPECT_EQ(fd.element(fd.multiply(fd.coordinates(a), fd.coordinates(b))), a * b);
    }
  }
}

TEST_P(FindimProperties, SpanIsIndependentOfGenerators) {
  std::mt19937_64 rng(GetParam() + 300);
  for (int i = 0; i < 50; ++i) {
    FiniteAlgebra fd(Algebra(random_acyclic_graph(rng), field()));
    ElementSampler sampler(fd.algebra(), static_cast<std::uint64_t>(i));
    std::vector<Element> gens;
    for (int k = 0; k < 4; ++k) gens.push_back(sampler.element());
    Subspace s = fd.span(gens);
    std::vector<Element> shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled[0] += sampler.coefficient() * shuffled[1];
    shuffled[2] = sampler.coefficient() * shuffled[2];
    shuffled.push_back(shuffled[0] + shuffled[3]);
    EXPECT_EQ(fd.span(shuffled), s);
    for (const Element& g : gens) EXPECT_TRUE(fd.member(g, s));
    EXPECT_EQ(fd.span(fd.elements(s)), s);
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FindimProperties, testing::Values(0u, 5u));
