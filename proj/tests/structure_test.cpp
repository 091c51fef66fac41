#include <gtest/gtest.h>

#include <random>

#include "lpa/checkers.hpp"
#include "lpa/error.hpp"
#include "lpa/sample_graphs.hpp"
#include "lpa/structure.hpp"

using namespace lpa;

namespace {

// f_{i,j} (1-based) in a single n x n block at `vertex`.
BlockMatrix unit_matrix(const MatricialDecomposition& d, std::size_t i, std::size_t j) {
  BlockMatrix m = d.zero_matrices();
  m.blocks.at(0).matrix(i - 1, j - 1) = d.algebra().field().one();
  return m;
}

std::size_t path_index(const MatricialDecomposition::Block& b, const std::vector<EdgeId>& edges) {
  for (std::size_t i = 0; i < b.paths.size(); ++i) {
    if (b.paths[i].edges == edges) return i;
  }
  throw std::logic_error("path not in block");
}

// Independent image of a monomial: expand alpha beta^* at its mid by
// alpha beta^* = sum_e (alpha e)(beta e)^* at regular mids, plus the unit term
// alpha q_w beta^* at flagged mids, until every mid is a sink or flagged.
void expand(const MatricialDecomposition& d, const Monomial& m, const Scalar& k, BlockMatrix& out) {
  const Graph& g = d.algebra().graph();
  VertexKind kind = g.kind(m.mid);
  if (kind != VertexKind::Regular) {
    for (std::size_t b = 0; b < d.blocks().size(); ++b) {
      if (d.blocks()[b].vertex != m.mid) continue;
      Scalar& entry = out.blocks[b].matrix(path_index(d.blocks()[b], m.alpha), path_index(d.blocks()[b], m.beta));
      entry += k;
    }
    if (kind == VertexKind::Sink) return;
  }
  for (EdgeId e : g.out_edges(m.mid)) {
    Monomial next = m;
    next.alpha.push_back(e);
    next.beta.push_back(e);
    next.mid = g.edge(e).range;
    expand(d, next, k, out);
  }
}

BlockMatrix expansion_oracle(const MatricialDecomposition& d, const Element& a) {
  BlockMatrix out = d.zero_matrices();
  for (const auto& [m, k] : a.terms()) expand(d, m, k, out);
  return out;
}

std::vector<Graph> acyclic_graphs() {
  std::vector<Graph> out{line_graph(1), line_graph(3), line_graph(4),
                         parse_graph("vertex v [infinite]; vertex w; edge e: v -> w"),
                         parse_graph("vertex v; vertex w; edge e: v -> w; edge f: v -> w"),
                         parse_graph("vertex u; vertex v [infinite]; vertex w; vertex x; edge a: u -> v; "
                                     "edge b: v -> w; edge c: v -> x; edge d: u -> x; edge g: u -> w")};
  std::mt19937_64 rng(77);
  for (int i = 0; i < 6; ++i) out.push_back(random_acyclic_graph(rng));
  return out;
}

}  // namespace

TEST(Decompose, LineGraphs) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto d = MatricialDecomposition::decompose(Algebra(line_graph(n)));
    ASSERT_EQ(d.blocks().size(), 1u);
    EXPECT_EQ(d.blocks()[0].paths.size(), n);
    EXPECT_EQ(d.dimension(), n * n);
  }
}

TEST(Decompose, FlaggedVertex) {
  Algebra alg(parse_graph("vertex v [infinite]; vertex w; edge e: v -> w"));
  auto d = MatricialDecomposition::decompose(alg);
  ASSERT_EQ(d.blocks().size(), 2u);
  EXPECT_EQ(d.blocks()[0].vertex, alg.graph().vertex("v"));
  EXPECT_EQ(d.blocks()[0].paths.size(), 1u);
  EXPECT_EQ(d.blocks()[0].unit, alg.parse_element("v - e.e^*"));
  EXPECT_EQ(d.blocks()[1].paths.size(), 2u);
  EXPECT_EQ(d.dimension(), 5u);
  const Element& q = d.blocks()[0].unit;
  EXPECT_EQ(q * q, q);
  for (const Monomial& m : enumerate_basis(alg)) {
    Element b = alg.monomial(m);
    EXPECT_EQ(q * b, b * q) << alg.monomial_string(m);
  }
}

TEST(Decompose, SingleVertexAndCyclic) {
  auto d = MatricialDecomposition::decompose(Algebra(parse_graph("vertex v")));
  ASSERT_EQ(d.blocks().size(), 1u);
  EXPECT_EQ(d.dimension(), 1u);
  EXPECT_THROW(MatricialDecomposition::decompose(Algebra(loop_graph())), CyclicGraph);
}

TEST(ToMatrices, LineGraphTwo) {
  Algebra alg(line_graph(2));
  auto d = MatricialDecomposition::decompose(alg);
  EXPECT_EQ(d.to_matrices(alg.edge("e1")), unit_matrix(d, 1, 2));
  EXPECT_EQ(d.to_matrices(alg.vertex("v1")), unit_matrix(d, 1, 1));
  EXPECT_EQ(d.to_matrices(alg.zero()), d.zero_matrices());
}

TEST(ToMatrices, LineGraphGenerators) {
  for (std::size_t n = 1; n <= 5; ++n) {
    Algebra alg(line_graph(n));
    auto d = MatricialDecomposition::decompose(alg);
    for (std::size_t i = 1; i <= n; ++i) {
      EXPECT_EQ(d.to_matrices(alg.vertex("v" + std::to_string(i))), unit_matrix(d, i, i));
      if (i == n) continue;
      EXPECT_EQ(d.to_matrices(alg.edge("e" + std::to_string(i))), unit_matrix(d, i, i + 1));
      EXPECT_EQ(d.to_matrices(alg.ghost("e" + std::to_string(i))), unit_matrix(d, i + 1, i));
    }
  }
}

TEST(FromMatrices, Examples) {
  Algebra alg(line_graph(2));
  auto d = MatricialDecomposition::decompose(alg);
  EXPECT_EQ(d.from_matrices(unit_matrix(d, 2, 1)), alg.ghost("e1"));
  EXPECT_EQ(d.from_matrices(d.identity_matrices()), alg.one());
  EXPECT_TRUE(d.from_matrices(d.zero_matrices()).is_zero());
  BlockMatrix wrong;
  wrong.blocks.push_back({0, Matrix(Field(), 3, 3)});
  EXPECT_THROW(d.from_matrices(wrong), ShapeMismatch);
}

TEST(Laurent, Images) {
  Algebra alg(loop_graph());
  Field q;
  EXPECT_EQ(laurent_of_loop(alg.parse_element("v - c")),
            LaurentPoly::monomial(q.one(), 0) - LaurentPoly::monomial(q.one(), 1));
  EXPECT_EQ(laurent_of_loop(alg.ghost("c")), LaurentPoly::monomial(q.one(), -1));
  EXPECT_EQ(laurent_of_loop(alg.vertex("v")), LaurentPoly::monomial(q.one(), 0));
  EXPECT_EQ(laurent_of_loop(alg.parse_element("v - c")).to_string(), "1 x^0 + -1 x^1");
  EXPECT_THROW(laurent_of_loop(Algebra(line_graph(2)).vertex("v1")), WrongGraph);
  EXPECT_THROW(laurent_of_loop(Algebra(parse_graph("vertex v [infinite]; edge c: v -> v")).vertex("v")),
               WrongGraph);
}

TEST(LoopCertificate, Facts) {
  Algebra alg(loop_graph());
  LoopCertificate cert = loop_counterexample_certificate(alg);
  EXPECT_TRUE(cert.holds());
  EXPECT_EQ(cert.element, "v - c");
  EXPECT_EQ(cert.ghost, "c^*");
  EXPECT_TRUE(cert.element_at_one.is_zero());
  EXPECT_TRUE(cert.ghost_at_one.is_one());
  EXPECT_EQ(cert.element_lowest_exponent, 0);
  EXPECT_TRUE(cert.element_lowest_coefficient.is_one());
  ASSERT_EQ(cert.samples.size(), 21u);
  const auto& worked = cert.samples.front();
  Field q;
  EXPECT_EQ(worked.f, LaurentPoly::monomial(q.from_int(3), -2) + LaurentPoly::monomial(q.one(), 1));
  EXPECT_EQ(*worked.product.lowest_exponent(), -2);
  EXPECT_EQ(worked.product.lowest_coefficient(), q.from_int(3));
  EXPECT_TRUE(worked.preserved);
  EXPECT_THROW(loop_counterexample_certificate(Algebra(line_graph(2))), WrongGraph);
  EXPECT_TRUE(loop_counterexample_certificate(Algebra(loop_graph(), Field::prime(5)), 9, 5).holds());
}

// ---------------------------------------------------------------------------
// Properties

class StructureProperties : public testing::TestWithParam<std::uint32_t> {
 protected:
  Field field() const { return GetParam() == 0 ? Field::rationals() : Field::prime(GetParam()); }
};

TEST_P(StructureProperties, OracleEquivalence) {
  for (const Graph& g : acyclic_graphs()) {
    Algebra alg(g, field());
    auto d = MatricialDecomposition::decompose(alg);
    EXPECT_EQ(d.dimension(), enumerate_basis(alg).size());
    ElementSampler sampler(alg, GetParam() + 1);
    for (int i = 0; i < 150; ++i) {
      Element a = sampler.element(), b = sampler.element();
      BlockMatrix ma = d.to_matrices(a), mb = d.to_matrices(b);
      EXPECT_EQ(ma, expansion_oracle(d, a));
      EXPECT_EQ(d.to_matrices(a * b), ma * mb);
      EXPECT_EQ(d.to_matrices(a + b), ma + mb);
      EXPECT_EQ(d.to_matrices(alg.star(a)), ma.transpose());
      EXPECT_EQ(d.from_matrices(ma), a);
    }
  }
}

TEST_P(StructureProperties, MatricesRoundTrip) {
  std::mt19937_64 rng(GetParam() + 2);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (const Graph& g : acyclic_graphs()) {
    Algebra alg(g, field());
    auto d = MatricialDecomposition::decompose(alg);
    for (int i = 0; i < 20; ++i) {
      BlockMatrix m = d.zero_matrices();
      for (auto& b : m.blocks) {
        for (std::size_t r = 0; r < b.matrix.rows(); ++r)
          for (std::size_t c = 0; c < b.matrix.cols(); ++c) b.matrix(r, c) = field().from_int(entry(rng));
      }
      EXPECT_EQ(d.to_matrices(d.from_matrices(m)), m);
    }
  }
}

TEST_P(StructureProperties, BlockUnitsPartitionTheIdentity) {
  for (const Graph& g : acyclic_graphs()) {
    Algebra alg(g, field());
    auto d = MatricialDecomposition::decompose(alg);
    Element sum = alg.zero();
    for (std::size_t i = 0; i < d.blocks().size(); ++i) {
      std::size_t n = d.blocks()[i].paths.size();
      for (std::size_t r = 0; r < n; ++r) sum += d.matrix_unit(i, r, r);
      const Element& qi = d.blocks()[i].unit;
      EXPECT_EQ(qi * qi, qi);
      for (std::size_t j = 0; j < d.blocks().size(); ++j) {
        if (j != i) EXPECT_TRUE((qi * d.blocks()[j].unit).is_zero());
      }
    }
    EXPECT_EQ(sum, alg.one());
    EXPECT_EQ(d.from_matrices(d.identity_matrices()), alg.one());
  }
}

TEST_P(StructureProperties, LaurentModelIsAHomomorphism) {
  Algebra alg(loop_graph(), field());
  ElementSampler sampler(alg, GetParam() + 5);
  for (int i = 0; i < 300; ++i) {
    Element a = sampler.element(), b = sampler.element();
    LaurentPoly la = laurent_of_loop(a), lb = laurent_of_loop(b);
    EXPECT_EQ(laurent_of_loop(a * b), la * lb);
    EXPECT_EQ(laurent_of_loop(a + b), la + lb);
    EXPECT_EQ((la * lb).evaluate_at_one(), la.evaluate_at_one() * lb.evaluate_at_one());
    EXPECT_EQ((la + lb).evaluate_at_one(), la.evaluate_at_one() + lb.evaluate_at_one());
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, StructureProperties, testing::Values(0u, 5u));
