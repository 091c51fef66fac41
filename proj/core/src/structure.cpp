#include "lpa/structure.hpp"

#include <algorithm>
#include <random>

#include "lpa/error.hpp"

namespace lpa {

// ---------------------------------------------------------------------------
// BlockMatrix

namespace {

void check_same_shape(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.blocks.size() != b.blocks.size()) throw ShapeMismatch("block matrices have different block counts");
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (a.blocks[i].vertex != b.blocks[i].vertex || a.blocks[i].matrix.rows() != b.blocks[i].matrix.rows()) {
      throw ShapeMismatch("block matrices have different block shapes");
    }
  }
}

}  // namespace

BlockMatrix BlockMatrix::transpose() const {
  BlockMatrix out;
  for (const auto& b : blocks) out.blocks.push_back({b.vertex, b.matrix.transpose()});
  return out;
}

BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
  check_same_shape(a, b);
  BlockMatrix out;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    out.blocks.push_back({a.blocks[i].vertex, a.blocks[i].matrix * b.blocks[i].matrix});
  }
  return out;
}

BlockMatrix operator+(const BlockMatrix& a, const BlockMatrix& b) {
  check_same_shape(a, b);
  BlockMatrix out;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    out.blocks.push_back({a.blocks[i].vertex, a.blocks[i].matrix + b.blocks[i].matrix});
  }
  return out;
}

bool operator==(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (a.blocks[i].vertex != b.blocks[i].vertex || !(a.blocks[i].matrix == b.blocks[i].matrix)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// MatricialDecomposition

MatricialDecomposition MatricialDecomposition::decompose(const Algebra& algebra, std::size_t dimension_cap) {
  const Graph& g = algebra.graph();
  if (auto cycle = g.find_cycle()) {
    throw CyclicGraph("graph has the cycle " + g.path_string(*cycle) + "; no matricial decomposition");
  }
  MatricialDecomposition d(algebra);
  d.basis_ = enumerate_basis(algebra, dimension_cap);
  for (std::size_t i = 0; i < d.basis_.size(); ++i) d.index_.emplace(d.basis_[i], i);

  std::size_t offset = 0;
  for (VertexId w = 0; w < g.vertex_count(); ++w) {
    VertexKind kind = g.kind(w);
    if (kind == VertexKind::Regular) continue;
    Element unit = algebra.vertex(w);
    if (kind == VertexKind::InfiniteEmitter) {
      for (EdgeId e : g.out_edges(w)) unit -= algebra.edge(e) * algebra.ghost(e);
    }
    auto paths = g.paths_ending_at(w);
    std::reverse(paths.begin(), paths.end());  // longest path first
    d.block_offset_.push_back(offset);
    offset += paths.size() * paths.size();
    d.blocks_.push_back({w, std::move(paths), std::move(unit)});
  }
  if (offset != d.basis_.size()) {
    throw InvariantViolation("matrix-unit count " + std::to_string(offset) + " differs from basis size " +
                             std::to_string(d.basis_.size()));
  }

  // Column k of `units` holds the normal-form coordinates of matrix unit k.
  const Field field = algebra.field();
  Matrix units(field, offset, offset);
  for (std::size_t b = 0; b < d.blocks_.size(); ++b) {
    std::size_t n = d.blocks_[b].paths.size();
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        Element u = d.matrix_unit(b, r, c);
        std::size_t column = d.block_offset_[b] + r * n + c;
        for (const auto& [m, k] : u.terms()) units(d.index_.at(m), column) = k;
      }
    }
  }
  auto inverse = units.inverse();
  if (!inverse) throw InvariantViolation("matrix units are linearly dependent");
  d.to_units_ = std::move(*inverse);
  return d;
}

Element MatricialDecomposition::matrix_unit(std::size_t block, std::size_t row, std::size_t col) const {
  const Block& b = blocks_.at(block);
  const Graph& g = algebra_.graph();
  Element p = algebra_.monomial(path_monomial(g, b.paths.at(row)));
  Element q = algebra_.monomial(ghost_path_monomial(g, b.paths.at(col)));
  return p * b.unit * q;
}

BlockMatrix MatricialDecomposition::zero_matrices() const {
  BlockMatrix out;
  for (const auto& b : blocks_) {
    out.blocks.push_back({b.vertex, Matrix(algebra_.field(), b.paths.size(), b.paths.size())});
  }
  return out;
}

BlockMatrix MatricialDecomposition::identity_matrices() const {
  BlockMatrix out;
  for (const auto& b : blocks_) out.blocks.push_back({b.vertex, Matrix::identity(algebra_.field(), b.paths.size())});
  return out;
}

BlockMatrix MatricialDecomposition::to_matrices(const Element& a) const {
  if (!(a.algebra() == algebra_)) throw MixedAlgebra("element belongs to a different algebra instance");
  Vector coords(basis_.size(), algebra_.field().zero());
  for (const auto& [m, k] : a.terms()) coords[index_.at(m)] = k;
  Vector entries = to_units_.apply(coords);
  BlockMatrix out = zero_matrices();
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    std::size_t n = blocks_[b].paths.size();
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) out.blocks[b].matrix(r, c) = entries[block_offset_[b] + r * n + c];
    }
  }
  return out;
}

Element MatricialDecomposition::from_matrices(const BlockMatrix& m) const {
  check_same_shape(m, zero_matrices());
  Element out = algebra_.zero();
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Matrix& mat = m.blocks[b].matrix;
    for (std::size_t r = 0; r < mat.rows(); ++r) {
      for (std::size_t c = 0; c < mat.cols(); ++c) {
        if (!mat(r, c).is_zero()) out += algebra_.scalar_mul(mat(r, c), matrix_unit(b, r, c));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::monomial(const Scalar& k, std::int64_t exponent) {
  LaurentPoly p(k.field());
  p.add_term(exponent, k);
  return p;
}

void LaurentPoly::add_term(std::int64_t exponent, const Scalar& k) {
  if (k.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponent, k);
  if (!inserted) {
    it->second += k;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar LaurentPoly::coefficient(std::int64_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? field_.zero() : it->second;
}

std::optional<std::int64_t> LaurentPoly::lowest_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

Scalar LaurentPoly::lowest_coefficient() const { return terms_.empty() ? field_.zero() : terms_.begin()->second; }

Scalar LaurentPoly::evaluate_at_one() const {
  Scalar sum = field_.zero();
  for (const auto& [e, k] : terms_) sum += k;
  return sum;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  if (rhs.field_ != field_) throw MixedAlgebra("Laurent polynomials over different fields");
  for (const auto& [e, k] : rhs.terms_) add_term(e, k);
  return *this;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out = a;
  for (const auto& [e, k] : b.terms_) out.add_term(e, -k);
  return out;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.field_ != b.field_) throw MixedAlgebra("Laurent polynomials over different fields");
  LaurentPoly out(a.field_);
  for (const auto& [ea, ka] : a.terms_) {
    for (const auto& [eb, kb] : b.terms_) out.add_term(ea + eb, ka * kb);
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, k] : terms_) {
    if (!out.empty()) out += " + ";
    out += k.coefficient_string() + " x^" + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Loop graph

bool is_loop_graph(const Graph& g) {
  return g.vertex_count() == 1 && g.edge_count() == 1 && !g.is_flagged(0);
}

LaurentPoly laurent_of_loop(const Element& a) {
  Algebra alg = a.algebra();
  if (!is_loop_graph(alg.graph())) throw WrongGraph("Laurent model needs the single-vertex single-loop graph");
  LaurentPoly out(alg.field());
  for (const auto& [m, k] : a.terms()) {
    auto exponent = static_cast<std::int64_t>(m.alpha.size()) - static_cast<std::int64_t>(m.beta.size());
    out += LaurentPoly::monomial(k, exponent);
  }
  return out;
}

LoopCertificate loop_counterexample_certificate(const Algebra& algebra, std::uint64_t seed, std::size_t samples) {
  const Graph& g = algebra.graph();
  if (!is_loop_graph(g)) throw WrongGraph("the certificate is defined for the single-vertex single-loop graph");
  const Field field = algebra.field();
  const EdgeId c = 0;

  LoopCertificate cert;
  cert.seed = seed;
  Element a = algebra.vertex(VertexId{0}) - algebra.edge(c);
  Element ghost = algebra.ghost(c);
  cert.element = a.to_string();
  cert.ghost = ghost.to_string();
  cert.element_image = laurent_of_loop(a);
  cert.ghost_image = laurent_of_loop(ghost);

  const LaurentPoly one_minus_x = LaurentPoly::monomial(field.one(), 0) - LaurentPoly::monomial(field.one(), 1);
  const LaurentPoly x_inverse = LaurentPoly::monomial(field.one(), -1);
  bool images_match = cert.element_image == one_minus_x && cert.ghost_image == x_inverse;

  // (i) Lowest-term argument for r(1 - x) = 0.
  cert.element_lowest_exponent = *cert.element_image.lowest_exponent();
  cert.element_lowest_coefficient = cert.element_image.lowest_coefficient();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> exponent_dist(-4, 4);
  std::uniform_int_distribution<int> size_dist(1, 4);
  auto random_coefficient = [&]() {
    if (field.is_rational()) {
      std::uniform_int_distribution<int> pick(-2, 1);
      int k = pick(rng);
      return field.from_int(k >= 0 ? k + 1 : k);
    }
    std::uniform_int_distribution<std::uint32_t> pick(1, field.characteristic() - 1);
    return field.from_int(pick(rng));
  };
  auto random_poly = [&]() {
    LaurentPoly f(field);
    int n = size_dist(rng);
    for (int i = 0; i < n; ++i) f += LaurentPoly::monomial(random_coefficient(), exponent_dist(rng));
    if (f.is_zero()) f = LaurentPoly::monomial(field.one(), exponent_dist(rng));
    return f;
  };

  // The worked instance 3x^-2 + x leads the sample list.
  std::vector<LaurentPoly> fs;
  fs.push_back(LaurentPoly::monomial(field.from_int(3), -2) + LaurentPoly::monomial(field.one(), 1));
  if (fs.front().is_zero()) fs.front() = LaurentPoly::monomial(field.one(), -2);
  for (std::size_t i = 0; i < samples; ++i) fs.push_back(random_poly());

  bool all_preserved = true;
  for (auto& f : fs) {
    LaurentPoly product = one_minus_x * f;
    bool preserved = !product.is_zero() &&
                     *product.lowest_exponent() == *f.lowest_exponent() + cert.element_lowest_exponent &&
                     product.lowest_coefficient() == f.lowest_coefficient() * cert.element_lowest_coefficient;
    all_preserved = all_preserved && preserved;
    cert.samples.push_back({std::move(f), std::move(product), preserved});
  }
  cert.right_annihilator_trivial = images_match && !cert.element_lowest_coefficient.is_zero() && all_preserved;
  // l(0) is the whole algebra.
  cert.ghost_in_double_annihilator = cert.right_annihilator_trivial;

  // (ii) Evaluation at 1.
  cert.element_at_one = cert.element_image.evaluate_at_one();
  cert.ghost_at_one = cert.ghost_image.evaluate_at_one();
  bool multiplicative = true;
  for (std::size_t i = 0; i < samples; ++i) {
    LaurentPoly f = random_poly();
    LaurentPoly h = random_poly();
    multiplicative = multiplicative && (f * h).evaluate_at_one() == f.evaluate_at_one() * h.evaluate_at_one() &&
                     (f + h).evaluate_at_one() == f.evaluate_at_one() + h.evaluate_at_one();
  }
  cert.evaluation_multiplicative = multiplicative;
  cert.ghost_outside_principal_ideal =
      images_match && multiplicative && cert.element_at_one.is_zero() && !cert.ghost_at_one.is_zero();
  return cert;
}

}  // namespace lpa
