#include "lpa/findim.hpp"

#include <algorithm>

#include "lpa/error.hpp"

namespace lpa {

namespace {

// Above this dimension products are computed on demand instead of tabulated.
constexpr std::size_t kTableLimit = 1024;

}  // namespace

std::vector<Monomial> enumerate_basis(const Algebra& algebra, std::size_t dimension_cap) {
  const Graph& g = algebra.graph();
  if (auto cycle = g.find_cycle()) {
    throw InfiniteDimensional("graph has the cycle " + g.path_string(*cycle) +
                              "; the algebra is infinite-dimensional");
  }
  std::vector<std::vector<Path>> paths(g.vertex_count());
  std::size_t count = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    paths[v] = g.paths_ending_at(v);
    if (paths[v].size() > dimension_cap) throw DimensionCapExceeded(paths[v].size(), dimension_cap);
    count += paths[v].size() * paths[v].size();
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (algebra.special_edge(v)) count -= paths[v].size() * paths[v].size();
  }
  if (count > dimension_cap) throw DimensionCapExceeded(count, dimension_cap);

  std::vector<Monomial> basis;
  basis.reserve(count);
  for (VertexId mid = 0; mid < g.vertex_count(); ++mid) {
    for (const Path& alpha : paths[mid]) {
      for (const Path& beta : paths[mid]) {
        Monomial m{alpha.edges, beta.edges, mid};
        if (algebra.is_normal(m)) basis.push_back(std::move(m));
      }
    }
  }
  std::sort(basis.begin(), basis.end(), MonomialLess{});
  if (basis.size() != count) throw InvariantViolation("normal monomial count disagrees with path count");
  return basis;
}

std::vector<Monomial> enumerate_normal_monomials(const Algebra& algebra, std::size_t max_path_length,
                                                 std::size_t max_degree) {
  const Graph& g = algebra.graph();
  std::vector<Monomial> out;
  for (VertexId mid = 0; mid < g.vertex_count(); ++mid) {
    auto paths = g.paths_ending_at_up_to(mid, std::min(max_path_length, max_degree));
    for (const Path& alpha : paths) {
      for (const Path& beta : paths) {
        if (alpha.length() + beta.length() > max_degree) break;  // paths are sorted by length
        Monomial m{alpha.edges, beta.edges, mid};
        if (algebra.is_normal(m)) out.push_back(std::move(m));
      }
    }
  }
  std::sort(out.begin(), out.end(), MonomialLess{});
  return out;
}

FiniteAlgebra::FiniteAlgebra(Algebra algebra, std::size_t dimension_cap)
    : algebra_(std::move(algebra)), basis_(enumerate_basis(algebra_, dimension_cap)) {
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  if (dim() > kTableLimit) return;

  offsets_.reserve(dim() * dim() + 1);
  offsets_.push_back(0);
  const Scalar one = field().one();
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      if (auto raw = algebra_.multiply_monomials(basis_[i], basis_[j])) {
        if (algebra_.is_normal(*raw)) {
          entries_.push_back({index_of(*raw), one});
        } else {
          Element normal = algebra_.monomial(*raw);
          for (const auto& [m, k] : normal.terms()) entries_.push_back({index_of(m), k});
        }
      }
      offsets_.push_back(entries_.size());
    }
  }
}

std::size_t FiniteAlgebra::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw PreconditionError("monomial " + algebra_.monomial_string(m) + " is not in the basis");
  return it->second;
}

std::span<const FiniteAlgebra::Entry> FiniteAlgebra::product(std::size_t i, std::size_t j) const {
  std::size_t pair = i * dim() + j;
  return {entries_.data() + offsets_[pair], offsets_[pair + 1] - offsets_[pair]};
}

Vector FiniteAlgebra::coordinates(const Element& a) const {
  if (!(a.algebra() == algebra_)) throw MixedAlgebra("element belongs to a different algebra instance");
  Vector v(dim(), field().zero());
  for (const auto& [m, k] : a.terms()) v[index_of(m)] = k;
  return v;
}

Element FiniteAlgebra::element(std::span<const Scalar> coords) const {
  if (coords.size() != dim()) throw ShapeMismatch("coordinate vector has the wrong length");
  Element out = algebra_.zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!coords[i].is_zero()) out += algebra_.monomial(basis_[i], coords[i]);
  }
  return out;
}

std::vector<Element> FiniteAlgebra::elements(const Subspace& s) const {
  std::vector<Element> out;
  for (std::size_t r = 0; r < s.rank(); ++r) out.push_back(element(s.echelon().row(r)));
  return out;
}

Subspace FiniteAlgebra::span(std::span<const Element> generators) const {
  std::vector<Vector> rows;
  rows.reserve(generators.size());
  for (const auto& g : generators) rows.push_back(coordinates(g));
  return Subspace::span(field(), dim(), rows);
}

Vector FiniteAlgebra::multiply(std::span<const Scalar> x, std::span<const Scalar> y) const {
  if (x.size() != dim() || y.size() != dim()) throw ShapeMismatch("coordinate vector has the wrong length");
  if (offsets_.empty()) {
    Element product = element(x) * element(y);
    return coordinates(product);
  }
  std::vector<std::size_t> ys;
  for (std::size_t j = 0; j < dim(); ++j) {
    if (!y[j].is_zero()) ys.push_back(j);
  }
  Vector out(dim(), field().zero());
  Scalar xy = field().zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j : ys) {
      auto entries = product(i, j);
      if (entries.empty()) continue;
      xy = x[i];
      xy *= y[j];
      for (const auto& e : entries) {
        if (e.coefficient.is_one()) {
          out[e.index] += xy;
        } else {
          out[e.index] += xy * e.coefficient;
        }
      }
    }
  }
  return out;
}

Matrix FiniteAlgebra::products_with(std::span<const Scalar> y, bool y_on_right) const {
  Matrix m(field(), dim(), dim());
  Vector unit(dim(), field().zero());
  for (std::size_t i = 0; i < dim(); ++i) {
    unit[i] = field().one();
    Vector column = y_on_right ? multiply(unit, y) : multiply(y, unit);
    unit[i] = field().zero();
    for (std::size_t r = 0; r < dim(); ++r) {
      if (!column[r].is_zero()) m(r, i) = std::move(column[r]);
    }
  }
  return m;
}

Matrix FiniteAlgebra::left_multiplication(const Element& a) const { return products_with(coordinates(a), false); }

Matrix FiniteAlgebra::right_multiplication(const Element& a) const { return products_with(coordinates(a), true); }

Subspace FiniteAlgebra::right_annihilator(const Element& a) const {
  return Subspace::span(field(), dim(), left_multiplication(a).nullspace());
}

Subspace FiniteAlgebra::principal_left_ideal(const Element& a) const {
  return Subspace::from_matrix(right_multiplication(a).transpose());
}

Subspace FiniteAlgebra::left_annihilator(const Subspace& s) const {
  if (s.ambient_dim() != dim()) throw ShapeMismatch("subspace lives in a different space");
  // Kernel of x -> x*s_1, then restricted successively by the other generators.
  std::vector<Vector> kernel;
  bool first = true;
  for (std::size_t r = 0; r < s.rank(); ++r) {
    auto generator = s.echelon().row(r);
    if (first) {
      kernel = products_with(generator, true).nullspace();
      first = false;
    } else {
      Matrix images(field(), dim(), kernel.size());
      for (std::size_t l = 0; l < kernel.size(); ++l) {
        Vector column = multiply(kernel[l], generator);
        for (std::size_t i = 0; i < dim(); ++i) images(i, l) = std::move(column[i]);
      }
      std::vector<Vector> next;
      for (const Vector& c : images.nullspace()) {
        Vector combined(dim(), field().zero());
        for (std::size_t l = 0; l < kernel.size(); ++l) {
          if (c[l].is_zero()) continue;
          for (std::size_t i = 0; i < dim(); ++i) {
            if (!kernel[l][i].is_zero()) combined[i] += c[l] * kernel[l][i];
          }
        }
        next.push_back(std::move(combined));
      }
      kernel = std::move(next);
    }
    if (kernel.empty()) return zero_subspace();
  }
  if (first) return full_subspace();
  return Subspace::span(field(), dim(), kernel);
}

}  // namespace lpa
