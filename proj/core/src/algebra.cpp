#include "lpa/algebra.hpp"

#include <algorithm>
#include <utility>

#include "lpa/error.hpp"

namespace lpa {

namespace detail {

struct AlgebraData {
  Graph graph;
  Field field;
  std::vector<std::optional<EdgeId>> special;
};

}  // namespace detail

namespace {

void accumulate(Element::Terms& terms, Monomial m, const Scalar& k) {
  if (k.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(std::move(m), k);
  if (!inserted) {
    it->second += k;
    if (it->second.is_zero()) terms.erase(it);
  }
}

bool is_prefix(const std::vector<EdgeId>& p, const std::vector<EdgeId>& q) {
  return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

}  // namespace

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  if (a.beta != b.beta) return a.beta < b.beta;
  return a.mid < b.mid;
}

Monomial path_monomial(const Graph& g, const Path& p) { return Monomial{p.edges, {}, g.range(p)}; }

Monomial ghost_path_monomial(const Graph& g, const Path& p) { return Monomial{{}, p.edges, g.range(p)}; }

// ---------------------------------------------------------------------------
// Element

Algebra Element::algebra() const { return Algebra(data_); }

Scalar Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? data_->field.zero() : it->second;
}

void Element::check_same(const Element& rhs) const {
  if (data_ != rhs.data_) throw MixedAlgebra("elements belong to different algebra instances");
}

Element& Element::operator+=(const Element& rhs) {
  check_same(rhs);
  for (const auto& [m, k] : rhs.terms_) accumulate(terms_, m, k);
  return *this;
}

Element& Element::operator-=(const Element& rhs) {
  check_same(rhs);
  for (const auto& [m, k] : rhs.terms_) accumulate(terms_, m, -k);
  return *this;
}

Element Element::operator-() const {
  Terms out;
  for (const auto& [m, k] : terms_) out.emplace_hint(out.end(), m, -k);
  return Element(data_, std::move(out));
}

Element operator*(const Element& a, const Element& b) { return a.algebra().mul(a, b); }

Element operator*(const Scalar& k, const Element& a) { return a.algebra().scalar_mul(k, a); }

bool operator==(const Element& a, const Element& b) { return a.data_ == b.data_ && a.terms_ == b.terms_; }

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  Algebra alg(data_);
  std::string out;
  bool first = true;
  for (const auto& [m, k] : terms_) {
    bool negative = k.field().is_rational() && sgn(k.rational()) < 0;
    Scalar magnitude = negative ? -k : k;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (!magnitude.is_one()) out += magnitude.coefficient_string() + "*";
    out += alg.monomial_string(m);
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebra

Algebra::Algebra(Graph graph, Field field) {
  auto data = std::make_shared<detail::AlgebraData>(detail::AlgebraData{std::move(graph), field, {}});
  const Graph& g = data->graph;
  data->special.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.kind(v) == VertexKind::Regular) data->special[v] = g.out_edges(v).back();
  }
  data_ = std::move(data);
}

const Graph& Algebra::graph() const noexcept { return data_->graph; }
Field Algebra::field() const noexcept { return data_->field; }

std::optional<EdgeId> Algebra::special_edge(VertexId v) const { return data_->special.at(v); }

void Algebra::check_owned(const Element& a) const {
  if (a.data_ != data_) throw MixedAlgebra("element belongs to a different algebra instance");
}

bool Algebra::is_composable(const Monomial& m) const {
  const Graph& g = graph();
  if (m.mid >= g.vertex_count()) return false;
  for (const auto* p : {&m.alpha, &m.beta}) {
    VertexId at = m.mid;
    for (auto it = p->rbegin(); it != p->rend(); ++it) {
      if (*it >= g.edge_count() || g.edge(*it).range != at) return false;
      at = g.edge(*it).source;
    }
  }
  return true;
}

bool Algebra::is_normal(const Monomial& m) const {
  if (!is_composable(m)) return false;
  if (m.alpha.empty() || m.beta.empty() || m.alpha.back() != m.beta.back()) return true;
  EdgeId f = m.alpha.back();
  return data_->special[graph().edge(f).source] != f;
}

VertexId Algebra::source_of_alpha(const Monomial& m) const {
  return m.alpha.empty() ? m.mid : graph().edge(m.alpha.front()).source;
}

VertexId Algebra::source_of_beta(const Monomial& m) const {
  return m.beta.empty() ? m.mid : graph().edge(m.beta.front()).source;
}

Element Algebra::zero() const { return make({}); }

Element Algebra::one() const {
  Element::Terms terms;
  for (VertexId v = 0; v < graph().vertex_count(); ++v) terms.emplace(Monomial{{}, {}, v}, field().one());
  return make(std::move(terms));
}

Element Algebra::scalar(const Scalar& k) const { return scalar_mul(k, one()); }

Element Algebra::vertex(VertexId v) const {
  if (v >= graph().vertex_count()) throw UnknownIdentifier("unknown vertex index " + std::to_string(v));
  return make({{Monomial{{}, {}, v}, field().one()}});
}

Element Algebra::vertex(std::string_view name) const { return vertex(graph().vertex(name)); }

Element Algebra::edge(EdgeId e) const {
  if (e >= graph().edge_count()) throw UnknownIdentifier("unknown edge index " + std::to_string(e));
  return make({{Monomial{{e}, {}, graph().edge(e).range}, field().one()}});
}

Element Algebra::edge(std::string_view name) const { return edge(graph().edge_id(name)); }

Element Algebra::ghost(EdgeId e) const {
  if (e >= graph().edge_count()) throw UnknownIdentifier("unknown edge index " + std::to_string(e));
  return make({{Monomial{{}, {e}, graph().edge(e).range}, field().one()}});
}

Element Algebra::ghost(std::string_view name) const { return ghost(graph().edge_id(name)); }

Element Algebra::monomial(const Monomial& m, const Scalar& k) const {
  RawTerm raw{k, m};
  return normalize(std::span<const RawTerm>(&raw, 1));
}

Element Algebra::monomial(const Monomial& m) const { return monomial(m, field().one()); }

Element Algebra::normalize(std::span<const RawTerm> raw, RewriteOrder order, std::mt19937_64* rng) const {
  const Graph& g = graph();
  for (const auto& t : raw) {
    if (!is_composable(t.monomial)) throw PreconditionError("monomial is not composable");
    if (t.coefficient.field() != field()) throw MixedAlgebra("coefficient from a different field");
  }

  Element::Terms result;
  std::vector<RawTerm> pending;

  // Applies one CK-2 rewrite to a non-normal term, appending the replacements.
  auto rewrite = [&](RawTerm&& t, std::vector<RawTerm>& out) {
    Monomial& m = t.monomial;
    EdgeId f = m.alpha.back();
    VertexId v = g.edge(f).source;
    m.alpha.pop_back();
    m.beta.pop_back();
    for (EdgeId e : g.out_edges(v)) {
      if (e == f) continue;
      Monomial sibling{m.alpha, m.beta, g.edge(e).range};
      sibling.alpha.push_back(e);
      sibling.beta.push_back(e);
      out.push_back({-t.coefficient, std::move(sibling)});
    }
    m.mid = v;
    out.push_back(std::move(t));
  };

  if (order == RewriteOrder::JunctionFirst) {
    pending.assign(raw.rbegin(), raw.rend());
    while (!pending.empty()) {
      RawTerm t = std::move(pending.back());
      pending.pop_back();
      if (t.coefficient.is_zero()) continue;
      if (is_normal(t.monomial)) {
        accumulate(result, std::move(t.monomial), t.coefficient);
      } else {
        rewrite(std::move(t), pending);
      }
    }
    return make(std::move(result));
  }

  if (rng == nullptr) throw PreconditionError("randomized rewrite order needs a random generator");
  // Pending terms are kept merged, so cancellations happen before rewriting.
  Element::Terms waiting;
  for (const auto& t : raw) accumulate(waiting, t.monomial, t.coefficient);
  while (!waiting.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, waiting.size() - 1);
    auto it = std::next(waiting.begin(), static_cast<std::ptrdiff_t>(pick(*rng)));
    RawTerm t{it->second, it->first};
    waiting.erase(it);
    if (is_normal(t.monomial)) {
      accumulate(result, std::move(t.monomial), t.coefficient);
      continue;
    }
    std::vector<RawTerm> produced;
    rewrite(std::move(t), produced);
    for (auto& p : produced) accumulate(waiting, std::move(p.monomial), p.coefficient);
  }
  return make(std::move(result));
}

std::optional<Monomial> Algebra::multiply_monomials(const Monomial& a, const Monomial& b) const {
  // (alpha beta^*)(gamma delta^*): beta^* gamma survives CK-1 only when beta and
  // gamma leave the same vertex and one is a prefix of the other.
  if (source_of_beta(a) != source_of_alpha(b)) return std::nullopt;
  if (is_prefix(a.beta, b.alpha)) {
    Monomial out{a.alpha, b.beta, b.mid};
    out.alpha.insert(out.alpha.end(), b.alpha.begin() + static_cast<std::ptrdiff_t>(a.beta.size()), b.alpha.end());
    return out;
  }
  if (is_prefix(b.alpha, a.beta)) {
    Monomial out{a.alpha, b.beta, a.mid};
    out.beta.insert(out.beta.end(), a.beta.begin() + static_cast<std::ptrdiff_t>(b.alpha.size()), a.beta.end());
    return out;
  }
  return std::nullopt;
}

Element Algebra::mul(const Element& a, const Element& b) const {
  check_owned(a);
  check_owned(b);
  Element::Terms result;
  std::vector<RawTerm> dirty;
  for (const auto& [ma, ka] : a.terms()) {
    for (const auto& [mb, kb] : b.terms()) {
      auto product = multiply_monomials(ma, mb);
      if (!product) continue;
      if (is_normal(*product)) {
        accumulate(result, std::move(*product), ka * kb);
      } else {
        dirty.push_back({ka * kb, std::move(*product)});
      }
    }
  }
  if (!dirty.empty()) {
    Element rewritten = normalize(dirty);
    for (auto& [m, k] : rewritten.terms_) accumulate(result, m, k);
  }
  return make(std::move(result));
}

Element Algebra::add(const Element& a, const Element& b) const {
  check_owned(a);
  return a + b;
}

Element Algebra::scalar_mul(const Scalar& k, const Element& a) const {
  check_owned(a);
  if (k.field() != field()) throw MixedAlgebra("scalar from a different field");
  if (k.is_zero()) return zero();
  Element::Terms out;
  for (const auto& [m, c] : a.terms()) out.emplace_hint(out.end(), m, c * k);
  return make(std::move(out));
}

Element Algebra::star(const Element& a) const {
  check_owned(a);
  Element::Terms out;
  for (const auto& [m, k] : a.terms()) out.emplace(Monomial{m.beta, m.alpha, m.mid}, k);
  return make(std::move(out));
}

Element Algebra::local_unit(std::span<const Element> elements) const {
  std::vector<bool> used(graph().vertex_count(), false);
  for (const auto& a : elements) {
    check_owned(a);
    for (const auto& [m, k] : a.terms()) {
      used[source_of_alpha(m)] = true;
      used[source_of_beta(m)] = true;
    }
  }
  Element::Terms terms;
  for (VertexId v = 0; v < used.size(); ++v) {
    if (used[v]) terms.emplace(Monomial{{}, {}, v}, field().one());
  }
  return make(std::move(terms));
}

std::string Algebra::monomial_string(const Monomial& m) const {
  const Graph& g = graph();
  if (m.alpha.empty() && m.beta.empty()) return g.vertex_name(m.mid);
  std::string out;
  for (std::size_t i = 0; i < m.alpha.size(); ++i) {
    if (i > 0) out += '.';
    out += g.edge_name(m.alpha[i]);
  }
  if (m.beta.empty()) return out;
  if (!out.empty()) out += '.';
  if (m.beta.size() == 1) return out + g.edge_name(m.beta.front()) + "^*";
  out += '(';
  for (std::size_t i = 0; i < m.beta.size(); ++i) {
    if (i > 0) out += '.';
    out += g.edge_name(m.beta[i]);
  }
  return out + ")^*";
}

}  // namespace lpa
