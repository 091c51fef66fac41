#include "lpa/scalar.hpp"

#include <charconv>
#include <ostream>

#include "lpa/error.hpp"

namespace lpa {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t reduce(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view text) {
  text = trim(text);
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw ParseError("expected an integer", 1, 1);
  for (char c : digits) {
    if (c < '0' || c > '9') throw ParseError("expected an integer, got '" + std::string(text) + "'", 1, 1);
  }
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  return mpz_class(s, 10);
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31U) || !is_prime(p)) {
    throw PreconditionError("field characteristic must be a prime below 2^31, got " + std::to_string(p));
  }
  return Field(static_cast<std::uint32_t>(p));
}

Field Field::parse(std::string_view selector) {
  selector = trim(selector);
  if (selector == "q" || selector == "Q") return rationals();
  if (selector.starts_with("fp:")) {
    std::string_view digits = selector.substr(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw ParseError("bad field selector '" + std::string(selector) + "'", 1, 4);
    }
    return prime(p);
  }
  throw ParseError("bad field selector '" + std::string(selector) + "' (expected q or fp:<p>)", 1, 1);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(std::int64_t k) const {
  if (is_rational()) return Scalar(mpq_class(static_cast<long>(k)));
  std::int64_t r = k % static_cast<std::int64_t>(modulus_);
  if (r < 0) r += modulus_;
  return Scalar(static_cast<std::uint64_t>(r), modulus_);
}

Scalar Field::from_fraction(const mpz_class& num, const mpz_class& den) const {
  if (is_rational()) {
    if (den == 0) throw DivisionByZero();
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
  }
  Scalar d(reduce(den, modulus_), modulus_);
  return Scalar(reduce(num, modulus_), modulus_) / d;
}

Scalar Field::parse_scalar(std::string_view text) const {
  text = trim(text);
  if (auto pos = text.find("mod"); pos != std::string_view::npos) {
    mpz_class k = parse_integer(text.substr(0, pos));
    mpz_class p = parse_integer(text.substr(pos + 3));
    if (is_rational() || p != modulus_) {
      throw ParseError("residue '" + std::string(text) + "' does not belong to field " + selector(), 1, 1);
    }
    return Scalar(reduce(k, modulus_), modulus_);
  }
  if (auto pos = text.find('/'); pos != std::string_view::npos) {
    return from_fraction(parse_integer(text.substr(0, pos)), parse_integer(text.substr(pos + 1)));
  }
  return from_fraction(parse_integer(text), 1);
}

std::string Field::selector() const {
  return is_rational() ? std::string("q") : "fp:" + std::to_string(modulus_);
}

Scalar::Scalar(mpq_class q) : value_(std::move(q)) {}

Scalar::Scalar(std::uint64_t residue, std::uint32_t modulus)
    : value_(Residue{static_cast<std::uint32_t>(residue % modulus), modulus}) {}

Field Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return Field(r->modulus);
  return Field();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1;
  return std::get<mpq_class>(value_) == 1;
}

const mpq_class& Scalar::rational() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw MixedAlgebra("scalar is not rational");
}

std::uint32_t Scalar::residue() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value;
  throw MixedAlgebra("scalar is not a residue");
}

const Scalar::Residue& Scalar::check_same_modulus(const Scalar& rhs) const {
  const auto* a = std::get_if<Residue>(&value_);
  const auto* b = std::get_if<Residue>(&rhs.value_);
  if (a == nullptr || b == nullptr || a->modulus != b->modulus) {
    throw MixedAlgebra("scalars from different fields");
  }
  return *b;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(pow_mod(r->value, r->modulus - 2, r->modulus), r->modulus);
  }
  mpq_class inv = 1 / std::get<mpq_class>(value_);
  return Scalar(std::move(inv));
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    const auto* o = std::get_if<mpq_class>(&rhs.value_);
    if (o == nullptr) throw MixedAlgebra("scalars from different fields");
    *q += *o;
    return *this;
  }
  const Residue& o = check_same_modulus(rhs);
  auto& r = std::get<Residue>(value_);
  std::uint64_t s = std::uint64_t{r.value} + o.value;
  r.value = static_cast<std::uint32_t>(s >= r.modulus ? s - r.modulus : s);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    const auto* o = std::get_if<mpq_class>(&rhs.value_);
    if (o == nullptr) throw MixedAlgebra("scalars from different fields");
    *q -= *o;
    return *this;
  }
  const Residue& o = check_same_modulus(rhs);
  auto& r = std::get<Residue>(value_);
  r.value = r.value >= o.value ? r.value - o.value : r.value + (r.modulus - o.value);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    const auto* o = std::get_if<mpq_class>(&rhs.value_);
    if (o == nullptr) throw MixedAlgebra("scalars from different fields");
    *q *= *o;
    return *this;
  }
  const Residue& o = check_same_modulus(rhs);
  auto& r = std::get<Residue>(value_);
  r.value = static_cast<std::uint32_t>(std::uint64_t{r.value} * o.value % r.modulus);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

void Scalar::sub_mul(const Scalar& a, const Scalar& b) {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    const auto* x = std::get_if<mpq_class>(&a.value_);
    const auto* y = std::get_if<mpq_class>(&b.value_);
    if (x == nullptr || y == nullptr) throw MixedAlgebra("scalars from different fields");
    if (x->get_den() == 1 && y->get_den() == 1 && q->get_den() == 1) {
      mpz_submul(q->get_num_mpz_t(), x->get_num_mpz_t(), y->get_num_mpz_t());
    } else {
      *q -= *x * *y;
    }
    return;
  }
  const Residue& x = check_same_modulus(a);
  const Residue& y = check_same_modulus(b);
  auto& r = std::get<Residue>(value_);
  auto prod = static_cast<std::uint32_t>(std::uint64_t{x.value} * y.value % r.modulus);
  r.value = r.value >= prod ? r.value - prod : r.value + (r.modulus - prod);
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(r->value == 0 ? 0 : r->modulus - r->value, r->modulus);
  }
  mpq_class neg = -std::get<mpq_class>(value_);
  return Scalar(std::move(neg));
}

bool operator==(const Scalar& a, const Scalar& b) {
  const auto* ra = std::get_if<Scalar::Residue>(&a.value_);
  const auto* rb = std::get_if<Scalar::Residue>(&b.value_);
  if (ra != nullptr && rb != nullptr) return ra->modulus == rb->modulus && ra->value == rb->value;
  if (ra != nullptr || rb != nullptr) return false;
  return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
}

std::string Scalar::coefficient_string() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
  return std::get<mpq_class>(value_).get_str();
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return std::to_string(r->value) + " mod " + std::to_string(r->modulus);
  }
  return std::get<mpq_class>(value_).get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace lpa
