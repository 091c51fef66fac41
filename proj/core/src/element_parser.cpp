#include <gmpxx.h>

#include "lpa/algebra.hpp"
#include "lpa/error.hpp"

namespace lpa {

namespace {

// expr    := ['-'] term (('+' | '-') term)*
// term    := number ['*' product] | product
// number  := digits ['/' digits]
// product := factor ('.' factor)*
// factor  := ident ['^*'] | '(' ident ('.' ident)* ')' '^*'
class ElementParser {
 public:
  ElementParser(const Algebra& algebra, std::string_view text) : alg_(algebra), text_(text) {}

  Element parse() {
    skip_ws();
    if (at_end()) fail("empty expression");
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
    } else if (peek() == '+') {
      ++pos_;
    }
    Element total = term();
    if (negate) total = -total;
    for (;;) {
      skip_ws();
      if (at_end()) break;
      char op = peek();
      if (op != '+' && op != '-') fail(std::string("expected '+' or '-', got '") + op + "'");
      ++pos_;
      Element t = term();
      if (op == '+') {
        total += t;
      } else {
        total -= t;
      }
    }
    return total;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, 1, pos_ + 1); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_word(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_digit(c) || c == '_';
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && is_digit(peek())) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Element term() {
    skip_ws();
    if (at_end()) fail("expected a term");
    if (!is_digit(peek())) return product();
    mpz_class num(digits(), 10);
    mpz_class den = 1;
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      den = mpz_class(digits(), 10);
    }
    std::size_t where = pos_;
    Scalar k = [&] {
      try {
        return alg_.field().from_fraction(num, den);
      } catch (const DivisionByZero&) {
        pos_ = where;
        fail("zero denominator");
      }
    }();
    skip_ws();
    if (!at_end() && peek() == '*') {
      ++pos_;
      return alg_.scalar_mul(k, product());
    }
    return alg_.scalar(k);
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && is_word(peek())) ++pos_;
    if (start == pos_) fail("expected an identifier");
    std::string id(text_.substr(start, pos_ - start));
    if (!is_identifier(id)) {
      pos_ = start;
      fail("invalid identifier '" + id + "'");
    }
    return id;
  }

  bool consume_ghost_mark() {
    if (pos_ + 1 < text_.size() && text_[pos_] == '^' && text_[pos_ + 1] == '*') {
      pos_ += 2;
      return true;
    }
    return false;
  }

  Element generator(const std::string& id, bool ghost, std::size_t where) {
    const Graph& g = alg_.graph();
    if (auto v = g.find_vertex(id)) return alg_.vertex(*v);
    if (auto e = g.find_edge(id)) return ghost ? alg_.ghost(*e) : alg_.edge(*e);
    throw UnknownIdentifier("column " + std::to_string(where + 1) + ": unknown identifier '" + id + "'");
  }

  Element factor() {
    skip_ws();
    if (at_end()) fail("expected a generator");
    if (peek() == '(') {
      ++pos_;
      std::vector<EdgeId> edges;
      for (;;) {
        std::size_t where = pos_;
        std::string id = identifier();
        auto e = alg_.graph().find_edge(id);
        if (!e) {
          if (!alg_.graph().find_vertex(id)) {
            throw UnknownIdentifier("column " + std::to_string(where + 1) + ": unknown identifier '" + id + "'");
          }
          pos_ = where;
          fail("'" + id + "' is not an edge");
        }
        edges.push_back(*e);
        skip_ws();
        if (!at_end() && peek() == '.') {
          ++pos_;
          continue;
        }
        break;
      }
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
      if (!consume_ghost_mark()) fail("expected '^*' after parenthesized path");
      Path p = [&] {
        try {
          return alg_.graph().make_path(edges);
        } catch (const PreconditionError& err) {
          fail(err.what());
        }
      }();
      return alg_.monomial(ghost_path_monomial(alg_.graph(), p));
    }
    std::size_t where = pos_;
    std::string id = identifier();
    bool ghost = consume_ghost_mark();
    return generator(id, ghost, where);
  }

  Element product() {
    Element acc = factor();
    for (;;) {
      skip_ws();
      if (at_end() || peek() != '.') break;
      ++pos_;
      acc = alg_.mul(acc, factor());
    }
    return acc;
  }

  const Algebra& alg_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Element Algebra::parse_element(std::string_view text) const { return ElementParser(*this, text).parse(); }

}  // namespace lpa
