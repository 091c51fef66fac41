#include <map>
#include <string>

#include "lpa/error.hpp"
#include "lpa/graph.hpp"

namespace lpa {

namespace {

enum class Tok { Ident, Colon, Arrow, LBracket, RBracket, Separator, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blanks();
    std::size_t line = line_;
    std::size_t column = column_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, column};
    char c = text_[pos_];
    if (c == '\n' || c == ';') {
      advance();
      return {Tok::Separator, std::string(1, c), line, column};
    }
    if (c == ':') {
      advance();
      return {Tok::Colon, ":", line, column};
    }
    if (c == '[') {
      advance();
      return {Tok::LBracket, "[", line, column};
    }
    if (c == ']') {
      advance();
      return {Tok::RBracket, "]", line, column};
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      advance();
      advance();
      return {Tok::Arrow, "->", line, column};
    }
    if (is_word_char(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_word_char(text_[pos_])) advance();
      std::string word(text_.substr(start, pos_ - start));
      if (!is_identifier(word)) throw ParseError("invalid identifier '" + word + "'", line, column);
      return {Tok::Ident, std::move(word), line, column};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, column);
  }

 private:
  static bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blanks() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

struct Located {
  std::string name;
  std::size_t line;
  std::size_t column;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { look_ = lexer_.next(); }

  Graph parse() {
    while (look_.kind != Tok::End) {
      if (look_.kind == Tok::Separator) {
        shift();
        continue;
      }
      Token keyword = expect(Tok::Ident, "'vertex' or 'edge'");
      if (keyword.text == "vertex") {
        parse_vertex();
      } else if (keyword.text == "edge") {
        parse_edge();
      } else {
        throw ParseError("unknown declaration '" + keyword.text + "'", keyword.line, keyword.column);
      }
      if (look_.kind != Tok::Separator && look_.kind != Tok::End) {
        throw ParseError("expected end of declaration, got '" + look_.text + "'", look_.line, look_.column);
      }
    }
    return build();
  }

 private:
  struct EdgeDecl {
    Located name;
    Located source;
    Located range;
  };

  void shift() { look_ = lexer_.next(); }

  Token expect(Tok kind, const char* what) {
    if (look_.kind != kind) {
      std::string got = look_.kind == Tok::End ? "end of input"
                        : look_.kind == Tok::Separator ? "end of declaration"
                                                       : "'" + look_.text + "'";
      throw ParseError(std::string("expected ") + what + ", got " + got, look_.line, look_.column);
    }
    Token t = look_;
    shift();
    return t;
  }

  void declare(const Token& t) {
    auto [it, inserted] = declared_.emplace(t.text, Located{t.text, t.line, t.column});
    if (!inserted) {
      throw ParseError("duplicate identifier '" + t.text + "' (first declared at line " +
                           std::to_string(it->second.line) + ")",
                       t.line, t.column);
    }
  }

  void parse_vertex() {
    Token id = expect(Tok::Ident, "vertex identifier");
    declare(id);
    vertices_.push_back({id.text, id.line, id.column});
    if (look_.kind == Tok::LBracket) {
      shift();
      Token flag = expect(Tok::Ident, "'infinite'");
      if (flag.text != "infinite") throw ParseError("unknown vertex flag '" + flag.text + "'", flag.line, flag.column);
      expect(Tok::RBracket, "']'");
      flagged_.push_back({id.text, id.line, id.column});
    }
  }

  void parse_edge() {
    Token id = expect(Tok::Ident, "edge identifier");
    declare(id);
    expect(Tok::Colon, "':'");
    Token src = expect(Tok::Ident, "source vertex");
    expect(Tok::Arrow, "'->'");
    Token dst = expect(Tok::Ident, "range vertex");
    edges_.push_back({{id.text, id.line, id.column}, {src.text, src.line, src.column}, {dst.text, dst.line, dst.column}});
  }

  Graph build() {
    if (vertices_.empty()) throw ParseError("graph declares no vertices", look_.line, look_.column);
    std::map<std::string, std::size_t> out_degree;
    for (const auto& v : vertices_) out_degree[v.name] = 0;
    for (const auto& e : edges_) {
      for (const Located* end : {&e.source, &e.range}) {
        if (!out_degree.contains(end->name)) {
          throw ParseError("edge '" + e.name.name + "' has undeclared endpoint '" + end->name + "'", end->line,
                           end->column);
        }
      }
      ++out_degree[e.source.name];
    }
    for (const auto& f : flagged_) {
      if (out_degree[f.name] == 0) {
        throw ParseError("vertex '" + f.name + "' is flagged infinite but emits no listed edge", f.line, f.column);
      }
    }

    std::vector<std::string> vertices;
    std::vector<EdgeSpec> edges;
    std::vector<std::string> flagged;
    for (const auto& v : vertices_) vertices.push_back(v.name);
    for (const auto& e : edges_) edges.push_back({e.name.name, e.source.name, e.range.name});
    for (const auto& f : flagged_) flagged.push_back(f.name);
    return Graph::create(std::move(vertices), std::move(edges), std::move(flagged));
  }

  Lexer lexer_;
  Token look_;
  std::map<std::string, Located> declared_;
  std::vector<Located> vertices_;
  std::vector<EdgeDecl> edges_;
  std::vector<Located> flagged_;
};

}  // namespace

Graph parse_graph(std::string_view text) { return Parser(text).parse(); }

}  // namespace lpa
