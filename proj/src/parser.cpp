#include "hs/parser.hpp"

#include <cctype>
#include <optional>

namespace hs {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { End, Ident, True, False, Not, And, Or, Arrow, LAngle, RAngle, LBrack, RBrack, LParen, RParen };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      advance();
      t.kind = k;
      t.text = std::string(1, c);
      return t;
    };
    switch (c) {
      case '~': return single(Tok::Not);
      case '&': return single(Tok::And);
      case '|': return single(Tok::Or);
      case '<': return single(Tok::LAngle);
      case '>': return single(Tok::RAngle);
      case '[': return single(Tok::LBrack);
      case ']': return single(Tok::RBrack);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          advance();
          advance();
          t.kind = Tok::Arrow;
          t.text = "->";
          return t;
        }
        throw ParseError("expected '->'", t.line, t.column);
      default:
        break;
    }
    // Identifiers and modality names share the word lexer; the parser decides.
    const bool reserved = c == '_' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '_';
    if (std::isalpha(static_cast<unsigned char>(c)) || reserved) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        advance();
      }
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = t.text == "true" ? Tok::True : t.text == "false" ? Tok::False : Tok::Ident;
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { shift(); }

  Formula parse() {
    Formula f = formula();
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, cur_.line, cur_.column);
  }

  void shift() { cur_ = lex_.next(); }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    shift();
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (cur_.kind == Tok::Arrow) {
      shift();
      return implies(lhs, formula());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (cur_.kind == Tok::Or) {
      shift();
      acc = acc || conjunction();
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (cur_.kind == Tok::And) {
      shift();
      acc = acc && unary();
    }
    return acc;
  }

  Modality modality_token() {
    if (cur_.kind != Tok::Ident) fail("expected a modality");
    auto m = parse_modality(cur_.text);
    if (!m) fail("unknown modality '" + cur_.text + "'");
    shift();
    return *m;
  }

  Formula unary() {
    switch (cur_.kind) {
      case Tok::Not:
        shift();
        return !unary();
      case Tok::LAngle: {
        shift();
        Modality m = modality_token();
        expect(Tok::RAngle, "'>'");
        return dia(m, unary());
      }
      case Tok::LBrack: {
        shift();
        Modality m = modality_token();
        expect(Tok::RBrack, "']'");
        return box(m, unary());
      }
      default:
        return primary();
    }
  }

  Formula primary() {
    switch (cur_.kind) {
      case Tok::True: shift(); return Formula::top();
      case Tok::False: shift(); return Formula::bottom();
      case Tok::Ident: {
        const char c = cur_.text[0];
        if (!(std::islower(static_cast<unsigned char>(c)) || c == '_')) {
          fail("proposition letters start with a lowercase letter: '" + cur_.text + "'");
        }
        Formula f = atom(cur_.text);
        shift();
        return f;
      }
      case Tok::LParen: {
        shift();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + cur_.text + "'");
    }
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace hs
