#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "hs/formula.hpp"

namespace hs {

/// Raised for malformed formula text; carries a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Grammar (lowest to highest precedence):
///
///   formula := disj ("->" formula)?
///   disj    := conj ("|" conj)*
///   conj    := unary ("&" unary)*
///   unary   := "~" unary | "<" MOD ">" unary | "[" MOD "]" unary | atom
///   atom    := "true" | "false" | IDENT | "(" formula ")"
///
/// IDENT is [a-z][a-zA-Z0-9_]*. Identifiers starting with "__" are also
/// accepted so that generated formulas (which use that reserved prefix for
/// auxiliary letters) can be read back. "#" starts a comment to end of line.
Formula parse_formula(std::string_view text);

}  // namespace hs
