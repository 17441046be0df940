#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hs/modality.hpp"

namespace hs {

enum class Kind : std::uint8_t {
  Atom,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Diamond,
  Box,
};

class Formula;

namespace detail {
struct Node {
  Kind kind;
  Modality modality;  // Diamond / Box only
  std::string letter; // Atom only
  std::vector<Formula> children;
};
}  // namespace detail

/// Immutable HS formula. Copies share structure; equality and ordering are
/// structural.
class Formula {
 public:
  /// Defaults to `true`.
  Formula();

  static Formula atom(std::string letter);
  static Formula top();
  static Formula bottom();
  static Formula negation(Formula sub);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula diamond(Modality m, Formula sub);
  static Formula box(Modality m, Formula sub);

  Kind kind() const noexcept { return node_->kind; }
  Modality modality() const noexcept { return node_->modality; }
  const std::string& letter() const noexcept { return node_->letter; }
  const std::vector<Formula>& children() const noexcept { return node_->children; }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }

  bool is_modal() const noexcept {
    return kind() == Kind::Diamond || kind() == Kind::Box;
  }

  /// Number of AST nodes; every connective, modality and atom counts once.
  std::size_t length() const;
  /// Nesting depth of modal operators.
  std::size_t modal_depth() const;

  friend std::strong_ordering compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) {
    return compare(a, b) == std::strong_ordering::equal;
  }
  friend bool operator<(const Formula& a, const Formula& b) {
    return compare(a, b) == std::strong_ordering::less;
  }

 private:
  explicit Formula(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::Node> node_;
};

// Builders used all over the encoder and the tests.
inline Formula atom(std::string letter) { return Formula::atom(std::move(letter)); }
inline Formula operator!(Formula f) { return Formula::negation(std::move(f)); }
inline Formula operator&&(Formula a, Formula b) {
  return Formula::conjunction(std::move(a), std::move(b));
}
inline Formula operator||(Formula a, Formula b) {
  return Formula::disjunction(std::move(a), std::move(b));
}
inline Formula implies(Formula a, Formula b) {
  return Formula::implication(std::move(a), std::move(b));
}
inline Formula iff(const Formula& a, const Formula& b) {
  return implies(a, b) && implies(b, a);
}
inline Formula dia(Modality m, Formula f) { return Formula::diamond(m, std::move(f)); }
inline Formula box(Modality m, Formula f) { return Formula::box(m, std::move(f)); }

/// Left-folded conjunction; empty input yields `true`.
Formula conjoin(const std::vector<Formula>& parts);
/// Left-folded disjunction; empty input yields `false`.
Formula disjoin(const std::vector<Formula>& parts);

/// Concrete syntax accepted by parse_formula, with minimal parentheses.
std::string render(const Formula& f);

/// Letters occurring in f, sorted.
std::set<std::string> letters(const Formula& f);

/// Modalities occurring in f (diamonds and boxes alike).
std::set<Modality> modalities(const Formula& f);

/// Negation that strips an outer negation instead of stacking a second one.
Formula negate(const Formula& f);

}  // namespace hs
