#pragma once

// Shared-subformula DAG used by the evaluators and the SAT encoder.

#include <string>
#include <vector>

#include "hs/formula.hpp"
#include "hs/modality.hpp"

namespace hs::detail {

struct Gate {
  enum class Op { False, True, Atom, Not, And, Or, Diamond };
  Op op = Op::False;
  int a = -1;  // first operand
  int b = -1;  // second operand (And, Or)
  Modality m{};
  int letter = -1;
  Formula source;  // the subformula this gate was built from
};

struct Circuit {
  std::vector<Gate> gates;  // operands always precede their users
  std::vector<std::string> letters;
  int root = -1;

  /// Boxes become ~<X>~, implications become ~a | b.
  static Circuit build(const Formula& phi);
};

}  // namespace hs::detail
