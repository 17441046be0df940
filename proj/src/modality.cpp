#include "hs/modality.hpp"

namespace hs {

std::string to_string(Modality m) {
  std::string out = m.inverted ? "i" : "";
  switch (m.base) {
    case Base::A: out += 'A'; break;
    case Base::B: out += 'B'; break;
    case Base::E: out += 'E'; break;
    case Base::L: out += 'L'; break;
    case Base::D: out += 'D'; break;
    case Base::O: out += 'O'; break;
  }
  return out;
}

std::optional<Modality> parse_modality(std::string_view token) {
  bool inverted = false;
  if (token.size() == 2 && token[0] == 'i') {
    inverted = true;
    token.remove_prefix(1);
  }
  if (token.size() != 1) return std::nullopt;
  switch (token[0]) {
    case 'A': return Modality{Base::A, inverted};
    case 'B': return Modality{Base::B, inverted};
    case 'E': return Modality{Base::E, inverted};
    case 'L': return Modality{Base::L, inverted};
    case 'D': return Modality{Base::D, inverted};
    case 'O': return Modality{Base::O, inverted};
    default: return std::nullopt;
  }
}

Modality mirror(Modality m) noexcept {
  switch (m.base) {
    case Base::A:
    case Base::L:
    case Base::O:
      // [x,y] -> [-y,-x] turns these relations into their own inverses.
      return m.inverse();
    case Base::D:
      // containment survives reversal
      return m;
    case Base::B: return {Base::E, m.inverted};
    case Base::E: return {Base::B, m.inverted};
  }
  return m;
}

}  // namespace hs
