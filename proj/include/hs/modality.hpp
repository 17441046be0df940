#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace hs {

/// The six Allen relations that have a modality of their own; each one also
/// has an inverse (transpose) relation.
enum class Base : std::uint8_t { A, B, E, L, D, O };

/// One of the twelve HS modalities: a base relation, possibly inverted.
struct Modality {
  Base base = Base::A;
  bool inverted = false;

  /// Dense index in 0..11, in the alphabetical order used for fragment
  /// names: A, iA, B, iB, D, iD, E, iE, L, iL, O, iO.
  constexpr int index() const noexcept {
    int slot = 0;
    switch (base) {
      case Base::A: slot = 0; break;
      case Base::B: slot = 1; break;
      case Base::D: slot = 2; break;
      case Base::E: slot = 3; break;
      case Base::L: slot = 4; break;
      case Base::O: slot = 5; break;
    }
    return 2 * slot + (inverted ? 1 : 0);
  }

  static constexpr Modality from_index(int i) noexcept {
    constexpr std::array<Base, 6> order{Base::A, Base::B, Base::D,
                                        Base::E, Base::L, Base::O};
    return Modality{order[static_cast<std::size_t>(i / 2)], (i % 2) == 1};
  }

  constexpr Modality inverse() const noexcept { return {base, !inverted}; }

  friend constexpr bool operator==(Modality, Modality) = default;
  friend constexpr bool operator<(Modality a, Modality b) noexcept {
    return a.index() < b.index();
  }
};

inline constexpr int kModalityCount = 12;

namespace mod {
inline constexpr Modality A{Base::A, false};
inline constexpr Modality iA{Base::A, true};
inline constexpr Modality B{Base::B, false};
inline constexpr Modality iB{Base::B, true};
inline constexpr Modality E{Base::E, false};
inline constexpr Modality iE{Base::E, true};
inline constexpr Modality L{Base::L, false};
inline constexpr Modality iL{Base::L, true};
inline constexpr Modality D{Base::D, false};
inline constexpr Modality iD{Base::D, true};
inline constexpr Modality O{Base::O, false};
inline constexpr Modality iO{Base::O, true};
}  // namespace mod

/// ASCII token: "A", "iA", ... as used by the formula grammar.
std::string to_string(Modality m);

/// Inverse of to_string; nullopt for an unknown token.
std::optional<Modality> parse_modality(std::string_view token);

/// Time reversal: A<->iA, L<->iL, B<->E, iB<->iE, O<->iO; D and iD are fixed.
Modality mirror(Modality m) noexcept;

/// [x,y] R_m [x2,y2] under the strict semantics (x < y, x2 < y2).
constexpr bool related(Modality m, long x, long y, long x2, long y2) noexcept {
  if (m.inverted) {
    std::swap(x, x2);
    std::swap(y, y2);
  }
  switch (m.base) {
    case Base::A: return y == x2;
    case Base::L: return y < x2;
    case Base::B: return x == x2 && y2 < y;
    case Base::E: return y == y2 && x < x2;
    case Base::D: return x < x2 && y2 < y;
    case Base::O: return x < x2 && x2 < y && y < y2;
  }
  return false;
}

}  // namespace hs
