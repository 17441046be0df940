#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hs/formula.hpp"
#include "hs/modality.hpp"

namespace hs {

/// Reserved letter used to desugar `true` as `top | ~top`.
inline constexpr std::string_view kTopLetter = "__top";

/// A set of modalities. Rendered as space-separated tokens in alphabetical
/// order ("A iA B iB").
class Fragment {
 public:
  Fragment() = default;
  Fragment(std::initializer_list<Modality> ms);
  explicit Fragment(unsigned mask) : mask_(mask & 0xFFFu) {}

  bool contains(Modality m) const noexcept { return (mask_ >> m.index()) & 1u; }
  void insert(Modality m) noexcept { mask_ |= 1u << m.index(); }
  void erase(Modality m) noexcept { mask_ &= ~(1u << m.index()); }
  bool empty() const noexcept { return mask_ == 0; }
  std::size_t size() const noexcept;
  unsigned mask() const noexcept { return mask_; }
  bool subset_of(const Fragment& other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  bool intersects(const Fragment& other) const noexcept {
    return (mask_ & other.mask_) != 0;
  }
  std::vector<Modality> members() const;

  friend bool operator==(const Fragment&, const Fragment&) = default;
  /// Orders by rendered name, which is what output listings want.
  friend bool operator<(const Fragment& a, const Fragment& b);

 private:
  unsigned mask_ = 0;
};

std::string to_string(const Fragment& f);

/// Parses "A iA B" style text; throws std::invalid_argument on a bad token.
Fragment parse_fragment(std::string_view text);

/// Modalities used by a formula.
Fragment fragment_of(const Formula& f);

/// Rewrites to the core grammar used by the closure: implications become
/// disjunctions, boxes become negated diamonds, `true`/`false` are expressed
/// over kTopLetter. Double negations collapse.
Formula desugar(const Formula& f);

/// Subformulas of desugar(phi) and their negations, structurally deduplicated.
std::set<Formula> closure(const Formula& phi);

struct FormulaMetrics {
  std::size_t length = 0;
  std::size_t closure_size = 0;
  std::size_t m_b = 0;     // <B>/<iB> diamonds in the closure
  std::size_t r_size = 0;  // <L>/<iL> diamonds in the closure and their negations
  std::size_t m_l = 0;     // 2 * r_size
  std::size_t periodic_bound = 0;  // (m_l + 2) * m_b + m_l + 4
};

FormulaMetrics metrics(const Formula& phi);

/// Swaps every modality for its time-reversed counterpart.
Formula mirror_formula(const Formula& phi);
Fragment mirror_fragment(const Fragment& f);

}  // namespace hs
