#pragma once

// Finite presentation of a periodic truth table over the intervals of N.
//
// A table t has parameters (pre, per, len) when
//   x >= pre                  : t[x,y] = t[x+per, y+per]
//   y >= pre and y - x >= len : t[x,y] = t[x, y+per]
// Its cells are the canonical intervals: x < pre + per and
// y < max(pre, x + len) + per.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "hs/model.hpp"
#include "hs/modality.hpp"

namespace hs::detail {

class Grid {
 public:
  Grid(long pre, long per, long len);

  long pre() const noexcept { return pre_; }
  long per() const noexcept { return per_; }
  long len() const noexcept { return len_; }
  long rows() const noexcept { return pre_ + per_; }
  long yend(long x) const noexcept { return std::max(pre_, x + len_) + per_; }
  /// Largest right endpoint of a cell.
  long max_y() const noexcept { return yend(rows() - 1) - 1; }
  std::size_t size() const noexcept { return offset_.back(); }

  Interval canon(Interval i) const noexcept;
  /// Index of an interval that is already canonical.
  std::size_t index(long x, long y) const noexcept {
    return offset_[static_cast<std::size_t>(x)] + static_cast<std::size_t>(y - x - 1);
  }
  std::size_t locate(const Interval& i) const noexcept {
    const Interval c = canon(i);
    return index(c.x, c.y);
  }
  /// Cells in (x, y) order.
  std::vector<Interval> cells() const;

 private:
  long pre_;
  long per_;
  long len_;
  std::vector<std::size_t> offset_;
};

/// Parameters that are valid for <m>psi when psi has the child's parameters.
Grid derive(const Grid& child, Modality m);
/// Parameters valid for a diamond over any of the twelve relations.
Grid derive_any(const Grid& child);
/// Parameters valid for both tables (same period).
Grid join(const Grid& a, const Grid& b);

/// Calls emit(x', y') for a set of R_m-successors of [x,y] that contains a
/// representative of every periodicity class of the child grid that has a
/// successor in it. May repeat classes.
template <class Emit>
void for_each_successor(const Grid& g, Modality m, long x, long y, Emit&& emit) {
  const long T = g.per();
  // every class of [x', y'] with y' > lo
  const auto ends_after = [&](long x2, long lo) {
    const long hi = std::max(lo + 1, g.yend(x2) - T) + T;
    for (long y2 = lo + 1; y2 < hi; ++y2) emit(x2, y2);
  };
  switch (m.index()) {
    case mod::A.index(): ends_after(y, y); break;
    case mod::iA.index():
      for (long x2 = 0; x2 < x; ++x2) emit(x2, x);
      break;
    case mod::B.index():
      for (long y2 = x + 1; y2 < y; ++y2) emit(x, y2);
      break;
    case mod::iB.index(): ends_after(x, y); break;
    case mod::E.index():
      for (long x2 = x + 1; x2 < y; ++x2) emit(x2, y);
      break;
    case mod::iE.index():
      for (long x2 = 0; x2 < x; ++x2) emit(x2, y);
      break;
    case mod::L.index(): {
      const long hi = std::max(y + 1, g.pre()) + T;
      for (long x2 = y + 1; x2 < hi; ++x2) ends_after(x2, x2);
      break;
    }
    case mod::iL.index():
      for (long y2 = 1; y2 < x; ++y2) {
        for (long x2 = 0; x2 < y2; ++x2) emit(x2, y2);
      }
      break;
    case mod::D.index():
      for (long x2 = x + 1; x2 < y; ++x2) {
        for (long y2 = x2 + 1; y2 < y; ++y2) emit(x2, y2);
      }
      break;
    case mod::iD.index():
      for (long x2 = 0; x2 < x; ++x2) ends_after(x2, y);
      break;
    case mod::O.index():
      for (long x2 = x + 1; x2 < y; ++x2) ends_after(x2, y);
      break;
    case mod::iO.index():
      for (long x2 = 0; x2 < x; ++x2) {
        for (long y2 = x + 1; y2 < y; ++y2) emit(x2, y2);
      }
      break;
    default:
      break;
  }
}

/// Calls emit(x', y') on every interval of a box around [x,y] that contains a
/// representative of every class reachable by any of the twelve relations.
/// The caller filters by the relation it needs.
template <class Emit>
void for_each_in_box(const Grid& g, long x, long y, Emit&& emit) {
  (void)x;
  const long T = g.per();
  const long xhi = std::max(y + 1, g.pre()) + T;
  for (long x2 = 0; x2 < xhi; ++x2) {
    const long yhi = std::max({g.pre(), x2 + g.len(), y + 1}) + T;
    for (long y2 = x2 + 1; y2 < yhi; ++y2) emit(x2, y2);
  }
}

}  // namespace hs::detail
