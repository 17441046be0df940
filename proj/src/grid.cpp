#include "grid.hpp"

namespace hs::detail {

Grid::Grid(long pre, long per, long len) : pre_(pre), per_(per), len_(len) {
  offset_.reserve(static_cast<std::size_t>(rows() + 1));
  std::size_t acc = 0;
  for (long x = 0; x < rows(); ++x) {
    offset_.push_back(acc);
    acc += static_cast<std::size_t>(yend(x) - x - 1);
  }
  offset_.push_back(acc);
}

Interval Grid::canon(Interval i) const noexcept {
  if (i.x >= rows()) {
    const long k = (i.x - rows()) / per_ + 1;
    i.x -= k * per_;
    i.y -= k * per_;
  }
  const long hi = yend(i.x);
  if (i.y >= hi) {
    const long k = (i.y - hi) / per_ + 1;
    i.y -= k * per_;
  }
  return i;
}

std::vector<Interval> Grid::cells() const {
  std::vector<Interval> out;
  out.reserve(size());
  for (long x = 0; x < rows(); ++x) {
    for (long y = x + 1; y < yend(x); ++y) out.push_back({x, y});
  }
  return out;
}

Grid derive(const Grid& c, Modality m) {
  const long P = c.pre();
  const long T = c.per();
  const long L = c.len();
  switch (m.index()) {
    case mod::A.index():
    case mod::iB.index():
    case mod::L.index():
      return c;
    case mod::B.index(): return Grid(P + T, T, L + T);
    case mod::iA.index():
    case mod::iE.index():
    case mod::iD.index():
      return Grid(P + T + L, T, L);
    case mod::E.index():
    case mod::O.index():
    case mod::iO.index():
      return Grid(P + T + L, T, L + T);
    case mod::iL.index(): return Grid(P + 2 * T + L, T, L);
    case mod::D.index(): return Grid(P + 2 * T + L, T, L + 2 * T);
    default: return derive_any(c);
  }
}

Grid derive_any(const Grid& c) {
  return Grid(c.pre() + 2 * c.per() + c.len(), c.per(), c.len() + 2 * c.per());
}

Grid join(const Grid& a, const Grid& b) {
  return Grid(std::max(a.pre(), b.pre()), a.per(), std::max(a.len(), b.len()));
}

}  // namespace hs::detail
