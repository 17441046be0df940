#pragma once

// Dense tables over all intervals of the points 0..n, and the quadratic
// sweeps that compute <m>t from t. The sweeps only need "or" and "false", so
// the same code evaluates booleans and builds circuits of solver literals.

#include <cstdint>
#include <vector>

#include "hs/modality.hpp"

namespace hs::detail {

template <class V>
class Tri {
 public:
  Tri() = default;
  explicit Tri(long n) : Tri(n, V{}) {}
  Tri(long n, V fill) : n_(n), v_(static_cast<std::size_t>((n + 1) * (n + 1)), fill) {}

  long n() const noexcept { return n_; }
  V get(long x, long y) const { return v_[idx(x, y)]; }
  void set(long x, long y, V b) { v_[idx(x, y)] = b; }

 private:
  std::size_t idx(long x, long y) const { return static_cast<std::size_t>(x * (n_ + 1) + y); }
  long n_ = 0;
  std::vector<V> v_;
};

using Triangle = Tri<std::uint8_t>;

/// <m>t at every interval of 0..n, with successors restricted to the same
/// point range. `lor(a, b)` must be associative and commutative with unit
/// `none`.
template <class V, class Or>
Tri<V> diamond_sweep(Modality m, const Tri<V>& t, V none, Or&& lor) {
  const long n = t.n();
  Tri<V> r(n, none);
  const auto by_len = [&](auto&& f) {
    for (long len = 1; len <= n; ++len) {
      for (long x = 0; x + len <= n; ++x) f(x, x + len);
    }
  };
  // starts[z]: some t-interval starts at z; ends[z]: some ends at z
  const auto starts = [&] {
    std::vector<V> out(static_cast<std::size_t>(n + 2), none);
    for (long x = 0; x < n; ++x) {
      for (long y = x + 1; y <= n; ++y) out[x] = lor(out[x], t.get(x, y));
    }
    return out;
  };
  const auto ends = [&] {
    std::vector<V> out(static_cast<std::size_t>(n + 1), none);
    for (long y = 1; y <= n; ++y) {
      for (long x = 0; x < y; ++x) out[y] = lor(out[y], t.get(x, y));
    }
    return out;
  };
  // later(x, y): t at [x, y'] for some y' > y
  const auto later_end = [&] {
    Tri<V> out(n, none);
    for (long x = 0; x < n; ++x) {
      for (long y = n - 1; y > x; --y) out.set(x, y, lor(out.get(x, y + 1), t.get(x, y + 1)));
    }
    return out;
  };
  // earlier(x, y): t at [x', y] for some x' < x
  const auto earlier_start = [&] {
    Tri<V> out(n, none);
    for (long y = 1; y <= n; ++y) {
      for (long x = 1; x < y; ++x) out.set(x, y, lor(out.get(x - 1, y), t.get(x - 1, y)));
    }
    return out;
  };
  switch (m.index()) {
    case mod::A.index(): {
      const auto s = starts();
      by_len([&](long x, long y) { r.set(x, y, s[y]); });
      break;
    }
    case mod::iA.index(): {
      const auto e = ends();
      by_len([&](long x, long y) { r.set(x, y, e[x]); });
      break;
    }
    case mod::B.index():
      by_len([&](long x, long y) {
        if (y - 1 > x) r.set(x, y, lor(r.get(x, y - 1), t.get(x, y - 1)));
      });
      break;
    case mod::iB.index(): {
      const auto l = later_end();
      by_len([&](long x, long y) { r.set(x, y, l.get(x, y)); });
      break;
    }
    case mod::E.index():
      by_len([&](long x, long y) {
        if (x + 1 < y) r.set(x, y, lor(r.get(x + 1, y), t.get(x + 1, y)));
      });
      break;
    case mod::iE.index(): {
      const auto e = earlier_start();
      by_len([&](long x, long y) { r.set(x, y, e.get(x, y)); });
      break;
    }
    case mod::L.index(): {
      // suffix[z]: some t-interval starts at or after z
      const auto s = starts();
      std::vector<V> suffix(static_cast<std::size_t>(n + 2), none);
      for (long z = n; z >= 0; --z) suffix[z] = lor(suffix[z + 1], s[z]);
      by_len([&](long x, long y) { r.set(x, y, suffix[y + 1]); });
      break;
    }
    case mod::iL.index(): {
      // prefix[z]: some t-interval ends at or before z
      const auto e = ends();
      std::vector<V> prefix(static_cast<std::size_t>(n + 1), none);
      for (long z = 1; z <= n; ++z) prefix[z] = lor(prefix[z - 1], e[z]);
      by_len([&](long x, long y) {
        if (x > 0) r.set(x, y, prefix[x - 1]);
      });
      break;
    }
    case mod::D.index():
      by_len([&](long x, long y) {
        if (y - x >= 3) r.set(x, y, lor(lor(r.get(x + 1, y), r.get(x, y - 1)), t.get(x + 1, y - 1)));
      });
      break;
    case mod::iD.index():
      for (long len = n; len >= 1; --len) {
        for (long x = 0; x + len <= n; ++x) {
          const long y = x + len;
          if (x == 0 || y == n) continue;
          r.set(x, y, lor(lor(r.get(x - 1, y), r.get(x, y + 1)), t.get(x - 1, y + 1)));
        }
      }
      break;
    case mod::O.index(): {
      // [x', y'] with x < x' < y < y'
      const auto l = later_end();
      by_len([&](long x, long y) {
        if (x + 1 < y) r.set(x, y, lor(r.get(x + 1, y), l.get(x + 1, y)));
      });
      break;
    }
    case mod::iO.index(): {
      // [x', y'] with x' < x < y' < y
      const auto e = earlier_start();
      by_len([&](long x, long y) {
        if (y - 1 > x) r.set(x, y, lor(r.get(x, y - 1), e.get(x, y - 1)));
      });
      break;
    }
    default:
      break;
  }
  return r;
}

inline Triangle diamond_table(Modality m, const Triangle& t) {
  return diamond_sweep<std::uint8_t>(m, t, 0, [](std::uint8_t a, std::uint8_t b) {
    return static_cast<std::uint8_t>(a | b);
  });
}

}  // namespace hs::detail
