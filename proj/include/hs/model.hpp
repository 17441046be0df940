#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hs/modality.hpp"

namespace hs {

/// Strict interval [x,y], x < y.
struct Interval {
  long x = 0;
  long y = 1;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& i);

/// Underlying linear order of a model.
///
/// Finite(N) has the points 0..N. Periodic(pre, per, len) is the naturals with
/// a valuation that repeats as follows:
///   x >= pre                   : [x,y] ~ [x+per, y+per]
///   y >= pre and y - x >= len  : [x,y] ~ [x, y+per]
/// len = 1 is the usual notion of an ultimately periodic model. A larger len
/// exempts short intervals from the second rule, which is what layouts with
/// unit-length markers need. A reversed periodic domain is the mirror image
/// over the non-positive integers: its interval [x,y] is the base interval
/// [-y,-x].
class Domain {
 public:
  static Domain finite(long max_point);
  static Domain periodic(long pre, long per, long len = 1);

  bool is_finite() const noexcept { return finite_; }
  bool is_periodic() const noexcept { return !finite_; }
  bool is_reversed() const noexcept { return reversed_; }

  long max_point() const noexcept { return max_point_; }
  long pre() const noexcept { return pre_; }
  long per() const noexcept { return per_; }
  long len() const noexcept { return len_; }

  /// Same order with time reversed. Finite(N) stays Finite(N) (the points are
  /// relabelled z -> N - z); periodic domains toggle the reversed flag.
  Domain reversed() const;

  /// Whether i is an interval of this domain.
  bool contains(const Interval& i) const noexcept;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  bool finite_ = true;
  bool reversed_ = false;
  long max_point_ = 1;
  long pre_ = 1;
  long per_ = 1;
  long len_ = 1;
};

/// Representative of i's periodicity class: shift both endpoints down by per
/// while x >= pre + per, then shift y down by per while y >= pre + per and
/// y - per >= x + len. Identity on finite domains.
Interval canonical_interval(const Domain& d, const Interval& i);

/// Whether i is its own canonical representative.
bool is_canonical(const Domain& d, const Interval& i);

/// All canonical intervals of d, in (x, y) order.
std::vector<Interval> canonical_intervals(const Domain& d);

/// Intervals j with i R_m j. Finite domains enumerate everything; periodic
/// ones only return j whose endpoints lie within [0, horizon] (or
/// [-horizon, 0] when reversed).
std::vector<Interval> allen_related(const Domain& d, const Interval& i, Modality m,
                                    long horizon = 0);

/// Invalid model text or contents.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntervalModel {
 public:
  using Valuation = std::map<std::string, std::set<Interval>>;

  IntervalModel() = default;
  /// Canonicalizes every entry; throws ModelError for intervals outside the
  /// domain or for two entries that collapse onto the same representative.
  IntervalModel(Domain domain, const Valuation& valuation);

  const Domain& domain() const noexcept { return domain_; }
  /// Canonical intervals per letter.
  const Valuation& valuation() const noexcept { return valuation_; }

  /// Truth of a letter at any interval of the domain; absent letters are
  /// false everywhere.
  bool holds(std::string_view letter, const Interval& i) const;

  std::set<std::string> letters() const;

  /// Adds or removes one canonical entry.
  IntervalModel with(std::string_view letter, const Interval& i, bool value) const;

  /// Time-reversed model: same truth of mirrored formulas at mirrored
  /// intervals.
  IntervalModel reversed() const;

  /// Maps an interval of this model to the matching interval of reversed().
  Interval reverse_interval(const Interval& i) const;

  friend bool operator==(const IntervalModel&, const IntervalModel&) = default;

 private:
  Domain domain_ = Domain::finite(1);
  Valuation valuation_;
};

/// .ism format:
///
///   order finite N
///   order periodic pre=P per=Q [len=L] [reversed]
///   val LETTER X Y
///
/// "#" comments and blank lines are ignored.
IntervalModel load_model(std::string_view text);
std::string save_model(const IntervalModel& m);

}  // namespace hs
