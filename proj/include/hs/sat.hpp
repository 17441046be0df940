#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "hs/formula.hpp"
#include "hs/logic.hpp"
#include "hs/model.hpp"

namespace hs {

struct Sat {
  IntervalModel model;
  Interval witness;  // least interval (by x, then y) where the formula holds
};
struct Unsat {};
struct Unknown {
  std::string reason;
};

using SatResult = std::variant<Sat, Unsat, Unknown>;

/// Formula uses a modality the procedure is not complete for.
class FragmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SatOptions {
  /// Worker threads for the candidates that share one Pre+Per; 0 picks the
  /// hardware concurrency. The answer does not depend on it.
  unsigned threads = 1;
  /// Stop early (Unknown) once Pre+Per would exceed this; 0 = no cap.
  std::size_t max_size = 0;
};

/// The modalities sat_bbll accepts.
Fragment bbll_fragment();

/// <L><iL>phi: true at [0,1] iff phi holds at some interval.
Formula tau(const Formula& phi);

/// Largest Pre+Per the BB̄LL̄ decision procedure needs to examine.
std::size_t bbll_search_bound(const Formula& phi);

/// Decides satisfiability of a BB̄LL̄ formula over N. Periodic models are
/// tried by increasing Pre+Per, then Pre; within one shape the valuation is
/// lexicographically least (cells in (x,y) order, letters sorted, false
/// before true). Throws FragmentError outside BB̄LL̄.
SatResult sat_bbll(const Formula& phi, const SatOptions& options = {});

/// Looks for a finite model with points 0..N for N = 1..max_points where phi
/// holds at some interval. Never answers Unsat.
SatResult sat_bounded_finite(const Formula& phi, long max_points);

/// Re-evaluates phi at the witness with the model checker for the model's
/// domain. A periodic evaluation that gives up counts as failure.
bool check_certificate(const Formula& phi, const IntervalModel& model, const Interval& witness);

/// Certificate text: the .ism model followed by "witness X Y".
std::string save_certificate(const Sat& s);
Sat load_certificate(std::string_view text);

}  // namespace hs
