#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hs/formula.hpp"
#include "hs/model.hpp"

namespace hs {

/// Exact truth of phi at i over a finite model. Throws ModelError if the
/// model is not finite or i is not one of its intervals.
bool mc_finite(const IntervalModel& m, const Interval& i, const Formula& phi);

/// Truth of phi at every interval of a finite model, indexed like
/// canonical_intervals(m.domain()).
std::vector<bool> mc_finite_all(const IntervalModel& m, const Formula& phi);

/// Evaluation of a periodic model gave up before producing an answer.
struct NotStabilized {
  Formula subformula;
  Interval cell;
  std::string reason;
};

enum class PeriodicStrategy {
  Window,      // materialize a finite window per subformula, then sweep
  Successors,  // enumerate successor representatives cell by cell
  Box,         // scan a relation-agnostic box and filter by the relation
};

struct PeriodicOptions {
  /// Upper bound on cells materialized for any single subformula.
  std::size_t max_cells = std::size_t{1} << 26;
  PeriodicStrategy strategy = PeriodicStrategy::Window;
};

using PeriodicResult = std::variant<bool, NotStabilized>;

/// Exact truth of phi at i over a periodic model. Every subformula is
/// tabulated on its own periodic grid, whose offsets grow with the
/// modalities above it.
PeriodicResult mc_periodic(const IntervalModel& m, const Interval& i, const Formula& phi,
                           const PeriodicOptions& options = {});

/// Least interval, by x and then y, where phi holds. Not available for
/// reversed periodic domains, which have no least interval.
std::optional<Interval> first_satisfying(const IntervalModel& m, const Formula& phi);

/// mc_finite or mc_periodic depending on the domain; throws
/// std::runtime_error when the periodic evaluator gives up.
bool holds(const IntervalModel& m, const Interval& i, const Formula& phi);

}  // namespace hs
