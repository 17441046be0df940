#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hs/formula.hpp"
#include "hs/logic.hpp"
#include "hs/model.hpp"

namespace hs {

/// Pairs (interval of M, interval of M') between two finite models.
struct BisimRelation {
  std::set<std::pair<Interval, Interval>> pairs;

  bool contains(const Interval& a, const Interval& b) const { return pairs.contains({a, b}); }
  friend bool operator==(const BisimRelation&, const BisimRelation&) = default;
};

/// Z relates intervals with the same letters (over the letters of both
/// models) and satisfies forth and back for every modality of f. Throws
/// ModelError unless both models are finite.
bool is_f_bisimulation(const IntervalModel& m, const IntervalModel& m2, const BisimRelation& z,
                       const Fragment& f);

/// Greatest fixpoint: all letter-agreeing pairs, refined until forth and
/// back hold.
BisimRelation largest_f_bisimulation(const IntervalModel& m, const IntervalModel& m2,
                                     const Fragment& f);

/// (i, i2) is f-bisimilar, <x>letter holds at i in m and fails at i2 in m2,
/// so <x> is not definable in f.
bool certify_undefinability(Modality x, const Fragment& f, const IntervalModel& m,
                            const IntervalModel& m2, const Interval& i, const Interval& i2,
                            const std::string& letter);

/// Intervals reachable from i through the relations of f, plus the
/// x-successors of i: the only intervals certify_undefinability reads.
std::set<Interval> witness_region(const IntervalModel& m, const Fragment& f, Modality x,
                                  const Interval& i);

struct NoCountermodel {};
struct Countermodel {
  IntervalModel model;
  Interval interval;
};
using EquationResult = std::variant<NoCountermodel, Countermodel>;

/// Searches finite models up to max_points for an interval where <x>letter
/// and templ disagree. NoCountermodel is bounded evidence, not a proof.
EquationResult check_equation(Modality x, const Formula& templ, long max_points,
                              const std::string& letter = "p");

/// Closes f under the definability equations: A gives L, iA gives iL, B E
/// give D, B iE give iO, E iB give O, iB iE give iD.
Fragment definable_closure(const Fragment& f);

/// Fragment outside the subsets of A iA B iB L iL and of A iA E iE L iL.
class UniverseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool in_universe(const Fragment& f);

/// f1 is at most as expressive as f2. Throws UniverseError outside the
/// universe, where the closure is not known to be complete.
bool fragment_leq(const Fragment& f1, const Fragment& f2);

/// The 62 expressively different fragments, each in reduced form (no L
/// next to A, no iL next to iA), sorted by name.
std::vector<Fragment> enumerate_fragments();

enum class ComplexityLabel {
  NPComplete,
  NEXPTIMEComplete,
  EXPSPACEComplete,
  DecidableNonPrimitiveRecursive,
  Undecidable,
};

enum class ClassContext { StronglyDiscrete, Naturals };

std::string to_string(ComplexityLabel l);
/// "sd" or "nat".
std::string to_string(ClassContext c);
/// Accepts "sd" and "nat"; throws std::invalid_argument otherwise.
ClassContext parse_class_context(std::string_view text);

/// Fragments with D, iD, O or iO, or with both a B and an E modality, are
/// undecidable whatever else they contain; anything else must be in the
/// universe or UniverseError is thrown.
ComplexityLabel classify(const Fragment& f, ClassContext ctx);

/// Covering edges of the strict order, from less to more expressive, with
/// one node per fragment carrying its label. Byte-for-byte deterministic.
std::string hasse_dot(ClassContext ctx);

/// One JSON object per fragment: {"fragment", "class", "label", "decidable"}.
std::string classification_jsonl(ClassContext ctx);

struct UndefinabilityWitness {
  std::string name;
  Modality x;
  Fragment fragment;
  IntervalModel left;
  IntervalModel right;
  Interval left_interval;
  Interval right_interval;
  std::string letter;
};

/// Shipped witnesses; each one passes certify_undefinability.
const std::vector<UndefinabilityWitness>& witness_library();

}  // namespace hs
