#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hs/formula.hpp"
#include "hs/logic.hpp"
#include "hs/model.hpp"

namespace hs {

/// Letter standing for the empty word in formulas and layouts.
inline constexpr std::string_view kEpsLetter = "__eps";

class AutomatonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dec on an empty counter or an ifz on a nonempty one.
class GuardError : public AutomatonError {
 public:
  using AutomatonError::AutomatonError;
};

enum class CounterOp { Inc, Dec, Ifz };

struct Transition {
  std::string from;
  std::optional<std::string> letter;  // nullopt is the empty word
  CounterOp op = CounterOp::Inc;
  int counter = 1;  // 1-based
  std::string to;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Incrementing counter automaton. States and alphabet letters double as
/// proposition letters, counter i is the letter "c<i>".
struct CounterAutomaton {
  std::set<std::string> alphabet;
  std::set<std::string> states;
  std::string initial;
  int counters = 0;
  std::vector<Transition> transitions;
  std::set<std::string> finals;

  /// Throws AutomatonError on a broken invariant or a name clash between
  /// states, letters and counter letters.
  void validate() const;
  bool has(const Transition& t) const;
};

std::string counter_letter(int i);

struct Config {
  std::string state;
  std::vector<long> values;

  friend auto operator<=>(const Config&, const Config&) = default;
};

Config initial_config(const CounterAutomaton& a);

/// Exact step; throws GuardError on a failed guard and AutomatonError if t
/// is not a transition of a leaving c.state.
Config step_exact(const CounterAutomaton& a, const Config& c, const Transition& t);

/// Every result of inflating each counter by 0..slack, then stepping
/// exactly, then inflating again by 0..slack.
std::set<Config> step_incrementing(const CounterAutomaton& a, const Config& c,
                                   const Transition& t, long slack = 1);

/// "[U]psi" over A: psi & [A]psi & [A][A]psi.
Formula universal_ae(const Formula& psi);
/// "[U]psi" over iA and L: psi & [L]([iA]psi & [iA][iA]psi).
Formula universal_abl(const Formula& psi);

struct EncodedGroup {
  std::string label;
  Formula formula;
};

/// The conjuncts of the AE encoding in order, the fairness conjunct last.
std::vector<EncodedGroup> encode_ae_groups(const CounterAutomaton& a);

/// Conjunction of encode_ae_groups(a); satisfiable at [0,1] iff a accepts
/// some infinite word.
Formula encode_ae(const CounterAutomaton& a);

/// AE gives encode_ae; "iA B" gives its mirror. Other targets throw
/// std::invalid_argument.
Formula encode_fragment(const CounterAutomaton& a, const Fragment& target);

/// A run that eventually loops: configs[0] is initial, configs[j+1] follows
/// configs[j] by steps[j], and the step after the last config leads back to
/// configs[loop]. Counters are never inflated before a step; such an
/// inflation is the same as inflating after the previous one.
struct Lasso {
  std::vector<Config> configs;
  std::vector<Transition> steps;  // steps.size() == configs.size()
  std::size_t loop = 0;
};

/// Throws AutomatonError unless every step is an exact step followed by
/// inflation and the loop closes.
void check_lasso(const CounterAutomaton& a, const Lasso& run);

/// The periodic model laying out the run as consecutive configuration
/// intervals, starting at point 1, with [0,1] as the end marker of an
/// imaginary previous configuration. encode_ae holds at [0,1] if the loop
/// visits a final state.
IntervalModel lasso_model(const CounterAutomaton& a, const Lasso& run);

/// .ica text format.
CounterAutomaton load_ica(std::string_view text);
std::string save_ica(const CounterAutomaton& a);

}  // namespace hs
