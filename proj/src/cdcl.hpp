#pragma once

// Small conflict-driven clause-learning solver. Deterministic: no random
// decisions, so equal inputs give equal models.

#include <cstdint>
#include <vector>

namespace hs::detail {

/// Literal encoding: 2*var for the positive literal, 2*var+1 for its negation.
using Lit = int;
inline Lit pos(int var) { return 2 * var; }
inline Lit neg(int var) { return 2 * var + 1; }
inline int var_of(Lit l) { return l >> 1; }

class Solver {
 public:
  enum class Result { Sat, Unsat, Unknown };

  int new_var();
  int num_vars() const { return static_cast<int>(assign_.size()); }

  /// Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::vector<Lit> lits);

  /// Solves under the given assumptions. conflict_budget < 0 means no limit.
  Result solve(const std::vector<Lit>& assumptions = {}, long conflict_budget = -1);

  /// Value in the last satisfying assignment.
  bool model_value(int var) const { return model_[static_cast<std::size_t>(var)] != 0; }

 private:
  static constexpr std::int8_t kUndef = 2;

  std::int8_t value(Lit l) const {
    const std::int8_t v = assign_[static_cast<std::size_t>(var_of(l))];
    return v == kUndef ? kUndef : static_cast<std::int8_t>(v ^ (l & 1));
  }
  void enqueue(Lit l, int reason);
  int propagate();  // conflicting clause index or -1
  void analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level);
  bool redundant(Lit p, std::vector<int>& to_clear);
  void cancel_until(int level);
  int pick_branch();
  void bump(int var);
  void decay() { inc_ *= 1.0 / 0.95; }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  void heap_insert(int var);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  bool heap_less(int a, int b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;  // per literal: clauses watching its negation
  std::vector<std::int8_t> assign_;
  std::vector<std::int8_t> phase_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<double> activity_;
  double inc_ = 1.0;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;  // -1 when absent
  std::vector<std::int8_t> seen_;
  std::vector<std::int8_t> model_;
  bool ok_ = true;
};

}  // namespace hs::detail
