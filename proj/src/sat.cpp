#include "hs/sat.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "cdcl.hpp"
#include "circuit.hpp"
#include "grid.hpp"
#include "hs/checker.hpp"
#include "tables.hpp"

namespace hs {

using detail::Circuit;
using detail::Gate;
using detail::Grid;
using detail::Lit;
using detail::neg;
using detail::pos;
using detail::Solver;

namespace {

// Ordered atom variables: one per (cell, letter), cells in (x, y) order and
// letters sorted, so that the lexicographic valuation order is the variable
// order.
struct AtomVars {
  std::vector<Interval> cells;
  std::vector<std::string> letters;  // sorted
  std::vector<int> vars;             // cells.size() * letters.size()
};

class Encoding {
 public:
  Encoding() : true_var_(solver_.new_var()) { solver_.add_clause({pos(true_var_)}); }

  Solver& solver() { return solver_; }
  Lit top() const { return pos(true_var_); }
  Lit bottom() const { return neg(true_var_); }

  int fresh() { return solver_.new_var(); }

  Lit conj(Lit a, Lit b) {
    if (a == bottom() || b == bottom() || a == (b ^ 1)) return bottom();
    if (a == top() || a == b) return b;
    if (b == top()) return a;
    const int v = fresh();
    solver_.add_clause({neg(v), a});
    solver_.add_clause({neg(v), b});
    solver_.add_clause({pos(v), a ^ 1, b ^ 1});
    return pos(v);
  }

  Lit disj(std::vector<Lit> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::erase(lits, bottom());
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (lits[i] == top() || (i + 1 < lits.size() && lits[i + 1] == (lits[i] ^ 1))) return top();
    }
    if (lits.empty()) return bottom();
    if (lits.size() == 1) return lits[0];
    const int v = fresh();
    std::vector<Lit> big{neg(v)};
    for (Lit l : lits) {
      big.push_back(l);
      solver_.add_clause({pos(v), l ^ 1});
    }
    solver_.add_clause(std::move(big));
    return pos(v);
  }

  AtomVars atoms(const std::vector<Interval>& cells, const std::vector<std::string>& circuit_letters) {
    AtomVars a;
    a.cells = cells;
    a.letters = circuit_letters;
    std::sort(a.letters.begin(), a.letters.end());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (std::size_t l = 0; l < a.letters.size(); ++l) a.vars.push_back(fresh());
    }
    return a;
  }

  /// Fixes the atom variables to the least satisfying valuation. Requires a
  /// satisfiable instance.
  std::vector<bool> least_valuation(const AtomVars& a) {
    std::vector<Lit> fixed;
    std::vector<bool> out;
    for (int v : a.vars) {
      if (!solver_.model_value(v)) {
        fixed.push_back(neg(v));
        out.push_back(false);
        continue;
      }
      fixed.push_back(neg(v));
      if (solver_.solve(fixed) == Solver::Result::Sat) {
        out.push_back(false);
      } else {
        // the previous model already has v true and fits the prefix
        fixed.back() = pos(v);
        out.push_back(true);
      }
    }
    return out;
  }

 private:
  Solver solver_;
  int true_var_;
};

std::size_t letter_slot(const AtomVars& a, const std::string& name) {
  return static_cast<std::size_t>(
      std::lower_bound(a.letters.begin(), a.letters.end(), name) - a.letters.begin());
}

IntervalModel build_model(const Domain& d, const AtomVars& a, const std::vector<bool>& values) {
  IntervalModel::Valuation v;
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    for (std::size_t l = 0; l < a.letters.size(); ++l) {
      if (values[c * a.letters.size() + l]) v[a.letters[l]].insert(a.cells[c]);
    }
  }
  return IntervalModel(d, v);
}

// One periodic shape (pre, per) where phi holds at some interval. nullopt
// when unsatisfiable.
std::optional<IntervalModel> solve_periodic(const Circuit& c, long pre, long per) {
  Encoding enc;
  const Grid base(pre, per, 1);
  const AtomVars atoms = enc.atoms(base.cells(), c.letters);
  struct Enc {
    Grid grid;
    std::vector<Lit> lit;
  };
  std::vector<Enc> gates;
  gates.reserve(c.gates.size());
  for (const Gate& g : c.gates) {
    switch (g.op) {
      case Gate::Op::True:
      case Gate::Op::False:
        gates.push_back({base, std::vector<Lit>(base.size(), g.op == Gate::Op::True ? enc.top() : enc.bottom())});
        break;
      case Gate::Op::Atom: {
        const std::size_t slot = letter_slot(atoms, c.letters[static_cast<std::size_t>(g.letter)]);
        Enc e{base, {}};
        for (std::size_t k = 0; k < base.size(); ++k) {
          e.lit.push_back(pos(atoms.vars[k * atoms.letters.size() + slot]));
        }
        gates.push_back(std::move(e));
        break;
      }
      case Gate::Op::Not: {
        Enc e = gates[static_cast<std::size_t>(g.a)];
        for (Lit& l : e.lit) l ^= 1;
        gates.push_back(std::move(e));
        break;
      }
      case Gate::Op::And:
      case Gate::Op::Or: {
        const Enc& a = gates[static_cast<std::size_t>(g.a)];
        const Enc& b = gates[static_cast<std::size_t>(g.b)];
        Enc e{detail::join(a.grid, b.grid), {}};
        for (const Interval& cell : e.grid.cells()) {
          const Lit la = a.lit[a.grid.locate(cell)];
          const Lit lb = b.lit[b.grid.locate(cell)];
          e.lit.push_back(g.op == Gate::Op::And ? enc.conj(la, lb) : enc.disj({la, lb}));
        }
        gates.push_back(std::move(e));
        break;
      }
      case Gate::Op::Diamond: {
        // Same window as the evaluator: every successor class of every cell
        // has a representative inside 0..H.
        const Enc& child = gates[static_cast<std::size_t>(g.a)];
        const Grid& cg = child.grid;
        Enc e{detail::derive(cg, g.m), {}};
        const long H = std::max(e.grid.max_y() + 1, cg.pre()) + 2 * cg.per() + cg.len();
        detail::Tri<Lit> w(H, enc.bottom());
        for (long x = 0; x < H; ++x) {
          for (long y = x + 1; y <= H; ++y) w.set(x, y, child.lit[cg.locate({x, y})]);
        }
        const auto r = detail::diamond_sweep<Lit>(g.m, w, enc.bottom(),
                                                  [&](Lit a, Lit b) { return enc.disj({a, b}); });
        for (const Interval& cell : e.grid.cells()) e.lit.push_back(r.get(cell.x, cell.y));
        gates.push_back(std::move(e));
        break;
      }
    }
  }
  // tau(phi) holds at [0,1] iff phi holds somewhere, and every interval has
  // its class among the root grid's cells.
  const Enc& root = gates[static_cast<std::size_t>(c.root)];
  enc.solver().add_clause({enc.disj(root.lit)});
  if (enc.solver().solve() != Solver::Result::Sat) return std::nullopt;
  return build_model(Domain::periodic(pre, per), atoms, enc.least_valuation(atoms));
}

// Finite(n), phi true at some interval. nullopt when unsatisfiable.
std::optional<IntervalModel> solve_finite(const Circuit& c, long n) {
  Encoding enc;
  const Domain d = Domain::finite(n);
  const auto cells = canonical_intervals(d);
  const AtomVars atoms = enc.atoms(cells, c.letters);
  const auto index = [n](long x, long y) { return static_cast<std::size_t>(x * (n + 1) + y); };
  std::vector<std::vector<Lit>> gates;
  gates.reserve(c.gates.size());
  for (const Gate& g : c.gates) {
    std::vector<Lit> lit(static_cast<std::size_t>((n + 1) * (n + 1)), enc.bottom());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const long x = cells[k].x;
      const long y = cells[k].y;
      Lit& out = lit[index(x, y)];
      switch (g.op) {
        case Gate::Op::True: out = enc.top(); break;
        case Gate::Op::False: out = enc.bottom(); break;
        case Gate::Op::Atom: {
          const std::size_t slot = letter_slot(atoms, c.letters[static_cast<std::size_t>(g.letter)]);
          out = pos(atoms.vars[k * atoms.letters.size() + slot]);
          break;
        }
        case Gate::Op::Not: out = gates[static_cast<std::size_t>(g.a)][index(x, y)] ^ 1; break;
        case Gate::Op::And:
          out = enc.conj(gates[static_cast<std::size_t>(g.a)][index(x, y)],
                         gates[static_cast<std::size_t>(g.b)][index(x, y)]);
          break;
        case Gate::Op::Or:
          out = enc.disj({gates[static_cast<std::size_t>(g.a)][index(x, y)],
                          gates[static_cast<std::size_t>(g.b)][index(x, y)]});
          break;
        case Gate::Op::Diamond: {
          std::vector<Lit> succ;
          for (const Interval& j : cells) {
            if (related(g.m, x, y, j.x, j.y)) succ.push_back(gates[static_cast<std::size_t>(g.a)][index(j.x, j.y)]);
          }
          out = enc.disj(succ);
          break;
        }
      }
    }
    gates.push_back(std::move(lit));
  }
  std::vector<Lit> somewhere;
  for (const Interval& i : cells) somewhere.push_back(gates[static_cast<std::size_t>(c.root)][index(i.x, i.y)]);
  enc.solver().add_clause({enc.disj(somewhere)});
  if (enc.solver().solve() != Solver::Result::Sat) return std::nullopt;
  return build_model(d, atoms, enc.least_valuation(atoms));
}

Sat certify(const IntervalModel& m, const Formula& phi) {
  const auto w = first_satisfying(m, phi);
  if (!w) throw std::logic_error("satisfying model without a satisfying interval");
  return Sat{m, *w};
}

}  // namespace

Fragment bbll_fragment() { return Fragment{mod::B, mod::iB, mod::L, mod::iL}; }

Formula tau(const Formula& phi) { return dia(mod::L, dia(mod::iL, phi)); }

std::size_t bbll_search_bound(const Formula& phi) { return metrics(tau(phi)).periodic_bound; }

SatResult sat_bbll(const Formula& phi, const SatOptions& options) {
  if (!fragment_of(phi).subset_of(bbll_fragment())) {
    throw FragmentError("sat_bbll only accepts B, iB, L, iL; got " + to_string(fragment_of(phi)));
  }
  const Circuit c = Circuit::build(phi);
  const long bound = static_cast<long>(bbll_search_bound(phi));
  const unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                                : options.threads;
  const auto launch = threads > 1 ? std::launch::async : std::launch::deferred;
  // First satisfiable shape among (pre, size - pre) for pre in [first, last),
  // smallest pre winning whichever job finishes first.
  const auto shapes = [&](long size, long first, long last) {
    std::optional<IntervalModel> found;
    for (long lo = first; lo < last && !found; lo += static_cast<long>(threads)) {
      const long hi = std::min(last, lo + static_cast<long>(threads));
      std::vector<std::future<std::optional<IntervalModel>>> jobs;
      for (long pre = lo; pre < hi; ++pre) {
        jobs.push_back(std::async(launch, [&c, pre, size] { return solve_periodic(c, pre, size - pre); }));
      }
      for (auto& j : jobs) {
        auto r = j.get();
        if (r && !found) found = std::move(r);
      }
    }
    return found;
  };
  const long cap = options.max_size == 0 ? bound : std::min(bound, static_cast<long>(options.max_size));
  // A valuation periodic for (pre, per) is periodic for (pre + j, per), so
  // the shapes (bound - per, per) cover every shape within the bound. When
  // none of them is satisfiable the answer is Unsat without visiting the
  // rest; otherwise the ascending search below finds the least model.
  constexpr long kCheap = 8;
  bool refuted = false;
  for (long size = 2; size <= cap; ++size) {
    if (size == kCheap + 1 && cap == bound) {
      refuted = true;
      for (long per = 1; per < bound && refuted; ++per) {
        refuted = !shapes(bound, bound - per, bound - per + 1);
      }
      if (refuted) return Unsat{};
    }
    if (auto found = shapes(size, 1, size)) return certify(*found, phi);
  }
  if (cap < bound) return Unknown{"size cap " + std::to_string(options.max_size) + " reached"};
  return Unsat{};
}

SatResult sat_bounded_finite(const Formula& phi, long max_points) {
  const Circuit c = Circuit::build(phi);
  for (long n = 1; n <= max_points; ++n) {
    if (auto m = solve_finite(c, n)) return certify(*m, phi);
  }
  return Unknown{"bound exhausted"};
}

bool check_certificate(const Formula& phi, const IntervalModel& model, const Interval& witness) {
  if (!model.domain().contains(witness)) return false;
  try {
    return holds(model, witness, phi);
  } catch (const std::runtime_error&) {
    return false;
  }
}

std::string save_certificate(const Sat& s) {
  return save_model(s.model) + "witness " + std::to_string(s.witness.x) + " " +
         std::to_string(s.witness.y) + "\n";
}

Sat load_certificate(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string model_text;
  std::optional<Interval> witness;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "witness") {
      Interval w;
      if (!(ls >> w.x >> w.y)) throw ModelError("malformed witness line");
      witness = w;
    } else {
      model_text += line + "\n";
    }
  }
  if (!witness) throw ModelError("certificate has no witness line");
  return Sat{load_model(model_text), *witness};
}

}  // namespace hs
