#pragma once

// Test-side reference evaluators and generators. Deliberately naive: they
// walk the formula tree and enumerate intervals directly.

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hs/formula.hpp"
#include "hs/model.hpp"

namespace oracle {

using hs::Formula;
using hs::Interval;
using hs::IntervalModel;
using hs::Kind;
using hs::Modality;

inline std::vector<Modality> all_modalities() {
  std::vector<Modality> out;
  for (int i = 0; i < hs::kModalityCount; ++i) out.push_back(Modality::from_index(i));
  return out;
}

inline Formula random_formula(std::mt19937& rng, const std::vector<std::string>& letters,
                              const std::vector<Modality>& mods, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int choice = depth <= 0 ? 0 : pick(rng);
  auto sub = [&] { return random_formula(rng, letters, mods, depth - 1); };
  auto letter = [&] {
    std::uniform_int_distribution<std::size_t> l(0, letters.size() - 1);
    return hs::atom(letters[l(rng)]);
  };
  auto modality = [&] {
    std::uniform_int_distribution<std::size_t> m(0, mods.size() - 1);
    return mods[m(rng)];
  };
  switch (choice) {
    case 0:
    case 1: return letter();
    case 2: return !sub();
    case 3: return sub() && sub();
    case 4: return sub() || sub();
    case 5: return hs::implies(sub(), sub());
    case 6:
    case 7: return mods.empty() ? letter() : hs::dia(modality(), sub());
    case 8: return mods.empty() ? !letter() : hs::box(modality(), sub());
    default: return pick(rng) < 5 ? Formula::top() : Formula::bottom();
  }
}

/// Direct recursive semantics over a finite model.
inline bool naive_finite(const IntervalModel& m, const Interval& i, const Formula& f) {
  const long n = m.domain().max_point();
  const auto exists = [&](Modality mod, const Formula& g) {
    for (long x = 0; x < n; ++x) {
      for (long y = x + 1; y <= n; ++y) {
        if (hs::related(mod, i.x, i.y, x, y) && naive_finite(m, {x, y}, g)) return true;
      }
    }
    return false;
  };
  switch (f.kind()) {
    case Kind::Atom: return m.holds(f.letter(), i);
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Not: return !naive_finite(m, i, f.child());
    case Kind::And: return naive_finite(m, i, f.child(0)) && naive_finite(m, i, f.child(1));
    case Kind::Or: return naive_finite(m, i, f.child(0)) || naive_finite(m, i, f.child(1));
    case Kind::Implies: return !naive_finite(m, i, f.child(0)) || naive_finite(m, i, f.child(1));
    case Kind::Diamond: return exists(f.modality(), f.child());
    case Kind::Box: return !exists(f.modality(), !f.child());
  }
  return false;
}

/// Semantics over a model of N where every future-reaching quantifier only
/// looks `reach` points past the current interval. Exact once reach exceeds
/// the periodic structure the formula can observe; compare two reaches to
/// gain confidence.
class ReachEvaluator {
 public:
  ReachEvaluator(const IntervalModel& m, long reach) : m_(m), reach_(reach) {}

  bool eval(const Interval& i, const Formula& f) {
    auto& memo = memo_[f];
    if (auto it = memo.find({i.x, i.y}); it != memo.end()) return it->second;
    bool r = false;
    switch (f.kind()) {
      case Kind::Atom: r = m_.holds(f.letter(), i); break;
      case Kind::True: r = true; break;
      case Kind::False: r = false; break;
      case Kind::Not: r = !eval(i, f.child()); break;
      case Kind::And: r = eval(i, f.child(0)) && eval(i, f.child(1)); break;
      case Kind::Or: r = eval(i, f.child(0)) || eval(i, f.child(1)); break;
      case Kind::Implies: r = !eval(i, f.child(0)) || eval(i, f.child(1)); break;
      case Kind::Diamond: r = exists(i, f.modality(), f.child()); break;
      case Kind::Box: r = !exists(i, f.modality(), !f.child()); break;
    }
    memo.emplace(std::make_pair(i.x, i.y), r);
    return r;
  }

 private:
  bool exists(const Interval& i, Modality mod, const Formula& g) {
    const long hi = i.y + reach_;
    for (long x = 0; x < hi; ++x) {
      for (long y = x + 1; y <= hi; ++y) {
        // L-successors may start anywhere in the window; let them end
        // further out too.
        if (hs::related(mod, i.x, i.y, x, y) && eval({x, y}, g)) return true;
      }
    }
    if (mod == hs::mod::L) {
      for (long x = i.y + 1; x < hi; ++x) {
        for (long y = hi + 1; y <= x + reach_; ++y) {
          if (eval({x, y}, g)) return true;
        }
      }
    }
    return false;
  }

  const IntervalModel& m_;
  long reach_;
  std::map<Formula, std::map<std::pair<long, long>, bool>> memo_;
};

inline IntervalModel random_model(std::mt19937& rng, const hs::Domain& d,
                                  const std::vector<std::string>& letters, double density = 0.4) {
  std::bernoulli_distribution coin(density);
  IntervalModel::Valuation v;
  for (const auto& l : letters) {
    auto& set = v[l];
    for (const auto& i : hs::canonical_intervals(d)) {
      if (coin(rng)) set.insert(i);
    }
  }
  return IntervalModel(d, v);
}

}  // namespace oracle
