#include "hs/atlas.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hs/checker.hpp"
#include "hs/sat.hpp"

namespace hs {

namespace {

void require_finite(const IntervalModel& m) {
  if (!m.domain().is_finite()) throw ModelError("bisimulations are checked on finite models only");
}

// Intervals, their letter sets and their successors under each modality.
struct Frame {
  std::vector<Interval> cells;
  std::map<Interval, std::size_t> index;
  std::vector<std::set<std::string>> atoms;
  std::vector<std::vector<std::size_t>> succ[kModalityCount];

  Frame(const IntervalModel& m, const std::set<std::string>& letters) {
    require_finite(m);
    cells = canonical_intervals(m.domain());
    for (std::size_t k = 0; k < cells.size(); ++k) index[cells[k]] = k;
    for (const Interval& c : cells) {
      std::set<std::string> here;
      for (const auto& l : letters) {
        if (m.holds(l, c)) here.insert(l);
      }
      atoms.push_back(std::move(here));
    }
    for (int k = 0; k < kModalityCount; ++k) {
      const Modality mo = Modality::from_index(k);
      succ[k].resize(cells.size());
      for (std::size_t a = 0; a < cells.size(); ++a) {
        for (std::size_t b = 0; b < cells.size(); ++b) {
          if (related(mo, cells[a].x, cells[a].y, cells[b].x, cells[b].y)) succ[k][a].push_back(b);
        }
      }
    }
  }
};

std::set<std::string> shared_letters(const IntervalModel& m, const IntervalModel& m2) {
  std::set<std::string> out = m.letters();
  const auto more = m2.letters();
  out.insert(more.begin(), more.end());
  return out;
}

using Matrix = std::vector<std::vector<char>>;

// Forth and back for pair (a, b) and modality k against relation z.
bool zigzag(const Frame& l, const Frame& r, const Matrix& z, std::size_t a, std::size_t b, int k) {
  for (std::size_t a2 : l.succ[k][a]) {
    if (std::none_of(r.succ[k][b].begin(), r.succ[k][b].end(),
                     [&](std::size_t b2) { return z[a2][b2]; })) {
      return false;
    }
  }
  for (std::size_t b2 : r.succ[k][b]) {
    if (std::none_of(l.succ[k][a].begin(), l.succ[k][a].end(),
                     [&](std::size_t a2) { return z[a2][b2]; })) {
      return false;
    }
  }
  return true;
}

bool in_family(const Fragment& f, const Fragment& family) { return f.subset_of(family); }

const Fragment kFamilyB{mod::A, mod::iA, mod::B, mod::iB, mod::L, mod::iL};
const Fragment kFamilyE{mod::A, mod::iA, mod::E, mod::iE, mod::L, mod::iL};

Fragment reduce(Fragment f) {
  if (f.contains(mod::A)) f.erase(mod::L);
  if (f.contains(mod::iA)) f.erase(mod::iL);
  return f;
}

void require_universe(const Fragment& f) {
  if (!in_universe(f)) throw UniverseError("fragment '" + to_string(f) + "' is outside the universe");
}

std::string dot_color(ComplexityLabel l) {
  switch (l) {
    case ComplexityLabel::NPComplete: return "palegreen";
    case ComplexityLabel::NEXPTIMEComplete: return "lightblue";
    case ComplexityLabel::EXPSPACEComplete: return "khaki";
    case ComplexityLabel::DecidableNonPrimitiveRecursive: return "orange";
    case ComplexityLabel::Undecidable: return "salmon";
  }
  return "white";
}

IntervalModel finite_model(long n, std::initializer_list<std::pair<const char*, Interval>> vals) {
  IntervalModel::Valuation v;
  for (const auto& [l, i] : vals) v[l].insert(i);
  return IntervalModel(Domain::finite(n), v);
}

}  // namespace

bool is_f_bisimulation(const IntervalModel& m, const IntervalModel& m2, const BisimRelation& z,
                       const Fragment& f) {
  const auto letters = shared_letters(m, m2);
  const Frame l(m, letters);
  const Frame r(m2, letters);
  Matrix zm(l.cells.size(), std::vector<char>(r.cells.size(), 0));
  for (const auto& [a, b] : z.pairs) {
    auto ia = l.index.find(a);
    auto ib = r.index.find(b);
    if (ia == l.index.end() || ib == r.index.end()) return false;
    zm[ia->second][ib->second] = 1;
  }
  for (const auto& [a, b] : z.pairs) {
    const std::size_t ia = l.index.at(a);
    const std::size_t ib = r.index.at(b);
    if (l.atoms[ia] != r.atoms[ib]) return false;
    for (Modality mo : f.members()) {
      if (!zigzag(l, r, zm, ia, ib, mo.index())) return false;
    }
  }
  return true;
}

BisimRelation largest_f_bisimulation(const IntervalModel& m, const IntervalModel& m2,
                                     const Fragment& f) {
  const auto letters = shared_letters(m, m2);
  const Frame l(m, letters);
  const Frame r(m2, letters);
  Matrix z(l.cells.size(), std::vector<char>(r.cells.size(), 0));
  for (std::size_t a = 0; a < l.cells.size(); ++a) {
    for (std::size_t b = 0; b < r.cells.size(); ++b) z[a][b] = l.atoms[a] == r.atoms[b];
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < l.cells.size(); ++a) {
      for (std::size_t b = 0; b < r.cells.size(); ++b) {
        if (!z[a][b]) continue;
        for (Modality mo : f.members()) {
          if (!zigzag(l, r, z, a, b, mo.index())) {
            z[a][b] = 0;
            changed = true;
            break;
          }
        }
      }
    }
  }
  BisimRelation out;
  for (std::size_t a = 0; a < l.cells.size(); ++a) {
    for (std::size_t b = 0; b < r.cells.size(); ++b) {
      if (z[a][b]) out.pairs.insert({l.cells[a], r.cells[b]});
    }
  }
  return out;
}

bool certify_undefinability(Modality x, const Fragment& f, const IntervalModel& m,
                            const IntervalModel& m2, const Interval& i, const Interval& i2,
                            const std::string& letter) {
  require_finite(m);
  require_finite(m2);
  if (!m.domain().contains(i) || !m2.domain().contains(i2)) return false;
  const Formula probe = dia(x, atom(letter));
  return largest_f_bisimulation(m, m2, f).contains(i, i2) && mc_finite(m, i, probe) &&
         !mc_finite(m2, i2, probe);
}

std::set<Interval> witness_region(const IntervalModel& m, const Fragment& f, Modality x,
                                  const Interval& i) {
  require_finite(m);
  const auto cells = canonical_intervals(m.domain());
  std::set<Interval> seen{i};
  std::vector<Interval> todo{i};
  while (!todo.empty()) {
    const Interval c = todo.back();
    todo.pop_back();
    for (const Interval& d : cells) {
      for (Modality mo : f.members()) {
        if (related(mo, c.x, c.y, d.x, d.y) && seen.insert(d).second) todo.push_back(d);
      }
    }
  }
  for (const Interval& d : cells) {
    if (related(x, i.x, i.y, d.x, d.y)) seen.insert(d);
  }
  return seen;
}

EquationResult check_equation(Modality x, const Formula& templ, long max_points,
                              const std::string& letter) {
  const Formula differ = !iff(dia(x, atom(letter)), templ);
  const SatResult r = sat_bounded_finite(differ, max_points);
  if (const auto* s = std::get_if<Sat>(&r)) return Countermodel{s->model, s->witness};
  return NoCountermodel{};
}

Fragment definable_closure(const Fragment& f) {
  Fragment out = f;
  const auto rule = [&](std::initializer_list<Modality> need, Modality gain) {
    for (Modality m : need) {
      if (!out.contains(m)) return false;
    }
    if (out.contains(gain)) return false;
    out.insert(gain);
    return true;
  };
  for (bool changed = true; changed;) {
    changed = false;
    changed |= rule({mod::A}, mod::L);
    changed |= rule({mod::iA}, mod::iL);
    changed |= rule({mod::B, mod::E}, mod::D);
    changed |= rule({mod::B, mod::iE}, mod::iO);
    changed |= rule({mod::E, mod::iB}, mod::O);
    changed |= rule({mod::iB, mod::iE}, mod::iD);
  }
  return out;
}

bool in_universe(const Fragment& f) { return in_family(f, kFamilyB) || in_family(f, kFamilyE); }

bool fragment_leq(const Fragment& f1, const Fragment& f2) {
  require_universe(f1);
  require_universe(f2);
  return f1.subset_of(definable_closure(f2));
}

std::vector<Fragment> enumerate_fragments() {
  std::set<Fragment> seen;
  for (const Fragment& family : {kFamilyB, kFamilyE}) {
    for (unsigned mask = 1; mask < (1u << kModalityCount); ++mask) {
      const Fragment f(mask);
      if (f.subset_of(family)) seen.insert(reduce(f));
    }
  }
  return {seen.begin(), seen.end()};
}

std::string to_string(ComplexityLabel l) {
  switch (l) {
    case ComplexityLabel::NPComplete: return "NPComplete";
    case ComplexityLabel::NEXPTIMEComplete: return "NEXPTIMEComplete";
    case ComplexityLabel::EXPSPACEComplete: return "EXPSPACEComplete";
    case ComplexityLabel::DecidableNonPrimitiveRecursive: return "DecidableNonPrimitiveRecursive";
    case ComplexityLabel::Undecidable: return "Undecidable";
  }
  return "?";
}

std::string to_string(ClassContext c) { return c == ClassContext::Naturals ? "nat" : "sd"; }

ClassContext parse_class_context(std::string_view text) {
  if (text == "sd") return ClassContext::StronglyDiscrete;
  if (text == "nat") return ClassContext::Naturals;
  throw std::invalid_argument("unknown class '" + std::string(text) + "' (expected sd or nat)");
}

ComplexityLabel classify(const Fragment& f, ClassContext ctx) {
  const Fragment bs{mod::B, mod::iB};
  const Fragment es{mod::E, mod::iE};
  if (f.intersects(Fragment{mod::D, mod::iD, mod::O, mod::iO})) return ComplexityLabel::Undecidable;
  if (f.intersects(bs) && f.intersects(es)) return ComplexityLabel::Undecidable;
  require_universe(f);
  const bool a = f.contains(mod::A);
  const bool ia = f.contains(mod::iA);
  if (ia && f.intersects(bs)) {
    if (ctx == ClassContext::StronglyDiscrete || a || f.contains(mod::L)) {
      return ComplexityLabel::Undecidable;
    }
    return ComplexityLabel::DecidableNonPrimitiveRecursive;
  }
  if (a && f.intersects(es)) return ComplexityLabel::Undecidable;
  if ((a && f.intersects(bs)) || (ia && f.intersects(es))) return ComplexityLabel::EXPSPACEComplete;
  if (a || ia) return ComplexityLabel::NEXPTIMEComplete;
  return ComplexityLabel::NPComplete;
}

std::string hasse_dot(ClassContext ctx) {
  const auto frags = enumerate_fragments();
  const std::size_t n = frags.size();
  std::vector<std::vector<char>> lt(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lt[i][j] = fragment_leq(frags[i], frags[j]) && !fragment_leq(frags[j], frags[i]);
    }
  }
  std::ostringstream out;
  out << "digraph fragments {\n";
  out << "  label=\"HS fragments (" << to_string(ctx) << ")\";\n";
  out << "  node [shape=box, style=filled];\n";
  for (const Fragment& f : frags) {
    const ComplexityLabel l = classify(f, ctx);
    out << "  \"" << to_string(f) << "\" [complexity=\"" << to_string(l) << "\", fillcolor=\""
        << dot_color(l) << "\"];\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!lt[i][j]) continue;
      bool covering = true;
      for (std::size_t k = 0; k < n && covering; ++k) covering = !(lt[i][k] && lt[k][j]);
      if (covering) out << "  \"" << to_string(frags[i]) << "\" -> \"" << to_string(frags[j]) << "\";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string classification_jsonl(ClassContext ctx) {
  std::string out;
  for (const Fragment& f : enumerate_fragments()) {
    const ComplexityLabel l = classify(f, ctx);
    const nlohmann::ordered_json row = {{"fragment", to_string(f)},
                                        {"class", to_string(ctx)},
                                        {"label", to_string(l)},
                                        {"decidable", l != ComplexityLabel::Undecidable}};
    out += row.dump() + "\n";
  }
  return out;
}

const std::vector<UndefinabilityWitness>& witness_library() {
  static const std::vector<UndefinabilityWitness> lib = [] {
    std::vector<UndefinabilityWitness> w;
    // B and iB never leave the intervals starting at 0; [2,3] is the only
    // later interval.
    w.push_back({"L against B iB", mod::L, Fragment{mod::B, mod::iB},
                 finite_model(3, {{"p", {2, 3}}}), finite_model(3, {}), {0, 1}, {0, 1}, "p"});
    // From [0,1] over 0..2 nothing starts after 1 or ends before 0, so the
    // meeting interval [1,2] is out of reach.
    w.push_back({"A against B iB L iL", mod::A, Fragment{mod::B, mod::iB, mod::L, mod::iL},
                 finite_model(2, {{"p", {1, 2}}}), finite_model(2, {}), {0, 1}, {0, 1}, "p"});
    return w;
  }();
  return lib;
}

}  // namespace hs
