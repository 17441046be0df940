#include "hs/checker.hpp"

#include <optional>
#include <stdexcept>

#include "circuit.hpp"
#include "grid.hpp"
#include "tables.hpp"

namespace hs {

using detail::Circuit;
using detail::Gate;
using detail::Grid;
using detail::Triangle;

namespace {

std::vector<Triangle> finite_tables(const IntervalModel& m, const Circuit& c) {
  const long n = m.domain().max_point();
  std::vector<Triangle> t;
  t.reserve(c.gates.size());
  for (const Gate& g : c.gates) {
    Triangle r(n);
    const auto fill = [&](auto&& f) {
      for (long x = 0; x < n; ++x) {
        for (long y = x + 1; y <= n; ++y) r.set(x, y, f(x, y));
      }
    };
    switch (g.op) {
      case Gate::Op::False: break;
      case Gate::Op::True: fill([](long, long) { return true; }); break;
      case Gate::Op::Atom: {
        const auto& name = c.letters[static_cast<std::size_t>(g.letter)];
        fill([&](long x, long y) { return m.holds(name, {x, y}); });
        break;
      }
      case Gate::Op::Not: fill([&](long x, long y) { return !t[g.a].get(x, y); }); break;
      case Gate::Op::And:
        fill([&](long x, long y) { return t[g.a].get(x, y) && t[g.b].get(x, y); });
        break;
      case Gate::Op::Or:
        fill([&](long x, long y) { return t[g.a].get(x, y) || t[g.b].get(x, y); });
        break;
      case Gate::Op::Diamond: r = detail::diamond_table(g.m, t[g.a]); break;
    }
    t.push_back(std::move(r));
  }
  return t;
}

void require_finite(const IntervalModel& m) {
  if (!m.domain().is_finite()) throw ModelError("finite model checking needs a finite model");
}

// The modality whose relation on [x,y] holds exactly when m's relation holds
// on [-y,-x], found by comparing the two on all intervals of a small range.
Modality seen_reversed(Modality m) {
  for (int k = 0; k < kModalityCount; ++k) {
    const Modality c = Modality::from_index(k);
    bool same = true;
    for (long x = 0; x < 6 && same; ++x) {
      for (long y = x + 1; y < 6 && same; ++y) {
        for (long x2 = 0; x2 < 6 && same; ++x2) {
          for (long y2 = x2 + 1; y2 < 6 && same; ++y2) {
            same = related(c, x, y, x2, y2) == related(m, -y, -x, -y2, -x2);
          }
        }
      }
    }
    if (same) return c;
  }
  throw std::logic_error("no modality matches a reversed relation");
}

struct Table {
  Grid grid;
  std::vector<std::uint8_t> v;
  bool at(const Interval& i) const { return v[grid.locate(i)] != 0; }
};

class PeriodicEvaluator {
 public:
  PeriodicEvaluator(const IntervalModel& m, const PeriodicOptions& opt)
      : m_(m), opt_(opt), reversed_(m.domain().is_reversed()) {}

  PeriodicResult run(const Circuit& c, const Interval& i) {
    if (auto failure = build(c)) return *failure;
    const Interval q = reversed_ ? Interval{-i.y, -i.x} : i;
    return tables_[static_cast<std::size_t>(c.root)].at(q);
  }

  const Table& table(int gate) const { return tables_[static_cast<std::size_t>(gate)]; }

  std::optional<NotStabilized> build(const Circuit& c) {
    const Domain& d = m_.domain();
    const Grid base(d.pre(), d.per(), d.len());
    for (const Gate& g : c.gates) {
      std::optional<Table> t;
      switch (g.op) {
        case Gate::Op::False:
        case Gate::Op::True:
          t = Table{base, std::vector<std::uint8_t>(base.size(), g.op == Gate::Op::True)};
          break;
        case Gate::Op::Atom: t = atom(base, c.letters[static_cast<std::size_t>(g.letter)]); break;
        case Gate::Op::Not: {
          t = tables_[g.a];
          for (auto& b : t->v) b = !b;
          break;
        }
        case Gate::Op::And:
        case Gate::Op::Or:
          t = combine(tables_[g.a], tables_[g.b], g.op == Gate::Op::And);
          break;
        case Gate::Op::Diamond:
          t = diamond(g.m, tables_[g.a]);
          break;
      }
      if (!t) return NotStabilized{g.source, Interval{0, 1}, "cell budget exceeded"};
      tables_.push_back(std::move(*t));
    }
    return std::nullopt;
  }

 private:
  bool within_budget(std::size_t cells) const { return cells <= opt_.max_cells; }

  Table atom(const Grid& base, const std::string& letter) const {
    Table t{base, std::vector<std::uint8_t>(base.size(), 0)};
    std::size_t k = 0;
    for (const Interval& cell : base.cells()) {
      const Interval own = reversed_ ? Interval{-cell.y, -cell.x} : cell;
      t.v[k++] = m_.holds(letter, own);
    }
    return t;
  }

  std::optional<Table> combine(const Table& a, const Table& b, bool conj) {
    const Grid g = detail::join(a.grid, b.grid);
    if (!within_budget(g.size())) return std::nullopt;
    Table t{g, std::vector<std::uint8_t>(g.size(), 0)};
    std::size_t k = 0;
    for (const Interval& cell : g.cells()) {
      t.v[k++] = conj ? (a.at(cell) && b.at(cell)) : (a.at(cell) || b.at(cell));
    }
    return t;
  }

  std::optional<Table> diamond(Modality m0, const Table& child) {
    const PeriodicStrategy s = opt_.strategy;
    // Window and Successors work on base coordinates, so they need the
    // relation as seen there; Box filters with the original one.
    const Modality m = reversed_ ? seen_reversed(m0) : m0;
    const Grid g = s == PeriodicStrategy::Box ? detail::derive_any(child.grid)
                                              : detail::derive(child.grid, m);
    if (!within_budget(g.size())) return std::nullopt;
    Table t{g, std::vector<std::uint8_t>(g.size(), 0)};
    const auto cells = g.cells();
    switch (s) {
      case PeriodicStrategy::Window: {
        const Grid& cg = child.grid;
        const long H = std::max(g.max_y() + 1, cg.pre()) + 2 * cg.per() + cg.len();
        if (!within_budget(static_cast<std::size_t>((H + 1) * (H + 1)))) return std::nullopt;
        Triangle w(H);
        for (long x = 0; x < H; ++x) {
          for (long y = x + 1; y <= H; ++y) w.set(x, y, child.at({x, y}));
        }
        const Triangle r = detail::diamond_table(m, w);
        for (std::size_t k = 0; k < cells.size(); ++k) t.v[k] = r.get(cells[k].x, cells[k].y);
        break;
      }
      case PeriodicStrategy::Successors:
        for (std::size_t k = 0; k < cells.size(); ++k) {
          bool any = false;
          detail::for_each_successor(child.grid, m, cells[k].x, cells[k].y,
                                     [&](long x2, long y2) {
                                       any = any || child.at({x2, y2});
                                     });
          t.v[k] = any;
        }
        break;
      case PeriodicStrategy::Box:
        for (std::size_t k = 0; k < cells.size(); ++k) {
          const long x = cells[k].x;
          const long y = cells[k].y;
          bool any = false;
          detail::for_each_in_box(child.grid, x, y, [&](long x2, long y2) {
            if (any) return;
            const bool rel = reversed_ ? related(m0, -y, -x, -y2, -x2) : related(m0, x, y, x2, y2);
            any = rel && child.at({x2, y2});
          });
          t.v[k] = any;
        }
        break;
    }
    return t;
  }

  const IntervalModel& m_;
  const PeriodicOptions& opt_;
  bool reversed_;
  std::vector<Table> tables_;
};

}  // namespace

bool mc_finite(const IntervalModel& m, const Interval& i, const Formula& phi) {
  require_finite(m);
  if (!m.domain().contains(i)) throw ModelError(to_string(i) + " is not an interval of the model");
  const Circuit c = Circuit::build(phi);
  return finite_tables(m, c)[static_cast<std::size_t>(c.root)].get(i.x, i.y);
}

std::vector<bool> mc_finite_all(const IntervalModel& m, const Formula& phi) {
  require_finite(m);
  const Circuit c = Circuit::build(phi);
  const auto t = finite_tables(m, c);
  const Triangle& r = t[static_cast<std::size_t>(c.root)];
  std::vector<bool> out;
  for (const Interval& i : canonical_intervals(m.domain())) out.push_back(r.get(i.x, i.y));
  return out;
}

PeriodicResult mc_periodic(const IntervalModel& m, const Interval& i, const Formula& phi,
                           const PeriodicOptions& options) {
  if (!m.domain().is_periodic()) throw ModelError("periodic model checking needs a periodic model");
  if (!m.domain().contains(i)) throw ModelError(to_string(i) + " is not an interval of the model");
  const Circuit c = Circuit::build(phi);
  return PeriodicEvaluator(m, options).run(c, i);
}

std::optional<Interval> first_satisfying(const IntervalModel& m, const Formula& phi) {
  if (m.domain().is_finite()) {
    const auto all = mc_finite_all(m, phi);
    const auto cells = canonical_intervals(m.domain());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (all[k]) return cells[k];
    }
    return std::nullopt;
  }
  if (m.domain().is_reversed()) throw ModelError("a reversed domain has no least interval");
  const Circuit c = Circuit::build(phi);
  const PeriodicOptions opt;
  PeriodicEvaluator ev(m, opt);
  if (auto failure = ev.build(c)) {
    throw std::runtime_error("evaluation of " + render(failure->subformula) + " gave up: " +
                             failure->reason);
  }
  // Any true interval has a true representative on the grid that is no larger.
  const Table& t = ev.table(c.root);
  const auto cells = t.grid.cells();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (t.v[k]) return cells[k];
  }
  return std::nullopt;
}

bool holds(const IntervalModel& m, const Interval& i, const Formula& phi) {
  if (m.domain().is_finite()) return mc_finite(m, i, phi);
  const auto r = mc_periodic(m, i, phi);
  if (const auto* ns = std::get_if<NotStabilized>(&r)) {
    throw std::runtime_error("evaluation of " + render(ns->subformula) + " gave up: " + ns->reason);
  }
  return std::get<bool>(r);
}

}  // namespace hs
