#include <doctest.h>

#include <random>

#include "hs/checker.hpp"
#include "hs/counter.hpp"
#include "hs/parser.hpp"

using namespace hs;

namespace {

CounterAutomaton ifz_automaton() {
  return load_ica(
      "alphabet a\n"
      "states q0\n"
      "init q0\n"
      "final q0\n"
      "counters 1\n"
      "trans q0 a ifz 1 q0\n");
}

// Two states handing a counter back and forth, plus a second counter that
// is only ever incremented by faults or tested on eps moves.
CounterAutomaton pump_automaton() {
  return load_ica(
      "alphabet a b\n"
      "states p r\n"
      "init p\n"
      "final p\n"
      "counters 2\n"
      "trans p a inc 1 r\n"
      "trans r b dec 1 p\n"
      "trans r a inc 1 r\n"
      "trans p eps ifz 2 p\n"
      "trans r b dec 2 r\n");
}

// The intended model of the ifz automaton, written out by hand: [0,1] closes
// an imaginary previous configuration, then q0 . a . $b repeats from 1.
const char* kIfzModel =
    "order periodic pre=1 per=3 len=4\n"
    "val __b 0 1\n"
    "val q0 1 2\nval __q 1 2\n"
    "val a 2 3\nval __a 2 3\n"
    "val __b 3 4\n"
    "val __conf 1 4\n"
    "val __confp 2 4\nval __confp 3 4\n"
    "val __conf_q 2 4\n"
    "val __conf_a 3 4\n";

bool holds_at(const IntervalModel& m, const Interval& i, const Formula& f,
              PeriodicStrategy s = PeriodicStrategy::Window) {
  PeriodicOptions opt;
  opt.strategy = s;
  const auto r = mc_periodic(m, i, f, opt);
  REQUIRE(std::holds_alternative<bool>(r));
  return std::get<bool>(r);
}

Transition tr(std::string from, std::optional<std::string> letter, CounterOp op, int i,
              std::string to) {
  return Transition{std::move(from), std::move(letter), op, i, std::move(to)};
}

// Random walk without inflation before a step, closed as soon as a
// configuration repeats.
std::optional<Lasso> random_lasso(std::mt19937& rng, const CounterAutomaton& a, long cap,
                                  std::size_t max_steps) {
  Lasso run;
  run.configs.push_back(initial_config(a));
  while (run.configs.size() <= max_steps) {
    const Config& c = run.configs.back();
    std::vector<std::pair<Transition, Config>> moves;
    for (const auto& t : a.transitions) {
      if (t.from != c.state) continue;
      Config exact;
      try {
        exact = step_exact(a, c, t);
      } catch (const GuardError&) {
        continue;
      }
      for (const Config& r : step_incrementing(a, c, t, 1)) {
        bool ok = true;
        for (std::size_t i = 0; i < r.values.size(); ++i) {
          ok = ok && r.values[i] >= exact.values[i] && r.values[i] <= cap;
        }
        if (ok) moves.emplace_back(t, r);
      }
    }
    if (moves.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    const auto& [t, next] = moves[pick(rng)];
    run.steps.push_back(t);
    for (std::size_t k = 0; k < run.configs.size(); ++k) {
      if (run.configs[k] == next) {
        run.loop = k;
        return run;
      }
    }
    run.configs.push_back(next);
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("step_exact examples") {
  CounterAutomaton a;
  a.alphabet = {"a", "b"};
  a.states = {"q0", "q1"};
  a.initial = "q0";
  a.counters = 1;
  a.transitions = {tr("q0", "a", CounterOp::Inc, 1, "q1"), tr("q1", "b", CounterOp::Dec, 1, "q0"),
                   tr("q0", "a", CounterOp::Ifz, 1, "q0")};
  a.validate();
  CHECK(step_exact(a, {"q0", {0}}, a.transitions[0]) == Config{"q1", {1}});
  CHECK(step_exact(a, {"q1", {1}}, a.transitions[1]) == Config{"q0", {0}});
  CHECK_THROWS_AS(step_exact(a, {"q0", {2}}, a.transitions[2]), GuardError);
  CHECK_THROWS_AS(step_exact(a, {"q1", {0}}, a.transitions[1]), GuardError);
  CHECK_THROWS_AS(step_exact(a, {"q1", {0}}, a.transitions[0]), AutomatonError);
  CHECK_THROWS_AS(step_exact(a, {"q0", {0}}, tr("q0", "b", CounterOp::Inc, 1, "q1")),
                  AutomatonError);
}

TEST_CASE("step_incrementing examples") {
  const CounterAutomaton a = ifz_automaton();
  const Transition loop = a.transitions[0];
  CHECK(step_incrementing(a, {"q0", {0}}, loop, 1) ==
        std::set<Config>{{"q0", {0}}, {"q0", {1}}});
  CHECK(step_incrementing(a, {"q0", {0}}, loop, 0) == std::set<Config>{{"q0", {0}}});
  CHECK(step_incrementing(a, {"q0", {1}}, loop, 3).empty());

  CounterAutomaton d = a;
  d.transitions = {tr("q0", "a", CounterOp::Dec, 1, "q0")};
  CHECK(step_incrementing(d, {"q0", {0}}, d.transitions[0], 1) ==
        std::set<Config>{{"q0", {0}}, {"q0", {1}}});
  CHECK(step_incrementing(d, {"q0", {0}}, d.transitions[0], 0).empty());
}

TEST_CASE("step_incrementing is exact without slack and monotone in slack") {
  const CounterAutomaton a = pump_automaton();
  for (const auto& t : a.transitions) {
    for (long v1 = 0; v1 <= 2; ++v1) {
      for (long v2 = 0; v2 <= 2; ++v2) {
        const Config c{t.from, {v1, v2}};
        std::set<Config> zero;
        try {
          zero = {step_exact(a, c, t)};
        } catch (const GuardError&) {
        }
        CHECK(step_incrementing(a, c, t, 0) == zero);
        for (long s = 0; s < 3; ++s) {
          const auto small = step_incrementing(a, c, t, s);
          const auto big = step_incrementing(a, c, t, s + 1);
          for (const auto& x : small) CHECK(big.contains(x));
        }
      }
    }
  }
}

TEST_CASE("encode_ae structure") {
  const CounterAutomaton a = ifz_automaton();
  const Formula phi = encode_ae(a);
  CHECK(modalities(phi) == std::set<Modality>{mod::A, mod::E});
  const auto groups = encode_ae_groups(a);
  CHECK(groups.size() == 27);
  CHECK(groups.back().label == "a final state recurs");
  // the initial state is asserted right after [0,1]
  const Formula start = dia(mod::A, atom("q0"));
  bool found = false;
  for (const auto& g : groups) {
    if (g.formula.kind() == Kind::And && g.formula.child(0) == start) found = true;
  }
  CHECK(found);
  // one letter per state, symbol and counter, one per counter suffix, and
  // fifteen shared auxiliaries
  const auto ls = letters(phi);
  CHECK(ls.size() == 1 + 1 + 1 + 1 + 15);
  for (const char* l : {"q0", "a", "c1", "__conf_c1", "__conf", "__confp", "__corr_conf"}) {
    CHECK(ls.contains(l));
  }
  CHECK(parse_formula(render(phi)) == phi);
}

TEST_CASE("encode_ae handles an empty transition relation and eps moves") {
  CounterAutomaton a = ifz_automaton();
  a.transitions.clear();
  const auto groups = encode_ae_groups(a);
  const Formula delta = groups[groups.size() - 2].formula;
  // [U](<A>conf -> false)
  CHECK(delta.child(0).child(0) == implies(dia(mod::A, atom("__conf")), Formula::bottom()));
  CHECK(parse_formula(render(encode_ae(a))) == encode_ae(a));

  const auto pump = letters(encode_ae(pump_automaton()));
  CHECK(pump.contains(std::string(kEpsLetter)));
  CHECK(pump.contains("__conf_c2"));
}

TEST_CASE("encode_fragment") {
  const CounterAutomaton a = ifz_automaton();
  const Fragment ae{mod::A, mod::E};
  const Fragment iab{mod::iA, mod::B};
  CHECK(encode_fragment(a, ae) == encode_ae(a));
  const Formula m = encode_fragment(a, iab);
  CHECK(modalities(m) == std::set<Modality>{mod::iA, mod::B});
  CHECK(mirror_formula(m) == encode_ae(a));
  CHECK_THROWS_AS(encode_fragment(a, Fragment{mod::A, mod::iE}), std::invalid_argument);
  CHECK_THROWS_AS(encode_fragment(a, Fragment{mod::iA, mod::iB}), std::invalid_argument);
}

TEST_CASE("universal modality builders") {
  const Formula p = atom("p");
  CHECK(universal_ae(p) == (p && box(mod::A, p) && box(mod::A, box(mod::A, p))));
  CHECK(modalities(universal_abl(p)) == std::set<Modality>{mod::iA, mod::L});
  // [U] over iA and L reaches every interval from a late enough one
  const IntervalModel m(Domain::finite(5), {{"p", {{0, 1}, {1, 2}, {2, 4}, {0, 5}}}});
  CHECK_FALSE(mc_finite(m, {0, 1}, universal_abl(!atom("q") && atom("p"))));
  const IntervalModel all = [] {
    IntervalModel::Valuation v;
    for (const auto& i : canonical_intervals(Domain::finite(5))) v["p"].insert(i);
    return IntervalModel(Domain::finite(5), v);
  }();
  CHECK(mc_finite(all, {0, 1}, universal_abl(p)));
  CHECK_FALSE(mc_finite(all.with("p", {0, 1}, false), {1, 2}, universal_abl(p)));
  CHECK(mc_finite(all.with("p", {0, 1}, false), {4, 5}, universal_abl(p)));
}

TEST_CASE("intended model of the ifz automaton satisfies every conjunct") {
  const CounterAutomaton a = ifz_automaton();
  const IntervalModel hand = load_model(kIfzModel);
  Lasso run;
  run.configs = {initial_config(a)};
  run.steps = {a.transitions[0]};
  const IntervalModel built = lasso_model(a, run);
  CHECK(built == hand);
  for (const auto& g : encode_ae_groups(a)) {
    CAPTURE(g.label);
    CHECK(holds_at(hand, {0, 1}, g.formula));
    CHECK(holds_at(hand, {0, 1}, g.formula, PeriodicStrategy::Successors));
    CHECK(holds_at(hand.reversed(), {-1, 0}, mirror_formula(g.formula)));
  }
  CHECK(holds_at(hand, {0, 1}, encode_ae(a)));
  CHECK(holds_at(hand.reversed(), {-1, 0}, encode_fragment(a, Fragment{mod::iA, mod::B})));
}

TEST_CASE("damaging the intended model breaks some conjunct") {
  const CounterAutomaton a = ifz_automaton();
  const IntervalModel hand = load_model(kIfzModel);
  const Formula phi = encode_ae(a);
  int broken = 0;
  int tried = 0;
  for (const auto& [letter, set] : hand.valuation()) {
    for (const auto& i : set) {
      ++tried;
      broken += !holds_at(hand.with(letter, i, false), {0, 1}, phi);
    }
  }
  CHECK(broken == tried);
  // extra labels: a counter in a configuration that must stay empty
  CHECK_FALSE(holds_at(hand.with("c1", {2, 3}, true), {0, 1}, phi));
  CHECK_FALSE(holds_at(hand.with("__conf", {1, 3}, true), {0, 1}, phi));
  CHECK_FALSE(holds_at(hand.with("__corr", {2, 5}, true), {0, 1}, phi));
}

TEST_CASE("lasso layouts satisfy the encoding") {
  std::mt19937 rng(23);
  for (const CounterAutomaton& a : {ifz_automaton(), pump_automaton()}) {
    const auto groups = encode_ae_groups(a);
    int checked = 0;
    for (int k = 0; k < 40 && checked < 8; ++k) {
      const auto run = random_lasso(rng, a, 2, 6);
      if (!run) continue;
      ++checked;
      const IntervalModel m = lasso_model(a, *run);
      bool final_in_loop = false;
      for (std::size_t j = run->loop; j < run->configs.size(); ++j) {
        final_in_loop = final_in_loop || a.finals.contains(run->configs[j].state);
      }
      for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        CAPTURE(groups[g].label);
        CAPTURE(save_model(m));
        CHECK(holds_at(m, {0, 1}, groups[g].formula));
      }
      CHECK(holds_at(m, {0, 1}, groups.back().formula) == final_in_loop);
    }
    CHECK(checked >= 4);
  }
}

TEST_CASE("a lasso with faults and both counters, also mirrored") {
  const CounterAutomaton a = pump_automaton();
  Lasso run;
  // p -a inc1-> r (inflated c2) -b dec1-> p -a inc1-> r -b dec2-> r -b dec1-> p
  run.configs = {{"p", {0, 0}}, {"r", {1, 1}}, {"p", {0, 1}}, {"r", {1, 1}}, {"r", {1, 0}}};
  run.steps = {a.transitions[0], a.transitions[1], a.transitions[0], a.transitions[4],
               a.transitions[1]};
  const IntervalModel m = lasso_model(a, run);
  CHECK(m.valuation().contains("__c_new"));
  CHECK(m.valuation().contains("__c_dec"));
  CHECK(m.valuation().contains("__corr"));
  const Formula phi = encode_ae(a);
  CHECK(holds_at(m, {0, 1}, phi));
  CHECK(holds_at(m, {0, 1}, phi, PeriodicStrategy::Successors));
  CHECK(holds_at(m.reversed(), {-1, 0}, mirror_formula(phi)));
  // a second dec of c2 hits an empty counter
  run.steps[4] = a.transitions[4];
  CHECK_THROWS_AS(check_lasso(a, run), GuardError);
}

TEST_CASE("check_lasso rejects broken runs") {
  const CounterAutomaton a = pump_automaton();
  Lasso run;
  run.configs = {{"p", {0, 0}}, {"r", {1, 0}}};
  run.steps = {a.transitions[0], a.transitions[1]};
  CHECK_NOTHROW(check_lasso(a, run));
  run.configs[1] = {"r", {0, 0}};
  CHECK_THROWS_AS(check_lasso(a, run), AutomatonError);
  run.configs[1] = {"p", {1, 0}};
  CHECK_THROWS_AS(check_lasso(a, run), AutomatonError);
  run.configs = {{"p", {1, 0}}};
  run.steps = {a.transitions[3]};
  CHECK_THROWS_AS(check_lasso(a, run), AutomatonError);
}

TEST_CASE(".ica format") {
  const CounterAutomaton a = pump_automaton();
  const CounterAutomaton back = load_ica(save_ica(a));
  CHECK(back.states == a.states);
  CHECK(back.alphabet == a.alphabet);
  CHECK(back.transitions == a.transitions);
  CHECK(back.finals == a.finals);
  CHECK(back.counters == 2);
  CHECK_FALSE(back.transitions[3].letter.has_value());
  CHECK_THROWS_AS(load_ica("states q\ninit q\ncounters 1\ntrans q a inc 1 q\n"), AutomatonError);
  CHECK_THROWS_AS(load_ica("states q\ninit q\ncounters 1\ntrans q eps mul 1 q\n"), AutomatonError);
  CHECK_THROWS_AS(load_ica("states q\ninit q\ncounters 1\ntrans q eps inc 2 q\n"), AutomatonError);
  CHECK_THROWS_AS(load_ica("states c1\ninit c1\ncounters 1\n"), AutomatonError);
  CHECK_THROWS_AS(load_ica("states q\nalphabet q\ninit q\n"), AutomatonError);
  CHECK_THROWS_AS(load_ica("states q\n"), AutomatonError);
  try {
    load_ica("states q\ninit q\nbogus\n");
    FAIL("expected an error");
  } catch (const AutomatonError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
