// Acceptance run: one PASS/FAIL line per primary criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "hs/atlas.hpp"
#include "hs/checker.hpp"
#include "hs/counter.hpp"
#include "hs/logic.hpp"
#include "hs/parser.hpp"
#include "hs/sat.hpp"
#include "oracle.hpp"

using namespace hs;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int n, const std::function<Outcome()>& run) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s (%.2fs) %s\n", n, o.pass ? "PASS" : "FAIL", seconds_since(t0),
              o.detail.c_str());
  std::fflush(stdout);
}

std::vector<Modality> bbll_mods() { return {mod::B, mod::iB, mod::L, mod::iL}; }

Outcome fragment_counts() {
  const auto t0 = Clock::now();
  const auto all = enumerate_fragments();
  std::vector<std::string> sd_only, nat_only;
  int sd = 0, nat = 0;
  for (const auto& f : all) {
    const bool a = classify(f, ClassContext::StronglyDiscrete) != ComplexityLabel::Undecidable;
    const bool b = classify(f, ClassContext::Naturals) != ComplexityLabel::Undecidable;
    sd += a;
    nat += b;
    if (a && !b) sd_only.push_back(to_string(f));
    if (b && !a) nat_only.push_back(to_string(f));
  }
  const double t = seconds_since(t0);
  const std::vector<std::string> trio = {to_string(Fragment{mod::iA, mod::B}),
                                         to_string(Fragment{mod::iA, mod::iB}),
                                         to_string(Fragment{mod::iA, mod::B, mod::iB})};
  std::sort(nat_only.begin(), nat_only.end());
  auto want = trio;
  std::sort(want.begin(), want.end());
  const bool ok = all.size() == 62 && sd == 44 && nat == 47 && sd_only.empty() &&
                  nat_only == want && t < 1.0;
  std::string added;
  for (const auto& s : nat_only) added += " {" + s + "}";
  return {ok, "classes=" + std::to_string(all.size()) + " sd=" + std::to_string(sd) +
                  " nat=" + std::to_string(nat) + " nat-only:" + added};
}

Outcome equations() {
  const auto t0 = Clock::now();
  const Formula p = atom("p");
  struct Eq {
    Modality x;
    Formula templ;
  };
  const std::vector<Eq> eqs = {
      {mod::L, dia(mod::A, dia(mod::A, p))},   {mod::iL, dia(mod::iA, dia(mod::iA, p))},
      {mod::D, dia(mod::B, dia(mod::E, p))},   {mod::iO, dia(mod::B, dia(mod::iE, p))},
      {mod::O, dia(mod::E, dia(mod::iB, p))},  {mod::iD, dia(mod::iB, dia(mod::iE, p))},
  };
  Outcome o;
  int held = 0;
  for (const auto& e : eqs) {
    if (std::holds_alternative<NoCountermodel>(check_equation(e.x, e.templ, 6))) {
      ++held;
    } else {
      o.pass = false;
      o.detail += " countermodel for <" + to_string(e.x) + ">;";
    }
  }
  const auto r = check_equation(mod::L, dia(mod::B, p), 6);
  const auto* c = std::get_if<Countermodel>(&r);
  long points = -1;
  if (c == nullptr) {
    o.pass = false;
  } else {
    points = c->model.domain().max_point() + 1;
    const bool differs =
        mc_finite(c->model, c->interval, dia(mod::L, p)) != mc_finite(c->model, c->interval, dia(mod::B, p));
    if (points > 4 || !differs) o.pass = false;
  }
  const double t = seconds_since(t0);
  if (t >= 60.0) o.pass = false;
  o.detail = "equations holding up to 6=" + std::to_string(held) + "/6, <L>p vs <B>p countermodel points=" +
             std::to_string(points) + o.detail;
  return o;
}

Outcome witnesses() {
  Outcome o;
  int certified = 0, inside = 0, inside_broken = 0, outside = 0, outside_broken = 0;
  for (const auto& w : witness_library()) {
    if (!certify_undefinability(w.x, w.fragment, w.left, w.right, w.left_interval, w.right_interval,
                                w.letter)) {
      o.pass = false;
      continue;
    }
    ++certified;
    for (int side = 0; side < 2; ++side) {
      const IntervalModel& m = side == 0 ? w.left : w.right;
      const Interval at = side == 0 ? w.left_interval : w.right_interval;
      const auto region = witness_region(m, w.fragment, w.x, at);
      for (const auto& i : canonical_intervals(m.domain())) {
        const IntervalModel flipped = m.with(w.letter, i, !m.holds(w.letter, i));
        const bool still =
            side == 0 ? certify_undefinability(w.x, w.fragment, flipped, w.right, w.left_interval,
                                               w.right_interval, w.letter)
                      : certify_undefinability(w.x, w.fragment, w.left, flipped, w.left_interval,
                                               w.right_interval, w.letter);
        if (region.contains(i)) {
          ++inside;
          inside_broken += !still;
        } else {
          ++outside;
          outside_broken += !still;
        }
      }
    }
  }
  const bool have_l = std::any_of(witness_library().begin(), witness_library().end(), [](const auto& w) {
    return w.x == mod::L && w.fragment == Fragment{mod::B, mod::iB};
  });
  const bool have_a = std::any_of(witness_library().begin(), witness_library().end(), [](const auto& w) {
    return w.x == mod::A && w.fragment == Fragment{mod::B, mod::iB, mod::L, mod::iL};
  });
  if (!have_l || !have_a || inside_broken != inside || outside_broken != 0) o.pass = false;
  o.detail = "certified=" + std::to_string(certified) + " region flips breaking a check=" +
             std::to_string(inside_broken) + "/" + std::to_string(inside) +
             " flips outside the region (unobservable by invariance)=" + std::to_string(outside);
  return o;
}

Outcome sat_harness() {
  const auto t0 = Clock::now();
  std::mt19937 rng(2024);
  const std::vector<std::string> letters = {"p", "q"};
  int model_true = 0, sat_ok = 0, over_bound = 0, bad = 0;
  std::size_t largest = 0;
  for (int k = 0; k < 200; ++k) {
    std::uniform_int_distribution<long> pick_size(2, 6);
    const long size = pick_size(rng);
    std::uniform_int_distribution<long> pick_pre(1, size - 1);
    const long pre = pick_pre(rng);
    const IntervalModel m =
        oracle::random_model(rng, Domain::periodic(pre, size - pre), {letters.begin(), letters.begin() + 1 + k % 2}, 0.4);
    const Formula f = oracle::random_formula(rng, letters, bbll_mods(), 3);
    const auto truth = mc_periodic(m, {0, 1}, tau(f));
    if (!std::holds_alternative<bool>(truth)) {
      ++bad;
      continue;
    }
    if (!std::get<bool>(truth)) continue;
    ++model_true;
    SatOptions opt;
    opt.threads = 0;
    const auto r = sat_bbll(f, opt);
    const auto* s = std::get_if<Sat>(&r);
    if (s == nullptr || !check_certificate(f, s->model, s->witness)) {
      ++bad;
      continue;
    }
    const auto& d = s->model.domain();
    const std::size_t shape = static_cast<std::size_t>(d.pre() + d.per());
    largest = std::max(largest, shape);
    if (shape > metrics(f).periodic_bound || shape > static_cast<std::size_t>(size)) ++over_bound;
    ++sat_ok;
  }
  const std::vector<std::string> unsat_suite = {
      "p & ~p",
      "<B> p & ~<B> p",
      "<B> p & [B] ~p",
      "<L> p & [L] ~p",
      "<iB> q & [iB] ~q",
      "<iL> p & [iL] ~p",
      "<B> <B> p & [B] ~p",
      "<L> <L> p & [L] ~p",
      "<iB> <iB> p & [iB] ~p",
      "(<L> p | <L> q) & [L] ~p & [L] ~q",
  };
  int unsat = 0;
  for (const auto& text : unsat_suite) {
    SatOptions opt;
    opt.threads = 0;
    unsat += std::holds_alternative<Unsat>(sat_bbll(parse_formula(text), opt));
  }
  const double t = seconds_since(t0);
  const bool ok = bad == 0 && over_bound == 0 && sat_ok == model_true && model_true > 0 &&
                  unsat == static_cast<int>(unsat_suite.size()) && t < 300.0;
  return {ok, "model-true=" + std::to_string(model_true) + " verified-sat=" + std::to_string(sat_ok) +
                  " failures=" + std::to_string(bad) + " over-bound=" + std::to_string(over_bound) +
                  " largest Pre+Per=" + std::to_string(largest) + " unsat=" + std::to_string(unsat) + "/" +
                  std::to_string(unsat_suite.size())};
}

// Every formula over p of tree depth at most 2.
std::vector<Formula> depth_two_formulas() {
  const Formula p = atom("p");
  const auto mods = oracle::all_modalities();
  std::vector<Formula> one = {p, !p, p && p, p || p};
  for (const auto m : mods) {
    one.push_back(dia(m, p));
    one.push_back(box(m, p));
  }
  std::vector<Formula> two = one;
  for (const auto& f : one) {
    two.push_back(!f);
    for (const auto m : mods) {
      two.push_back(dia(m, f));
      two.push_back(box(m, f));
    }
    for (const auto& g : one) {
      two.push_back(f && g);
      two.push_back(f || g);
    }
  }
  return two;
}

Outcome oracle_grid() {
  const auto formulas = depth_two_formulas();
  long checks = 0, disagreements = 0, models = 0;
  for (long n = 1; n <= 4; ++n) {
    const Domain d = Domain::finite(n);
    const auto cells = canonical_intervals(d);
    for (unsigned long bits = 0; bits < (1ul << cells.size()); ++bits) {
      IntervalModel::Valuation v;
      auto& set = v["p"];
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (bits >> c & 1) set.insert(cells[c]);
      }
      const IntervalModel m(d, v);
      ++models;
      for (const auto& f : formulas) {
        const auto fast = mc_finite_all(m, f);
        for (std::size_t c = 0; c < cells.size(); ++c) {
          ++checks;
          disagreements += fast[c] != oracle::naive_finite(m, cells[c], f);
        }
      }
    }
  }
  return {disagreements == 0, "models=" + std::to_string(models) + " formulas=" +
                                  std::to_string(formulas.size()) + " checks=" + std::to_string(checks) +
                                  " disagreements=" + std::to_string(disagreements)};
}

Outcome mirror_duality() {
  std::mt19937 rng(77);
  const auto mods = oracle::all_modalities();
  long checks = 0, mismatches = 0, involution = 0;
  for (int k = 0; k < 100; ++k) {
    std::uniform_int_distribution<long> pick_n(1, 6);
    const IntervalModel m = oracle::random_model(rng, Domain::finite(pick_n(rng)), {"p", "q"});
    const Formula f = oracle::random_formula(rng, {"p", "q"}, mods, 3);
    const Formula g = mirror_formula(f);
    const IntervalModel r = m.reversed();
    involution += mirror_formula(g) != f;
    for (const auto& i : canonical_intervals(m.domain())) {
      const Interval j = m.reverse_interval(i);
      ++checks;
      mismatches += mc_finite(m, i, f) != mc_finite(r, j, g);
      mismatches += oracle::naive_finite(m, i, f) != oracle::naive_finite(r, j, g);
    }
  }
  for (unsigned bits = 0; bits < (1u << kModalityCount); ++bits) {
    const Fragment f(bits);
    involution += mirror_fragment(mirror_fragment(f)) != f;
  }
  return {mismatches == 0 && involution == 0,
          "intervals=" + std::to_string(checks) + " mismatches=" + std::to_string(mismatches) +
              " involution failures=" + std::to_string(involution)};
}

// The run q0 -a-> q0 forever, zero-testing the only counter each step.
const char* kIfzAutomaton =
    "alphabet a\n"
    "states q0\n"
    "init q0\n"
    "final q0\n"
    "counters 1\n"
    "trans q0 a ifz 1 q0\n";

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

Outcome encoder_truth() {
  const CounterAutomaton a = load_ica(kIfzAutomaton);
  const IntervalModel hand = load_model(kIfzModel);
  const IntervalModel mirrored = hand.reversed();
  const Interval start{0, 1};
  const Interval mirrored_start = hand.reverse_interval(start);
  const Formula phi = encode_ae(a);
  Outcome o;
  if (!fragment_of(phi).subset_of(Fragment{mod::A, mod::E})) {
    o.pass = false;
    o.detail += " uses " + to_string(fragment_of(phi)) + ";";
  }
  const auto truth = [](const IntervalModel& m, const Interval& i, const Formula& f) {
    const auto r = mc_periodic(m, i, f);
    return std::holds_alternative<bool>(r) && std::get<bool>(r);
  };
  int groups = 0, held = 0, mirrored_held = 0;
  for (const auto& g : encode_ae_groups(a)) {
    ++groups;
    held += truth(hand, start, g.formula);
    mirrored_held += truth(mirrored, mirrored_start, mirror_formula(g.formula));
  }
  const bool whole = truth(hand, start, phi) && truth(mirrored, mirrored_start, mirror_formula(phi));
  if (held != groups || mirrored_held != groups || !whole) o.pass = false;
  o.detail = "groups=" + std::to_string(groups) + " held=" + std::to_string(held) +
             " mirrored held=" + std::to_string(mirrored_held) + " conjunction=" +
             (whole ? "true" : "false") + o.detail;
  return o;
}

Outcome bound_examples() {
  const std::vector<std::pair<std::string, std::size_t>> cases = {
      {"<L> p", 8}, {"p & q", 4}, {"<B> p | <iB> <B> q", 10}};
  Outcome o;
  for (const auto& [text, want] : cases) {
    const auto got = metrics(parse_formula(text)).periodic_bound;
    if (got != want) o.pass = false;
    o.detail += text + " -> " + std::to_string(got) + "; ";
  }
  return o;
}

}  // namespace

int main() {
  report(1, fragment_counts);
  report(2, equations);
  report(3, witnesses);
  report(4, sat_harness);
  report(5, oracle_grid);
  report(6, mirror_duality);
  report(7, encoder_truth);
  report(8, bound_examples);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
