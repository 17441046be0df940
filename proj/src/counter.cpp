#include "hs/counter.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace hs {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  if (s == "true" || s == "false" || s == "eps") return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::string letter_of(const Transition& t) { return t.letter ? *t.letter : std::string(kEpsLetter); }

std::string describe(const Transition& t) {
  static const char* ops[] = {"inc", "dec", "ifz"};
  return "(" + t.from + ", " + (t.letter ? *t.letter : "eps") + ", " +
         ops[static_cast<int>(t.op)] + " " + std::to_string(t.counter) + ", " + t.to + ")";
}

// Auxiliary letters of the encoding.
namespace aux {
const Formula q = atom("__q");
const Formula a = atom("__a");
const Formula c = atom("__c");
const Formula b = atom("__b");
const Formula conf = atom("__conf");
const Formula confp = atom("__confp");
const Formula conf_q = atom("__conf_q");
const Formula conf_a = atom("__conf_a");
const Formula c_dec = atom("__c_dec");
const Formula c_new = atom("__c_new");
const Formula conf_dec = atom("__conf_dec");
const Formula conf_new = atom("__conf_new");
const Formula corr = atom("__corr");
const Formula corrp = atom("__corrp");
const Formula corr_conf = atom("__corr_conf");
Formula conf_c(int i) { return atom("__conf_c" + std::to_string(i)); }
}  // namespace aux

Formula dA(Formula f) { return dia(mod::A, std::move(f)); }
Formula dE(Formula f) { return dia(mod::E, std::move(f)); }
Formula bA(Formula f) { return box(mod::A, std::move(f)); }
Formula bE(Formula f) { return box(mod::E, std::move(f)); }

Formula all_distinct(const std::vector<Formula>& xs) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i != j) parts.push_back(implies(xs[i], !xs[j]));
    }
  }
  return conjoin(parts);
}

std::vector<Formula> atoms(const std::set<std::string>& names) {
  std::vector<Formula> out;
  for (const auto& n : names) out.push_back(atom(n));
  return out;
}

Formula transition_block(const Transition& t) {
  const Formula here = dA(atom(t.from) && dA(atom(letter_of(t))));
  const Formula next_state = dA(atom(t.to));
  const Formula ci = aux::conf_c(t.counter);
  switch (t.op) {
    case CounterOp::Inc:
      return here && dA(aux::conf && next_state && dA(aux::conf && dE(ci && aux::conf_new)));
    case CounterOp::Dec:
      return here && dA(aux::conf && next_state && dE(ci && aux::conf_dec));
    case CounterOp::Ifz:
      return here && dA(aux::conf && next_state && bE(!ci));
  }
  return Formula::bottom();
}

}  // namespace

std::string counter_letter(int i) { return "c" + std::to_string(i); }

void CounterAutomaton::validate() const {
  if (counters < 0) throw AutomatonError("negative number of counters");
  if (!states.contains(initial)) throw AutomatonError("initial state '" + initial + "' is not a state");
  for (const auto& f : finals) {
    if (!states.contains(f)) throw AutomatonError("final state '" + f + "' is not a state");
  }
  std::set<std::string> names;
  const auto claim = [&](const std::string& n, const char* what) {
    if (!valid_name(n)) throw AutomatonError(std::string("bad ") + what + " name '" + n + "'");
    if (!names.insert(n).second) throw AutomatonError("name '" + n + "' is used twice");
  };
  for (const auto& q : states) claim(q, "state");
  for (const auto& l : alphabet) claim(l, "letter");
  for (int i = 1; i <= counters; ++i) {
    if (names.contains(counter_letter(i))) {
      throw AutomatonError("name '" + counter_letter(i) + "' clashes with a counter");
    }
  }
  for (const auto& t : transitions) {
    if (!states.contains(t.from) || !states.contains(t.to)) {
      throw AutomatonError("transition " + describe(t) + " uses an unknown state");
    }
    if (t.letter && !alphabet.contains(*t.letter)) {
      throw AutomatonError("transition " + describe(t) + " uses an unknown letter");
    }
    if (t.counter < 1 || t.counter > counters) {
      throw AutomatonError("transition " + describe(t) + " uses an unknown counter");
    }
  }
}

bool CounterAutomaton::has(const Transition& t) const {
  return std::find(transitions.begin(), transitions.end(), t) != transitions.end();
}

Config initial_config(const CounterAutomaton& a) {
  return Config{a.initial, std::vector<long>(static_cast<std::size_t>(a.counters), 0)};
}

Config step_exact(const CounterAutomaton& a, const Config& c, const Transition& t) {
  if (!a.has(t)) throw AutomatonError(describe(t) + " is not a transition");
  if (t.from != c.state) throw AutomatonError(describe(t) + " does not leave " + c.state);
  if (c.values.size() != static_cast<std::size_t>(a.counters)) {
    throw AutomatonError("configuration has the wrong number of counters");
  }
  Config out{t.to, c.values};
  long& v = out.values[static_cast<std::size_t>(t.counter - 1)];
  switch (t.op) {
    case CounterOp::Inc: ++v; break;
    case CounterOp::Dec:
      if (v == 0) throw GuardError("dec on empty counter " + std::to_string(t.counter));
      --v;
      break;
    case CounterOp::Ifz:
      if (v != 0) throw GuardError("ifz on nonempty counter " + std::to_string(t.counter));
      break;
  }
  return out;
}

std::set<Config> step_incrementing(const CounterAutomaton& a, const Config& c,
                                   const Transition& t, long slack) {
  if (slack < 0) throw AutomatonError("negative slack");
  // All vectors in [0, slack]^k, odometer style.
  const auto inflations = [&](const Config& base, auto&& f) {
    std::vector<long> d(base.values.size(), 0);
    while (true) {
      Config x = base;
      for (std::size_t i = 0; i < d.size(); ++i) x.values[i] += d[i];
      f(x);
      std::size_t i = 0;
      while (i < d.size() && d[i] == slack) d[i++] = 0;
      if (i == d.size()) return;
      ++d[i];
    }
  };
  std::set<Config> out;
  inflations(c, [&](const Config& pre) {
    try {
      const Config mid = step_exact(a, pre, t);
      inflations(mid, [&](const Config& post) { out.insert(post); });
    } catch (const GuardError&) {
    }
  });
  return out;
}

Formula universal_ae(const Formula& psi) { return psi && bA(psi) && bA(bA(psi)); }

Formula universal_abl(const Formula& psi) {
  return psi && box(mod::L, box(mod::iA, psi) && box(mod::iA, box(mod::iA, psi)));
}

std::vector<EncodedGroup> encode_ae_groups(const CounterAutomaton& a) {
  a.validate();
  using namespace aux;
  const auto U = universal_ae;
  std::set<std::string> sigma = a.alphabet;
  for (const auto& t : a.transitions) {
    if (!t.letter) sigma.insert(std::string(kEpsLetter));
  }
  std::set<std::string> cs;
  for (int i = 1; i <= a.counters; ++i) cs.insert(counter_letter(i));
  const Formula unit = bE(Formula::bottom());

  std::vector<EncodedGroup> g;
  g.push_back({"placeholders are set",
               U(iff(q, disjoin(atoms(a.states))) && iff(aux::a, disjoin(atoms(sigma))) &&
                 iff(c, disjoin(atoms(cs))))});
  g.push_back({"placeholders are unit intervals", U(iff(unit, q || aux::a || c || b))});
  {
    const std::vector<Formula> ps{q, aux::a, c, b};
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::vector<Formula> others;
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (j != i) others.push_back(ps[j]);
      }
      parts.push_back(implies(ps[i], !disjoin(others)));
    }
    g.push_back({"one placeholder per unit interval", U(conjoin(parts))});
  }
  g.push_back({"one state, letter and counter",
               U(all_distinct(atoms(a.states)) && all_distinct(atoms(sigma)) &&
                 all_distinct(atoms(cs)))});
  g.push_back({"initial configuration has two internal points",
               dA(conf && dE(dE(Formula::top())) && bE(bE(bE(Formula::bottom()))))});
  g.push_back({"chain of configurations", U(implies(conf, dA(conf) && dE(dE(Formula::top()))))});
  g.push_back({"configurations end with suffix marks",
               U(implies(conf, bE(confp)) && implies(confp, !conf))});
  g.push_back({"configurations neither overlap nor nest",
               U(implies(dA(confp), !conf) && implies(confp, dA(conf) && !dE(conf)))});
  g.push_back({"configurations start with a state",
               dA(atom(a.initial)) && U(iff(dA(conf), dA(q)))});
  g.push_back({"configurations are structured",
               U(implies(q, dA(aux::a)) && implies(aux::a || c, dA(c || b)) && implies(b, dA(q)))});
  g.push_back({"state and letter meet their suffixes",
               U(implies(q, bA(implies(confp, conf_q))) &&
                 implies(aux::a, bA(implies(confp, conf_a))))});
  g.push_back({"one state and one letter per configuration",
               U(!(conf_q && dE(conf_q)) && !(conf_a && dE(conf_a)))});
  {
    std::vector<Formula> parts;
    for (int i = 1; i <= a.counters; ++i) {
      parts.push_back(implies(atom(counter_letter(i)), bA(implies(confp, conf_c(i)))));
    }
    g.push_back({"counters meet their suffixes", U(conjoin(parts))});
  }
  g.push_back({"marked counters meet marked suffixes",
               U(implies(c_new, c && bA(implies(confp, conf_new))) &&
                 implies(c_dec, c && bA(implies(confp, conf_dec))))});
  g.push_back({"marked suffixes follow marked counters",
               U(implies(unit && dA(conf_new), c_new) && implies(unit && dA(conf_dec), c_dec))});
  g.push_back({"one mark of each kind per configuration",
               U(!(conf_dec && dE(conf_dec)) && !(conf_new && dE(conf_new)))});
  g.push_back({"new counters have no predecessor", bA(implies(dA(c_new), !dE(corr)))});
  g.push_back({"states, letters and dec counters have no successor",
               U(implies(q || aux::a || c_dec, bA(!corr)))});
  g.push_back({"other counters have a successor", U(implies(c && !c_dec, dA(corr)))});
  g.push_back({"corr intervals are met by a counter", U(implies(unit && dA(corr), c))});
  g.push_back({"corr intervals end with suffix marks",
               U(implies(corr, bE(corrp) && dA(c)) &&
                 implies(dA(conf), bA(implies(corrp, corr_conf))))});
  g.push_back({"corr intervals cross one configuration start",
               U(!(corr_conf && dE(corr_conf)) && implies(corr, dE(corr_conf)))});
  g.push_back({"corr_conf starts a configuration", U(implies(dA(corr_conf), dA(conf)))});
  {
    std::vector<Formula> parts;
    for (int i = 1; i <= a.counters; ++i) {
      const Formula ci = atom(counter_letter(i));
      parts.push_back(implies(ci, bA(implies(corr, dA(ci)))));
    }
    g.push_back({"corr intervals keep the counter", U(conjoin(parts))});
  }
  g.push_back({"no corr ends another", U(!(corr && dE(corr)))});
  {
    std::vector<Formula> blocks;
    for (const auto& t : a.transitions) blocks.push_back(transition_block(t));
    g.push_back({"consecutive configurations follow a transition",
                 U(implies(dA(conf), disjoin(blocks)))});
  }
  g.push_back({"a final state recurs", bA(dA(dA(disjoin(atoms(a.finals)))))});
  return g;
}

Formula encode_ae(const CounterAutomaton& a) {
  std::vector<Formula> parts;
  for (auto& g : encode_ae_groups(a)) parts.push_back(std::move(g.formula));
  return conjoin(parts);
}

Formula encode_fragment(const CounterAutomaton& a, const Fragment& target) {
  if (target == Fragment{mod::A, mod::E}) return encode_ae(a);
  if (target == Fragment{mod::iA, mod::B}) return mirror_formula(encode_ae(a));
  throw std::invalid_argument("no encoding into fragment " + to_string(target));
}

void check_lasso(const CounterAutomaton& a, const Lasso& run) {
  a.validate();
  const auto& cs = run.configs;
  if (cs.empty()) throw AutomatonError("empty run");
  if (run.steps.size() != cs.size()) throw AutomatonError("run needs one step per configuration");
  if (run.loop >= cs.size()) throw AutomatonError("loop start is out of range");
  if (cs.front() != initial_config(a)) throw AutomatonError("run does not start initially");
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const Config& next = j + 1 < cs.size() ? cs[j + 1] : cs[run.loop];
    const Config exact = step_exact(a, cs[j], run.steps[j]);
    bool ok = exact.state == next.state && exact.values.size() == next.values.size();
    for (std::size_t i = 0; ok && i < exact.values.size(); ++i) ok = exact.values[i] <= next.values[i];
    if (!ok) throw AutomatonError("step " + std::to_string(j) + " does not reach the next configuration");
  }
}

IntervalModel lasso_model(const CounterAutomaton& a, const Lasso& run) {
  check_lasso(a, run);
  const std::size_t n = run.configs.size();
  const std::size_t cycle = n - run.loop;
  const auto width = [&](std::size_t j) {
    const auto& v = run.configs[j].values;
    return 3 + std::accumulate(v.begin(), v.end(), 0L);
  };
  long per = 0;
  for (std::size_t j = run.loop; j < n; ++j) per += width(j);

  // Unroll the prefix and several passes of the loop.
  const std::size_t passes = 6;
  std::vector<std::size_t> occ;
  for (std::size_t j = 0; j < run.loop; ++j) occ.push_back(j);
  for (std::size_t p = 0; p < passes; ++p) {
    for (std::size_t j = run.loop; j < n; ++j) occ.push_back(j);
  }
  std::vector<long> start{1};
  for (std::size_t o = 0; o < occ.size(); ++o) start.push_back(start.back() + width(occ[o]));

  std::map<Interval, std::set<std::string>> label;
  const auto put = [&](const std::string& l, long x, long y) { label[{x, y}].insert(l); };
  put("__b", 0, 1);
  // unit[o][i][r]: left point of the r-th c_{i+1} unit of occurrence o
  std::vector<std::vector<std::vector<long>>> unit(occ.size());
  for (std::size_t o = 0; o < occ.size(); ++o) {
    const Config& cf = run.configs[occ[o]];
    const long s = start[o];
    const long e = start[o + 1];
    put(cf.state, s, s + 1);
    put("__q", s, s + 1);
    put(letter_of(run.steps[occ[o]]), s + 1, s + 2);
    put("__a", s + 1, s + 2);
    long p = s + 2;
    unit[o].resize(cf.values.size());
    for (std::size_t i = 0; i < cf.values.size(); ++i) {
      for (long r = 0; r < cf.values[i]; ++r, ++p) {
        unit[o][i].push_back(p);
        put(counter_letter(static_cast<int>(i + 1)), p, p + 1);
        put("__c", p, p + 1);
        put("__conf_c" + std::to_string(i + 1), p + 1, e);
      }
    }
    put("__b", e - 1, e);
    put("__conf", s, e);
    for (long x = s + 1; x < e; ++x) put("__confp", x, e);
    put("__conf_q", s + 1, e);
    put("__conf_a", s + 2, e);
  }
  for (std::size_t o = 0; o + 1 < occ.size(); ++o) {
    const Transition& t = run.steps[occ[o]];
    const long e_next = start[o + 2];
    const auto i = static_cast<std::size_t>(t.counter - 1);
    const auto& here = unit[o];
    const auto& there = unit[o + 1];
    if (t.op == CounterOp::Dec) {
      const long u = here[i].back();
      put("__c_dec", u, u + 1);
      put("__conf_dec", u + 1, start[o + 1]);
    }
    if (t.op == CounterOp::Inc) {
      const long u = there[i][here[i].size()];
      put("__c_new", u, u + 1);
      put("__conf_new", u + 1, e_next);
    }
    for (std::size_t k = 0; k < here.size(); ++k) {
      const std::size_t kept = here[k].size() - (t.op == CounterOp::Dec && k == i ? 1 : 0);
      for (std::size_t r = 0; r < kept; ++r) {
        const long x = here[k][r] + 1;
        const long y = there[k][r];
        put("__corr", x, y);
        for (long z = x + 1; z < y; ++z) put("__corrp", z, y);
        put("__corr_conf", start[o + 1], y);
      }
    }
  }

  long longest = 0;
  for (const auto& [i, ls] : label) longest = std::max(longest, i.y - i.x);
  const long len = longest + 1;
  const long s_loop = start[run.loop];
  // The first pass may differ from later ones only through the step that
  // enters it, so the period starts there if the labels already repeat.
  long pre = s_loop;
  for (const auto& [i, ls] : label) {
    if (i.x >= s_loop && i.x < s_loop + per) {
      auto it = label.find({i.x + per, i.y + per});
      if (it == label.end() || it->second != ls) pre = s_loop + per;
    }
  }
  for (const auto& [i, ls] : label) {
    if (i.x >= pre + per && i.x < pre + 2 * per && !label.contains({i.x - per, i.y - per})) {
      pre = s_loop + per;
    }
  }
  const Domain d = Domain::periodic(pre, per, len);
  IntervalModel::Valuation v;
  for (const Interval& cell : canonical_intervals(d)) {
    auto it = label.find(cell);
    if (it == label.end()) continue;
    for (const auto& l : it->second) v[l].insert(cell);
  }
  return IntervalModel(d, v);
}

CounterAutomaton load_ica(std::string_view text) {
  CounterAutomaton a;
  std::istringstream in{std::string(text)};
  std::string line;
  int no = 0;
  bool have_init = false;
  bool have_counters = false;
  const auto fail = [&](const std::string& msg) {
    throw AutomatonError("line " + std::to_string(no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> w;
    for (std::string s; ls >> s;) w.push_back(s);
    if (w.empty()) continue;
    const std::string& key = w[0];
    const std::vector<std::string> rest(w.begin() + 1, w.end());
    if (key == "alphabet") {
      a.alphabet.insert(rest.begin(), rest.end());
    } else if (key == "states") {
      a.states.insert(rest.begin(), rest.end());
    } else if (key == "init") {
      if (rest.size() != 1 || have_init) fail("expected one initial state");
      a.initial = rest[0];
      have_init = true;
    } else if (key == "final") {
      a.finals.insert(rest.begin(), rest.end());
    } else if (key == "counters") {
      if (rest.size() != 1 || have_counters) fail("expected one counter count");
      try {
        std::size_t used = 0;
        a.counters = std::stoi(rest[0], &used);
        if (used != rest[0].size() || a.counters < 0) fail("bad counter count '" + rest[0] + "'");
      } catch (const std::logic_error&) {
        fail("bad counter count '" + rest[0] + "'");
      }
      have_counters = true;
    } else if (key == "trans") {
      if (rest.size() != 5) fail("expected: trans SRC LETTER|eps OP INDEX DST");
      Transition t;
      t.from = rest[0];
      if (rest[1] != "eps") t.letter = rest[1];
      if (rest[2] == "inc") t.op = CounterOp::Inc;
      else if (rest[2] == "dec") t.op = CounterOp::Dec;
      else if (rest[2] == "ifz") t.op = CounterOp::Ifz;
      else fail("unknown operation '" + rest[2] + "'");
      try {
        std::size_t used = 0;
        t.counter = std::stoi(rest[3], &used);
        if (used != rest[3].size()) fail("bad counter index '" + rest[3] + "'");
      } catch (const std::logic_error&) {
        fail("bad counter index '" + rest[3] + "'");
      }
      t.to = rest[4];
      a.transitions.push_back(t);
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (!have_init) throw AutomatonError("missing init line");
  a.validate();
  return a;
}

std::string save_ica(const CounterAutomaton& a) {
  std::ostringstream out;
  const auto list = [&](const char* key, const std::set<std::string>& xs) {
    out << key;
    for (const auto& x : xs) out << ' ' << x;
    out << '\n';
  };
  list("alphabet", a.alphabet);
  list("states", a.states);
  out << "init " << a.initial << '\n';
  list("final", a.finals);
  out << "counters " << a.counters << '\n';
  static const char* ops[] = {"inc", "dec", "ifz"};
  for (const auto& t : a.transitions) {
    out << "trans " << t.from << ' ' << (t.letter ? *t.letter : "eps") << ' '
        << ops[static_cast<int>(t.op)] << ' ' << t.counter << ' ' << t.to << '\n';
  }
  return out.str();
}

}  // namespace hs
