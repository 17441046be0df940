#include "hs/logic.hpp"

#include <bit>
#include <sstream>

namespace hs {

Fragment::Fragment(std::initializer_list<Modality> ms) {
  for (Modality m : ms) insert(m);
}

std::size_t Fragment::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(mask_));
}

std::vector<Modality> Fragment::members() const {
  std::vector<Modality> out;
  for (int i = 0; i < kModalityCount; ++i) {
    if ((mask_ >> i) & 1u) out.push_back(Modality::from_index(i));
  }
  return out;
}

bool operator<(const Fragment& a, const Fragment& b) { return to_string(a) < to_string(b); }

std::string to_string(const Fragment& f) {
  std::string out;
  for (Modality m : f.members()) {
    if (!out.empty()) out += ' ';
    out += to_string(m);
  }
  return out;
}

Fragment parse_fragment(std::string_view text) {
  Fragment f;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto m = parse_modality(tok);
    if (!m) throw std::invalid_argument("unknown modality '" + tok + "'");
    f.insert(*m);
  }
  return f;
}

Fragment fragment_of(const Formula& f) {
  Fragment out;
  for (Modality m : modalities(f)) out.insert(m);
  return out;
}

Formula desugar(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: return f;
    case Kind::True: {
      Formula top = atom(std::string(kTopLetter));
      return top || !top;
    }
    case Kind::False: return negate(desugar(Formula::top()));
    case Kind::Not: return negate(desugar(f.child()));
    case Kind::And: return desugar(f.child(0)) && desugar(f.child(1));
    case Kind::Or: return desugar(f.child(0)) || desugar(f.child(1));
    case Kind::Implies: return negate(desugar(f.child(0))) || desugar(f.child(1));
    case Kind::Diamond: return dia(f.modality(), desugar(f.child()));
    case Kind::Box: return negate(dia(f.modality(), negate(desugar(f.child()))));
  }
  return f;
}

namespace {

void collect(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  for (const auto& c : f.children()) collect(c, out);
}

}  // namespace

std::set<Formula> closure(const Formula& phi) {
  std::set<Formula> subs;
  collect(desugar(phi), subs);
  std::set<Formula> out;
  for (const auto& s : subs) {
    out.insert(s);
    out.insert(negate(s));
  }
  return out;
}

FormulaMetrics metrics(const Formula& phi) {
  FormulaMetrics m;
  m.length = phi.length();
  const auto cl = closure(phi);
  m.closure_size = cl.size();
  std::size_t l_diamonds = 0;
  for (const auto& f : cl) {
    if (f.kind() != Kind::Diamond) continue;
    switch (f.modality().base) {
      case Base::B:
        ++m.m_b;
        break;
      case Base::L:
        ++l_diamonds;
        break;
      default:
        break;
    }
  }
  // The closure holds the negation of every L-diamond as well.
  m.r_size = 2 * l_diamonds;
  m.m_l = 2 * m.r_size;
  m.periodic_bound = (m.m_l + 2) * m.m_b + m.m_l + 4;
  return m;
}

Formula mirror_formula(const Formula& phi) {
  switch (phi.kind()) {
    case Kind::Atom:
    case Kind::True:
    case Kind::False:
      return phi;
    case Kind::Not: return !mirror_formula(phi.child());
    case Kind::And: return mirror_formula(phi.child(0)) && mirror_formula(phi.child(1));
    case Kind::Or: return mirror_formula(phi.child(0)) || mirror_formula(phi.child(1));
    case Kind::Implies: return implies(mirror_formula(phi.child(0)), mirror_formula(phi.child(1)));
    case Kind::Diamond: return dia(mirror(phi.modality()), mirror_formula(phi.child()));
    case Kind::Box: return box(mirror(phi.modality()), mirror_formula(phi.child()));
  }
  return phi;
}

Fragment mirror_fragment(const Fragment& f) {
  Fragment out;
  for (Modality m : f.members()) out.insert(mirror(m));
  return out;
}

}  // namespace hs
