#include "hs/formula.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace hs {

namespace {

std::shared_ptr<const detail::Node> make(Kind kind, Modality m, std::string letter,
                                         std::vector<Formula> children) {
  return std::make_shared<const detail::Node>(
      detail::Node{kind, m, std::move(letter), std::move(children)});
}

// Binding strength used by the renderer; larger binds tighter.
int precedence(Kind k) {
  switch (k) {
    case Kind::Implies: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    default: return 4;
  }
}

void render_into(const Formula& f, std::string& out);

void render_child(const Formula& f, int min_prec, std::string& out) {
  if (precedence(f.kind()) < min_prec) {
    out += '(';
    render_into(f, out);
    out += ')';
  } else {
    render_into(f, out);
  }
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Atom: out += f.letter(); return;
    case Kind::True: out += "true"; return;
    case Kind::False: out += "false"; return;
    case Kind::Not:
      out += '~';
      render_child(f.child(), 4, out);
      return;
    case Kind::Diamond:
      out += '<' + to_string(f.modality()) + "> ";
      render_child(f.child(), 4, out);
      return;
    case Kind::Box:
      out += '[' + to_string(f.modality()) + "] ";
      render_child(f.child(), 4, out);
      return;
    case Kind::And:
      // left-associative: a & b & c == (a & b) & c
      render_child(f.child(0), 3, out);
      out += " & ";
      render_child(f.child(1), 4, out);
      return;
    case Kind::Or:
      render_child(f.child(0), 2, out);
      out += " | ";
      render_child(f.child(1), 3, out);
      return;
    case Kind::Implies:
      // right-associative
      render_child(f.child(0), 2, out);
      out += " -> ";
      render_child(f.child(1), 1, out);
      return;
  }
}

template <class Visit>
void walk(const Formula& f, Visit&& visit) {
  visit(f);
  for (const auto& c : f.children()) walk(c, visit);
}

}  // namespace

Formula::Formula() : node_(make(Kind::True, {}, {}, {})) {}

Formula Formula::atom(std::string letter) {
  if (letter.empty()) throw std::invalid_argument("empty proposition letter");
  return Formula(make(Kind::Atom, {}, std::move(letter), {}));
}
Formula Formula::top() { return Formula(make(Kind::True, {}, {}, {})); }
Formula Formula::bottom() { return Formula(make(Kind::False, {}, {}, {})); }
Formula Formula::negation(Formula sub) {
  return Formula(make(Kind::Not, {}, {}, {std::move(sub)}));
}
Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(make(Kind::And, {}, {}, {std::move(lhs), std::move(rhs)}));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(make(Kind::Or, {}, {}, {std::move(lhs), std::move(rhs)}));
}
Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(make(Kind::Implies, {}, {}, {std::move(lhs), std::move(rhs)}));
}
Formula Formula::diamond(Modality m, Formula sub) {
  return Formula(make(Kind::Diamond, m, {}, {std::move(sub)}));
}
Formula Formula::box(Modality m, Formula sub) {
  return Formula(make(Kind::Box, m, {}, {std::move(sub)}));
}

std::size_t Formula::length() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.length();
  return n;
}

std::size_t Formula::modal_depth() const {
  std::size_t d = 0;
  for (const auto& c : children()) d = std::max(d, c.modal_depth());
  return d + (is_modal() ? 1 : 0);
}

std::strong_ordering compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Kind::Atom:
      return a.letter().compare(b.letter()) <=> 0;
    case Kind::Diamond:
    case Kind::Box:
      if (auto c = a.modality().index() <=> b.modality().index(); c != 0) return c;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (auto c = compare(a.children()[i], b.children()[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Formula conjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = acc && parts[i];
  return acc;
}

Formula disjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::bottom();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = acc || parts[i];
  return acc;
}

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

std::set<std::string> letters(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (g.kind() == Kind::Atom) out.insert(g.letter());
  });
  return out;
}

std::set<Modality> modalities(const Formula& f) {
  std::set<Modality> out;
  walk(f, [&](const Formula& g) {
    if (g.is_modal()) out.insert(g.modality());
  });
  return out;
}

Formula negate(const Formula& f) {
  return f.kind() == Kind::Not ? f.child() : Formula::negation(f);
}

}  // namespace hs
