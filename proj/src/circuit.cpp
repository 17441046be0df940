#include "circuit.hpp"

#include <map>
#include <tuple>

namespace hs::detail {

namespace {

class Builder {
 public:
  explicit Builder(Circuit& c) : c_(c) {}

  int visit(const Formula& f) {
    if (auto it = seen_.find(f); it != seen_.end()) return it->second;
    int id = -1;
    switch (f.kind()) {
      case Kind::True: id = gate(Gate::Op::True, -1, -1, {}, -1, f); break;
      case Kind::False: id = gate(Gate::Op::False, -1, -1, {}, -1, f); break;
      case Kind::Atom: id = gate(Gate::Op::Atom, -1, -1, {}, letter(f.letter()), f); break;
      case Kind::Not: id = gate(Gate::Op::Not, visit(f.child()), -1, {}, -1, f); break;
      case Kind::And:
        id = gate(Gate::Op::And, visit(f.child(0)), visit(f.child(1)), {}, -1, f);
        break;
      case Kind::Or:
        id = gate(Gate::Op::Or, visit(f.child(0)), visit(f.child(1)), {}, -1, f);
        break;
      case Kind::Implies: {
        const int lhs = gate(Gate::Op::Not, visit(f.child(0)), -1, {}, -1, !f.child(0));
        id = gate(Gate::Op::Or, lhs, visit(f.child(1)), {}, -1, f);
        break;
      }
      case Kind::Diamond:
        id = gate(Gate::Op::Diamond, visit(f.child()), -1, f.modality(), -1, f);
        break;
      case Kind::Box: {
        const int inner = gate(Gate::Op::Not, visit(f.child()), -1, {}, -1, !f.child());
        const int d = gate(Gate::Op::Diamond, inner, -1, f.modality(), -1,
                           dia(f.modality(), !f.child()));
        id = gate(Gate::Op::Not, d, -1, {}, -1, f);
        break;
      }
    }
    seen_.emplace(f, id);
    return id;
  }

 private:
  int letter(const std::string& name) {
    auto [it, fresh] = letter_ids_.emplace(name, static_cast<int>(c_.letters.size()));
    if (fresh) c_.letters.push_back(name);
    return it->second;
  }

  int gate(Gate::Op op, int a, int b, Modality m, int letter, const Formula& src) {
    // ~~g is g, so [X]~p shares its diamond with <X>p
    if (op == Gate::Op::Not && c_.gates[static_cast<std::size_t>(a)].op == Gate::Op::Not) {
      return c_.gates[static_cast<std::size_t>(a)].a;
    }
    const auto key = std::make_tuple(static_cast<int>(op), a, b, m.index(), letter);
    if (auto it = gates_.find(key); it != gates_.end()) return it->second;
    const int id = static_cast<int>(c_.gates.size());
    c_.gates.push_back(Gate{op, a, b, m, letter, src});
    gates_.emplace(key, id);
    return id;
  }

  Circuit& c_;
  std::map<Formula, int> seen_;
  std::map<std::string, int> letter_ids_;
  std::map<std::tuple<int, int, int, int, int>, int> gates_;
};

}  // namespace

Circuit Circuit::build(const Formula& phi) {
  Circuit c;
  c.root = Builder(c).visit(phi);
  return c;
}

}  // namespace hs::detail
