#include "hs/model.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace hs {

std::string to_string(const Interval& i) {
  return "[" + std::to_string(i.x) + "," + std::to_string(i.y) + "]";
}

Domain Domain::finite(long max_point) {
  if (max_point < 1) throw ModelError("finite order needs at least the points 0 and 1");
  Domain d;
  d.finite_ = true;
  d.max_point_ = max_point;
  return d;
}

Domain Domain::periodic(long pre, long per, long len) {
  if (pre < 0) throw ModelError("pre must be non-negative");
  if (per < 1) throw ModelError("per must be positive");
  if (len < 1) throw ModelError("len must be positive");
  Domain d;
  d.finite_ = false;
  d.pre_ = pre;
  d.per_ = per;
  d.len_ = len;
  return d;
}

Domain Domain::reversed() const {
  Domain d = *this;
  if (!finite_) d.reversed_ = !reversed_;
  return d;
}

bool Domain::contains(const Interval& i) const noexcept {
  if (i.x >= i.y) return false;
  if (finite_) return i.x >= 0 && i.y <= max_point_;
  return reversed_ ? i.y <= 0 : i.x >= 0;
}

namespace {

Interval flip(const Interval& i) { return {-i.y, -i.x}; }

Interval canonical_base(long pre, long per, long len, Interval i) {
  const long top = pre + per;
  if (i.x >= top) {
    const long k = (i.x - top) / per + 1;
    i.x -= k * per;
    i.y -= k * per;
  }
  const long ybound = std::max(pre, i.x + len) + per;
  if (i.y >= ybound) {
    const long k = (i.y - ybound) / per + 1;
    i.y -= k * per;
  }
  return i;
}

}  // namespace

Interval canonical_interval(const Domain& d, const Interval& i) {
  if (!d.contains(i)) throw ModelError("interval " + to_string(i) + " is not in the domain");
  if (d.is_finite()) return i;
  if (d.is_reversed()) return flip(canonical_base(d.pre(), d.per(), d.len(), flip(i)));
  return canonical_base(d.pre(), d.per(), d.len(), i);
}

bool is_canonical(const Domain& d, const Interval& i) {
  return d.contains(i) && canonical_interval(d, i) == i;
}

std::vector<Interval> canonical_intervals(const Domain& d) {
  std::vector<Interval> out;
  if (d.is_finite()) {
    for (long x = 0; x < d.max_point(); ++x) {
      for (long y = x + 1; y <= d.max_point(); ++y) out.push_back({x, y});
    }
    return out;
  }
  for (long x = 0; x < d.pre() + d.per(); ++x) {
    const long yend = std::max(d.pre(), x + d.len()) + d.per();
    for (long y = x + 1; y < yend; ++y) out.push_back({x, y});
  }
  if (d.is_reversed()) {
    for (auto& i : out) i = flip(i);
    std::sort(out.begin(), out.end());
  }
  return out;
}

std::vector<Interval> allen_related(const Domain& d, const Interval& i, Modality m, long horizon) {
  long lo = 0;
  long hi = 0;
  if (d.is_finite()) {
    hi = d.max_point();
  } else if (d.is_reversed()) {
    lo = -horizon;
  } else {
    hi = horizon;
  }
  std::vector<Interval> out;
  for (long x = lo; x < hi; ++x) {
    for (long y = x + 1; y <= hi; ++y) {
      if (related(m, i.x, i.y, x, y)) out.push_back({x, y});
    }
  }
  return out;
}

IntervalModel::IntervalModel(Domain domain, const Valuation& valuation) : domain_(domain) {
  for (const auto& [letter, set] : valuation) {
    if (letter.empty()) throw ModelError("empty proposition letter");
    if (set.empty()) continue;
    auto& dst = valuation_[letter];
    for (const auto& i : set) {
      if (!domain_.contains(i)) {
        throw ModelError("interval " + to_string(i) + " of '" + letter + "' is not in the domain");
      }
      if (!dst.insert(canonical_interval(domain_, i)).second) {
        throw ModelError("duplicate entry for '" + letter + "' at " +
                         to_string(canonical_interval(domain_, i)));
      }
    }
  }
}

bool IntervalModel::holds(std::string_view letter, const Interval& i) const {
  auto it = valuation_.find(std::string(letter));
  if (it == valuation_.end()) return false;
  return it->second.count(canonical_interval(domain_, i)) > 0;
}

std::set<std::string> IntervalModel::letters() const {
  std::set<std::string> out;
  for (const auto& [letter, set] : valuation_) out.insert(letter);
  return out;
}

IntervalModel IntervalModel::with(std::string_view letter, const Interval& i, bool value) const {
  IntervalModel out = *this;
  const Interval c = canonical_interval(domain_, i);
  auto& set = out.valuation_[std::string(letter)];
  if (value) {
    set.insert(c);
  } else {
    set.erase(c);
    if (set.empty()) out.valuation_.erase(std::string(letter));
  }
  return out;
}

Interval IntervalModel::reverse_interval(const Interval& i) const {
  if (domain_.is_finite()) return {domain_.max_point() - i.y, domain_.max_point() - i.x};
  return flip(i);
}

IntervalModel IntervalModel::reversed() const {
  IntervalModel out;
  out.domain_ = domain_.reversed();
  for (const auto& [letter, set] : valuation_) {
    auto& dst = out.valuation_[letter];
    for (const auto& i : set) dst.insert(reverse_interval(i));
  }
  return out;
}

namespace {

[[noreturn]] void bad_line(int line, const std::string& what) {
  throw ModelError("line " + std::to_string(line) + ": " + what);
}

long to_long(const std::string& s, int line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad_line(line, "expected a number, got '" + s + "'");
  return v;
}

long keyed(const std::string& tok, std::string_view key, int line) {
  const std::string prefix = std::string(key) + "=";
  if (tok.rfind(prefix, 0) != 0) bad_line(line, "expected " + prefix + "...");
  return to_long(tok.substr(prefix.size()), line);
}

}  // namespace

IntervalModel load_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool have_order = false;
  Domain domain = Domain::finite(1);
  std::vector<std::pair<std::string, Interval>> entries;
  std::vector<int> entry_lines;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks[0] == "order") {
      if (have_order) bad_line(line, "second order line");
      if (toks.size() == 3 && toks[1] == "finite") {
        domain = Domain::finite(to_long(toks[2], line));
      } else if (toks.size() >= 4 && toks[1] == "periodic") {
        const long pre = keyed(toks[2], "pre", line);
        const long per = keyed(toks[3], "per", line);
        long len = 1;
        bool rev = false;
        for (std::size_t k = 4; k < toks.size(); ++k) {
          if (toks[k] == "reversed") {
            rev = true;
          } else {
            len = keyed(toks[k], "len", line);
          }
        }
        domain = Domain::periodic(pre, per, len);
        if (rev) domain = domain.reversed();
      } else {
        bad_line(line, "malformed order line");
      }
      have_order = true;
    } else if (toks[0] == "val") {
      if (toks.size() != 4) bad_line(line, "expected 'val LETTER X Y'");
      const Interval i{to_long(toks[2], line), to_long(toks[3], line)};
      if (i.x >= i.y) bad_line(line, "degenerate interval " + to_string(i));
      entries.emplace_back(toks[1], i);
      entry_lines.push_back(line);
    } else {
      bad_line(line, "unknown directive '" + toks[0] + "'");
    }
  }
  if (!have_order) throw ModelError("missing order line");
  IntervalModel::Valuation v;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& [letter, i] = entries[k];
    if (!domain.contains(i)) bad_line(entry_lines[k], to_string(i) + " is not in the domain");
    if (!v[letter].insert(canonical_interval(domain, i)).second) {
      bad_line(entry_lines[k], "duplicate entry for '" + letter + "' after canonicalization");
    }
  }
  return IntervalModel(domain, v);
}

std::string save_model(const IntervalModel& m) {
  std::ostringstream out;
  const Domain& d = m.domain();
  if (d.is_finite()) {
    out << "order finite " << d.max_point() << '\n';
  } else {
    out << "order periodic pre=" << d.pre() << " per=" << d.per();
    if (d.len() != 1) out << " len=" << d.len();
    if (d.is_reversed()) out << " reversed";
    out << '\n';
  }
  for (const auto& [letter, set] : m.valuation()) {
    for (const auto& i : set) out << "val " << letter << ' ' << i.x << ' ' << i.y << '\n';
  }
  return out.str();
}

}  // namespace hs
