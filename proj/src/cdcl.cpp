#include "cdcl.hpp"

#include <algorithm>

namespace hs::detail {

namespace {

// 1,1,2,1,1,2,4,1,1,2,...
double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace

int Solver::new_var() {
  const int v = num_vars();
  assign_.push_back(kUndef);
  phase_.push_back(0);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v;
}

bool Solver::add_clause(std::vector<Lit> lits) {
  if (!ok_) return false;
  cancel_until(0);
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && (lits[i] ^ 1) == lits[i + 1]) return true;  // tautology
    const auto v = value(lits[i]);
    if (v == 1) return true;
    if (v == kUndef) kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() >= 0) ok_ = false;
    return ok_;
  }
  const int ci = static_cast<int>(clauses_.size());
  watches_[static_cast<std::size_t>(kept[0])].push_back(ci);
  watches_[static_cast<std::size_t>(kept[1])].push_back(ci);
  clauses_.push_back(std::move(kept));
  return true;
}

void Solver::enqueue(Lit l, int reason) {
  const auto v = static_cast<std::size_t>(var_of(l));
  assign_[v] = static_cast<std::int8_t>((l & 1) ^ 1);
  level_[v] = level();
  reason_[v] = reason;
  trail_.push_back(l);
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit falsified = trail_[qhead_++] ^ 1;
    auto& ws = watches_[static_cast<std::size_t>(falsified)];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const int ci = ws[i++];
      auto& c = clauses_[static_cast<std::size_t>(ci)];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (value(c[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[static_cast<std::size_t>(c[1])].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void Solver::analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level) {
  learnt.assign(1, 0);
  int path = 0;
  Lit p = -1;
  std::size_t idx = trail_.size();
  int confl = conflict;
  do {
    const auto& c = clauses_[static_cast<std::size_t>(confl)];
    for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      const Lit q = c[k];
      const auto v = static_cast<std::size_t>(var_of(q));
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      bump(var_of(q));
      if (level_[v] >= level()) {
        ++path;
      } else {
        learnt.push_back(q);
      }
    }
    do {
      --idx;
    } while (!seen_[static_cast<std::size_t>(var_of(trail_[idx]))]);
    p = trail_[idx];
    confl = reason_[static_cast<std::size_t>(var_of(p))];
    seen_[static_cast<std::size_t>(var_of(p))] = 0;
    --path;
  } while (path > 0);
  learnt[0] = p ^ 1;

  // Drop literals implied by the others through their reason clauses.
  std::vector<int> to_clear;
  for (std::size_t k = 1; k < learnt.size(); ++k) to_clear.push_back(var_of(learnt[k]));
  std::size_t keep = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    if (reason_[static_cast<std::size_t>(var_of(learnt[k]))] < 0 || !redundant(learnt[k], to_clear)) {
      learnt[keep++] = learnt[k];
    }
  }
  learnt.resize(keep);
  for (int v : to_clear) seen_[static_cast<std::size_t>(v)] = 0;

  backtrack_level = 0;
  std::size_t best = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    const int lv = level_[static_cast<std::size_t>(var_of(learnt[k]))];
    if (lv > backtrack_level) {
      backtrack_level = lv;
      best = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[best]);
  for (Lit q : learnt) seen_[static_cast<std::size_t>(var_of(q))] = 0;
}

bool Solver::redundant(Lit p, std::vector<int>& to_clear) {
  std::vector<Lit> stack{p};
  const std::size_t top = to_clear.size();
  while (!stack.empty()) {
    const int r = reason_[static_cast<std::size_t>(var_of(stack.back()))];
    stack.pop_back();
    const auto& c = clauses_[static_cast<std::size_t>(r)];
    for (std::size_t k = 1; k < c.size(); ++k) {
      const auto v = static_cast<std::size_t>(var_of(c[k]));
      if (seen_[v] || level_[v] == 0) continue;
      if (reason_[v] < 0) {
        for (std::size_t i = top; i < to_clear.size(); ++i) seen_[static_cast<std::size_t>(to_clear[i])] = 0;
        to_clear.resize(top);
        return false;
      }
      seen_[v] = 1;
      stack.push_back(c[k]);
      to_clear.push_back(static_cast<int>(v));
    }
  }
  return true;
}

void Solver::cancel_until(int lvl) {
  if (level() <= lvl) return;
  const std::size_t stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(lvl)]);
  for (std::size_t k = trail_.size(); k-- > stop;) {
    const int v = var_of(trail_[k]);
    phase_[static_cast<std::size_t>(v)] = assign_[static_cast<std::size_t>(v)];
    assign_[static_cast<std::size_t>(v)] = kUndef;
    reason_[static_cast<std::size_t>(v)] = -1;
    heap_insert(v);
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(lvl));
  qhead_ = trail_.size();
}

void Solver::bump(int var) {
  auto& a = activity_[static_cast<std::size_t>(var)];
  a += inc_;
  if (a > 1e100) {
    for (auto& x : activity_) x *= 1e-100;
    inc_ *= 1e-100;
  }
  const int pos_in_heap = heap_pos_[static_cast<std::size_t>(var)];
  if (pos_in_heap >= 0) heap_up(static_cast<std::size_t>(pos_in_heap));
}

int Solver::pick_branch() {
  while (!heap_.empty()) {
    const int v = heap_.front();
    heap_pos_[static_cast<std::size_t>(v)] = -1;
    heap_.front() = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_pos_[static_cast<std::size_t>(heap_.front())] = 0;
      heap_down(0);
    }
    if (assign_[static_cast<std::size_t>(v)] == kUndef) return v;
  }
  return -1;
}

void Solver::heap_insert(int var) {
  if (heap_pos_[static_cast<std::size_t>(var)] >= 0) return;
  heap_.push_back(var);
  heap_pos_[static_cast<std::size_t>(var)] = static_cast<int>(heap_.size() - 1);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  const int v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  const int v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

Solver::Result Solver::solve(const std::vector<Lit>& assumptions, long conflict_budget) {
  if (!ok_) return Result::Unsat;
  cancel_until(0);
  long conflicts = 0;
  int restart = 0;
  long limit = static_cast<long>(luby(2, restart) * 100);
  long since_restart = 0;
  std::vector<Lit> learnt;
  for (;;) {
    const int confl = propagate();
    if (confl >= 0) {
      ++conflicts;
      ++since_restart;
      if (level() == 0) {
        ok_ = false;
        return Result::Unsat;
      }
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        const int ci = static_cast<int>(clauses_.size());
        watches_[static_cast<std::size_t>(learnt[0])].push_back(ci);
        watches_[static_cast<std::size_t>(learnt[1])].push_back(ci);
        clauses_.push_back(learnt);
        enqueue(learnt[0], ci);
      }
      decay();
      continue;
    }
    if (conflict_budget >= 0 && conflicts > conflict_budget) {
      cancel_until(0);
      return Result::Unknown;
    }
    if (since_restart >= limit) {
      cancel_until(0);
      since_restart = 0;
      limit = static_cast<long>(luby(2, ++restart) * 100);
      continue;
    }
    Lit next = -1;
    while (static_cast<std::size_t>(level()) < assumptions.size()) {
      const Lit a = assumptions[static_cast<std::size_t>(level())];
      const auto v = value(a);
      if (v == 1) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (v == 0) {
        cancel_until(0);
        return Result::Unsat;
      } else {
        next = a;
        break;
      }
    }
    if (next == -1) {
      const int v = pick_branch();
      if (v == -1) {
        model_.assign(assign_.begin(), assign_.end());
        cancel_until(0);
        return Result::Sat;
      }
      next = phase_[static_cast<std::size_t>(v)] ? pos(v) : neg(v);
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, -1);
  }
}

}  // namespace hs::detail
