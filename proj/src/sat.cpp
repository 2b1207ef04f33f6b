#include "gcrisp/sat.hpp"

#include <algorithm>
#include <cmath>

namespace gcrisp::sat {

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

Var Solver::new_var() {
  Var v = static_cast<Var>(assigns_.size());
  assigns_.push_back(kUndef);
  levels_.push_back(0);
  reasons_.push_back(kNoReason);
  phase_.push_back(false);
  seen_.push_back(0);
  activity_.push_back(0.0);
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
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    Lit l = lits[i];
    if (value(l) == kTrue) return true;
    if (i + 1 < lits.size() && lits[i + 1] == ~l) return true;
    if (value(l) == kFalse) continue;
    if (!kept.empty() && kept.back() == l) continue;
    kept.push_back(l);
  }
  if (kept.empty()) return ok_ = false;
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  clauses_.push_back(Clause{std::move(kept)});
  attach(static_cast<std::uint32_t>(clauses_.size() - 1));
  return true;
}

void Solver::attach(std::uint32_t ci) {
  const auto& ls = clauses_[ci].lits;
  watches_[(~ls[0]).x].push_back({ci, ls[1]});
  watches_[(~ls[1]).x].push_back({ci, ls[0]});
}

void Solver::enqueue(Lit l, std::uint32_t reason) {
  assigns_[l.var()] = l.negative() ? kFalse : kTrue;
  levels_[l.var()] = level();
  reasons_[l.var()] = reason;
  trail_.push_back(l);
}

// Returns the index of a conflicting clause, or kNoReason.
std::uint32_t Solver::propagate() {
  std::uint32_t confl = kNoReason;
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    ++stats_.propagations;
    auto& ws = watches_[p.x];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i];
      if (value(w.blocker) == kTrue) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& c = clauses_[w.clause];
      if (c.removed) {
        ++i;
        continue;
      }
      auto& ls = c.lits;
      Lit false_lit = ~p;
      if (ls[0] == false_lit) std::swap(ls[0], ls[1]);
      ++i;
      Lit first = ls[0];
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = {w.clause, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < ls.size(); ++k) {
        if (value(ls[k]) != kFalse) {
          std::swap(ls[1], ls[k]);
          watches_[(~ls[1]).x].push_back({w.clause, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.clause, first};
      if (value(first) == kFalse) {
        confl = w.clause;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.clause);
      }
    }
    ws.resize(j);
    if (confl != kNoReason) break;
  }
  return confl;
}

void Solver::analyze(std::uint32_t confl, std::vector<Lit>& learnt,
                     int& bt_level) {
  int path = 0;
  Lit p{UINT32_MAX};
  learnt.assign(1, Lit{});
  std::size_t index = trail_.size();
  do {
    Clause& c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    for (Lit q : c.lits) {
      if (p.x != UINT32_MAX && q == p) continue;
      Var v = q.var();
      if (!seen_[v] && levels_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (levels_[v] >= level()) {
          ++path;
        } else {
          learnt.push_back(q);
        }
      }
    }
    while (!seen_[trail_[--index].var()]) {
    }
    p = trail_[index];
    confl = reasons_[p.var()];
    seen_[p.var()] = 0;
    --path;
  } while (path > 0);
  learnt[0] = ~p;

  // Drop literals implied by the rest of the clause.
  analyze_clear_.assign(learnt.begin(), learnt.end());
  std::uint32_t abstract_levels = 0;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    abstract_levels |= 1u << (levels_[learnt[k].var()] & 31);
  }
  std::size_t j = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    if (reasons_[learnt[k].var()] == kNoReason ||
        !redundant(learnt[k], abstract_levels)) {
      learnt[j++] = learnt[k];
    }
  }
  learnt.resize(j);
  for (Lit l : analyze_clear_) seen_[l.var()] = 0;

  bt_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (levels_[learnt[k].var()] > levels_[learnt[max_i].var()]) max_i = k;
    }
    std::swap(learnt[1], learnt[max_i]);
    bt_level = levels_[learnt[1].var()];
  }
}

bool Solver::redundant(Lit l, std::uint32_t abstract_levels) {
  analyze_stack_.assign(1, l);
  std::size_t top = analyze_clear_.size();
  while (!analyze_stack_.empty()) {
    Lit q = analyze_stack_.back();
    analyze_stack_.pop_back();
    const Clause& c = clauses_[reasons_[q.var()]];
    for (Lit r : c.lits) {
      Var v = r.var();
      if (v == q.var() || seen_[v] || levels_[v] == 0) continue;
      if (reasons_[v] != kNoReason &&
          ((1u << (levels_[v] & 31)) & abstract_levels)) {
        seen_[v] = 1;
        analyze_stack_.push_back(r);
        analyze_clear_.push_back(r);
      } else {
        for (std::size_t k = top; k < analyze_clear_.size(); ++k) {
          seen_[analyze_clear_[k].var()] = 0;
        }
        analyze_clear_.resize(top);
        return false;
      }
    }
  }
  return true;
}

// `a` is a falsified assumption; collects the assumptions behind ~a.
void Solver::analyze_final(Lit a) {
  core_.assign(1, a);
  if (level() == 0) return;
  seen_[a.var()] = 1;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[0];) {
    Var v = trail_[i].var();
    if (!seen_[v]) continue;
    if (reasons_[v] == kNoReason) {
      core_.push_back(trail_[i]);
    } else {
      for (Lit q : clauses_[reasons_[v]].lits) {
        if (levels_[q.var()] > 0) seen_[q.var()] = 1;
      }
    }
    seen_[v] = 0;
  }
  seen_[a.var()] = 0;
}

void Solver::cancel_until(int lvl) {
  if (level() <= lvl) return;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[lvl];) {
    Var v = trail_[i].var();
    assigns_[v] = kUndef;
    reasons_[v] = kNoReason;
    heap_insert(v);
  }
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    Var v = heap_pop();
    if (assigns_[v] == kUndef) return Lit::make(v, !phase_[v]);
  }
  return Lit{UINT32_MAX};
}

// 1: satisfiable, 0: unsatisfiable, -1: restart.
int Solver::search(int conflict_limit, std::span<const Lit> assumptions) {
  int conflicts = 0;
  std::vector<Lit> learnt;
  for (;;) {
    std::uint32_t confl = propagate();
    if (confl != kNoReason) {
      ++stats_.conflicts;
      ++conflicts;
      if (level() == 0) {
        ok_ = false;
        core_.clear();
        return 0;
      }
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        clauses_.push_back(Clause{learnt, true, false, 0});
        auto ci = static_cast<std::uint32_t>(clauses_.size() - 1);
        bump_clause(clauses_[ci]);
        attach(ci);
        ++num_learnts_;
        enqueue(learnt[0], ci);
      }
      var_inc_ /= 0.95;
      clause_inc_ /= 0.999;
      continue;
    }
    if (conflict_limit >= 0 && conflicts >= conflict_limit) {
      cancel_until(0);
      return -1;
    }
    if (static_cast<double>(num_learnts_) - static_cast<double>(trail_.size()) >=
        max_learnts_) {
      reduce_learnts();
    }
    Lit next{UINT32_MAX};
    while (static_cast<std::size_t>(level()) < assumptions.size()) {
      Lit a = assumptions[level()];
      if (value(a) == kTrue) {
        trail_lim_.push_back(trail_.size());
      } else if (value(a) == kFalse) {
        analyze_final(a);
        return 0;
      } else {
        next = a;
        break;
      }
    }
    if (next.x == UINT32_MAX) {
      ++stats_.decisions;
      next = pick_branch();
      if (next.x == UINT32_MAX) return 1;
    }
    trail_lim_.push_back(trail_.size());
    enqueue(next, kNoReason);
  }
}

bool Solver::solve(std::span<const Lit> assumptions) {
  return solve_limited(assumptions, UINT64_MAX) == Status::Sat;
}

Status Solver::solve_limited(std::span<const Lit> assumptions,
                             std::uint64_t max_conflicts) {
  ++stats_.solves;
  core_.clear();
  model_.clear();
  if (!ok_) return Status::Unsat;
  cancel_until(0);
  max_learnts_ = std::max(2000.0, clauses_.size() / 3.0);
  const std::uint64_t start = stats_.conflicts;
  int status = -1;
  for (int restart = 0; status == -1; ++restart) {
    if (stats_.conflicts - start >= max_conflicts) break;
    ++stats_.restarts;
    status = search(static_cast<int>(luby(2, restart) * 100), assumptions);
    max_learnts_ *= 1.05;
  }
  if (status == 1) {
    model_.resize(assigns_.size());
    for (std::size_t v = 0; v < assigns_.size(); ++v) {
      model_[v] = assigns_[v] == kTrue;
    }
  }
  cancel_until(0);
  if (status == -1) return Status::Unknown;
  return status == 1 ? Status::Sat : Status::Unsat;
}

bool Solver::implied(std::span<const Lit> assumptions, std::vector<Lit>& out) {
  out.clear();
  if (!ok_) return false;
  cancel_until(0);
  bool consistent = propagate() == kNoReason;
  for (std::size_t i = 0; consistent && i < assumptions.size(); ++i) {
    Lit a = assumptions[i];
    if (value(a) == kTrue) continue;
    if (value(a) == kFalse) {
      consistent = false;
      break;
    }
    trail_lim_.push_back(trail_.size());
    enqueue(a, kNoReason);
    consistent = propagate() == kNoReason;
  }
  if (consistent) out = trail_;
  cancel_until(0);
  return consistent;
}

void Solver::reduce_learnts() {
  std::vector<std::uint32_t> cand;
  for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
    const Clause& c = clauses_[i];
    if (!c.learnt || c.removed || c.lits.size() <= 2) continue;
    Var v0 = c.lits[0].var();
    bool locked = reasons_[v0] == i && value(c.lits[0]) == kTrue;
    if (!locked) cand.push_back(i);
  }
  std::sort(cand.begin(), cand.end(), [&](std::uint32_t a, std::uint32_t b) {
    return clauses_[a].activity < clauses_[b].activity;
  });
  for (std::size_t k = 0; k < cand.size() / 2; ++k) {
    clauses_[cand[k]].removed = true;
    clauses_[cand[k]].lits.shrink_to_fit();
    --num_learnts_;
  }
  // Purge watchers of removed clauses.
  for (auto& ws : watches_) {
    std::erase_if(ws, [&](const Watcher& w) { return clauses_[w.clause].removed; });
  }
}

void Solver::bump_var(Var v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void Solver::bump_clause(Clause& c) {
  if ((c.activity += clause_inc_) > 1e20) {
    for (Clause& d : clauses_) {
      if (d.learnt) d.activity *= 1e-20;
    }
    clause_inc_ *= 1e-20;
  }
}

void Solver::heap_insert(Var v) {
  if (heap_pos_[v] >= 0) return;
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  Var v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (activity_[heap_[parent]] >= activity_[v]) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  Var v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() &&
        activity_[heap_[child + 1]] > activity_[heap_[child]]) {
      ++child;
    }
    if (activity_[heap_[child]] <= activity_[v]) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

Var Solver::heap_pop() {
  Var top = heap_[0];
  heap_pos_[top] = -1;
  Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

}  // namespace gcrisp::sat
