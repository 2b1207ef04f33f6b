#pragma once

// Incremental CDCL solver: watched literals, first-UIP learning, VSIDS,
// Luby restarts, solving under assumptions with a final-conflict core.

#include <cstdint>
#include <span>
#include <vector>

namespace gcrisp::sat {

using Var = std::uint32_t;

struct Lit {
  std::uint32_t x = 0;

  static Lit make(Var v, bool negative = false) {
    return Lit{2 * v + (negative ? 1u : 0u)};
  }
  Var var() const { return x >> 1; }
  bool negative() const { return x & 1; }
  Lit operator~() const { return Lit{x ^ 1}; }

  friend auto operator<=>(Lit, Lit) = default;
};

enum class Status : std::uint8_t { Sat, Unsat, Unknown };

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
};

class Solver {
 public:
  Var new_var();
  std::size_t num_vars() const { return assigns_.size(); }

  // Adds a permanent clause. Returns false once the clause set is
  // unsatisfiable without assumptions.
  bool add_clause(std::vector<Lit> lits);
  bool okay() const { return ok_; }

  // Preferred polarity for decisions on `v`; defaults to false.
  void set_phase(Var v, bool value) { phase_[v] = value; }

  bool solve(std::span<const Lit> assumptions = {});
  // Gives up with Unknown once roughly `max_conflicts` conflicts have passed
  // (checked at restarts).
  Status solve_limited(std::span<const Lit> assumptions,
                       std::uint64_t max_conflicts);

  // Unit propagation only. Returns false on a conflict; otherwise `out`
  // holds every literal the assumptions force.
  bool implied(std::span<const Lit> assumptions, std::vector<Lit>& out);

  // After a satisfiable call.
  bool model_value(Var v) const { return model_[v]; }
  bool model_value(Lit l) const { return model_[l.var()] != l.negative(); }
  const std::vector<bool>& model() const { return model_; }

  // After an unsatisfiable call: the assumptions that were jointly refuted.
  const std::vector<Lit>& core() const { return core_; }

  const SolverStats& stats() const { return stats_; }

 private:
  static constexpr std::int8_t kUndef = 0, kTrue = 1, kFalse = -1;
  static constexpr std::uint32_t kNoReason = UINT32_MAX;

  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    bool removed = false;
    double activity = 0;
  };
  struct Watcher {
    std::uint32_t clause;
    Lit blocker;
  };

  std::int8_t value(Lit l) const {
    std::int8_t v = assigns_[l.var()];
    return l.negative() ? static_cast<std::int8_t>(-v) : v;
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  void attach(std::uint32_t ci);
  void enqueue(Lit l, std::uint32_t reason);
  std::uint32_t propagate();
  void analyze(std::uint32_t confl, std::vector<Lit>& learnt, int& bt_level);
  bool redundant(Lit l, std::uint32_t abstract_levels);
  void analyze_final(Lit p);
  void cancel_until(int lvl);
  Lit pick_branch();
  int search(int conflict_limit, std::span<const Lit> assumptions);
  void reduce_learnts();

  void bump_var(Var v);
  void bump_clause(Clause& c);
  void heap_insert(Var v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  Var heap_pop();

  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<int> levels_;
  std::vector<std::uint32_t> reasons_;
  std::vector<bool> phase_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::vector<Var> heap_;
  std::vector<int> heap_pos_;

  std::size_t num_learnts_ = 0;
  double max_learnts_ = 0;

  std::vector<bool> model_;
  std::vector<Lit> core_;
  std::vector<Lit> analyze_stack_;
  std::vector<Lit> analyze_clear_;
  SolverStats stats_;
};

}  // namespace gcrisp::sat
