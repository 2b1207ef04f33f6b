#include "gcrisp/brute_force.hpp"

#include <map>
#include <utility>
#include <vector>

#include "gcrisp/error.hpp"
#include "gcrisp/sat.hpp"

namespace gcrisp {

namespace {

using sat::Lit;
using sat::Var;
using CC = ClassicalConcept;

struct TooLarge {};

// Tseitin grounding of concepts at domain elements, both polarities.
class Grounder {
 public:
  Grounder(const ClassicalOntology& o, std::size_t n, std::size_t budget)
      : o_(o), n_(n), budget_(budget) {
    true_ = Lit::make(solver_.new_var());
    add({true_});
    for (std::size_t e = 0; e < n; ++e) {
      for (std::size_t a = 0; a < o.atom_count(); ++a) {
        atoms_.push_back(solver_.new_var());
      }
    }
    for (std::size_t k = 0; k < o.role_count() * n * n; ++k) {
      edges_.push_back(solver_.new_var());
    }
  }

  void require(const CC& c, std::size_t e) { add({ground(c, e)}); }

  sat::Solver& solver() { return solver_; }
  std::size_t clauses() const { return clauses_; }

  ClassicalInterpretation readback() const {
    ClassicalInterpretation m;
    m.atoms.assign(n_, std::vector<bool>(o_.atom_count()));
    m.successors.resize(n_);
    for (std::size_t e = 0; e < n_; ++e) {
      for (std::size_t a = 0; a < o_.atom_count(); ++a) {
        m.atoms[e][a] = solver_.model_value(atoms_[e * o_.atom_count() + a]);
      }
      for (RoleId r = 0; r < o_.role_count(); ++r) {
        for (std::size_t f = 0; f < n_; ++f) {
          if (solver_.model_value(edge(r, e, f))) m.successors[e].emplace_back(r, f);
        }
      }
    }
    return m;
  }

 private:
  Var edge(RoleId r, std::size_t e, std::size_t f) const {
    return edges_[(r * n_ + e) * n_ + f];
  }

  void add(std::vector<Lit> clause) {
    if (++clauses_ > budget_) throw TooLarge{};
    solver_.add_clause(std::move(clause));
  }

  Lit conj(const std::vector<Lit>& ls) {
    if (ls.empty()) return true_;
    if (ls.size() == 1) return ls[0];
    Lit v = Lit::make(solver_.new_var());
    std::vector<Lit> back{v};
    for (Lit l : ls) {
      add({~v, l});
      back.push_back(~l);
    }
    add(std::move(back));
    return v;
  }

  Lit disj(const std::vector<Lit>& ls) {
    std::vector<Lit> neg;
    for (Lit l : ls) neg.push_back(~l);
    return ~conj(neg);
  }

  // Some n-subset of the candidates holds.
  Lit some_subset(const std::vector<Lit>& cand, std::uint32_t n) {
    std::vector<Lit> options;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    for (;;) {
      std::vector<Lit> all;
      for (std::size_t i : pick) all.push_back(cand[i]);
      options.push_back(conj(all));
      std::size_t i = n;
      while (i > 0 && pick[i - 1] == cand.size() - n + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return disj(options);
  }

  Lit at_least(std::uint32_t n, RoleId r, const CC& c, std::size_t e) {
    if (n == 0) return true_;
    if (n > n_) return ~true_;
    std::vector<Lit> cand;
    for (std::size_t f = 0; f < n_; ++f) {
      cand.push_back(conj({Lit::make(edge(r, e, f)), ground(c, f)}));
    }
    return some_subset(cand, n);
  }

  Lit ground(const CC& c, std::size_t e) {
    auto key = std::make_pair(c, e);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Lit out = true_;
    switch (c.kind()) {
      case CKind::Top:
        out = true_;
        break;
      case CKind::Bottom:
        out = ~true_;
        break;
      case CKind::Atom:
        out = Lit::make(atoms_[e * o_.atom_count() + c.atom_id()]);
        break;
      case CKind::Not:
        out = ~ground(c.operand(), e);
        break;
      case CKind::And:
      case CKind::Or: {
        std::vector<Lit> ls;
        for (const CC& a : c.args()) ls.push_back(ground(a, e));
        out = c.kind() == CKind::And ? conj(ls) : disj(ls);
        break;
      }
      case CKind::Implies:
        out = disj({~ground(c.args()[0], e), ground(c.args()[1], e)});
        break;
      case CKind::Forall: {
        std::vector<Lit> ls;
        for (std::size_t f = 0; f < n_; ++f) {
          ls.push_back(disj({~Lit::make(edge(c.role(), e, f)),
                             ground(c.operand(), f)}));
        }
        out = conj(ls);
        break;
      }
      case CKind::AtLeast:
        out = at_least(c.cardinality(), c.role(), c.operand(), e);
        break;
      case CKind::AtMost:
        out = ~at_least(c.cardinality() + 1, c.role(), c.operand(), e);
        break;
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

  const ClassicalOntology& o_;
  std::size_t n_;
  std::size_t budget_;
  std::size_t clauses_ = 0;
  sat::Solver solver_;
  Lit true_;
  std::vector<Var> atoms_;
  std::vector<Var> edges_;
  std::map<std::pair<CC, std::size_t>, Lit> memo_;
};

}  // namespace

const char* to_string(BruteVerdict v) {
  switch (v) {
    case BruteVerdict::Consistent:
      return "consistent";
    case BruteVerdict::InconsistentUpToBound:
      return "inconsistent up to bound";
    case BruteVerdict::Budget:
      return "budget exhausted";
  }
  return "?";
}

BruteForceResult brute_force_consistency(const ClassicalOntology& o,
                                         const BruteForceOptions& opts) {
  if (opts.max_domain < 1) throw Error("brute force needs max_domain >= 1");
  BruteForceResult res;
  for (std::size_t n = 1; n <= opts.max_domain; ++n) {
    try {
      Grounder g(o, n, opts.clause_budget);
      for (const ClassicalGCI& ax : o.tbox) {
        for (std::size_t e = 0; e < n; ++e) {
          g.require(CC::disj({CC::negation(ax.lhs), ax.rhs}), e);
        }
      }
      for (const CC& c : o.abox) g.require(c, 0);
      res.clauses = std::max(res.clauses, g.clauses());
      sat::Status st = g.solver().solve_limited({}, opts.conflict_budget);
      if (st == sat::Status::Unknown) {
        res.verdict = BruteVerdict::Budget;
        return res;
      }
      if (st == sat::Status::Sat) {
        res.model = g.readback();
        std::string bad = first_violation(res.model, o);
        if (!bad.empty()) {
          throw Error("brute force produced a non-model: " + bad);
        }
        res.verdict = BruteVerdict::Consistent;
        return res;
      }
      res.sizes_refuted = n;
    } catch (const TooLarge&) {
      res.verdict = BruteVerdict::Budget;
      return res;
    }
  }
  res.verdict = BruteVerdict::InconsistentUpToBound;
  return res;
}

}  // namespace gcrisp
