#include "gcrisp/tableau.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "gcrisp/error.hpp"
#include "gcrisp/sat.hpp"

namespace gcrisp {

using CC = ClassicalConcept;
using sat::Lit;
using sat::Var;

namespace {

CC nnf_of(const CC& c, bool neg);

std::vector<CC> nnf_args(const CC& c, bool neg, CKind flat) {
  std::vector<CC> out;
  for (const CC& a : c.args()) {
    CC n = nnf_of(a, neg);
    if (n.kind() == flat) {
      out.insert(out.end(), n.args().begin(), n.args().end());
    } else {
      out.push_back(n);
    }
  }
  return out;
}

CC make_and(std::vector<CC> xs) {
  std::vector<CC> kept;
  for (CC& x : xs) {
    if (x.kind() == CKind::Bottom) return CC::bottom();
    if (x.kind() == CKind::Top) continue;
    if (x.kind() == CKind::And) {
      kept.insert(kept.end(), x.args().begin(), x.args().end());
    } else {
      kept.push_back(std::move(x));
    }
  }
  return CC::conj(std::move(kept));
}

CC make_or(std::vector<CC> xs) {
  std::vector<CC> kept;
  for (CC& x : xs) {
    if (x.kind() == CKind::Top) return CC::top();
    if (x.kind() == CKind::Bottom) continue;
    if (x.kind() == CKind::Or) {
      kept.insert(kept.end(), x.args().begin(), x.args().end());
    } else {
      kept.push_back(std::move(x));
    }
  }
  return CC::disj(std::move(kept));
}

CC at_most(std::uint32_t n, RoleId r, const CC& c) {
  if (n == 0) {
    CC f = nnf_of(c, true);
    return f.kind() == CKind::Top ? CC::top() : CC::forall(r, f);
  }
  CC f = nnf_of(c, false);
  if (f.kind() == CKind::Bottom) return CC::top();
  return CC::at_most(n, r, f);
}

CC at_least(std::uint32_t n, RoleId r, const CC& c) {
  if (n == 0) return CC::top();
  CC f = nnf_of(c, false);
  if (f.kind() == CKind::Bottom) return CC::bottom();
  return CC::at_least(n, r, f);
}

CC nnf_of(const CC& c, bool neg) {
  switch (c.kind()) {
    case CKind::Top:
      return neg ? CC::bottom() : CC::top();
    case CKind::Bottom:
      return neg ? CC::top() : CC::bottom();
    case CKind::Atom:
      return neg ? CC::negation(c) : c;
    case CKind::Not:
      return nnf_of(c.operand(), !neg);
    case CKind::And:
      return neg ? make_or(nnf_args(c, true, CKind::Or))
                 : make_and(nnf_args(c, false, CKind::And));
    case CKind::Or:
      return neg ? make_and(nnf_args(c, true, CKind::And))
                 : make_or(nnf_args(c, false, CKind::Or));
    case CKind::Implies: {
      const CC& a = c.args()[0];
      const CC& b = c.args()[1];
      return neg ? make_and({nnf_of(a, false), nnf_of(b, true)})
                 : make_or({nnf_of(a, true), nnf_of(b, false)});
    }
    case CKind::Forall: {
      if (neg) return at_least(1, c.role(), CC::negation(c.operand()));
      CC f = nnf_of(c.operand(), false);
      return f.kind() == CKind::Top ? CC::top() : CC::forall(c.role(), f);
    }
    case CKind::AtLeast:
      if (neg) {
        if (c.cardinality() == 0) return CC::bottom();
        return at_most(c.cardinality() - 1, c.role(), c.operand());
      }
      return at_least(c.cardinality(), c.role(), c.operand());
    case CKind::AtMost:
      if (neg) return at_least(c.cardinality() + 1, c.role(), c.operand());
      return at_most(c.cardinality(), c.role(), c.operand());
  }
  return c;
}

struct Restriction {
  CKind kind;
  RoleId role;
  std::uint32_t n;
  Lit filler;
  Lit neg_filler;  // ≤ only
  Var var;
  CC source;
};

// Solver front that remembers where restriction variables occur
// positively, so models can be pruned to the restrictions they need.
class ClauseStore {
 public:
  explicit ClauseStore(sat::Solver& s) : s_(s) {}

  void add_clause(std::vector<Lit> lits) {
    for (Lit l : lits) {
      if (!l.negative() && tracked(l.var())) {
        occurs_[l.var()].push_back(clauses_.size());
      }
    }
    clauses_.push_back(lits);
    s_.add_clause(std::move(lits));
  }

  Var new_var() {
    Var v = s_.new_var();
    track_.push_back(false);
    return v;
  }

  void track(Var v) {
    track_[v] = true;
    occurs_.try_emplace(v);
  }
  bool tracked(Var v) const { return v < track_.size() && track_[v]; }

  // Clears every tracked variable that no clause depends on.
  void minimize(std::vector<bool>& model, const std::vector<Lit>& keep) const {
    for (const auto& [v, occ] : occurs_) {
      if (!model[v]) continue;
      if (std::find(keep.begin(), keep.end(), Lit::make(v)) != keep.end()) {
        continue;
      }
      bool needed = false;
      for (std::size_t ci : occ) {
        bool other = false;
        for (Lit l : clauses_[ci]) {
          if (l.var() != v && model[l.var()] != l.negative()) {
            other = true;
            break;
          }
        }
        if (!other) {
          needed = true;
          break;
        }
      }
      if (!needed) model[v] = false;
    }
  }

 private:
  sat::Solver& s_;
  std::vector<bool> track_;
  std::vector<std::vector<Lit>> clauses_;
  std::map<Var, std::vector<std::size_t>> occurs_;
};

// Plaisted-Greenbaum style encoding of NNF concepts into the solver.
class Encoder {
 public:
  Encoder(ClauseStore& s, std::size_t atoms) : s_(s) {
    for (std::size_t i = 0; i < atoms; ++i) s_.new_var();
    true_ = Lit::make(s_.new_var());
    s_.add_clause({true_});
  }

  Lit lit(const CC& c) {
    switch (c.kind()) {
      case CKind::Top:
        return true_;
      case CKind::Bottom:
        return ~true_;
      case CKind::Atom:
        return Lit::make(c.atom_id());
      case CKind::Not:
        return ~Lit::make(c.operand().atom_id());
      default:
        break;
    }
    if (auto it = cache_.find(c); it != cache_.end()) return it->second;
    Lit v = Lit::make(s_.new_var());
    cache_.emplace(c, v);
    if (c.is_restriction()) s_.track(v.var());
    switch (c.kind()) {
      case CKind::And:
        for (const CC& a : c.args()) s_.add_clause({~v, lit(a)});
        break;
      case CKind::Or: {
        std::vector<Lit> cl{~v};
        for (const CC& a : c.args()) cl.push_back(lit(a));
        s_.add_clause(std::move(cl));
        break;
      }
      case CKind::Forall:
      case CKind::AtLeast:
      case CKind::AtMost: {
        Restriction r{c.kind(), c.role(), c.cardinality(), lit(c.operand()),
                      true_, v.var(), c};
        if (c.kind() == CKind::AtMost) {
          r.neg_filler = lit(nnf(CC::negation(c.operand())));
          // Choose rule: every element decides the qualifier.
          s_.add_clause({r.filler, r.neg_filler});
        }
        restrictions_.push_back(r);
        break;
      }
      default:
        throw Error("encoder expects NNF");
    }
    return v;
  }

  void assert_concept(const CC& c) {
    switch (c.kind()) {
      case CKind::Top:
        return;
      case CKind::And:
        for (const CC& a : c.args()) assert_concept(a);
        return;
      case CKind::Or: {
        std::vector<Lit> cl;
        for (const CC& a : c.args()) cl.push_back(lit(a));
        s_.add_clause(std::move(cl));
        return;
      }
      default:
        s_.add_clause({lit(c)});
    }
  }

  const std::vector<Restriction>& restrictions() const {
    return restrictions_;
  }

 private:
  ClauseStore& s_;
  Lit true_;
  std::map<CC, Lit> cache_;
  std::vector<Restriction> restrictions_;
};

struct Node {
  std::vector<Lit> request;
  std::vector<bool> model;
  std::vector<std::pair<RoleId, std::size_t>> successors;
  BlockKind block = BlockKind::None;
  std::size_t blocked_by = 0;
  std::optional<std::size_t> parent;
  std::size_t depth = 0;
  // Ancestors that this node's subtree is blocked by, sorted.
  std::vector<std::size_t> deps;
};

struct OutOfBudget {};

struct Outcome {
  std::optional<std::size_t> node;
  std::vector<Lit> core;
};

bool satisfies(const std::vector<bool>& model, const std::vector<Lit>& lits) {
  for (Lit l : lits) {
    if (model[l.var()] == l.negative()) return false;
  }
  return true;
}

class Tableau {
 public:
  Tableau(const ClassicalOntology& o, const TableauOptions& opts)
      : o_(o), opts_(opts), store_(solver_), enc_(store_, o.atom_count()) {
    for (const ClassicalGCI& g : o.tbox) {
      enc_.assert_concept(nnf(CC::disj({CC::negation(g.lhs), g.rhs})));
    }
    for (const CC& c : o.abox) root_request_.push_back(enc_.lit(nnf(c)));
    if (opts.canonical.empty()) {
      for (std::size_t a = 0; a < o.atom_count(); ++a) {
        key_vars_.push_back(static_cast<Var>(a));
      }
    } else {
      std::set<Var> seen;
      auto add = [&](AtomId a) {
        if (seen.insert(static_cast<Var>(a)).second) {
          key_vars_.push_back(static_cast<Var>(a));
        }
      };
      for (const auto& ladder : opts.canonical.ladders) {
        for (const AtomLit& l : ladder) add(l.atom);
      }
      for (AtomId a : opts.canonical.ties) add(a);
    }
    for (const Restriction& r : enc_.restrictions()) key_vars_.push_back(r.var);
    for (Var v : key_vars_) solver_.set_phase(v, v < o.atom_count());
  }

  TableauResult run() {
    TableauResult res;
    try {
      Outcome root = solve(root_request_, std::nullopt, 0);
      res.verdict = root.node ? Verdict::Consistent : Verdict::Inconsistent;
      if (root.node) res.graph = export_graph(*root.node);
    } catch (const OutOfBudget&) {
      res.verdict = Verdict::BudgetExhausted;
    }
    stats_.nodes = nodes_.size();
    stats_.sat_calls = solver_.stats().solves;
    stats_.conflicts = solver_.stats().conflicts;
    res.stats = stats_;
    return res;
  }

 private:
  struct Demand {
    std::uint32_t n;
    Lit filler;
  };
  struct Cap {
    std::uint32_t m;
    Lit filler;
    Lit neg_filler;
  };
  struct RoleProblem {
    std::vector<Demand> demands;
    std::vector<Cap> caps;
    std::vector<Lit> fillers;  // ∀ fillers
    std::vector<Var> forall_vars;
    std::set<Lit> blamed;  // literals seen in refutations
  };
  enum class Search { Found, Failed, Hopeless };

  void trace(const std::string& line) {
    if (opts_.trace) opts_.trace(line);
  }

  bool same_key(const std::vector<bool>& a, const std::vector<bool>& b) const {
    for (Var v : key_vars_) {
      if (a[v] != b[v]) return false;
    }
    return true;
  }

  std::size_t add_node(std::vector<Lit> request, std::optional<std::size_t> parent,
                       std::size_t depth) {
    if (nodes_.size() >= opts_.node_budget) throw OutOfBudget{};
    Node n;
    n.request = std::move(request);
    n.parent = parent;
    n.depth = depth;
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  // With `adopt`, the node takes the blocker's label; otherwise its own
  // label already agrees with the blocker on atoms and restrictions.
  std::size_t block(std::size_t id, BlockKind kind, std::size_t target,
                    bool adopt = true) {
    Node& n = nodes_[id];
    n.block = kind;
    n.blocked_by = target;
    if (adopt) n.model = nodes_[target].model;
    if (kind == BlockKind::Ancestor) {
      n.deps = {target};
    } else {
      n.deps = nodes_[target].deps;
    }
    ++(kind == BlockKind::Ancestor ? stats_.blocked : stats_.cache_hits);
    trace("block " + std::to_string(id) + " by " + std::to_string(target) +
          (kind == BlockKind::Ancestor ? " (ancestor)" : " (cached)"));
    return id;
  }

  // A completed node can stand in anywhere if everything it leans on is
  // either complete or open with the same label it had when leaned on.
  bool reusable(std::size_t y) const {
    std::vector<std::size_t> todo{y};
    std::set<std::size_t> seen{y};
    while (!todo.empty()) {
      std::size_t n = todo.back();
      todo.pop_back();
      for (std::size_t d : nodes_[n].deps) {
        if (active_[d]) {
          if (n < attempt_start_[d]) return false;
          continue;
        }
        if (!done_[d]) return false;
        if (seen.insert(d).second) todo.push_back(d);
      }
    }
    return true;
  }

  std::vector<bool> key_of(const std::vector<bool>& model) const {
    std::vector<bool> key(key_vars_.size());
    for (std::size_t k = 0; k < key_vars_.size(); ++k) key[k] = model[key_vars_[k]];
    return key;
  }

  std::size_t finish(std::size_t id) {
    done_.resize(nodes_.size(), 0);
    done_[id] = 1;
    by_request_[nodes_[id].request].push_back(id);
    return id;
  }

  Outcome solve(std::vector<Lit> request, std::optional<std::size_t> parent,
                std::size_t depth) {
    std::sort(request.begin(), request.end());
    request.erase(std::unique(request.begin(), request.end()), request.end());

    for (auto a = parent; a; a = nodes_[*a].parent) {
      if (satisfies(nodes_[*a].model, request)) {
        std::size_t id = add_node(request, parent, depth);
        return {block(id, BlockKind::Ancestor, *a), {}};
      }
    }
    if (auto it = by_request_.find(request); it != by_request_.end()) {
      for (std::size_t y : it->second) {
        if (reusable(y)) {
          std::size_t id = add_node(request, parent, depth);
          return {block(id, BlockKind::Cached, y), {}};
        }
      }
    }
    for (auto it = cache_.rbegin(); it != cache_.rend(); ++it) {
      if (satisfies(nodes_[*it].model, request)) {
        std::size_t id = add_node(request, parent, depth);
        return {block(id, BlockKind::Cached, *it), {}};
      }
    }

    std::size_t id = add_node(request, parent, depth);
    trace("node " + std::to_string(id) + " depth " + std::to_string(depth) +
          " request " + std::to_string(request.size()));
    active_.resize(nodes_.size(), 0);
    done_.resize(nodes_.size(), 0);
    attempt_start_.resize(nodes_.size(), 0);
    active_[id] = 1;
    struct Leave {
      std::vector<char>& a;
      std::size_t id;
      ~Leave() { a[id] = 0; }
    } leave{active_, id};
    for (;;) {
      if (parent && opts_.canonical.empty()) {
        const std::vector<bool>& hint = nodes_[*parent].model;
        const auto& map = opts_.successor_phase;
        for (Var v = 0; v < hint.size(); ++v) {
          bool mapped = v < map.size() && v < o_.atom_count();
          solver_.set_phase(v, hint[mapped ? map[v] : v]);
        }
      }
      if (!solver_.solve(nodes_[id].request)) {
        std::vector<Lit> core = solver_.core();
        trace("refute " + std::to_string(id) + " core " +
              std::to_string(core.size()));
        return {std::nullopt, core};
      }
      nodes_[id].model = solver_.model();
      if (!opts_.canonical.empty()) canonicalize(id);
      store_.minimize(nodes_[id].model, nodes_[id].request);
      nodes_[id].successors.clear();
      nodes_[id].deps.clear();
      attempt_start_[id] = nodes_.size();

      for (auto a = parent; a; a = nodes_[*a].parent) {
        if (same_key(nodes_[*a].model, nodes_[id].model)) {
          return {block(id, BlockKind::Ancestor, *a, false), {}};
        }
      }
      std::vector<bool> key = key_of(nodes_[id].model);
      if (auto it = by_key_.find(key); it != by_key_.end()) {
        for (std::size_t y : it->second) {
          if (reusable(y)) {
            return {finish(block(id, BlockKind::Cached, y, false)), {}};
          }
        }
      }

      bool complete = true;
      for (RoleId r = 0; r < o_.role_count() && complete; ++r) {
        RoleProblem p = role_problem(id, r);
        if (p.demands.empty()) continue;
        std::set<std::vector<std::uint32_t>> failed;
        std::vector<std::uint32_t> got(p.demands.size(), 0);
        std::vector<std::uint32_t> used(p.caps.size(), 0);
        if (fill(id, r, p, got, used, failed) != Search::Found) {
          complete = false;
          learn_blame(id, r, p);
        }
      }
      if (!complete) continue;

      std::set<std::size_t> deps;
      for (const auto& [r, c] : nodes_[id].successors) {
        deps.insert(nodes_[c].deps.begin(), nodes_[c].deps.end());
      }
      deps.erase(id);
      nodes_[id].deps.assign(deps.begin(), deps.end());
      if (deps.empty()) cache_.push_back(id);
      by_key_[std::move(key)].push_back(id);
      return {finish(id), {}};
    }
  }

  static Lit lit_of(AtomLit a) {
    return Lit::make(static_cast<Var>(a.atom), a.negated);
  }

  // Least model under the canonical order, so that a label depends on its
  // request alone and repeated requests converge.
  void canonicalize(std::size_t id) {
    std::vector<bool>& m = nodes_[id].model;
    std::vector<Lit> fixed = nodes_[id].request;
    auto holds = [&](Lit l) { return m[l.var()] != l.negative(); };
    auto attempt = [&](Lit l) {
      fixed.push_back(l);
      if (solver_.solve(fixed)) {
        m = solver_.model();
        return true;
      }
      fixed.pop_back();
      return false;
    };
    for (const auto& ladder : opts_.canonical.ladders) {
      std::size_t hi = 0;  // first rung the model satisfies
      while (hi < ladder.size() && !holds(lit_of(ladder[hi]))) ++hi;
      if (hi == ladder.size()) continue;
      std::size_t lo = 0;  // rungs below lo are refuted
      while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (attempt(lit_of(ladder[mid]))) {
          fixed.pop_back();
          hi = mid;
          while (hi > lo && holds(lit_of(ladder[hi - 1]))) --hi;
        } else {
          lo = mid + 1;
        }
      }
      fixed.push_back(lit_of(ladder[hi]));
      if (hi > 0) fixed.push_back(~lit_of(ladder[hi - 1]));
    }
    std::vector<Lit> forced;
    solver_.implied(fixed, forced);
    std::vector<char> known(solver_.num_vars(), 0);
    for (Lit l : forced) known[l.var()] = 1;
    for (AtomId a : opts_.canonical.ties) {
      Lit want = Lit::make(static_cast<Var>(a));
      if (known[want.var()]) continue;
      if (holds(want) || !attempt(want)) fixed.push_back(holds(want) ? want : ~want);
    }
    store_.minimize(m, nodes_[id].request);
    solver_.implied(fixed, forced);
    known.assign(solver_.num_vars(), 0);
    for (Lit l : forced) known[l.var()] = 1;
    for (const Restriction& r : enc_.restrictions()) {
      Lit want = Lit::make(r.var, true);
      if (known[r.var]) continue;
      if (holds(want)) {
        fixed.push_back(want);
      } else if (attempt(want)) {
        store_.minimize(m, nodes_[id].request);
      } else {
        fixed.push_back(~want);
      }
    }
  }

  RoleProblem role_problem(std::size_t id, RoleId r) const {
    RoleProblem p;
    const std::vector<bool>& m = nodes_[id].model;
    std::map<Lit, std::uint32_t> demand, cap;
    std::map<Lit, Lit> cap_neg;
    for (const Restriction& x : enc_.restrictions()) {
      if (x.role != r || !m[x.var]) continue;
      switch (x.kind) {
        case CKind::AtLeast: {
          auto [it, fresh] = demand.emplace(x.filler, x.n);
          if (!fresh) it->second = std::max(it->second, x.n);
          break;
        }
        case CKind::AtMost: {
          auto [it, fresh] = cap.emplace(x.filler, x.n);
          if (!fresh) it->second = std::min(it->second, x.n);
          cap_neg[x.filler] = x.neg_filler;
          break;
        }
        case CKind::Forall:
          p.fillers.push_back(x.filler);
          p.forall_vars.push_back(x.var);
          break;
        default:
          break;
      }
    }
    for (const auto& [f, n] : demand) p.demands.push_back({n, f});
    for (const auto& [f, n] : cap) p.caps.push_back({n, f, cap_neg[f]});
    return p;
  }

  bool holds_in(std::size_t node, Lit l) const {
    return nodes_[node].model[l.var()] != l.negative();
  }

  std::vector<Lit> pattern_request(const RoleProblem& p,
                                   const std::vector<std::size_t>& serve,
                                   const std::vector<bool>& pos) const {
    std::vector<Lit> req = p.fillers;
    for (std::size_t d : serve) req.push_back(p.demands[d].filler);
    for (std::size_t c = 0; c < p.caps.size(); ++c) {
      if (pos[c]) {
        req.push_back(p.caps[c].filler);
      } else {
        req.push_back(~p.caps[c].filler);
        req.push_back(p.caps[c].neg_filler);
      }
    }
    return req;
  }

  static bool subset_of(const std::vector<Lit>& core,
                        const std::vector<Lit>& base) {
    for (Lit l : core) {
      if (std::find(base.begin(), base.end(), l) == base.end()) return false;
    }
    return true;
  }

  // Depth-first search over successor types for one role. `got` counts
  // successors per demand, `used` per cap.
  Search fill(std::size_t id, RoleId r, RoleProblem& p,
              std::vector<std::uint32_t>& got, std::vector<std::uint32_t>& used,
              std::set<std::vector<std::uint32_t>>& failed) {
    std::size_t target = p.demands.size();
    for (std::size_t d = 0; d < p.demands.size(); ++d) {
      if (got[d] < p.demands[d].n) {
        target = d;
        break;
      }
    }
    if (target == p.demands.size()) return Search::Found;

    std::vector<std::uint32_t> key;
    for (std::size_t d = 0; d < p.demands.size(); ++d) {
      key.push_back(p.demands[d].n - std::min(got[d], p.demands[d].n));
    }
    for (std::size_t c = 0; c < p.caps.size(); ++c) {
      key.push_back(p.caps[c].m - used[c]);
    }
    if (failed.contains(key)) return Search::Failed;

    std::vector<std::size_t> open, room;
    for (std::size_t d = 0; d < p.demands.size(); ++d) {
      if (d != target && got[d] < p.demands[d].n) open.push_back(d);
    }
    for (std::size_t c = 0; c < p.caps.size(); ++c) {
      if (used[c] < p.caps[c].m) room.push_back(c);
    }

    // Requests that no choice in this state can avoid.
    std::vector<Lit> hopeless = p.fillers;
    hopeless.push_back(p.demands[target].filler);
    std::vector<Lit> stuck = hopeless;
    for (std::size_t c = 0; c < p.caps.size(); ++c) {
      if (used[c] >= p.caps[c].m) {
        stuck.push_back(~p.caps[c].filler);
        stuck.push_back(p.caps[c].neg_filler);
      }
    }

    auto attempt = [&](const std::vector<std::size_t>& serve,
                       const std::vector<bool>& pos) -> std::optional<Search> {
      std::vector<Lit> req = pattern_request(p, serve, pos);
      Outcome child = solve(req, id, nodes_[id].depth + 1);
      if (!child.node) {
        ++stats_.child_failures;
        std::vector<Lit> core = child.core;
        p.blamed.insert(core.begin(), core.end());
        if (!core.empty()) {
          std::vector<Lit> clause;
          for (Lit l : core) clause.push_back(~l);
          store_.add_clause(clause);
        }
        if (subset_of(core, hopeless)) return Search::Hopeless;
        if (subset_of(core, stuck)) return Search::Failed;
        return std::nullopt;
      }
      std::size_t c = *child.node;
      std::vector<std::uint32_t> saved_got = got, saved_used = used;
      for (std::size_t d = 0; d < p.demands.size(); ++d) {
        bool served = std::find(serve.begin(), serve.end(), d) != serve.end();
        if (served || holds_in(c, p.demands[d].filler)) ++got[d];
      }
      for (std::size_t k = 0; k < p.caps.size(); ++k) {
        if (pos[k]) ++used[k];
      }
      nodes_[id].successors.emplace_back(r, c);
      Search s = fill(id, r, p, got, used, failed);
      if (s == Search::Found) return s;
      nodes_[id].successors.pop_back();
      got = saved_got;
      used = saved_used;
      if (s == Search::Hopeless) return s;
      return std::nullopt;
    };

    // First the type the solver prefers, then every other pattern.
    std::optional<std::pair<std::vector<std::size_t>, std::vector<bool>>> first;
    if (solver_.solve(stuck)) {
      std::vector<std::size_t> serve{target};
      for (std::size_t d : open) {
        if (solver_.model_value(p.demands[d].filler)) serve.push_back(d);
      }
      std::vector<bool> pos(p.caps.size(), false);
      for (std::size_t c : room) pos[c] = solver_.model_value(p.caps[c].filler);
      first.emplace(serve, pos);
      if (auto s = attempt(serve, pos)) {
        if (*s != Search::Failed) return *s;
        failed.insert(key);
        return Search::Failed;
      }
    } else {
      const std::vector<Lit>& core = solver_.core();
      p.blamed.insert(core.begin(), core.end());
      failed.insert(key);
      return subset_of(core, hopeless) ? Search::Hopeless : Search::Failed;
    }

    // Larger service sets first, fewer cap consumptions first.
    const std::size_t no = open.size(), nr = room.size();
    std::vector<std::uint32_t> serve_masks, pos_masks;
    for (std::uint32_t m = 0; m < (1u << no); ++m) serve_masks.push_back(m);
    for (std::uint32_t m = 0; m < (1u << nr); ++m) pos_masks.push_back(m);
    std::stable_sort(serve_masks.begin(), serve_masks.end(),
                     [](std::uint32_t a, std::uint32_t b) {
                       return std::popcount(a) > std::popcount(b);
                     });
    std::stable_sort(pos_masks.begin(), pos_masks.end(),
                     [](std::uint32_t a, std::uint32_t b) {
                       return std::popcount(a) < std::popcount(b);
                     });
    for (std::uint32_t sm : serve_masks) {
      std::vector<std::size_t> serve{target};
      for (std::size_t k = 0; k < no; ++k) {
        if (sm >> k & 1u) serve.push_back(open[k]);
      }
      std::sort(serve.begin(), serve.end());
      for (std::uint32_t pm : pos_masks) {
        std::vector<bool> pos(p.caps.size(), false);
        for (std::size_t k = 0; k < nr; ++k) pos[room[k]] = (pm >> k & 1u) != 0;
        if (first) {
          std::vector<std::size_t> fs = first->first;
          std::sort(fs.begin(), fs.end());
          if (fs == serve && first->second == pos) continue;
        }
        if (auto s = attempt(serve, pos)) {
          if (*s == Search::Failed) {
            failed.insert(key);
            return Search::Failed;
          }
          return *s;
        }
      }
    }
    failed.insert(key);
    return Search::Failed;
  }

  void learn_blame(std::size_t id, RoleId r, const RoleProblem& p) {
    ++stats_.blames;
    const std::vector<bool>& m = nodes_[id].model;
    std::vector<Lit> clause;
    for (const Restriction& x : enc_.restrictions()) {
      if (x.role != r || !m[x.var]) continue;
      if (x.kind == CKind::Forall && !p.blamed.contains(x.filler)) continue;
      clause.push_back(~Lit::make(x.var));
    }
    if (opts_.trace) {
      std::string line = "blame " + std::to_string(id) + " role " +
                         o_.role_names[r] + " size " +
                         std::to_string(clause.size());
      for (Lit l : clause) {
        for (const Restriction& x : enc_.restrictions()) {
          if (x.var == l.var()) line += " " + to_string(x.source, o_);
        }
      }
      trace(line);
    }
    store_.add_clause(std::move(clause));
  }

  CompletionGraph export_graph(std::size_t root) const {
    std::map<std::size_t, std::size_t> index;
    std::vector<std::size_t> order{root};
    index[root] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Node& n = nodes_[order[k]];
      std::vector<std::size_t> next;
      for (const auto& [r, c] : n.successors) next.push_back(c);
      if (n.block != BlockKind::None) next.push_back(n.blocked_by);
      for (std::size_t c : next) {
        if (index.emplace(c, order.size()).second) order.push_back(c);
      }
    }
    CompletionGraph g;
    for (std::size_t id : order) {
      const Node& n = nodes_[id];
      GraphNode out;
      out.atoms.assign(n.model.begin(), n.model.begin() + o_.atom_count());
      for (const Restriction& x : enc_.restrictions()) {
        if (n.model[x.var]) out.restrictions.push_back(x.source);
      }
      for (const auto& [r, c] : n.successors) {
        out.successors.emplace_back(r, index.at(c));
      }
      out.block = n.block;
      if (n.block != BlockKind::None) out.blocked_by = index.at(n.blocked_by);
      out.depth = n.depth;
      g.nodes.push_back(std::move(out));
    }
    return g;
  }

  const ClassicalOntology& o_;
  const TableauOptions& opts_;
  sat::Solver solver_;
  ClauseStore store_;
  Encoder enc_;
  std::vector<Lit> root_request_;
  std::vector<Var> key_vars_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> cache_;
  std::vector<char> active_;  // nodes on the current path
  std::vector<char> done_;    // nodes that returned complete
  std::vector<std::size_t> attempt_start_;  // first node of the current try
  std::map<std::vector<Lit>, std::vector<std::size_t>> by_request_;
  std::map<std::vector<bool>, std::vector<std::size_t>> by_key_;
  TableauStats stats_;
};

}  // namespace

ClassicalConcept nnf(const ClassicalConcept& c) { return nnf_of(c, false); }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent:
      return "consistent";
    case Verdict::Inconsistent:
      return "inconsistent";
    case Verdict::BudgetExhausted:
      return "budget exhausted";
  }
  return "?";
}

std::size_t CompletionGraph::resolve(std::size_t n) const {
  while (nodes[n].block != BlockKind::None) n = nodes[n].blocked_by;
  return n;
}

TableauResult check_consistency(const ClassicalOntology& o,
                                const TableauOptions& opts) {
  Tableau t(o, opts);
  return t.run();
}

std::vector<bool> TreeInterpretation::interior(
    std::size_t quantifier_depth) const {
  std::vector<bool> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = height[i] == SIZE_MAX || height[i] > quantifier_depth;
  }
  return out;
}

TreeInterpretation extract_classical_model(const CompletionGraph& g,
                                           std::size_t depth) {
  if (depth < 1) throw Error("unraveling depth must be at least 1");
  if (g.nodes.empty()) throw Error("empty completion graph");
  TreeInterpretation t;
  auto add = [&](std::optional<std::size_t> parent, RoleId r, std::size_t d,
                 std::size_t gn) {
    t.parent.push_back(parent);
    t.role.push_back(r);
    t.depth.push_back(d);
    t.graph_node.push_back(gn);
    t.cut.push_back(false);
    // Own atoms: a node blocked on its key keeps the parent-relative part.
    t.model.atoms.push_back(g.nodes[gn].atoms);
    t.model.successors.emplace_back();
    return t.size() - 1;
  };
  add(std::nullopt, 0, 0, 0);
  for (std::size_t e = 0; e < t.size(); ++e) {
    const GraphNode& n = g.nodes[g.resolve(t.graph_node[e])];
    if (t.depth[e] == depth) {
      t.cut[e] = !n.successors.empty();
      continue;
    }
    for (const auto& [r, c] : n.successors) {
      std::size_t child = add(e, r, t.depth[e] + 1, c);
      t.model.successors[e].emplace_back(r, child);
    }
  }
  t.height.assign(t.size(), SIZE_MAX);
  for (std::size_t e = t.size(); e-- > 0;) {
    if (t.cut[e]) {
      t.height[e] = 0;
      continue;
    }
    for (const auto& [r, c] : t.model.successors[e]) {
      if (t.height[c] != SIZE_MAX) {
        t.height[e] = std::min(t.height[e], t.height[c] + 1);
      }
    }
  }
  return t;
}

}  // namespace gcrisp
