#include "gcrisp/grid_search.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gcrisp/error.hpp"

namespace gcrisp {

std::vector<Degree> default_grid(const FuzzyOntology& o) {
  const ValueSet v = value_closure(o);
  std::vector<Degree> out;
  const mpq_class half(1, 2);
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(v[i]);
    if (i + 1 < v.size()) {
      out.push_back(Degree::from_rational((v[i].value() + v[i + 1].value()) * half));
    }
  }
  return out;
}

std::vector<Degree> step_grid(const FuzzyOntology& o, const Degree& step) {
  if (step.is_zero()) throw Error("grid step must be positive");
  std::set<Degree> s;
  for (const Degree& d : value_closure(o)) s.insert(d);
  for (mpq_class x = 0; x <= 1; x += step.value()) {
    Degree d = Degree::from_rational(x);
    s.insert(d);
    s.insert(d.complement());
  }
  return {s.begin(), s.end()};
}

namespace {

struct Node {
  ConceptKind kind;
  int a = -1, b = -1;
  int name = -1, role = -1;
  std::uint32_t n = 0;
  int depth = 0;
};

struct Axiom {
  int lhs, rhs;  // concept nodes; rhs = -1 compares with `degree`
  Relation rel;  // assertions only
  int degree = 0;
  bool gci = false;
  int depth = 0;
};

using Val = std::uint8_t;

class Search {
 public:
  Search(const FuzzyOntology& o, std::vector<Degree> grid, std::uint64_t budget)
      : grid_(std::move(grid)), budget_(budget) {
    if (grid_.size() > 250) throw Error("grid too large");
    top_ = static_cast<Val>(grid_.size() - 1);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if (grid_[i].complement() != grid_[grid_.size() - 1 - i] ||
          (i > 0 && !(grid_[i - 1] < grid_[i]))) {
        throw Error("grid must be ascending and closed under 1-x");
      }
    }
    for (const Degree& d : value_closure(o)) index(d);
    names_ = concept_names(o);
    roles_ = role_names(o);
    for (const OrderAssertion& a : o.abox) {
      Axiom ax{concept_of(a.left), -1, a.relation};
      if (const auto* d = std::get_if<Degree>(&a.right)) {
        ax.degree = index(*d);
      } else {
        ax.rhs = concept_of(std::get<ClassicalAssertion>(a.right));
      }
      ax.depth = std::max(nodes_[ax.lhs].depth,
                          ax.rhs < 0 ? 0 : nodes_[ax.rhs].depth);
      axioms_.push_back(ax);
    }
    for (const FuzzyGCI& g : o.tbox) {
      Axiom ax{compile(g.lhs), compile(g.rhs), Relation::GreaterEq};
      ax.degree = index(g.degree);
      ax.gci = true;
      ax.depth = std::max(nodes_[ax.lhs].depth, nodes_[ax.rhs].depth);
      axioms_.push_back(ax);
    }
  }

  std::optional<FuzzyInterpretation> run(std::size_t n) {
    n_ = n;
    names_val_.assign(names_.size() * n, 0);
    roles_val_.assign(roles_.size() * n * n, 0);
    val_.assign(nodes_.size() * n, 0);
    if (!assign(0)) return std::nullopt;
    FuzzyInterpretation m(n);
    for (std::size_t k = 0; k < names_.size(); ++k) {
      for (std::size_t e = 0; e < n; ++e) {
        m.set_concept(names_[k], e, grid_[names_val_[k * n + e]]);
      }
    }
    for (std::size_t r = 0; r < roles_.size(); ++r) {
      for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t e = 0; e < n; ++e) {
          m.set_role(roles_[r], d, e, grid_[role_at(r, d, e)]);
        }
      }
    }
    return m;
  }

  std::uint64_t explored() const { return explored_; }
  bool exhausted() const { return explored_ >= budget_; }

 private:
  Val index(const Degree& d) {
    auto it = std::lower_bound(grid_.begin(), grid_.end(), d);
    if (it == grid_.end() || *it != d) {
      throw Error("grid lacks the degree " + d.str());
    }
    return static_cast<Val>(it - grid_.begin());
  }

  int concept_of(const ClassicalAssertion& a) {
    const auto* c = std::get_if<ConceptAssertion>(&a);
    if (!c) throw UnsupportedError("unsupported: non-local ABox");
    return compile(c->expr);
  }

  int compile(const Concept& c) {
    if (auto it = ids_.find(c); it != ids_.end()) return it->second;
    Node x{c.kind()};
    switch (c.kind()) {
      case ConceptKind::Top:
        break;
      case ConceptKind::Name:
        x.name = static_cast<int>(
            std::lower_bound(names_.begin(), names_.end(), c.label()) -
            names_.begin());
        break;
      case ConceptKind::Not:
        x.a = compile(c.operand());
        x.depth = nodes_[x.a].depth;
        break;
      case ConceptKind::And:
      case ConceptKind::Implies:
        x.a = compile(c.left());
        x.b = compile(c.right());
        x.depth = std::max(nodes_[x.a].depth, nodes_[x.b].depth);
        break;
      case ConceptKind::Forall:
      case ConceptKind::AtLeast:
        x.a = compile(c.operand());
        x.role = static_cast<int>(
            std::lower_bound(roles_.begin(), roles_.end(), c.role()) -
            roles_.begin());
        x.n = c.cardinality();
        x.depth = nodes_[x.a].depth + 1;
        break;
      default:
        throw Error("grid search needs normalized concepts");
    }
    nodes_.push_back(x);
    int id = static_cast<int>(nodes_.size() - 1);
    ids_.emplace(c, id);
    return id;
  }

  Val& val(int node, std::size_t e) { return val_[node * n_ + e]; }

  Val residuum(Val x, Val y) const { return x <= y ? top_ : y; }

  void eval(int id, std::size_t d) {
    const Node& x = nodes_[id];
    Val out = 0;
    switch (x.kind) {
      case ConceptKind::Top:
        out = top_;
        break;
      case ConceptKind::Name:
        out = names_val_[x.name * n_ + d];
        break;
      case ConceptKind::Not:
        out = static_cast<Val>(top_ - val(x.a, d));
        break;
      case ConceptKind::And:
        out = std::min(val(x.a, d), val(x.b, d));
        break;
      case ConceptKind::Implies:
        out = residuum(val(x.a, d), val(x.b, d));
        break;
      case ConceptKind::Forall:
        out = top_;
        for (std::size_t e = 0; e < n_; ++e) {
          out = std::min(out, residuum(role_at(x.role, d, e), val(x.a, e)));
        }
        break;
      case ConceptKind::AtLeast: {
        if (x.n > n_) break;
        std::vector<Val> m;
        for (std::size_t e = 0; e < n_; ++e) {
          m.push_back(std::min(role_at(x.role, d, e), val(x.a, e)));
        }
        std::nth_element(m.begin(), m.begin() + (x.n - 1), m.end(),
                         std::greater<>());
        out = m[x.n - 1];
        break;
      }
      default:
        break;
    }
    val(id, d) = out;
  }

  // Nodes are stored children first, so one pass per depth suffices.
  void eval_upto(int depth, std::size_t d) {
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      if (nodes_[id].depth <= depth) eval(static_cast<int>(id), d);
    }
  }

  bool axioms_hold(int depth, std::size_t d, bool exact_depth) {
    for (const Axiom& ax : axioms_) {
      if (exact_depth ? ax.depth != depth : ax.depth > depth) continue;
      if (!ax.gci && d != 0) continue;
      Val l = val(ax.lhs, d);
      if (ax.gci) {
        if (residuum(l, val(ax.rhs, d)) < ax.degree) return false;
      } else {
        Val r = ax.rhs < 0 ? static_cast<Val>(ax.degree) : val(ax.rhs, d);
        if (!holds(ax.rel, l, r)) return false;
      }
    }
    return true;
  }

  bool full_check() {
    int max_depth = 0;
    for (const Node& x : nodes_) max_depth = std::max(max_depth, x.depth);
    for (int k = 0; k <= max_depth; ++k) {
      for (std::size_t d = 0; d < n_; ++d) {
        for (std::size_t id = 0; id < nodes_.size(); ++id) {
          if (nodes_[id].depth == k) eval(static_cast<int>(id), d);
        }
      }
    }
    for (std::size_t d = 0; d < n_; ++d) {
      if (!axioms_hold(max_depth, d, false)) return false;
    }
    return true;
  }

  // Variables: names of element 0, 1, ..., then roles grouped by source.
  bool assign(std::size_t k) {
    const std::size_t name_vars = names_.size() * n_;
    const std::size_t role_vars = roles_.size() * n_ * n_;
    if (k == name_vars + role_vars) return full_check();
    if (k < name_vars) {
      std::size_t e = k / std::max<std::size_t>(names_.size(), 1);
      std::size_t nm = k % names_.size();
      bool last = nm + 1 == names_.size();
      for (Val v = 0; v <= top_; ++v) {
        if (++explored_ >= budget_) return false;
        names_val_[nm * n_ + e] = v;
        if (last) {
          eval_upto(0, e);
          if (!axioms_hold(0, e, true)) continue;
        }
        if (assign(k + 1)) return true;
        if (exhausted()) return false;
      }
      return false;
    }
    std::size_t j = k - name_vars;
    std::size_t d = j / (roles_.size() * n_);
    std::size_t r = (j / n_) % roles_.size();
    std::size_t e = j % n_;
    bool last = r + 1 == roles_.size() && e + 1 == n_;
    for (Val v = 0; v <= top_; ++v) {
      if (++explored_ >= budget_) return false;
      role_at(r, d, e) = v;
      if (last) {
        eval_upto(1, d);
        if (!axioms_hold(1, d, true)) continue;
      }
      if (assign(k + 1)) return true;
      if (exhausted()) return false;
    }
    return false;
  }

  Val& role_at(std::size_t r, std::size_t d, std::size_t e) {
    return roles_val_[(r * n_ + d) * n_ + e];
  }

  std::vector<Degree> grid_;
  std::uint64_t budget_;
  std::uint64_t explored_ = 0;
  Val top_ = 0;
  std::vector<std::string> names_, roles_;
  std::vector<Node> nodes_;
  std::map<Concept, int> ids_;
  std::vector<Axiom> axioms_;
  std::size_t n_ = 0;
  std::vector<Val> names_val_, roles_val_, val_;
};

}  // namespace

GridResult grid_search_fuzzy_model(const FuzzyOntology& o,
                                   const GridOptions& opts) {
  if (opts.max_domain < 1) throw Error("grid search needs max_domain >= 1");
  std::vector<Degree> grid = opts.grid.empty() ? default_grid(o) : opts.grid;
  GridResult res;
  Search s(o, grid, opts.budget);
  for (std::size_t n = 1; n <= opts.max_domain; ++n) {
    res.domain_size = n;
    auto m = s.run(n);
    res.explored = s.explored();
    if (m) {
      FuzzyReport rep = check_fuzzy_model(*m, o);
      if (!rep.satisfied) {
        throw Error("grid search produced a non-model: " + rep.axiom + " " +
                    rep.detail);
      }
      res.status = GridStatus::Found;
      res.model = std::move(m);
      return res;
    }
    if (s.exhausted()) {
      res.status = GridStatus::Budget;
      return res;
    }
  }
  res.status = GridStatus::NotFound;
  return res;
}

}  // namespace gcrisp
