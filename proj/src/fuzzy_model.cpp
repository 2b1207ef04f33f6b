#include "gcrisp/fuzzy_model.hpp"

#include <algorithm>
#include <sstream>

#include "gcrisp/error.hpp"
#include "gcrisp/sexpr.hpp"

namespace gcrisp {

FuzzyInterpretation::FuzzyInterpretation(std::size_t size) : out_(size) {
  if (size == 0) throw Error("an interpretation needs a non-empty domain");
}

std::size_t FuzzyInterpretation::add_element() {
  out_.emplace_back();
  for (auto& [name, vals] : concepts_) vals.emplace_back();
  return out_.size() - 1;
}

void FuzzyInterpretation::set_concept(const std::string& name, std::size_t e,
                                      Degree v) {
  auto [it, fresh] = concepts_.try_emplace(name, size());
  it->second.at(e) = std::move(v);
}

void FuzzyInterpretation::set_role(const std::string& role, std::size_t from,
                                   std::size_t to, Degree v) {
  if (to >= size()) throw Error("role edge to an unknown element");
  auto& out = out_.at(from);
  auto it = std::find_if(out.begin(), out.end(), [&](const Edge& e) {
    return e.role == role && e.to == to;
  });
  if (v.is_zero()) {
    if (it != out.end()) out.erase(it);
  } else if (it != out.end()) {
    it->value = std::move(v);
  } else {
    out.push_back({role, to, std::move(v)});
  }
}

Degree FuzzyInterpretation::concept_value(const std::string& name,
                                          std::size_t e) const {
  auto it = concepts_.find(name);
  return it == concepts_.end() ? Degree::zero() : it->second.at(e);
}

Degree FuzzyInterpretation::role_value(const std::string& role,
                                       std::size_t from, std::size_t to) const {
  for (const Edge& e : out_.at(from)) {
    if (e.role == role && e.to == to) return e.value;
  }
  return Degree::zero();
}

// min(r(d,e), C(e)) for every e with a non-zero edge, largest first.
std::vector<std::pair<Degree, std::size_t>> Evaluator::ranked(
    const Concept& c, std::size_t d) {
  std::vector<std::pair<Degree, std::size_t>> out;
  for (const auto& e : i_.edges(d)) {
    if (e.role != c.role()) continue;
    out.emplace_back(t_norm(e.value, value(c.operand(), e.to)), e.to);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  return out;
}

Degree Evaluator::value(const Concept& c, std::size_t d) {
  auto& slot = cache_.try_emplace(c, i_.size()).first->second;
  if (slot.at(d)) return *slot[d];
  Degree v;
  switch (c.kind()) {
    case ConceptKind::Top:
      v = Degree::one();
      break;
    case ConceptKind::Name:
      v = i_.concept_value(c.label(), d);
      break;
    case ConceptKind::Not:
      v = involutive_negation(value(c.operand(), d));
      break;
    case ConceptKind::And:
      v = t_norm(value(c.left(), d), value(c.right(), d));
      break;
    case ConceptKind::Implies:
      v = residuum(value(c.left(), d), value(c.right(), d));
      break;
    case ConceptKind::Forall: {
      // Elements without an edge contribute 0 ⇒ C(e) = 1.
      v = Degree::one();
      for (const auto& e : i_.edges(d)) {
        if (e.role != c.role()) continue;
        v = std::min(v, residuum(e.value, value(c.operand(), e.to)));
      }
      break;
    }
    case ConceptKind::AtLeast: {
      auto r = ranked(c, d);
      std::size_t n = c.cardinality();
      v = n <= r.size() ? r[n - 1].first : Degree::zero();
      break;
    }
    default:
      throw Error("evaluation needs a normalized concept: " + c.str());
  }
  cache_[c][d] = v;
  return v;
}

std::vector<std::size_t> Evaluator::witnesses(const Concept& c,
                                              std::size_t d) {
  std::vector<std::size_t> out;
  if (c.kind() == ConceptKind::Forall) {
    // An element attaining the minimum; a non-neighbour gives 1.
    Degree best = Degree::one();
    std::size_t arg = SIZE_MAX;
    for (const auto& e : i_.edges(d)) {
      if (e.role != c.role()) continue;
      Degree x = residuum(e.value, value(c.operand(), e.to));
      if (arg == SIZE_MAX || x < best) {
        best = x;
        arg = e.to;
      }
    }
    if (arg == SIZE_MAX || !(best < Degree::one())) {
      for (std::size_t e = 0; e < i_.size(); ++e) {
        if (i_.role_value(c.role(), d, e).is_zero()) return {e};
      }
    }
    if (arg != SIZE_MAX) out.push_back(arg);
  } else if (c.kind() == ConceptKind::AtLeast) {
    auto r = ranked(c, d);
    std::size_t n = c.cardinality();
    if (n > i_.size()) return {};
    for (std::size_t k = 0; k < n && k < r.size(); ++k) out.push_back(r[k].second);
    // Pad with non-neighbours, which contribute 0.
    for (std::size_t e = 0; e < i_.size() && out.size() < n; ++e) {
      if (std::find(out.begin(), out.end(), e) == out.end()) {
        bool neighbour = std::any_of(r.begin(), r.end(),
                                     [&](const auto& p) { return p.second == e; });
        if (!neighbour) out.push_back(e);
      }
    }
  }
  return out;
}

namespace {

std::string describe(const OrderAssertion& a) {
  FuzzyOntology one;
  one.abox.push_back(a);
  std::string s = print_ontology(one);
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string describe(const FuzzyGCI& g) {
  FuzzyOntology one;
  one.tbox.push_back(g);
  std::string s = print_ontology(one);
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

Degree assertion_value(Evaluator& ev, const ClassicalAssertion& a) {
  const auto* c = std::get_if<ConceptAssertion>(&a);
  if (!c) throw UnsupportedError("unsupported: non-local ABox");
  return ev.value(c->expr, 0);
}

}  // namespace

FuzzyReport check_fuzzy_model(const FuzzyInterpretation& i,
                              const FuzzyOntology& o,
                              const std::vector<bool>& checked) {
  FuzzyReport rep;
  Evaluator ev(i);
  auto on = [&](std::size_t e) { return checked.empty() || checked.at(e); };
  for (std::size_t e = 0; e < i.size(); ++e) rep.unchecked += !on(e);

  if (on(0)) {
    for (const OrderAssertion& a : o.abox) {
      Degree x = assertion_value(ev, a.left);
      Degree y = std::holds_alternative<Degree>(a.right)
                     ? std::get<Degree>(a.right)
                     : assertion_value(ev, std::get<ClassicalAssertion>(a.right));
      if (!holds(a.relation, x, y)) {
        rep.satisfied = false;
        rep.axiom = describe(a);
        rep.element = 0;
        rep.detail = "left " + x.str() + ", right " + y.str();
        return rep;
      }
    }
  }
  for (const FuzzyGCI& g : o.tbox) {
    for (std::size_t e = 0; e < i.size(); ++e) {
      if (!on(e)) continue;
      Degree l = ev.value(g.lhs, e), r = ev.value(g.rhs, e);
      Degree v = residuum(l, r);
      if (v < g.degree) {
        rep.satisfied = false;
        rep.axiom = describe(g);
        rep.element = e;
        rep.detail = "lhs " + l.str() + ", rhs " + r.str() + ", residuum " +
                     v.str() + " < " + g.degree.str();
        return rep;
      }
    }
  }
  return rep;
}

std::string print_model(const FuzzyInterpretation& i) {
  std::ostringstream out;
  out << "(model\n  (domain " << i.size() << ")\n";
  for (const auto& [name, vals] : i.concepts()) {
    for (std::size_t e = 0; e < vals.size(); ++e) {
      if (!vals[e].is_zero()) {
        out << "  (concept " << name << ' ' << e << ' ' << vals[e] << ")\n";
      }
    }
  }
  for (std::size_t e = 0; e < i.size(); ++e) {
    for (const auto& edge : i.edges(e)) {
      out << "  (role " << edge.role << ' ' << e << ' ' << edge.to << ' '
          << edge.value << ")\n";
    }
  }
  out << ")\n";
  return out.str();
}

namespace {

[[noreturn]] void bad(const Sexpr& s, const std::string& what) {
  throw ParseError(what, s.line, s.column);
}

std::size_t index_of(const Sexpr& s, std::size_t size) {
  if (!s.is_atom()) bad(s, "expected an element index");
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s.atom, &pos);
  } catch (const std::exception&) {
    bad(s, "expected an element index");
  }
  if (pos != s.atom.size() || v >= size) bad(s, "element index out of range");
  return v;
}

Degree degree_of(const Sexpr& s) {
  if (!s.is_atom()) bad(s, "expected a degree");
  try {
    return Degree::parse(s.atom);
  } catch (const Error& e) {
    bad(s, e.what());
  }
}

}  // namespace

FuzzyInterpretation parse_model(std::string_view text) {
  std::vector<Sexpr> forms = read_sexprs(text);
  if (forms.size() != 1 || !forms[0].has_head("model")) {
    throw ParseError("expected a single (model ...) form", 1, 1);
  }
  const Sexpr& m = forms[0];
  if (m.items.size() < 2 || !m.items[1].has_head("domain") ||
      m.items[1].items.size() != 2) {
    bad(m, "model must start with (domain N)");
  }
  std::size_t n = index_of(m.items[1].items[1], SIZE_MAX);
  if (n == 0) bad(m.items[1], "empty domain");
  FuzzyInterpretation i(n);
  for (std::size_t k = 2; k < m.items.size(); ++k) {
    const Sexpr& f = m.items[k];
    if (f.has_head("concept") && f.items.size() == 4 && f.items[1].is_atom()) {
      i.set_concept(f.items[1].atom, index_of(f.items[2], n), degree_of(f.items[3]));
    } else if (f.has_head("role") && f.items.size() == 5 && f.items[1].is_atom()) {
      i.set_role(f.items[1].atom, index_of(f.items[2], n),
                 index_of(f.items[3], n), degree_of(f.items[4]));
    } else {
      bad(f, "expected (concept A e v) or (role r e f v)");
    }
  }
  return i;
}

}  // namespace gcrisp
