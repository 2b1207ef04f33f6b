#include "gcrisp/classical.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gcrisp/error.hpp"
#include "gcrisp/sexpr.hpp"

namespace gcrisp {

ClassicalConcept ClassicalConcept::make(CKind k, std::uint32_t id,
                                        std::uint32_t n,
                                        std::vector<ClassicalConcept> args) {
  return ClassicalConcept(
      std::make_shared<const Node>(Node{k, id, n, std::move(args)}));
}

ClassicalConcept ClassicalConcept::top() {
  static const ClassicalConcept t = make(CKind::Top, 0, 0, {});
  return t;
}
ClassicalConcept ClassicalConcept::bottom() {
  static const ClassicalConcept b = make(CKind::Bottom, 0, 0, {});
  return b;
}
ClassicalConcept ClassicalConcept::atom(AtomId a) {
  return make(CKind::Atom, a, 0, {});
}
ClassicalConcept ClassicalConcept::negation(ClassicalConcept c) {
  return make(CKind::Not, 0, 0, {std::move(c)});
}
ClassicalConcept ClassicalConcept::conj(std::vector<ClassicalConcept> cs) {
  if (cs.empty()) return top();
  if (cs.size() == 1) return cs.front();
  return make(CKind::And, 0, 0, std::move(cs));
}
ClassicalConcept ClassicalConcept::disj(std::vector<ClassicalConcept> cs) {
  if (cs.empty()) return bottom();
  if (cs.size() == 1) return cs.front();
  return make(CKind::Or, 0, 0, std::move(cs));
}
ClassicalConcept ClassicalConcept::implies(ClassicalConcept c,
                                           ClassicalConcept d) {
  return make(CKind::Implies, 0, 0, {std::move(c), std::move(d)});
}
ClassicalConcept ClassicalConcept::forall(RoleId r, ClassicalConcept c) {
  return make(CKind::Forall, r, 0, {std::move(c)});
}
ClassicalConcept ClassicalConcept::exists(RoleId r, ClassicalConcept c) {
  return at_least(1, r, std::move(c));
}
ClassicalConcept ClassicalConcept::at_least(std::uint32_t n, RoleId r,
                                            ClassicalConcept c) {
  return make(CKind::AtLeast, r, n, {std::move(c)});
}
ClassicalConcept ClassicalConcept::at_most(std::uint32_t n, RoleId r,
                                           ClassicalConcept c) {
  return make(CKind::AtMost, r, n, {std::move(c)});
}

int ClassicalConcept::modal_depth() const {
  int d = 0;
  for (const auto& a : args()) d = std::max(d, a.modal_depth());
  return is_restriction() ? d + 1 : d;
}

bool operator==(const ClassicalConcept& a, const ClassicalConcept& b) {
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const ClassicalConcept& a,
                                 const ClassicalConcept& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.node_->id <=> b.node_->id; c != 0) return c;
  if (auto c = a.node_->n <=> b.node_->n; c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.args().begin(), a.args().end(), b.args().begin(), b.args().end());
}

AtomId ClassicalOntology::intern_atom(const std::string& name) {
  auto [it, fresh] =
      atom_index_.try_emplace(name, static_cast<AtomId>(atom_names.size()));
  if (fresh) atom_names.push_back(name);
  return it->second;
}

RoleId ClassicalOntology::intern_role(const std::string& name) {
  auto [it, fresh] =
      role_index_.try_emplace(name, static_cast<RoleId>(role_names.size()));
  if (fresh) role_names.push_back(name);
  return it->second;
}

namespace {

void render(std::ostream& out, const ClassicalConcept& c,
            const ClassicalOntology& o) {
  auto list = [&](const char* head) {
    out << '(' << head;
    for (const auto& a : c.args()) {
      out << ' ';
      render(out, a, o);
    }
    out << ')';
  };
  switch (c.kind()) {
    case CKind::Top:
      out << "top";
      break;
    case CKind::Bottom:
      out << "bot";
      break;
    case CKind::Atom:
      out << o.atom_names.at(c.atom_id());
      break;
    case CKind::Not:
      list("not");
      break;
    case CKind::And:
      list("and");
      break;
    case CKind::Or:
      list("or");
      break;
    case CKind::Implies:
      list("implies");
      break;
    case CKind::Forall:
      out << "(all " << o.role_names.at(c.role()) << ' ';
      render(out, c.operand(), o);
      out << ')';
      break;
    case CKind::AtLeast:
    case CKind::AtMost:
      out << (c.kind() == CKind::AtLeast ? "(atleast " : "(atmost ")
          << c.cardinality() << ' ' << o.role_names.at(c.role()) << ' ';
      render(out, c.operand(), o);
      out << ')';
      break;
  }
}

[[noreturn]] void fail(const Sexpr& at, const std::string& what) {
  throw ParseError(what, at.line, at.column);
}

ClassicalConcept read_concept(const Sexpr& s, ClassicalOntology& o) {
  if (s.is_atom()) {
    if (s.atom == "top") return ClassicalConcept::top();
    if (s.atom == "bot") return ClassicalConcept::bottom();
    return ClassicalConcept::atom(o.intern_atom(s.atom));
  }
  if (s.items.empty() || !s.items.front().is_atom()) {
    fail(s, "expected a concept");
  }
  const std::string& head = s.items.front().atom;
  if (head == "leq") return ClassicalConcept::atom(o.intern_atom(to_string(s)));
  std::vector<ClassicalConcept> args;
  auto rest = [&](std::size_t from) {
    for (std::size_t i = from; i < s.items.size(); ++i) {
      args.push_back(read_concept(s.items[i], o));
    }
  };
  auto need = [&](std::size_t n) {
    if (s.items.size() != n) fail(s, "wrong number of arguments to " + head);
  };
  if (head == "not") {
    need(2);
    rest(1);
    return ClassicalConcept::negation(args[0]);
  }
  if (head == "and" || head == "or") {
    if (s.items.size() < 3) fail(s, head + " expects at least 2 arguments");
    rest(1);
    return head == "and" ? ClassicalConcept::conj(std::move(args))
                         : ClassicalConcept::disj(std::move(args));
  }
  if (head == "implies") {
    need(3);
    rest(1);
    return ClassicalConcept::implies(args[0], args[1]);
  }
  if (head == "all" || head == "some") {
    need(3);
    if (!s.items[1].is_atom()) fail(s.items[1], "expected a role");
    RoleId r = o.intern_role(s.items[1].atom);
    ClassicalConcept c = read_concept(s.items[2], o);
    return head == "all" ? ClassicalConcept::forall(r, c)
                         : ClassicalConcept::exists(r, c);
  }
  if (head == "atleast" || head == "atmost") {
    need(4);
    const Sexpr& n = s.items[1];
    if (!n.is_atom() || n.atom.empty() ||
        !std::all_of(n.atom.begin(), n.atom.end(),
                     [](char ch) { return std::isdigit((unsigned char)ch); })) {
      fail(n, "expected a cardinality");
    }
    if (!s.items[2].is_atom()) fail(s.items[2], "expected a role");
    RoleId r = o.intern_role(s.items[2].atom);
    ClassicalConcept c = read_concept(s.items[3], o);
    auto k = static_cast<std::uint32_t>(std::stoul(n.atom));
    return head == "atleast" ? ClassicalConcept::at_least(k, r, c)
                             : ClassicalConcept::at_most(k, r, c);
  }
  fail(s, "unknown constructor '" + head + "'");
}

}  // namespace

std::string to_string(const ClassicalConcept& c, const ClassicalOntology& o) {
  std::ostringstream out;
  render(out, c, o);
  return out.str();
}

std::string print_classical(const ClassicalOntology& o) {
  std::vector<std::string> lines;
  lines.reserve(o.tbox.size() + o.abox.size());
  for (const ClassicalGCI& g : o.tbox) {
    lines.push_back("(gci " + to_string(g.lhs, o) + " " + to_string(g.rhs, o) +
                    ")");
  }
  std::sort(lines.begin(), lines.end());
  std::vector<std::string> asserts;
  for (const ClassicalConcept& c : o.abox) {
    asserts.push_back("(assert (inst " + o.individual + " " + to_string(c, o) +
                      "))");
  }
  std::sort(asserts.begin(), asserts.end());
  std::string out = "(individual " + o.individual + ")\n";
  for (const auto& l : asserts) out += l + "\n";
  for (const auto& l : lines) out += l + "\n";
  return out;
}

ClassicalOntology parse_classical(std::string_view text) {
  ClassicalOntology o;
  bool named = false;
  for (const Sexpr& f : read_sexprs(text)) {
    if (f.has_head("individual")) {
      if (f.items.size() != 2 || !f.items[1].is_atom()) {
        fail(f, "expected (individual a)");
      }
      if (named && f.items[1].atom != o.individual) {
        throw UnsupportedError("unsupported: non-local ABox (more than one "
                               "individual)");
      }
      o.individual = f.items[1].atom;
      named = true;
    } else if (f.has_head("gci")) {
      if (f.items.size() != 3) fail(f, "expected (gci C D)");
      ClassicalConcept lhs = read_concept(f.items[1], o);
      ClassicalConcept rhs = read_concept(f.items[2], o);
      o.tbox.push_back({lhs, rhs});
    } else if (f.has_head("assert")) {
      if (f.items.size() != 2 || !f.items[1].has_head("inst") ||
          f.items[1].items.size() != 3 || !f.items[1].items[1].is_atom()) {
        fail(f, "expected (assert (inst a C))");
      }
      const std::string& ind = f.items[1].items[1].atom;
      if (named && ind != o.individual) {
        throw UnsupportedError("unsupported: non-local ABox (more than one "
                               "individual)");
      }
      o.individual = ind;
      named = true;
      o.abox.push_back(read_concept(f.items[1].items[2], o));
    } else {
      fail(f, "expected (individual ...), (gci ...) or (assert ...)");
    }
  }
  return o;
}

bool holds(const ClassicalInterpretation& m, const ClassicalConcept& c,
           std::size_t e) {
  switch (c.kind()) {
    case CKind::Top:
      return true;
    case CKind::Bottom:
      return false;
    case CKind::Atom:
      return m.atoms[e][c.atom_id()];
    case CKind::Not:
      return !holds(m, c.operand(), e);
    case CKind::And:
      return std::all_of(c.args().begin(), c.args().end(),
                         [&](const auto& a) { return holds(m, a, e); });
    case CKind::Or:
      return std::any_of(c.args().begin(), c.args().end(),
                         [&](const auto& a) { return holds(m, a, e); });
    case CKind::Implies:
      return !holds(m, c.args()[0], e) || holds(m, c.args()[1], e);
    case CKind::Forall:
      for (const auto& [r, f] : m.successors[e]) {
        if (r == c.role() && !holds(m, c.operand(), f)) return false;
      }
      return true;
    case CKind::AtLeast:
    case CKind::AtMost: {
      std::uint32_t count = 0;
      for (const auto& [r, f] : m.successors[e]) {
        if (r == c.role() && holds(m, c.operand(), f)) ++count;
      }
      return c.kind() == CKind::AtLeast ? count >= c.cardinality()
                                        : count <= c.cardinality();
    }
  }
  return false;
}

std::string first_violation(const ClassicalInterpretation& m,
                            const ClassicalOntology& o,
                            const std::vector<bool>& checked) {
  auto is_checked = [&](std::size_t e) {
    return checked.empty() || checked[e];
  };
  if (m.size() == 0) return "empty interpretation";
  if (is_checked(0)) {
    for (const ClassicalConcept& c : o.abox) {
      if (!holds(m, c, 0)) return "assertion " + to_string(c, o);
    }
  }
  for (std::size_t e = 0; e < m.size(); ++e) {
    if (!is_checked(e)) continue;
    for (const ClassicalGCI& g : o.tbox) {
      if (holds(m, g.lhs, e) && !holds(m, g.rhs, e)) {
        return "gci " + to_string(g.lhs, o) + " ⊑ " + to_string(g.rhs, o) +
               " at element " + std::to_string(e);
      }
    }
  }
  return {};
}

}  // namespace gcrisp
