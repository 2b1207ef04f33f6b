#include "gcrisp/concept.hpp"

#include <algorithm>
#include <sstream>

namespace gcrisp {

Concept Concept::make(ConceptKind k, std::string label, std::uint32_t n,
                      std::vector<Concept> args) {
  return Concept(std::make_shared<const Node>(
      Node{k, std::move(label), n, std::move(args)}));
}

Concept Concept::top() {
  static const Concept t = make(ConceptKind::Top, "", 0, {});
  return t;
}
Concept Concept::bottom() {
  static const Concept b = make(ConceptKind::Bottom, "", 0, {});
  return b;
}
Concept Concept::name(std::string name) {
  return make(ConceptKind::Name, std::move(name), 0, {});
}
Concept Concept::negation(Concept c) {
  return make(ConceptKind::Not, "", 0, {std::move(c)});
}
Concept Concept::conj(Concept c, Concept d) {
  return make(ConceptKind::And, "", 0, {std::move(c), std::move(d)});
}
Concept Concept::disj(Concept c, Concept d) {
  return make(ConceptKind::Or, "", 0, {std::move(c), std::move(d)});
}
Concept Concept::implies(Concept c, Concept d) {
  return make(ConceptKind::Implies, "", 0, {std::move(c), std::move(d)});
}
Concept Concept::forall(std::string role, Concept c) {
  return make(ConceptKind::Forall, std::move(role), 0, {std::move(c)});
}
Concept Concept::exists(std::string role, Concept c) {
  return make(ConceptKind::Exists, std::move(role), 0, {std::move(c)});
}
Concept Concept::at_least(std::uint32_t n, std::string role, Concept c) {
  return make(ConceptKind::AtLeast, std::move(role), n, {std::move(c)});
}
Concept Concept::at_most(std::uint32_t n, std::string role, Concept c) {
  return make(ConceptKind::AtMost, std::move(role), n, {std::move(c)});
}

bool Concept::is_restriction() const {
  switch (kind()) {
    case ConceptKind::Forall:
    case ConceptKind::AtLeast:
    case ConceptKind::Exists:
    case ConceptKind::AtMost:
      return true;
    default:
      return false;
  }
}

int Concept::quantifier_depth() const {
  int d = 0;
  for (const Concept& a : args()) d = std::max(d, a.quantifier_depth());
  return is_restriction() ? d + 1 : d;
}

bool operator==(const Concept& a, const Concept& b) {
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.node_->label <=> b.node_->label; c != 0) return c;
  if (auto c = a.node_->n <=> b.node_->n; c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.args().begin(), a.args().end(), b.args().begin(), b.args().end());
}

std::ostream& operator<<(std::ostream& out, const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
      return out << "top";
    case ConceptKind::Bottom:
      return out << "bot";
    case ConceptKind::Name:
      return out << c.label();
    case ConceptKind::Not:
      return out << "(not " << c.operand() << ')';
    case ConceptKind::And:
      return out << "(and " << c.left() << ' ' << c.right() << ')';
    case ConceptKind::Or:
      return out << "(or " << c.left() << ' ' << c.right() << ')';
    case ConceptKind::Implies:
      return out << "(implies " << c.left() << ' ' << c.right() << ')';
    case ConceptKind::Forall:
      return out << "(all " << c.role() << ' ' << c.operand() << ')';
    case ConceptKind::Exists:
      return out << "(some " << c.role() << ' ' << c.operand() << ')';
    case ConceptKind::AtLeast:
      return out << "(atleast " << c.cardinality() << ' ' << c.role() << ' '
                 << c.operand() << ')';
    case ConceptKind::AtMost:
      return out << "(atmost " << c.cardinality() << ' ' << c.role() << ' '
                 << c.operand() << ')';
  }
  return out;
}

std::string Concept::str() const {
  std::ostringstream out;
  out << *this;
  return out.str();
}

Concept negate(const Concept& c) {
  if (c.kind() == ConceptKind::Not) return c.operand();
  return Concept::negation(c);
}

Concept normalize(const Concept& c, AtMostMode mode) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Name:
      return c;
    case ConceptKind::Bottom:
      return Concept::negation(Concept::top());
    case ConceptKind::Not:
      return negate(normalize(c.operand(), mode));
    case ConceptKind::And:
      return Concept::conj(normalize(c.left(), mode),
                           normalize(c.right(), mode));
    case ConceptKind::Or:
      return negate(Concept::conj(negate(normalize(c.left(), mode)),
                                  negate(normalize(c.right(), mode))));
    case ConceptKind::Implies:
      return Concept::implies(normalize(c.left(), mode),
                              normalize(c.right(), mode));
    case ConceptKind::Forall:
      return Concept::forall(c.role(), normalize(c.operand(), mode));
    case ConceptKind::Exists:
      return Concept::at_least(1, c.role(), normalize(c.operand(), mode));
    case ConceptKind::AtLeast:
      if (c.cardinality() == 0) return Concept::top();
      return Concept::at_least(c.cardinality(), c.role(),
                               normalize(c.operand(), mode));
    case ConceptKind::AtMost: {
      Concept more = Concept::at_least(c.cardinality() + 1, c.role(),
                                       normalize(c.operand(), mode));
      if (mode == AtMostMode::Involutive) return Concept::negation(more);
      return Concept::implies(more, Concept::negation(Concept::top()));
    }
  }
  return c;
}

bool is_normalized(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Bottom:
    case ConceptKind::Or:
    case ConceptKind::Exists:
    case ConceptKind::AtMost:
      return false;
    case ConceptKind::Not:
      if (c.operand().kind() == ConceptKind::Not) return false;
      break;
    case ConceptKind::AtLeast:
      if (c.cardinality() == 0) return false;
      break;
    default:
      break;
  }
  return std::all_of(c.args().begin(), c.args().end(), is_normalized);
}

void collect_roles(const Concept& c, std::set<std::string>& out) {
  if (c.is_restriction()) out.insert(c.role());
  for (const Concept& a : c.args()) collect_roles(a, out);
}

void collect_names(const Concept& c, std::set<std::string>& out) {
  if (c.kind() == ConceptKind::Name) out.insert(c.label());
  for (const Concept& a : c.args()) collect_names(a, out);
}

}  // namespace gcrisp
