#include "gcrisp/reduction.hpp"

#include <algorithm>
#include <stdexcept>

#include "gcrisp/error.hpp"

namespace gcrisp {

using CC = ClassicalConcept;

OrderStructure OrderStructure::build(const FuzzyOntology& o) {
  return OrderStructure(value_closure(o), sub_closure(o));
}

OrderStructure::OrderStructure(ValueSet values, std::vector<Concept> sub)
    : values_(std::move(values)), sub_(std::move(sub)) {
  for (std::uint32_t i = 0; i < values_.size(); ++i) {
    elements_.push_back(UElement::value(i));
  }
  for (std::uint32_t i = 0; i < sub_.size(); ++i) {
    elements_.push_back(UElement::current(i));
  }
  for (std::uint32_t i = 0; i < sub_.size(); ++i) {
    elements_.push_back(UElement::up(i));
  }
  elements_.push_back(UElement::lambda());
  elements_.push_back(UElement::neg_lambda());
  negation_.resize(sub_.size());
  for (std::uint32_t i = 0; i < sub_.size(); ++i) {
    negation_[i] = sub_index(negate(sub_[i]));
  }
}

std::size_t OrderStructure::position(const UElement& e) const {
  std::size_t v = values_.size(), s = sub_.size();
  switch (e.kind) {
    case UKind::Value:
      return e.index;
    case UKind::Current:
      return v + e.index;
    case UKind::Up:
      return v + s + e.index;
    case UKind::Lambda:
      return v + 2 * s;
    case UKind::NegLambda:
      return v + 2 * s + 1;
  }
  return size();
}

UElement OrderStructure::inv(const UElement& e) const {
  switch (e.kind) {
    case UKind::Value:
      return UElement::value(static_cast<std::uint32_t>(
          values_.index_of(values_[e.index].complement())));
    case UKind::Current:
      return UElement::current(negation_[e.index]);
    case UKind::Up:
      return UElement::up(negation_[e.index]);
    case UKind::Lambda:
      return UElement::neg_lambda();
    case UKind::NegLambda:
      return UElement::lambda();
  }
  return e;
}

UElement OrderStructure::up(const UElement& e) const {
  switch (e.kind) {
    case UKind::Value:
      return e;
    case UKind::Current:
      return UElement::up(e.index);
    default:
      throw std::logic_error("up() applies to values and current concepts");
  }
}

UElement OrderStructure::value(const Degree& d) const {
  std::size_t i = values_.index_of(d);
  if (i == values_.size()) throw Error("degree " + d.str() + " not in V_O");
  return UElement::value(static_cast<std::uint32_t>(i));
}

std::uint32_t OrderStructure::sub_index(const Concept& c) const {
  auto it = std::find(sub_.begin(), sub_.end(), c);
  if (it == sub_.end()) throw Error("concept " + c.str() + " not in sub(O)");
  return static_cast<std::uint32_t>(it - sub_.begin());
}

UElement OrderStructure::current(const Concept& c) const {
  return UElement::current(sub_index(c));
}

UElement OrderStructure::up(const Concept& c) const {
  return UElement::up(sub_index(c));
}

std::string OrderStructure::name(const UElement& e) const {
  switch (e.kind) {
    case UKind::Value:
      return values_[e.index].str();
    case UKind::Current:
      return sub_[e.index].str();
    case UKind::Up:
      return "(up " + sub_[e.index].str() + ")";
    case UKind::Lambda:
      return "lambda";
    case UKind::NegLambda:
      return "(not lambda)";
  }
  return "?";
}

Reduction::Reduction(const FuzzyOntology& o)
    : source_(o), u_(OrderStructure::build(o)), roles_(role_names(o)) {
  if (!is_local(o.abox)) {
    throw UnsupportedError("unsupported: non-local ABox");
  }
  out_.individual = o.individual;
  for (std::size_t i = 0; i < u_.size(); ++i) {
    for (std::size_t j = 0; j < u_.size(); ++j) {
      out_.intern_atom("(leq " + u_.name(u_[i]) + " " + u_.name(u_[j]) + ")");
    }
  }
  for (const std::string& r : roles_) out_.intern_role(r);
}

AtomId Reduction::atom(const UElement& a, const UElement& b) const {
  return atom(u_.position(a), u_.position(b));
}

RoleId Reduction::role(const std::string& r) const {
  auto it = std::lower_bound(roles_.begin(), roles_.end(), r);
  if (it == roles_.end() || *it != r) throw Error("unknown role " + r);
  return static_cast<RoleId>(it - roles_.begin());
}

std::vector<AtomId> Reduction::successor_phase() const {
  auto down = [](UElement e) {
    return e.kind == UKind::Up ? UElement::current(e.index) : e;
  };
  std::vector<AtomId> out(u_.size() * u_.size());
  for (std::size_t i = 0; i < u_.size(); ++i) {
    for (std::size_t j = 0; j < u_.size(); ++j) {
      out[atom(i, j)] = atom(down(u_[i]), down(u_[j]));
    }
  }
  return out;
}

CanonicalOrder Reduction::canonical_order() const {
  const std::uint32_t nv = static_cast<std::uint32_t>(u_.values().size());
  const std::uint32_t ns = static_cast<std::uint32_t>(u_.sub().size());
  CanonicalOrder out;
  for (std::uint32_t c = 0; c < ns; ++c) {
    UElement x = UElement::current(c);
    std::vector<AtomLit> ladder;
    for (std::uint32_t v = 0; v < nv; ++v) {
      ladder.push_back({atom(x, UElement::value(v)), false});  // x <= v
      if (v + 1 < nv) {
        ladder.push_back({atom(UElement::value(v + 1), x), true});  // x < v+1
      }
    }
    out.ladders.push_back(std::move(ladder));
  }
  for (std::uint32_t c = 0; c < ns; ++c) {
    for (std::uint32_t d = 0; d < ns; ++d) {
      if (c != d) {
        out.ties.push_back(atom(UElement::current(c), UElement::current(d)));
      }
    }
  }
  return out;
}

CC Reduction::le(const UElement& a, const UElement& b) const {
  return CC::atom(atom(a, b));
}

ClassicalConcept Reduction::expand(const OrderExpr& e) const {
  const UElement& a = e.lhs;
  const UElement& b = e.rhs.first;
  const UElement& c = e.rhs.second;
  const UElement one = UElement::value(
      static_cast<std::uint32_t>(u_.values().size() - 1));
  // <a <= rhs> and <a >= rhs>
  CC below = le(a, b), above = le(b, a);
  switch (e.rhs.kind) {
    case OrderTerm::Kind::Element:
      break;
    case OrderTerm::Kind::Min:
      below = CC::conj({le(a, b), le(a, c)});
      above = CC::disj({le(b, a), le(c, a)});
      break;
    case OrderTerm::Kind::Residuum:
      below = CC::disj({le(b, c), le(a, c)});
      above = CC::conj({CC::implies(le(b, c), le(one, a)),
                        CC::implies(CC::negation(le(b, c)), le(c, a))});
      break;
  }
  switch (e.relation) {
    case Relation::LessEq:
      return below;
    case Relation::GreaterEq:
      return above;
    case Relation::Equal:
      return CC::conj({below, above});
    case Relation::Less:
      return CC::negation(above);
    case Relation::Greater:
      return CC::negation(below);
  }
  return below;
}

std::vector<ClassicalGCI> Reduction::red_concept(const Concept& c) const {
  const UElement x = u_.current(c);
  const CC top = CC::top();
  const UElement lambda = UElement::lambda();
  switch (c.kind()) {
    case ConceptKind::Top: {
      const UElement one = u_.value(Degree::one());
      return {{top, le(one, x)}};
    }
    case ConceptKind::And:
      return {{top, expand({x, Relation::Equal,
                            OrderTerm::min(u_.current(c.left()),
                                           u_.current(c.right()))})}};
    case ConceptKind::Implies:
      return {{top, expand({x, Relation::Equal,
                            OrderTerm::residuum(u_.current(c.left()),
                                                u_.current(c.right()))})}};
    case ConceptKind::Forall: {
      const UElement ux = u_.up(c);
      const UElement filler = u_.current(c.operand());
      const RoleId r = role(c.role());
      CC witness = expand(
          {ux, Relation::GreaterEq, OrderTerm::residuum(lambda, filler)});
      CC bound =
          expand({ux, Relation::LessEq, OrderTerm::residuum(lambda, filler)});
      return {{top, CC::conj({CC::exists(r, witness), CC::forall(r, bound)})}};
    }
    case ConceptKind::AtLeast: {
      const UElement ux = u_.up(c);
      const UElement filler = u_.current(c.operand());
      const RoleId r = role(c.role());
      const std::uint32_t n = c.cardinality();
      CC reach =
          expand({ux, Relation::LessEq, OrderTerm::min(lambda, filler)});
      CC exceed = expand({ux, Relation::Less, OrderTerm::min(lambda, filler)});
      return {{top, CC::conj({CC::at_least(n, r, reach),
                              CC::negation(CC::at_least(n, r, exceed))})}};
    }
    case ConceptKind::Name:
    case ConceptKind::Not:
      return {};
    default:
      throw Error("red(C) expects a normalized concept, got " + c.str());
  }
}

std::vector<ClassicalGCI> Reduction::red_u(const ReduceOptions& opts) const {
  const std::size_t n = u_.size();
  const CC top = CC::top();
  std::vector<ClassicalGCI> out;
  out.reserve(n * n * n + 3 * n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (opts.skip_trivial_transitivity && (a == b || b == c || a == c)) {
          continue;
        }
        out.push_back({CC::conj({CC::atom(atom(a, b)), CC::atom(atom(b, c))}),
                       CC::atom(atom(a, c))});
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out.push_back(
          {top, CC::disj({CC::atom(atom(a, b)), CC::atom(atom(b, a))})});
    }
  }
  const UElement zero = u_.value(Degree::zero());
  const UElement one = u_.value(Degree::one());
  for (const UElement& a : u_.elements()) {
    out.push_back({top, CC::conj({le(zero, a), le(a, one)})});
  }
  const auto& vs = u_.values();
  for (std::uint32_t i = 0; i < vs.size(); ++i) {
    for (std::uint32_t j = 0; j < vs.size(); ++j) {
      const UElement q = UElement::value(i), p = UElement::value(j);
      if (vs[i] <= vs[j]) out.push_back({top, le(q, p)});
      if (vs[i] < vs[j]) out.push_back({top, CC::negation(le(p, q))});
    }
  }
  for (const UElement& a : u_.elements()) {
    for (const UElement& b : u_.elements()) {
      out.push_back({le(a, b), le(u_.inv(b), u_.inv(a))});
    }
  }
  return out;
}

std::vector<ClassicalGCI> Reduction::red_up() const {
  std::vector<UElement> base;
  for (std::uint32_t i = 0; i < u_.values().size(); ++i) {
    base.push_back(UElement::value(i));
  }
  for (std::uint32_t i = 0; i < u_.sub().size(); ++i) {
    base.push_back(UElement::current(i));
  }
  std::vector<ClassicalGCI> out;
  for (RoleId r = 0; r < roles_.size(); ++r) {
    for (const UElement& a : base) {
      for (const UElement& b : base) {
        CC shifted = le(u_.up(a), u_.up(b));
        out.push_back({le(a, b), CC::forall(r, shifted)});
        out.push_back({CC::negation(le(a, b)),
                       CC::forall(r, CC::negation(shifted))});
      }
    }
  }
  return out;
}

std::vector<ClassicalGCI> Reduction::red_tbox() const {
  std::vector<ClassicalGCI> out;
  for (const FuzzyGCI& g : source_.tbox) {
    out.push_back(
        {CC::top(),
         expand({u_.value(g.degree), Relation::LessEq,
                 OrderTerm::residuum(u_.current(g.lhs), u_.current(g.rhs))})});
  }
  return out;
}

std::vector<ClassicalConcept> Reduction::red_abox() const {
  std::vector<CC> out;
  for (const OrderAssertion& a : source_.abox) {
    const auto& left = std::get<ConceptAssertion>(a.left);
    UElement rhs;
    if (const auto* d = std::get_if<Degree>(&a.right)) {
      rhs = u_.value(*d);
    } else {
      const auto& r = std::get<ConceptAssertion>(
          std::get<ClassicalAssertion>(a.right));
      rhs = u_.current(r.expr);
    }
    out.push_back(expand({u_.current(left.expr), a.relation,
                          OrderTerm::element(rhs)}));
  }
  return out;
}

void Reduction::emit(const ReduceOptions& opts) {
  stats_ = {};
  out_.tbox.clear();
  out_.abox = red_abox();

  const std::size_t n = u_.size();
  const std::size_t v = u_.values().size();
  std::vector<ClassicalGCI> ru = red_u(opts);
  stats_.transitivity = opts.skip_trivial_transitivity
                            ? n * (n - 1) * (n - 2)
                            : n * n * n;
  stats_.totality = n * n;
  stats_.bounds = n;
  stats_.numeric = v * v;
  stats_.antitonicity = n * n;
  out_.tbox = std::move(ru);

  std::vector<ClassicalGCI> rup = red_up();
  stats_.up = rup.size();
  out_.tbox.insert(out_.tbox.end(), rup.begin(), rup.end());

  std::vector<ClassicalGCI> rt = red_tbox();
  stats_.gcis = rt.size();
  out_.tbox.insert(out_.tbox.end(), rt.begin(), rt.end());

  for (const Concept& c : u_.sub()) {
    std::vector<ClassicalGCI> rc = red_concept(c);
    stats_.concepts += rc.size();
    out_.tbox.insert(out_.tbox.end(), rc.begin(), rc.end());
  }
}

Reduction reduce(const FuzzyOntology& o, const ReduceOptions& opts) {
  Reduction r(o);
  r.emit(opts);
  return r;
}

}  // namespace gcrisp
