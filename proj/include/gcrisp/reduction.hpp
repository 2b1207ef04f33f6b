#pragma once

// Compilation of a local fuzzy G-IALCQ ontology into a classical ALCQ
// ontology over order atoms <alpha <= beta>.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gcrisp/algebra.hpp"
#include "gcrisp/classical.hpp"
#include "gcrisp/tableau.hpp"
#include "gcrisp/concept.hpp"
#include "gcrisp/ontology.hpp"

namespace gcrisp {

enum class UKind : std::uint8_t { Value, Current, Up, Lambda, NegLambda };

// Member of the order structure U. `index` points into the value set for
// Value and into sub(O) for Current/Up.
struct UElement {
  UKind kind = UKind::Lambda;
  std::uint32_t index = 0;

  static UElement value(std::uint32_t i) { return {UKind::Value, i}; }
  static UElement current(std::uint32_t i) { return {UKind::Current, i}; }
  static UElement up(std::uint32_t i) { return {UKind::Up, i}; }
  static UElement lambda() { return {UKind::Lambda, 0}; }
  static UElement neg_lambda() { return {UKind::NegLambda, 0}; }

  friend auto operator<=>(const UElement&, const UElement&) = default;
};

// U = V_O ∪ sub(O) ∪ ↑sub(O) ∪ {λ, ¬λ}, enumerated as: values ascending,
// sub(O) in closure order, the same concepts shifted up, then λ and ¬λ.
class OrderStructure {
 public:
  static OrderStructure build(const FuzzyOntology& o);
  OrderStructure(ValueSet values, std::vector<Concept> sub);

  const ValueSet& values() const { return values_; }
  const std::vector<Concept>& sub() const { return sub_; }
  const std::vector<UElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const UElement& operator[](std::size_t i) const { return elements_[i]; }

  std::size_t position(const UElement& e) const;
  UElement inv(const UElement& e) const;
  // ↑ of a value is the value itself; ↑ of a current concept is its Up copy.
  UElement up(const UElement& e) const;

  UElement value(const Degree& d) const;    // throws if d ∉ V_O
  UElement current(const Concept& c) const;  // throws if c ∉ sub(O)
  UElement up(const Concept& c) const;
  std::uint32_t sub_index(const Concept& c) const;

  // "2/5", "(and A B)", "(up A)", "lambda", "(not lambda)".
  std::string name(const UElement& e) const;

 private:
  ValueSet values_;
  std::vector<Concept> sub_;
  std::vector<UElement> elements_;
  std::vector<std::uint32_t> negation_;  // sub index -> sub index of ¬C
};

// Right-hand side of an order expression: β, min{β,γ} or β ⇒ γ.
struct OrderTerm {
  enum class Kind : std::uint8_t { Element, Min, Residuum };
  Kind kind = Kind::Element;
  UElement first;
  UElement second;

  static OrderTerm element(UElement b) { return {Kind::Element, b, b}; }
  static OrderTerm min(UElement b, UElement c) { return {Kind::Min, b, c}; }
  static OrderTerm residuum(UElement b, UElement c) {
    return {Kind::Residuum, b, c};
  }
};

// <lhs rel rhs>.
struct OrderExpr {
  UElement lhs;
  Relation relation;
  OrderTerm rhs;
};

struct ReductionStats {
  std::size_t transitivity = 0;
  std::size_t totality = 0;
  std::size_t bounds = 0;
  std::size_t numeric = 0;
  std::size_t antitonicity = 0;
  std::size_t up = 0;
  std::size_t gcis = 0;
  std::size_t concepts = 0;

  std::size_t red_u() const {
    return transitivity + totality + bounds + numeric + antitonicity;
  }
  std::size_t total() const { return red_u() + up + gcis + concepts; }
};

struct ReduceOptions {
  // Skip transitivity instances where two of α, β, γ coincide; they are
  // tautologies under totality.
  bool skip_trivial_transitivity = false;
};

// red(O) together with the structure needed to read models back.
class Reduction {
 public:
  // Sets up U, the role table and every order atom; emits no axioms.
  explicit Reduction(const FuzzyOntology& o);

  const OrderStructure& structure() const { return u_; }
  const std::vector<std::string>& roles() const { return roles_; }
  const ClassicalOntology& classical() const { return out_; }
  ClassicalOntology& classical() { return out_; }
  const ReductionStats& stats() const { return stats_; }

  AtomId atom(const UElement& a, const UElement& b) const;
  AtomId atom(std::size_t i, std::size_t j) const {
    return static_cast<AtomId>(i * u_.size() + j);
  }
  // Positions in U of the atom's two sides.
  std::pair<std::size_t, std::size_t> atom_sides(AtomId a) const {
    return {a / u_.size(), a % u_.size()};
  }
  RoleId role(const std::string& r) const;
  // For each atom <α ≤ β>, the atom <α' ≤ β'> where ↑C is read as C.
  // A successor that copies its parent's values agrees with the parent on
  // the mapped atoms.
  std::vector<AtomId> successor_phase() const;
  // Ladders place each concept among the values, lowest first; ties order
  // concepts against each other. Together they fix every successor request.
  CanonicalOrder canonical_order() const;

  ClassicalConcept expand(const OrderExpr& e) const;
  // red(C) for C ∈ sub(O).
  std::vector<ClassicalGCI> red_concept(const Concept& c) const;
  std::vector<ClassicalGCI> red_u(const ReduceOptions& opts = {}) const;
  std::vector<ClassicalGCI> red_up() const;
  std::vector<ClassicalGCI> red_tbox() const;  // GCIs only, not red(C)
  std::vector<ClassicalConcept> red_abox() const;

  // Fills the classical ontology with every family and records counts.
  void emit(const ReduceOptions& opts = {});

 private:
  ClassicalConcept le(const UElement& a, const UElement& b) const;

  FuzzyOntology source_;
  OrderStructure u_;
  std::vector<std::string> roles_;
  ClassicalOntology out_;
  ReductionStats stats_;
};

Reduction reduce(const FuzzyOntology& o, const ReduceOptions& opts = {});

}  // namespace gcrisp
