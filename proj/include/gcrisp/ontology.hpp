#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gcrisp/algebra.hpp"
#include "gcrisp/concept.hpp"
#include "gcrisp/sexpr.hpp"

namespace gcrisp {

enum class Relation : std::uint8_t { Less, LessEq, Equal, GreaterEq, Greater };

const char* to_string(Relation r);
std::optional<Relation> parse_relation(std::string_view s);

template <class T>
bool holds(Relation rel, const T& x, const T& y) {
  switch (rel) {
    case Relation::Less:
      return x < y;
    case Relation::LessEq:
      return x <= y;
    case Relation::Equal:
      return x == y;
    case Relation::GreaterEq:
      return x >= y;
    case Relation::Greater:
      return x > y;
  }
  return false;
}

struct ConceptAssertion {
  std::string individual;
  Concept expr;
  friend bool operator==(const ConceptAssertion&,
                         const ConceptAssertion&) = default;
};

struct RoleAssertion {
  std::string role;
  std::string from;
  std::string to;
  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

using ClassicalAssertion = std::variant<ConceptAssertion, RoleAssertion>;

// <alpha rel q> or <alpha rel beta>.
struct OrderAssertion {
  ClassicalAssertion left;
  Relation relation;
  std::variant<Degree, ClassicalAssertion> right;

  friend bool operator==(const OrderAssertion&,
                         const OrderAssertion&) = default;
};

// <lhs ⊑ rhs >= degree>.
struct FuzzyGCI {
  Concept lhs;
  Concept rhs;
  Degree degree;
  friend bool operator==(const FuzzyGCI&, const FuzzyGCI&) = default;
};

// An ontology with a local ordered ABox over `individual`. All concepts are
// normalized once the ontology leaves the parser or normalize_ontology().
struct FuzzyOntology {
  std::string individual = "a";
  std::vector<OrderAssertion> abox;
  std::vector<FuzzyGCI> tbox;
  std::vector<std::string> warnings;

  friend bool operator==(const FuzzyOntology& a, const FuzzyOntology& b) {
    return a.individual == b.individual && a.abox == b.abox &&
           a.tbox == b.tbox;
  }
};

struct ParseOptions {
  // Overrides any `:atmost` directive in the text.
  std::optional<AtMostMode> atmost;
};

// Parses the s-expression ontology format. Throws ParseError on malformed
// input or out-of-range degrees and UnsupportedError on a non-local ABox.
FuzzyOntology parse_ontology(std::string_view text,
                             const ParseOptions& options = {});

// A single concept in the same syntax, not normalized.
Concept parse_concept(std::string_view text);
Concept concept_from_sexpr(const Sexpr& s);

std::string print_ontology(const FuzzyOntology& o);

// Normalizes every concept and drops degree-0 GCIs (with a warning).
FuzzyOntology normalize_ontology(FuzzyOntology o,
                                 AtMostMode mode = AtMostMode::Involutive);

// True iff no role assertions occur and at most one individual is used.
bool is_local(std::span<const OrderAssertion> abox);

// sub(O): every subconcept, closed under involutive negation with ¬¬C = C.
// Ordered by a post-order walk of the axioms (ABox first, then TBox),
// followed by the missing negations in the same order.
std::vector<Concept> sub_closure(const FuzzyOntology& o);

// V_O: all degrees in O closed under 1-x, plus 0, 1/2 and 1.
ValueSet value_closure(const FuzzyOntology& o);

// rol(O), sorted.
std::vector<std::string> role_names(const FuzzyOntology& o);
// Concept names occurring in O, sorted.
std::vector<std::string> concept_names(const FuzzyOntology& o);

// Max quantifier depth over all concepts in O.
int quantifier_depth(const FuzzyOntology& o);

// Every concept mentioned by an axiom of O, in axiom order.
std::vector<Concept> axiom_concepts(const FuzzyOntology& o);

}  // namespace gcrisp
