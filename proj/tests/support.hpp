#pragma once

// Shared by the unit tests and the acceptance run: seeded ontology
// generators and a direct classical reading of crisp ontologies.

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gcrisp/classical.hpp"
#include "gcrisp/error.hpp"
#include "gcrisp/fuzzy_model.hpp"
#include "gcrisp/ontology.hpp"

namespace gcrisp::testing {

struct CorpusShape {
  int names = 3;
  int roles = 2;
  int max_card = 3;
  int max_depth = 2;  // quantifier nesting
  int max_size = 6;   // constructors per concept
  bool crisp = false; // degrees 1, no ->, >= assertions only
};

class Generator {
 public:
  Generator(unsigned seed, CorpusShape shape) : rng_(seed), shape_(shape) {}

  Concept random_concept(int depth, int size) {
    if (size <= 1 || pick(4) == 0) return leaf();
    const int kinds = shape_.crisp ? 7 : 8;
    switch (pick(kinds)) {
      case 0:
        return Concept::negation(random_concept(depth, size - 1));
      case 1: {
        int l = 1 + pick(size - 1);
        return Concept::conj(random_concept(depth, l), random_concept(depth, size - l));
      }
      case 2: {
        int l = 1 + pick(size - 1);
        return Concept::disj(random_concept(depth, l), random_concept(depth, size - l));
      }
      case 3:
      case 4:
      case 5:
      case 6: {
        if (depth >= shape_.max_depth) return leaf();
        std::string r = role();
        Concept f = random_concept(depth + 1, size - 1);
        std::uint32_t n = 1 + static_cast<std::uint32_t>(pick(shape_.max_card));
        switch (pick(4)) {
          case 0:
            return Concept::forall(r, f);
          case 1:
            return Concept::exists(r, f);
          case 2:
            return Concept::at_least(n, r, f);
          default:
            return Concept::at_most(n, r, f);
        }
      }
      default: {
        int l = 1 + pick(size - 1);
        return Concept::implies(random_concept(depth, l), random_concept(depth, size - l));
      }
    }
  }

  FuzzyOntology ontology() {
    if (!shape_.crisp) pick_degrees();
    FuzzyOntology o;
    const int assertions = 1 + pick(2);
    for (int i = 0; i < assertions; ++i) {
      Concept c = random_concept(0, 1 + pick(shape_.max_size));
      if (shape_.crisp) {
        o.abox.push_back({ConceptAssertion{"a", c}, Relation::GreaterEq,
                          Degree::one()});
        continue;
      }
      auto rel = static_cast<Relation>(pick(5));
      if (pick(4) == 0) {
        Concept d = random_concept(0, 1 + pick(shape_.max_size));
        o.abox.push_back({ConceptAssertion{"a", c}, rel,
                          ClassicalAssertion{ConceptAssertion{"a", d}}});
      } else {
        o.abox.push_back({ConceptAssertion{"a", c}, rel, degree()});
      }
    }
    const int gcis = pick(3);
    for (int i = 0; i < gcis; ++i) {
      Concept c = random_concept(0, 1 + pick(shape_.max_size / 2));
      Concept d = random_concept(0, 1 + pick(shape_.max_size / 2));
      o.tbox.push_back({c, d, shape_.crisp ? Degree::one() : degree()});
    }
    return normalize_ontology(std::move(o));
  }

 private:
  int pick(int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng_);
  }

  Concept leaf() {
    int k = pick(shape_.names + 1);
    if (k == shape_.names) return pick(2) ? Concept::top() : Concept::bottom();
    return Concept::name(std::string(1, static_cast<char>('A' + k)));
  }

  std::string role() {
    return std::string(1, static_cast<char>('r' + pick(shape_.roles)));
  }

  void pick_degrees() {
    static const char* pool[] = {"1/5", "1/4", "1/3", "2/5", "1/2", "3/5",
                                 "2/3", "3/4", "4/5", "1"};
    degrees_.clear();
    const int n = 1 + pick(4);
    for (int i = 0; i < n; ++i) {
      degrees_.push_back(Degree::parse(pool[pick(10)]));
    }
  }

  Degree degree() { return degrees_[pick(static_cast<int>(degrees_.size()))]; }

  std::mt19937 rng_;
  CorpusShape shape_;
  std::vector<Degree> degrees_;
};

inline std::vector<FuzzyOntology> corpus(unsigned seed, int count,
                                         CorpusShape shape = {}) {
  Generator g(seed, shape);
  std::vector<FuzzyOntology> out;
  for (int i = 0; i < count; ++i) out.push_back(g.ontology());
  return out;
}

// Classical reading of a normalized concept: one atom per concept name.
inline ClassicalConcept classical_reading(const Concept& c,
                                          ClassicalOntology& o) {
  switch (c.kind()) {
    case ConceptKind::Top:
      return ClassicalConcept::top();
    case ConceptKind::Name:
      return ClassicalConcept::atom(o.intern_atom(c.label()));
    case ConceptKind::Not:
      return ClassicalConcept::negation(classical_reading(c.operand(), o));
    case ConceptKind::And:
      return ClassicalConcept::conj({classical_reading(c.left(), o),
                                     classical_reading(c.right(), o)});
    case ConceptKind::Implies:
      return ClassicalConcept::implies(classical_reading(c.left(), o),
                                       classical_reading(c.right(), o));
    case ConceptKind::Forall:
      return ClassicalConcept::forall(o.intern_role(c.role()),
                                      classical_reading(c.operand(), o));
    case ConceptKind::AtLeast:
      return ClassicalConcept::at_least(c.cardinality(),
                                        o.intern_role(c.role()),
                                        classical_reading(c.operand(), o));
    default:
      throw Error("classical_reading needs a normalized concept");
  }
}

// Degree-1 assertions <a:C >= 1> and GCIs <C ⊑ D >= 1> read classically.
inline ClassicalOntology classical_reading(const FuzzyOntology& f) {
  ClassicalOntology o;
  o.individual = f.individual;
  for (const OrderAssertion& a : f.abox) {
    const auto* c = std::get_if<ConceptAssertion>(&a.left);
    const auto* d = std::get_if<Degree>(&a.right);
    if (!c || !d || !d->is_one() || a.relation != Relation::GreaterEq) {
      throw Error("not a crisp assertion");
    }
    o.abox.push_back(classical_reading(c->expr, o));
  }
  for (const FuzzyGCI& g : f.tbox) {
    if (!g.degree.is_one()) throw Error("not a crisp GCI");
    o.tbox.push_back({classical_reading(g.lhs, o), classical_reading(g.rhs, o)});
  }
  return o;
}

// Straight from the semantics, sharing nothing with Evaluator: ∀ as an
// infimum over the edges, ≥n as a maximum over n-element subsets.
inline Degree oracle_value(const FuzzyInterpretation& i, const Concept& c,
                           std::size_t d) {
  const Degree one = Degree::one();
  auto impl = [&](const Degree& x, const Degree& y) {
    return x <= y ? one : y;
  };
  switch (c.kind()) {
    case ConceptKind::Top:
      return one;
    case ConceptKind::Name:
      return i.concept_value(c.label(), d);
    case ConceptKind::Not:
      return oracle_value(i, c.operand(), d).complement();
    case ConceptKind::And:
      return std::min(oracle_value(i, c.left(), d),
                      oracle_value(i, c.right(), d));
    case ConceptKind::Implies:
      return impl(oracle_value(i, c.left(), d), oracle_value(i, c.right(), d));
    case ConceptKind::Forall: {
      // r(d,e) = 0 gives 1, so only edges matter.
      Degree v = one;
      for (const auto& edge : i.edges(d)) {
        if (edge.role != c.role()) continue;
        v = std::min(v, impl(edge.value, oracle_value(i, c.operand(), edge.to)));
      }
      return v;
    }
    case ConceptKind::AtLeast: {
      // Elements off every r-edge contribute 0, so subsets of edges suffice.
      std::vector<Degree> m;
      for (const auto& edge : i.edges(d)) {
        if (edge.role != c.role()) continue;
        m.push_back(std::min(edge.value, oracle_value(i, c.operand(), edge.to)));
      }
      const std::size_t n = c.cardinality();
      if (m.size() < n) return Degree::zero();
      Degree best = Degree::zero();
      std::vector<bool> chosen(m.size(), false);
      std::fill(chosen.begin(), chosen.begin() + n, true);
      do {
        Degree v = one;
        for (std::size_t k = 0; k < m.size(); ++k) {
          if (chosen[k]) v = std::min(v, m[k]);
        }
        best = std::max(best, v);
      } while (std::prev_permutation(chosen.begin(), chosen.end()));
      return best;
    }
    default:
      throw Error("oracle_value needs a normalized concept");
  }
}

// First axiom violated at a flagged element, "" when none.
inline std::string oracle_violation(const FuzzyInterpretation& i,
                                    const FuzzyOntology& o,
                                    const std::vector<bool>& checked) {
  auto value = [&](const ClassicalAssertion& a) {
    return oracle_value(i, std::get<ConceptAssertion>(a).expr, 0);
  };
  if (checked.empty() || checked[0]) {
    for (const OrderAssertion& a : o.abox) {
      Degree l = value(a.left);
      Degree r = std::holds_alternative<Degree>(a.right)
                     ? std::get<Degree>(a.right)
                     : value(std::get<ClassicalAssertion>(a.right));
      if (!holds(a.relation, l, r)) return "assertion at 0";
    }
  }
  for (std::size_t d = 0; d < i.size(); ++d) {
    if (!checked.empty() && !checked[d]) continue;
    for (const FuzzyGCI& g : o.tbox) {
      Degree l = oracle_value(i, g.lhs, d);
      Degree r = oracle_value(i, g.rhs, d);
      Degree v = l <= r ? Degree::one() : r;
      if (v < g.degree) {
        return "gci " + g.lhs.str() + " " + g.rhs.str() + " at " +
               std::to_string(d);
      }
    }
  }
  return "";
}

}  // namespace gcrisp::testing
