#pragma once

// Finite fuzzy interpretations and exact evaluation of G-IALCQ concepts.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcrisp/algebra.hpp"
#include "gcrisp/concept.hpp"
#include "gcrisp/ontology.hpp"

namespace gcrisp {

// Domain 0..size()-1; element 0 interprets the individual. Unset concept
// and role values are 0.
class FuzzyInterpretation {
 public:
  struct Edge {
    std::string role;
    std::size_t to;
    Degree value;
  };

  explicit FuzzyInterpretation(std::size_t size = 1);

  std::size_t size() const { return out_.size(); }
  std::size_t add_element();

  void set_concept(const std::string& name, std::size_t e, Degree v);
  void set_role(const std::string& role, std::size_t from, std::size_t to,
                Degree v);

  Degree concept_value(const std::string& name, std::size_t e) const;
  Degree role_value(const std::string& role, std::size_t from,
                    std::size_t to) const;
  // Edges with a non-zero degree leaving `from`.
  const std::vector<Edge>& edges(std::size_t from) const { return out_[from]; }

  const std::map<std::string, std::vector<Degree>>& concepts() const {
    return concepts_;
  }

 private:
  std::map<std::string, std::vector<Degree>> concepts_;
  std::vector<std::vector<Edge>> out_;
};

// Exact values C^I(d), cached per concept and element.
class Evaluator {
 public:
  explicit Evaluator(const FuzzyInterpretation& i) : i_(i) {}

  // `c` must be normalized. Forall is the minimum of r(d,e) ⇒ C(e) over all
  // e; AtLeast n is the n-th largest min(r(d,e), C(e)), or 0 when fewer than
  // n elements exist.
  Degree value(const Concept& c, std::size_t d);

  // Elements attaining the value of a restriction at d: one element for
  // Forall, n distinct elements for AtLeast (empty when the value is the
  // empty supremum 0). Empty for other constructors.
  std::vector<std::size_t> witnesses(const Concept& c, std::size_t d);

 private:
  std::vector<std::pair<Degree, std::size_t>> ranked(const Concept& c,
                                                     std::size_t d);

  const FuzzyInterpretation& i_;
  std::map<Concept, std::vector<std::optional<Degree>>> cache_;
};

struct FuzzyReport {
  bool satisfied = true;
  std::string axiom;    // first violated axiom, printed
  std::size_t element = 0;
  std::string detail;   // the values involved
  std::size_t unchecked = 0;  // elements skipped by the mask
};

// Checks every order assertion at element 0 and every GCI at every element.
// With a non-empty `checked` mask only flagged elements are examined
// (assertions need element 0 flagged).
FuzzyReport check_fuzzy_model(const FuzzyInterpretation& i,
                              const FuzzyOntology& o,
                              const std::vector<bool>& checked = {});

// (model (domain N) (concept A e v) ... (role r e f v) ...), values exact.
std::string print_model(const FuzzyInterpretation& i);
FuzzyInterpretation parse_model(std::string_view text);

}  // namespace gcrisp
