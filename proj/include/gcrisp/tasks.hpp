#pragma once

// The three reasoning tasks on top of reduce + tableau, with optional
// oracle cross-checks and model emission.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "gcrisp/algebra.hpp"
#include "gcrisp/brute_force.hpp"
#include "gcrisp/concept.hpp"
#include "gcrisp/extraction.hpp"
#include "gcrisp/grid_search.hpp"
#include "gcrisp/ontology.hpp"
#include "gcrisp/reduction.hpp"
#include "gcrisp/tableau.hpp"

namespace gcrisp {

enum class OracleMode : std::uint8_t { Off, Grid, Brute };

const char* to_string(OracleMode m);
std::optional<OracleMode> parse_oracle_mode(std::string_view s);

// The oracle and the tableau contradict each other.
class OracleDisagreement : public Error {
 public:
  using Error::Error;
};

struct TaskOptions {
  std::size_t node_budget = 200000;   // tableau nodes
  std::size_t depth = 4;              // unraveling depth for models
  bool want_model = false;
  bool want_reduction = false;
  bool reduce_opt = false;            // skip trivial transitivity instances
  OracleMode oracle = OracleMode::Off;
  std::optional<Degree> grid_step;    // grid oracle; default_grid when unset
  std::size_t max_domain = 0;         // 0: 2 for grid, 3 for brute
};

struct EmittedModel {
  FuzzyInterpretation model;
  std::vector<bool> interior;  // elements where every axiom is guaranteed
  std::size_t depth = 0;
};

struct TaskReport {
  bool consistent = false;  // of the ontology actually decided
  bool positive = false;    // consistent, satisfiable or subsumed
  std::string reduction;              // print_classical(red(O)) when asked
  std::optional<EmittedModel> model;  // consistent runs with want_model
  std::string oracle;                 // one line on what the oracle saw
  ReductionStats reduction_stats;
  TableauStats tableau_stats;
};

// Throws BudgetExhausted, OracleDisagreement, or Error when an emitted
// model fails its own re-check.
TaskReport decide_consistency(const FuzzyOntology& o,
                              const TaskOptions& opts = {});

// ({<a:C >= q>}, T) and ({<a:C -> D < q>}, T). The source ontology must
// have an empty ABox; its TBox is kept.
FuzzyOntology satisfiability_ontology(const Concept& c, const Degree& q,
                                      const FuzzyOntology& tbox,
                                      AtMostMode mode = AtMostMode::Involutive);
FuzzyOntology subsumption_ontology(const Concept& c, const Concept& d,
                                   const Degree& q, const FuzzyOntology& tbox,
                                   AtMostMode mode = AtMostMode::Involutive);

// Satisfiable iff the ontology above is consistent; subsumed iff it is not.
TaskReport decide_satisfiability(const Concept& c, const Degree& q,
                                 const FuzzyOntology& tbox,
                                 const TaskOptions& opts = {},
                                 AtMostMode mode = AtMostMode::Involutive);
TaskReport decide_subsumption(const Concept& c, const Concept& d,
                              const Degree& q, const FuzzyOntology& tbox,
                              const TaskOptions& opts = {},
                              AtMostMode mode = AtMostMode::Involutive);

// The default tableau configuration for a reduction.
TableauOptions tableau_options(const Reduction& red, std::size_t node_budget);

// Axiom count of red(O) against the size of O: symbols in every axiom,
// counting each concept constructor, name, role and degree once.
std::size_t symbol_count(const FuzzyOntology& o);

}  // namespace gcrisp
