#include "gcrisp/tasks.hpp"

#include "gcrisp/error.hpp"

namespace gcrisp {

const char* to_string(OracleMode m) {
  switch (m) {
    case OracleMode::Off:
      return "off";
    case OracleMode::Grid:
      return "grid";
    case OracleMode::Brute:
      return "brute";
  }
  return "?";
}

std::optional<OracleMode> parse_oracle_mode(std::string_view s) {
  if (s == "off") return OracleMode::Off;
  if (s == "grid") return OracleMode::Grid;
  if (s == "brute") return OracleMode::Brute;
  return std::nullopt;
}

TableauOptions tableau_options(const Reduction& red, std::size_t node_budget) {
  TableauOptions t;
  t.node_budget = node_budget;
  t.canonical = red.canonical_order();
  return t;
}

namespace {

std::string grid_oracle(const FuzzyOntology& o, const TaskOptions& opts,
                        bool consistent) {
  GridOptions g;
  g.max_domain = opts.max_domain ? opts.max_domain : 2;
  if (opts.grid_step) g.grid = step_grid(o, *opts.grid_step);
  GridResult r = grid_search_fuzzy_model(o, g);
  const std::string size = std::to_string(r.domain_size);
  switch (r.status) {
    case GridStatus::Found:
      if (!consistent) {
        throw OracleDisagreement(
            "oracle disagreement: grid search found a model with " + size +
            " elements but the tableau says inconsistent\n" +
            print_model(*r.model));
      }
      return "grid: model with " + size + " elements";
    case GridStatus::NotFound:
      return "grid: no model up to " + size + " elements (inconclusive)";
    case GridStatus::Budget:
      return "grid: budget exhausted at " + size + " elements";
  }
  return {};
}

std::string brute_oracle(const Reduction& red, const TaskOptions& opts,
                         bool consistent) {
  BruteForceOptions b;
  b.max_domain = opts.max_domain ? opts.max_domain : 3;
  BruteForceResult r = brute_force_consistency(red.classical(), b);
  switch (r.verdict) {
    case BruteVerdict::Consistent:
      if (!consistent) {
        throw OracleDisagreement(
            "oracle disagreement: brute force found a model of red(O) with " +
            std::to_string(r.model.size()) +
            " elements but the tableau says inconsistent");
      }
      return "brute: model of red(O) with " + std::to_string(r.model.size()) +
             " elements";
    case BruteVerdict::InconsistentUpToBound:
      // red(O) only has tree-shaped models, so small domains may miss them.
      return "brute: no model of red(O) up to " +
             std::to_string(b.max_domain) + " elements" +
             (consistent ? " (inconclusive)" : "");
    case BruteVerdict::Budget:
      return "brute: budget exhausted after " +
             std::to_string(r.sizes_refuted) + " domain sizes";
  }
  return {};
}

EmittedModel emit_model(const FuzzyOntology& o, const Reduction& red,
                        const CompletionGraph& g, std::size_t depth) {
  TreeInterpretation tree = extract_classical_model(g, depth);
  FuzzyExtraction fx = extract_fuzzy_model(red, tree);
  PropertyReport p = check_value_properties(red, tree, fx.values);
  if (p.total() != 0) {
    throw Error("extracted degrees break a value property: " + p.first);
  }
  std::vector<bool> interior =
      tree.interior(static_cast<std::size_t>(quantifier_depth(o)));
  FuzzyReport rep = check_fuzzy_model(fx.model, o, interior);
  if (!rep.satisfied) {
    throw Error("extracted model violates " + rep.axiom + " at element " +
                std::to_string(rep.element) + ": " + rep.detail);
  }
  return {std::move(fx.model), std::move(interior), depth};
}

}  // namespace

TaskReport decide_consistency(const FuzzyOntology& o,
                              const TaskOptions& opts) {
  ReduceOptions ro;
  ro.skip_trivial_transitivity = opts.reduce_opt;
  Reduction red = reduce(o, ro);
  TaskReport out;
  out.reduction_stats = red.stats();
  if (opts.want_reduction) out.reduction = print_classical(red.classical());

  TableauResult res =
      check_consistency(red.classical(), tableau_options(red, opts.node_budget));
  out.tableau_stats = res.stats;
  if (res.verdict == Verdict::BudgetExhausted) {
    throw BudgetExhausted("tableau node budget of " +
                          std::to_string(opts.node_budget) + " exhausted");
  }
  out.consistent = res.verdict == Verdict::Consistent;
  out.positive = out.consistent;

  if (opts.oracle == OracleMode::Grid) {
    out.oracle = grid_oracle(o, opts, out.consistent);
  } else if (opts.oracle == OracleMode::Brute) {
    out.oracle = brute_oracle(red, opts, out.consistent);
  }
  if (out.consistent && opts.want_model) {
    out.model = emit_model(o, red, res.graph, opts.depth);
  }
  return out;
}

namespace {

FuzzyOntology with_assertion(const FuzzyOntology& tbox, OrderAssertion a,
                             AtMostMode mode) {
  if (!tbox.abox.empty()) {
    throw Error("the TBox file must not contain assertions");
  }
  FuzzyOntology o;
  o.individual = tbox.individual;
  o.tbox = tbox.tbox;
  o.abox.push_back(std::move(a));
  return normalize_ontology(std::move(o), mode);
}

}  // namespace

FuzzyOntology satisfiability_ontology(const Concept& c, const Degree& q,
                                      const FuzzyOntology& tbox,
                                      AtMostMode mode) {
  return with_assertion(
      tbox,
      {ConceptAssertion{tbox.individual, c}, Relation::GreaterEq, q}, mode);
}

FuzzyOntology subsumption_ontology(const Concept& c, const Concept& d,
                                   const Degree& q, const FuzzyOntology& tbox,
                                   AtMostMode mode) {
  if (q.is_zero()) throw Error("subsumption degree must be positive");
  return with_assertion(tbox,
                        {ConceptAssertion{tbox.individual,
                                          Concept::implies(c, d)},
                         Relation::Less, q},
                        mode);
}

TaskReport decide_satisfiability(const Concept& c, const Degree& q,
                                 const FuzzyOntology& tbox,
                                 const TaskOptions& opts, AtMostMode mode) {
  return decide_consistency(satisfiability_ontology(c, q, tbox, mode), opts);
}

TaskReport decide_subsumption(const Concept& c, const Concept& d,
                              const Degree& q, const FuzzyOntology& tbox,
                              const TaskOptions& opts, AtMostMode mode) {
  TaskReport r =
      decide_consistency(subsumption_ontology(c, d, q, tbox, mode), opts);
  r.positive = !r.consistent;
  return r;
}

namespace {

std::size_t symbols(const Concept& c) {
  std::size_t n = 1;
  if (c.is_restriction()) ++n;  // the role
  for (const Concept& a : c.args()) n += symbols(a);
  return n;
}

std::size_t symbols(const ClassicalAssertion& a) {
  if (const auto* c = std::get_if<ConceptAssertion>(&a)) {
    return 1 + symbols(c->expr);
  }
  return 3;
}

}  // namespace

std::size_t symbol_count(const FuzzyOntology& o) {
  std::size_t n = 0;
  for (const OrderAssertion& a : o.abox) {
    n += 1 + symbols(a.left);
    n += std::holds_alternative<Degree>(a.right)
             ? 1
             : symbols(std::get<ClassicalAssertion>(a.right));
  }
  for (const FuzzyGCI& g : o.tbox) n += 1 + symbols(g.lhs) + symbols(g.rhs);
  return n;
}

}  // namespace gcrisp
