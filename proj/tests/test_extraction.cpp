#include <doctest.h>

#include "gcrisp/extraction.hpp"
#include "gcrisp/tasks.hpp"
#include "support.hpp"

using namespace gcrisp;

namespace {

struct Pipeline {
  FuzzyOntology o;
  Reduction red;
  TreeInterpretation tree;
  FuzzyExtraction fx;
};

Pipeline run(const char* text, std::size_t depth = 4) {
  FuzzyOntology o = parse_ontology(text);
  Reduction red = reduce(o);
  auto res = check_consistency(red.classical(), tableau_options(red, 200000));
  REQUIRE(res.verdict == Verdict::Consistent);
  TreeInterpretation tree = extract_classical_model(res.graph, depth);
  FuzzyExtraction fx = extract_fuzzy_model(red, tree);
  return {std::move(o), std::move(red), std::move(tree), std::move(fx)};
}

}  // namespace

TEST_CASE("anonymous classes are spaced evenly between values") {
  Pipeline p = run("(assert (inst a A) > 0.5)");
  const OrderStructure& u = p.red.structure();
  const std::size_t n = u.size();
  const auto& atoms = p.tree.model.atoms[0];
  auto leq = [&](std::size_t i, std::size_t j) { return atoms[p.red.atom(i, j)]; };
  // Class rank: how many classes lie strictly below.
  std::vector<std::size_t> below(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq(j, i) || leq(i, j) || seen[j]) continue;
      ++below[i];
      for (std::size_t k = 0; k < n; ++k) {
        if (leq(j, k) && leq(k, j)) seen[k] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].kind == UKind::Value) continue;
    std::optional<std::size_t> lo, hi;
    for (std::size_t j = 0; j < n; ++j) {
      if (u[j].kind != UKind::Value) continue;
      if (leq(j, i) && (!lo || below[j] > below[*lo])) lo = j;
      if (leq(i, j) && (!hi || below[j] < below[*hi])) hi = j;
    }
    REQUIRE(lo);
    REQUIRE(hi);
    Degree a = u.values()[u[*lo].index], b = u.values()[u[*hi].index];
    Degree want = a;
    if (below[*hi] > below[*lo]) {
      mpq_class t(static_cast<unsigned long>(below[i] - below[*lo]),
                  static_cast<unsigned long>(below[*hi] - below[*lo]));
      t.canonicalize();
      want = Degree::from_rational(a.value() + (b.value() - a.value()) * t);
    }
    INFO(u.name(u[i]));
    CHECK(p.fx.values.v[0][i] == want);
  }
  CHECK(Degree::half() < p.fx.model.concept_value("A", 0));
  // A class containing 1 gets 1.
  Pipeline q = run("(assert (inst a A) = 1)");
  CHECK(q.fx.model.concept_value("A", 0).is_one());
}

TEST_CASE("interpolated degrees are exact and between their neighbours") {
  Pipeline p = run(
      "(assert (inst a A) > 0.2) (assert-cmp (inst a A) < (inst a B))"
      "(assert (inst a B) < 0.4)");
  Degree a = p.fx.model.concept_value("A", 0);
  Degree b = p.fx.model.concept_value("B", 0);
  CHECK(Degree::parse("1/5") < a);
  CHECK(a < b);
  CHECK(b < Degree::parse("2/5"));
  CHECK(check_value_properties(p.red, p.tree, p.fx.values).total() == 0);
}

TEST_CASE("role degrees come from lambda and satisfy the axioms") {
  Pipeline p = run(
      "(assert-cmp (inst a (some r A)) < (inst a (not (all r (not A)))))");
  CHECK(check_value_properties(p.red, p.tree, p.fx.values).total() == 0);
  auto interior = p.tree.interior(1);
  CHECK(check_fuzzy_model(p.fx.model, p.o, interior).satisfied);
  CHECK(testing::oracle_violation(p.fx.model, p.o, interior).empty());
  CHECK_FALSE(p.fx.model.edges(0).empty());
}

TEST_CASE("models across a small corpus") {
  auto corpus = testing::corpus(5, 15);
  int checked = 0;
  for (const FuzzyOntology& o : corpus) {
    Reduction red = reduce(o);
    auto res = check_consistency(red.classical(), tableau_options(red, 200000));
    REQUIRE(res.verdict != Verdict::BudgetExhausted);
    if (res.verdict != Verdict::Consistent) continue;
    TreeInterpretation tree = extract_classical_model(res.graph, 4);
    FuzzyExtraction fx = extract_fuzzy_model(red, tree);
    PropertyReport pr = check_value_properties(red, tree, fx.values);
    INFO(print_ontology(o));
    CHECK(pr.total() == 0);
    auto interior = tree.interior(static_cast<std::size_t>(quantifier_depth(o)));
    CHECK(testing::oracle_violation(fx.model, o, interior).empty());
    ++checked;
  }
  CHECK(checked > 5);
}

TEST_CASE("a broken preorder names the node") {
  FuzzyOntology o = parse_ontology("(assert (inst a A) >= 0.5)");
  Reduction red = reduce(o);
  TreeInterpretation t;
  const std::size_t n = red.structure().size();
  t.model.atoms.assign(1, std::vector<bool>(n * n, false));
  t.model.successors.resize(1);
  t.parent = {std::nullopt};
  t.role = {0};
  t.depth = {0};
  t.graph_node = {0};
  t.cut = {false};
  t.height = {SIZE_MAX};
  try {
    extract_fuzzy_model(red, t);
    FAIL("no error");
  } catch (const ExtractionError& e) {
    CHECK(e.node() == 0);
    CHECK(std::string(e.what()).find("reflexivity") != std::string::npos);
  }
}
