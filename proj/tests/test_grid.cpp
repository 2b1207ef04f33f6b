#include <doctest.h>

#include "gcrisp/grid_search.hpp"
#include "gcrisp/reduction.hpp"
#include "gcrisp/tasks.hpp"
#include "support.hpp"

using namespace gcrisp;

namespace {

FuzzyOntology onto(const char* text) { return parse_ontology(text); }

}  // namespace

TEST_CASE("grids") {
  FuzzyOntology o = onto("(assert (inst a A) >= 0.4)");
  std::string s;
  for (const Degree& d : default_grid(o)) s += d.str() + " ";
  CHECK(s == "0 1/5 2/5 9/20 1/2 11/20 3/5 4/5 1 ");
  auto g = step_grid(o, Degree::parse("1/4"));
  s.clear();
  for (const Degree& d : g) s += d.str() + " ";
  CHECK(s == "0 1/4 2/5 1/2 3/5 3/4 1 ");
}

TEST_CASE("the contradiction bound on a tenths grid") {
  GridOptions opts;
  opts.grid = step_grid(onto(""), Degree::parse("1/10"));
  GridResult r = grid_search_fuzzy_model(
      onto("(assert (inst a (and A (not A))) >= 0.5)"), opts);
  REQUIRE(r.status == GridStatus::Found);
  CHECK(r.model->concept_value("A", 0) == Degree::half());
  r = grid_search_fuzzy_model(onto("(assert (inst a (and A (not A))) >= 0.6)"),
                              {3, step_grid(onto("(assert (inst a A) >= 0.6)"),
                                            Degree::parse("1/10"))});
  CHECK(r.status == GridStatus::NotFound);
}

TEST_CASE("found models satisfy the ontology") {
  GridResult r = grid_search_fuzzy_model(onto(
      "(assert-cmp (inst a (some r A)) < (inst a (not (all r (not A)))))"));
  REQUIRE(r.status == GridStatus::Found);
  FuzzyOntology o = onto(
      "(assert-cmp (inst a (some r A)) < (inst a (not (all r (not A)))))");
  CHECK(testing::oracle_violation(*r.model, o, {}).empty());
  r = grid_search_fuzzy_model(onto(
      "(assert (inst a (atleast 2 r A)) >= 0.7) (gci A (some r B) >= 0.5)"));
  REQUIRE(r.status == GridStatus::Found);
  CHECK(r.domain_size == 2);
}

TEST_CASE("budget and grid errors") {
  GridOptions tiny;
  tiny.budget = 3;
  tiny.max_domain = 3;
  GridResult r = grid_search_fuzzy_model(
      onto("(assert (inst a (atleast 3 r (and A B))) >= 0.7)"), tiny);
  CHECK(r.status == GridStatus::Budget);
  GridOptions missing;
  missing.grid = {Degree::zero(), Degree::half(), Degree::one()};
  CHECK_THROWS_AS(grid_search_fuzzy_model(onto("(assert (inst a A) >= 0.3)"),
                                          missing),
                  Error);
}

TEST_CASE("a grid model means a consistent reduction") {
  for (const FuzzyOntology& o : testing::corpus(13, 20)) {
    GridOptions opts;
    opts.budget = 2'000'000;
    GridResult r = grid_search_fuzzy_model(o, opts);
    if (r.status != GridStatus::Found) continue;
    Reduction red = reduce(o);
    INFO(print_ontology(o));
    CHECK(check_consistency(red.classical(), tableau_options(red, 200000))
              .verdict == Verdict::Consistent);
  }
}
