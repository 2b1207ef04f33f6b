#include <doctest.h>

#include <random>

#include "gcrisp/fuzzy_model.hpp"
#include "support.hpp"

using namespace gcrisp;

namespace {

Degree q(const char* s) { return Degree::parse(s); }

Concept nc(const char* text) { return normalize(parse_concept(text)); }

}  // namespace

TEST_CASE("hand-evaluated concepts") {
  FuzzyInterpretation i(2);
  i.set_concept("A", 0, q("3/10"));
  i.set_role("r", 0, 1, q("4/5"));
  i.set_concept("A", 1, q("9/10"));
  Evaluator ev(i);
  CHECK(ev.value(nc("(not A)"), 0) == q("7/10"));
  // The broken duality: ∃ and ¬∀¬ differ.
  CHECK(ev.value(nc("(some r A)"), 0) == q("4/5"));
  CHECK(ev.value(nc("(not (all r (not A)))"), 0) == q("9/10"));
  CHECK(ev.value(nc("(atleast 2 r A)"), 0).is_zero());
  CHECK(ev.value(nc("(all r A)"), 1).is_one());
  CHECK(ev.value(nc("(implies A (some r A))"), 0).is_one());
  CHECK(ev.value(nc("(implies (some r A) A)"), 0) == q("3/10"));
}

TEST_CASE("witnesses attain the value") {
  FuzzyInterpretation i(4);
  i.set_role("r", 0, 1, q("1/2"));
  i.set_role("r", 0, 2, q("3/4"));
  i.set_role("r", 0, 3, q("1"));
  i.set_concept("A", 1, q("1"));
  i.set_concept("A", 2, q("2/5"));
  i.set_concept("A", 3, q("3/5"));
  Evaluator ev(i);
  Concept two = nc("(atleast 2 r A)");
  CHECK(ev.value(two, 0) == q("1/2"));
  auto w = ev.witnesses(two, 0);
  REQUIRE(w.size() == 2);
  for (std::size_t e : w) {
    CHECK(std::min(i.role_value("r", 0, e), i.concept_value("A", e)) >=
          ev.value(two, 0));
  }
  Concept all = nc("(all r A)");
  CHECK(ev.value(all, 0) == q("2/5"));
  auto v = ev.witnesses(all, 0);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == 2);
}

TEST_CASE("evaluator against the subset oracle") {
  std::mt19937 rng(23);
  testing::Generator gen(99, {});
  const char* grid[] = {"0", "1/4", "1/2", "3/4", "1"};
  for (int round = 0; round < 150; ++round) {
    const std::size_t n = 1 + rng() % 5;
    FuzzyInterpretation i(n);
    for (std::size_t e = 0; e < n; ++e) {
      for (const char* a : {"A", "B", "C"}) i.set_concept(a, e, q(grid[rng() % 5]));
      for (std::size_t f = 0; f < n; ++f) {
        for (const char* r : {"r", "s"}) {
          if (rng() % 2) i.set_role(r, e, f, q(grid[rng() % 5]));
        }
      }
    }
    Evaluator ev(i);
    for (int k = 0; k < 10; ++k) {
      Concept c = normalize(gen.random_concept(0, 8));
      for (std::size_t d = 0; d < n; ++d) {
        CHECK(ev.value(c, d) == testing::oracle_value(i, c, d));
      }
    }
  }
}

TEST_CASE("model checking reports") {
  FuzzyOntology o = parse_ontology("(assert (inst a A) >= 0.5)");
  FuzzyInterpretation good(1);
  good.set_concept("A", 0, q("3/5"));
  CHECK(check_fuzzy_model(good, o).satisfied);
  FuzzyInterpretation bad(1);
  bad.set_concept("A", 0, q("2/5"));
  FuzzyReport r = check_fuzzy_model(bad, o);
  CHECK_FALSE(r.satisfied);
  CHECK(r.detail.find("2/5") != std::string::npos);

  FuzzyOntology g = parse_ontology("(gci A B >= 0.8)");
  FuzzyInterpretation m(2);
  m.set_concept("A", 1, q("1/2"));
  m.set_concept("B", 1, q("2/5"));
  r = check_fuzzy_model(m, g);
  CHECK_FALSE(r.satisfied);
  CHECK(r.element == 1);
  // Masked out, the violation is not looked at.
  r = check_fuzzy_model(m, g, {true, false});
  CHECK(r.satisfied);
  CHECK(r.unchecked == 1);
}

TEST_CASE("model text round-trips") {
  FuzzyInterpretation i(3);
  i.set_concept("A", 0, q("1/3"));
  i.set_concept("B", 2, q("1"));
  i.set_role("r", 0, 1, q("2/7"));
  i.set_role("s", 1, 2, q("1/2"));
  std::string text = print_model(i);
  FuzzyInterpretation back = parse_model(text);
  CHECK(back.size() == 3);
  CHECK(back.concept_value("A", 0) == q("1/3"));
  CHECK(back.role_value("r", 0, 1) == q("2/7"));
  CHECK(back.role_value("r", 1, 0).is_zero());
  CHECK(print_model(back) == text);
  CHECK_THROWS_AS(parse_model("(model (domain 1) (concept A 3 1/2))"), Error);
}

TEST_CASE("setting a role to zero removes the edge") {
  FuzzyInterpretation i(2);
  i.set_role("r", 0, 1, q("1/2"));
  CHECK(i.edges(0).size() == 1);
  i.set_role("r", 0, 1, Degree::zero());
  CHECK(i.edges(0).empty());
}
