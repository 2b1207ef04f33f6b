#include <doctest.h>

#include "gcrisp/error.hpp"
#include "gcrisp/ontology.hpp"

using namespace gcrisp;

namespace {

std::string strs(const std::vector<Concept>& cs) {
  std::string s;
  for (const Concept& c : cs) s += c.str() + " ";
  return s;
}

Concept nc(const char* text) { return normalize(parse_concept(text)); }

}  // namespace

TEST_CASE("an assertion maps to one order assertion") {
  FuzzyOntology o = parse_ontology("(assert (inst a (and A (not A))) >= 0.6)");
  REQUIRE(o.abox.size() == 1);
  CHECK(o.tbox.empty());
  const OrderAssertion& a = o.abox[0];
  CHECK(a.relation == Relation::GreaterEq);
  CHECK(std::get<ConceptAssertion>(a.left).expr.str() == "(and A (not A))");
  CHECK(std::get<Degree>(a.right) == Degree::parse("3/5"));
}

TEST_CASE("every relation and both right-hand sides parse") {
  FuzzyOntology o = parse_ontology(
      "(assert (inst a A) < 0.5)\n"
      "(assert (inst a A) <= 1/3) ; comment\n"
      "(assert (inst a A) = 1)\n"
      "(assert (inst a A) > 0)\n"
      "(assert-cmp (inst a B) < (inst a A))\n"
      "(gci A (some r B) >= 0.25)\n");
  REQUIRE(o.abox.size() == 5);
  CHECK(o.abox[0].relation == Relation::Less);
  CHECK(o.abox[1].relation == Relation::LessEq);
  CHECK(o.abox[2].relation == Relation::Equal);
  CHECK(o.abox[3].relation == Relation::Greater);
  CHECK(std::holds_alternative<ClassicalAssertion>(o.abox[4].right));
  REQUIRE(o.tbox.size() == 1);
  CHECK(o.tbox[0].rhs.str() == "(atleast 1 r B)");
  CHECK(o.tbox[0].degree == Degree::parse("1/4"));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_WITH(parse_ontology("(assert (inst a A) >= 1.2)"),
                    doctest::Contains("degree outside [0,1]"));
  try {
    parse_ontology("(gci A B >= 0.5)\n(gci A (and B) >= 1)");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_ontology("(assert (inst a A) >= 0.5"), ParseError);
  CHECK_THROWS_AS(parse_ontology("(assert (inst a A) ~ 0.5)"), ParseError);
  CHECK_THROWS_AS(parse_ontology("(frob)"), ParseError);
}

TEST_CASE("non-local ABoxes are unsupported") {
  CHECK_THROWS_WITH_AS(parse_ontology("(assert (role r a b) >= 0.5)"),
                       doctest::Contains("unsupported: non-local ABox"),
                       UnsupportedError);
  CHECK_THROWS_AS(
      parse_ontology("(assert (inst a A) >= 0.5) (assert (inst b A) >= 0.5)"),
      UnsupportedError);
}

TEST_CASE("is_local") {
  FuzzyOntology o = parse_ontology(
      "(assert (inst a A) >= 0.5) (assert-cmp (inst a B) < (inst a A))");
  CHECK(is_local(o.abox));
  CHECK(is_local({}));
  std::vector<OrderAssertion> roles{
      {RoleAssertion{"r", "a", "b"}, Relation::GreaterEq, Degree::half()}};
  CHECK_FALSE(is_local(roles));
}

TEST_CASE("normalization") {
  CHECK(nc("(not (not A))").str() == "A");
  CHECK(nc("(some r A)").str() == "(atleast 1 r A)");
  CHECK(nc("(or A B)").str() == "(not (and (not A) (not B)))");
  CHECK(nc("bot").str() == "(not top)");
  CHECK(nc("(atleast 0 r A)").str() == "top");
  CHECK(nc("(atmost 2 r A)").str() == "(not (atleast 3 r A))");
  CHECK(normalize(parse_concept("(atmost 2 r A)"), AtMostMode::Residual).str() ==
        "(implies (atleast 3 r A) (not top))");
  Concept c = nc("(or (some r (not (not B))) (all s bot))");
  CHECK(normalize(c) == c);
  CHECK(is_normalized(c));
}

TEST_CASE("the atmost directive and its override") {
  const char* text = ":atmost residual (assert (inst a (atmost 1 r A)) >= 1)";
  auto lhs = [](const FuzzyOntology& o) {
    return std::get<ConceptAssertion>(o.abox[0].left).expr.str();
  };
  CHECK(lhs(parse_ontology(text)) == "(implies (atleast 2 r A) (not top))");
  ParseOptions opts;
  opts.atmost = AtMostMode::Involutive;
  CHECK(lhs(parse_ontology(text, opts)) == "(not (atleast 2 r A))");
}

TEST_CASE("sub closure") {
  CHECK(strs(sub_closure(parse_ontology("(assert (inst a A) >= 0.5)"))) ==
        "A (not A) ");
  auto s = sub_closure(parse_ontology("(gci A (all r B) >= 1)"));
  CHECK(s.size() == 6);
  for (const char* c : {"A", "(not A)", "(all r B)", "(not (all r B))", "B",
                        "(not B)"}) {
    CHECK(std::find(s.begin(), s.end(), parse_concept(c)) != s.end());
  }
  // Closed under negation, with no double negations.
  auto t = sub_closure(parse_ontology(
      "(assert (inst a (not (and A (atleast 2 r (not B))))) > 0.3)"));
  for (const Concept& c : t) {
    CHECK(std::find(t.begin(), t.end(), negate(c)) != t.end());
    if (c.kind() == ConceptKind::Not) {
      CHECK(c.operand().kind() != ConceptKind::Not);
    }
  }
}

TEST_CASE("value closure, roles and names") {
  auto vals = [](const char* text) {
    std::string s;
    for (const Degree& d : value_closure(parse_ontology(text))) s += d.str() + " ";
    return s;
  };
  CHECK(vals("(assert (inst a A) >= 0.4)") == "0 2/5 1/2 3/5 1 ");
  CHECK(vals("") == "0 1/2 1 ");
  CHECK(vals("(assert (inst a A) >= 0.5) (gci A B >= 1)") == "0 1/2 1 ");
  FuzzyOntology o = parse_ontology(
      "(gci (all s C) (some r (and B A)) >= 1) (assert (inst a D) > 0)");
  CHECK(role_names(o) == std::vector<std::string>{"r", "s"});
  CHECK(concept_names(o) == std::vector<std::string>{"A", "B", "C", "D"});
  CHECK(quantifier_depth(o) == 1);
}

TEST_CASE("degree-0 GCIs are dropped with a warning") {
  FuzzyOntology o = parse_ontology("(gci A B >= 0) (gci A C >= 0.5)");
  CHECK(o.tbox.size() == 1);
  CHECK(o.warnings.size() == 1);
}

TEST_CASE("print and parse round-trip") {
  const char* text =
      "(assert (inst a (and A (some r (not B)))) >= 0.6)\n"
      "(assert-cmp (inst a B) <= (inst a A))\n"
      "(gci (all r A) (atmost 2 s B) >= 3/4)\n";
  FuzzyOntology o = parse_ontology(text);
  FuzzyOntology back = parse_ontology(print_ontology(o));
  CHECK(back == o);
  CHECK(print_ontology(back) == print_ontology(o));
}
