#include "gcrisp/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "gcrisp/error.hpp"

namespace gcrisp {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Less:
      return "<";
    case Relation::LessEq:
      return "<=";
    case Relation::Equal:
      return "=";
    case Relation::GreaterEq:
      return ">=";
    case Relation::Greater:
      return ">";
  }
  return "?";
}

std::optional<Relation> parse_relation(std::string_view s) {
  if (s == "<") return Relation::Less;
  if (s == "<=") return Relation::LessEq;
  if (s == "=") return Relation::Equal;
  if (s == ">=") return Relation::GreaterEq;
  if (s == ">") return Relation::Greater;
  return std::nullopt;
}

namespace {

const std::set<std::string, std::less<>> kReserved = {
    "top", "bot",     "not",   "and",     "or",     "implies", "all",
    "some", "atleast", "atmost", "lambda", "up",    "leq",     "inst",
    "role", "assert", "assert-cmp", "gci"};

[[noreturn]] void fail(const Sexpr& at, const std::string& what) {
  throw ParseError(what, at.line, at.column);
}

const std::string& symbol(const Sexpr& s, const char* what) {
  if (!s.is_atom()) fail(s, std::string("expected ") + what);
  return s.atom;
}

bool looks_numeric(const std::string& s) {
  return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) ||
                        s[0] == '.' || s[0] == '-' || s[0] == '+');
}

std::string name_symbol(const Sexpr& s, const char* what) {
  const std::string& n = symbol(s, what);
  if (kReserved.count(n) || looks_numeric(n) || n.front() == ':' ||
      n.find('/') != std::string::npos) {
    fail(s, std::string("invalid ") + what + " '" + n + "'");
  }
  return n;
}

std::uint32_t cardinality(const Sexpr& s) {
  const std::string& t = symbol(s, "cardinality");
  if (t.empty() || t.size() > 9 ||
      !std::all_of(t.begin(), t.end(),
                   [](char c) { return std::isdigit((unsigned char)c); })) {
    fail(s, "invalid cardinality '" + t + "'");
  }
  return static_cast<std::uint32_t>(std::stoul(t));
}

Degree degree(const Sexpr& s) {
  const std::string& t = symbol(s, "degree");
  try {
    return Degree::parse(t);
  } catch (const Error& e) {
    fail(s, e.what());
  }
}

void arity(const Sexpr& s, std::size_t n) {
  if (s.items.size() != n) {
    fail(s, "'" + s.items.front().atom + "' expects " +
                std::to_string(n - 1) + " argument(s)");
  }
}

Concept fold(const Sexpr& s, bool conj) {
  if (s.items.size() < 3) {
    fail(s, std::string("'") + (conj ? "and" : "or") +
                "' expects at least 2 arguments");
  }
  Concept acc = concept_from_sexpr(s.items[1]);
  for (std::size_t i = 2; i < s.items.size(); ++i) {
    Concept next = concept_from_sexpr(s.items[i]);
    acc = conj ? Concept::conj(acc, next) : Concept::disj(acc, next);
  }
  return acc;
}

ClassicalAssertion assertion_from_sexpr(const Sexpr& s) {
  if (s.has_head("inst")) {
    arity(s, 3);
    return ConceptAssertion{name_symbol(s.items[1], "individual"),
                            concept_from_sexpr(s.items[2])};
  }
  if (s.has_head("role")) {
    arity(s, 4);
    return RoleAssertion{name_symbol(s.items[1], "role"),
                         name_symbol(s.items[2], "individual"),
                         name_symbol(s.items[3], "individual")};
  }
  fail(s, "expected (inst a C) or (role r a b)");
}

Relation relation(const Sexpr& s) {
  if (s.is_atom()) {
    if (auto r = parse_relation(s.atom)) return *r;
  }
  fail(s, "expected one of < <= = >= >");
}

void print_assertion(std::ostream& out, const ClassicalAssertion& a) {
  if (const auto* c = std::get_if<ConceptAssertion>(&a)) {
    out << "(inst " << c->individual << ' ' << c->expr << ')';
  } else {
    const auto& r = std::get<RoleAssertion>(a);
    out << "(role " << r.role << ' ' << r.from << ' ' << r.to << ')';
  }
}

void individuals_of(const ClassicalAssertion& a, std::set<std::string>& out) {
  if (const auto* c = std::get_if<ConceptAssertion>(&a)) {
    out.insert(c->individual);
  } else {
    const auto& r = std::get<RoleAssertion>(a);
    out.insert(r.from);
    out.insert(r.to);
  }
}

bool is_role(const ClassicalAssertion& a) {
  return std::holds_alternative<RoleAssertion>(a);
}

void post_order(const Concept& c, std::vector<Concept>& out) {
  for (const Concept& a : c.args()) post_order(a, out);
  if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
}

}  // namespace

Concept concept_from_sexpr(const Sexpr& s) {
  if (s.is_atom()) {
    if (s.atom == "top") return Concept::top();
    if (s.atom == "bot") return Concept::bottom();
    return Concept::name(name_symbol(s, "concept name"));
  }
  if (s.items.empty() || !s.items.front().is_atom()) {
    fail(s, "expected a concept constructor");
  }
  const std::string& head = s.items.front().atom;
  if (head == "not") {
    arity(s, 2);
    return Concept::negation(concept_from_sexpr(s.items[1]));
  }
  if (head == "and") return fold(s, true);
  if (head == "or") return fold(s, false);
  if (head == "implies") {
    arity(s, 3);
    return Concept::implies(concept_from_sexpr(s.items[1]),
                            concept_from_sexpr(s.items[2]));
  }
  if (head == "all" || head == "some") {
    arity(s, 3);
    std::string r = name_symbol(s.items[1], "role");
    Concept c = concept_from_sexpr(s.items[2]);
    return head == "all" ? Concept::forall(r, c) : Concept::exists(r, c);
  }
  if (head == "atleast" || head == "atmost") {
    arity(s, 4);
    std::uint32_t n = cardinality(s.items[1]);
    std::string r = name_symbol(s.items[2], "role");
    Concept c = concept_from_sexpr(s.items[3]);
    return head == "atleast" ? Concept::at_least(n, r, c)
                             : Concept::at_most(n, r, c);
  }
  fail(s, "unknown concept constructor '" + head + "'");
}

Concept parse_concept(std::string_view text) {
  auto forms = read_sexprs(text);
  if (forms.size() != 1) throw ParseError("expected exactly one concept", 1, 1);
  return concept_from_sexpr(forms.front());
}

FuzzyOntology parse_ontology(std::string_view text,
                             const ParseOptions& options) {
  std::vector<Sexpr> forms = read_sexprs(text);
  AtMostMode mode = AtMostMode::Involutive;
  std::vector<const Sexpr*> axioms;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const Sexpr& f = forms[i];
    if (f.is_atom()) {
      if (f.atom != ":atmost") fail(f, "unexpected symbol '" + f.atom + "'");
      if (i + 1 >= forms.size()) fail(f, ":atmost expects a value");
      const Sexpr& v = forms[++i];
      if (v.is_atom("involutive")) {
        mode = AtMostMode::Involutive;
      } else if (v.is_atom("residual")) {
        mode = AtMostMode::Residual;
      } else {
        fail(v, "expected 'involutive' or 'residual'");
      }
      continue;
    }
    axioms.push_back(&f);
  }
  if (options.atmost) mode = *options.atmost;

  FuzzyOntology o;
  std::set<std::string> individuals;
  for (const Sexpr* fp : axioms) {
    const Sexpr& f = *fp;
    if (f.has_head("gci")) {
      arity(f, 5);
      if (!f.items[3].is_atom(">=")) fail(f.items[3], "gci relation must be >=");
      o.tbox.push_back(FuzzyGCI{concept_from_sexpr(f.items[1]),
                                concept_from_sexpr(f.items[2]),
                                degree(f.items[4])});
    } else if (f.has_head("assert") || f.has_head("assert-cmp")) {
      arity(f, 4);
      OrderAssertion a{assertion_from_sexpr(f.items[1]), relation(f.items[2]),
                       Degree::zero()};
      if (f.has_head("assert")) {
        a.right = degree(f.items[3]);
      } else {
        a.right = assertion_from_sexpr(f.items[3]);
      }
      std::set<std::string> here;
      individuals_of(a.left, here);
      if (const auto* rhs = std::get_if<ClassicalAssertion>(&a.right)) {
        individuals_of(*rhs, here);
      }
      individuals.insert(here.begin(), here.end());
      o.abox.push_back(std::move(a));
      if (!is_local(o.abox)) {
        std::string why = individuals.size() > 1 ? "more than one individual"
                                                 : "role assertion";
        throw UnsupportedError(std::to_string(f.line) + ":" +
                               std::to_string(f.column) +
                               ": unsupported: non-local ABox (" + why + ")");
      }
    } else {
      fail(f, "expected (gci ...), (assert ...) or (assert-cmp ...)");
    }
  }
  if (!individuals.empty()) o.individual = *individuals.begin();
  return normalize_ontology(std::move(o), mode);
}

FuzzyOntology normalize_ontology(FuzzyOntology o, AtMostMode mode) {
  for (OrderAssertion& a : o.abox) {
    if (auto* c = std::get_if<ConceptAssertion>(&a.left)) {
      c->expr = normalize(c->expr, mode);
    }
    if (auto* rhs = std::get_if<ClassicalAssertion>(&a.right)) {
      if (auto* c = std::get_if<ConceptAssertion>(rhs)) {
        c->expr = normalize(c->expr, mode);
      }
    }
  }
  std::vector<FuzzyGCI> kept;
  for (FuzzyGCI& g : o.tbox) {
    g.lhs = normalize(g.lhs, mode);
    g.rhs = normalize(g.rhs, mode);
    if (g.degree.is_zero()) {
      o.warnings.push_back("dropped GCI with degree 0: " + g.lhs.str() +
                           " ⊑ " + g.rhs.str());
      continue;
    }
    kept.push_back(std::move(g));
  }
  o.tbox = std::move(kept);
  return o;
}

std::string print_ontology(const FuzzyOntology& o) {
  std::ostringstream out;
  for (const OrderAssertion& a : o.abox) {
    bool cmp = std::holds_alternative<ClassicalAssertion>(a.right);
    out << (cmp ? "(assert-cmp " : "(assert ");
    print_assertion(out, a.left);
    out << ' ' << to_string(a.relation) << ' ';
    if (cmp) {
      print_assertion(out, std::get<ClassicalAssertion>(a.right));
    } else {
      out << std::get<Degree>(a.right);
    }
    out << ")\n";
  }
  for (const FuzzyGCI& g : o.tbox) {
    out << "(gci " << g.lhs << ' ' << g.rhs << " >= " << g.degree << ")\n";
  }
  return out.str();
}

bool is_local(std::span<const OrderAssertion> abox) {
  std::set<std::string> individuals;
  for (const OrderAssertion& a : abox) {
    if (is_role(a.left)) return false;
    individuals_of(a.left, individuals);
    if (const auto* rhs = std::get_if<ClassicalAssertion>(&a.right)) {
      if (is_role(*rhs)) return false;
      individuals_of(*rhs, individuals);
    }
  }
  return individuals.size() <= 1;
}

std::vector<Concept> axiom_concepts(const FuzzyOntology& o) {
  std::vector<Concept> out;
  for (const OrderAssertion& a : o.abox) {
    if (const auto* c = std::get_if<ConceptAssertion>(&a.left)) {
      out.push_back(c->expr);
    }
    if (const auto* rhs = std::get_if<ClassicalAssertion>(&a.right)) {
      if (const auto* c = std::get_if<ConceptAssertion>(rhs)) {
        out.push_back(c->expr);
      }
    }
  }
  for (const FuzzyGCI& g : o.tbox) {
    out.push_back(g.lhs);
    out.push_back(g.rhs);
  }
  return out;
}

std::vector<Concept> sub_closure(const FuzzyOntology& o) {
  std::vector<Concept> out;
  for (const Concept& c : axiom_concepts(o)) post_order(c, out);
  std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    Concept neg = negate(out[i]);
    if (std::find(out.begin(), out.end(), neg) == out.end()) {
      out.push_back(neg);
    }
  }
  return out;
}

ValueSet value_closure(const FuzzyOntology& o) {
  std::vector<Degree> ds;
  for (const OrderAssertion& a : o.abox) {
    if (const auto* d = std::get_if<Degree>(&a.right)) ds.push_back(*d);
  }
  for (const FuzzyGCI& g : o.tbox) ds.push_back(g.degree);
  return ValueSet::closure_of(ds);
}

std::vector<std::string> role_names(const FuzzyOntology& o) {
  std::set<std::string> roles;
  for (const Concept& c : axiom_concepts(o)) collect_roles(c, roles);
  return {roles.begin(), roles.end()};
}

std::vector<std::string> concept_names(const FuzzyOntology& o) {
  std::set<std::string> names;
  for (const Concept& c : axiom_concepts(o)) collect_names(c, names);
  return {names.begin(), names.end()};
}

int quantifier_depth(const FuzzyOntology& o) {
  int d = 0;
  for (const Concept& c : axiom_concepts(o)) {
    d = std::max(d, c.quantifier_depth());
  }
  return d;
}

}  // namespace gcrisp
