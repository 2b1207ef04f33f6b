#pragma once

// Classical ALCQ concepts and ontologies with a single named individual.

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gcrisp {

using AtomId = std::uint32_t;
using RoleId = std::uint32_t;

enum class CKind : std::uint8_t {
  Top,
  Bottom,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Forall,
  AtLeast,
  AtMost,
};

class ClassicalConcept {
 public:
  static ClassicalConcept top();
  static ClassicalConcept bottom();
  static ClassicalConcept atom(AtomId a);
  static ClassicalConcept negation(ClassicalConcept c);
  static ClassicalConcept conj(std::vector<ClassicalConcept> cs);
  static ClassicalConcept disj(std::vector<ClassicalConcept> cs);
  static ClassicalConcept implies(ClassicalConcept c, ClassicalConcept d);
  static ClassicalConcept forall(RoleId r, ClassicalConcept c);
  static ClassicalConcept exists(RoleId r, ClassicalConcept c);
  static ClassicalConcept at_least(std::uint32_t n, RoleId r,
                                   ClassicalConcept c);
  static ClassicalConcept at_most(std::uint32_t n, RoleId r,
                                  ClassicalConcept c);

  CKind kind() const { return node_->kind; }
  AtomId atom_id() const { return node_->id; }
  RoleId role() const { return node_->id; }
  std::uint32_t cardinality() const { return node_->n; }
  const std::vector<ClassicalConcept>& args() const { return node_->args; }
  const ClassicalConcept& operand() const { return node_->args[0]; }

  bool is_restriction() const {
    return kind() == CKind::Forall || kind() == CKind::AtLeast ||
           kind() == CKind::AtMost;
  }
  int modal_depth() const;

  friend bool operator==(const ClassicalConcept& a, const ClassicalConcept& b);
  friend std::strong_ordering operator<=>(const ClassicalConcept& a,
                                          const ClassicalConcept& b);

 private:
  struct Node {
    CKind kind;
    std::uint32_t id = 0;
    std::uint32_t n = 0;
    std::vector<ClassicalConcept> args;
  };
  explicit ClassicalConcept(std::shared_ptr<const Node> n)
      : node_(std::move(n)) {}
  static ClassicalConcept make(CKind k, std::uint32_t id, std::uint32_t n,
                               std::vector<ClassicalConcept> args);
  std::shared_ptr<const Node> node_;
};

struct ClassicalGCI {
  ClassicalConcept lhs;
  ClassicalConcept rhs;
};

struct ClassicalOntology {
  std::string individual = "a";
  std::vector<std::string> atom_names;
  std::vector<std::string> role_names;
  std::vector<ClassicalGCI> tbox;
  // Concepts asserted of `individual`.
  std::vector<ClassicalConcept> abox;

  AtomId intern_atom(const std::string& name);
  RoleId intern_role(const std::string& name);
  std::size_t atom_count() const { return atom_names.size(); }
  std::size_t role_count() const { return role_names.size(); }

 private:
  std::unordered_map<std::string, AtomId> atom_index_;
  std::unordered_map<std::string, RoleId> role_index_;
};

// Renders `c` with names resolved through `o`.
std::string to_string(const ClassicalConcept& c, const ClassicalOntology& o);

// Serializes as `(individual a)`, `(gci C D)` and `(assert (inst a C))`
// forms; GCIs and assertions are emitted in sorted order.
std::string print_classical(const ClassicalOntology& o);

// Inverse of print_classical. A list headed by `leq` is an atomic name.
ClassicalOntology parse_classical(std::string_view text);

// Finite classical interpretation. Element 0 interprets the individual.
struct ClassicalInterpretation {
  std::vector<std::vector<bool>> atoms;  // [element][atom]
  std::vector<std::vector<std::pair<RoleId, std::size_t>>> successors;

  std::size_t size() const { return atoms.size(); }
};

bool holds(const ClassicalInterpretation& m, const ClassicalConcept& c,
           std::size_t element);

// Checks every GCI at the elements flagged in `checked` (all when empty)
// and every assertion at element 0. Returns a description of the first
// violated axiom, or an empty string.
std::string first_violation(const ClassicalInterpretation& m,
                            const ClassicalOntology& o,
                            const std::vector<bool>& checked = {});

}  // namespace gcrisp
