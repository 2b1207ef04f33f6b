#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace gcrisp {

// Fuzzy G-IALCQ concepts. Top, Name, Not, And, Implies, Forall and AtLeast
// form the core syntax; Bottom, Or, Exists and AtMost are abbreviations that
// normalize() rewrites away.
enum class ConceptKind : std::uint8_t {
  Top,
  Name,
  Not,
  And,
  Implies,
  Forall,
  AtLeast,
  Bottom,
  Or,
  Exists,
  AtMost,
};

// Which reading of (atmost n r C) to use.
enum class AtMostMode : std::uint8_t {
  Involutive,  // not (atleast n+1 r C)
  Residual,    // (atleast n+1 r C) implies bot
};

class Concept {
 public:
  static Concept top();
  static Concept bottom();
  static Concept name(std::string name);
  static Concept negation(Concept c);
  static Concept conj(Concept c, Concept d);
  static Concept disj(Concept c, Concept d);
  static Concept implies(Concept c, Concept d);
  static Concept forall(std::string role, Concept c);
  static Concept exists(std::string role, Concept c);
  static Concept at_least(std::uint32_t n, std::string role, Concept c);
  static Concept at_most(std::uint32_t n, std::string role, Concept c);

  ConceptKind kind() const { return node_->kind; }
  // Concept name for Name, role name for the restrictions.
  const std::string& label() const { return node_->label; }
  const std::string& role() const { return node_->label; }
  std::uint32_t cardinality() const { return node_->n; }
  const Concept& operand() const { return node_->args[0]; }
  const Concept& left() const { return node_->args[0]; }
  const Concept& right() const { return node_->args[1]; }
  const std::vector<Concept>& args() const { return node_->args; }

  bool is_restriction() const;
  // Max nesting of role restrictions.
  int quantifier_depth() const;

  // s-expression rendering, e.g. "(and A (not (all r B)))".
  std::string str() const;

  friend bool operator==(const Concept& a, const Concept& b);
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

 private:
  struct Node {
    ConceptKind kind;
    std::string label;
    std::uint32_t n = 0;
    std::vector<Concept> args;
  };
  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Concept make(ConceptKind k, std::string label, std::uint32_t n,
                      std::vector<Concept> args);

  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& out, const Concept& c);

// Rewrites abbreviations into core syntax and collapses double negation:
// bot -> not top, C or D -> not(not C and not D), some r.C -> atleast 1 r.C,
// atleast 0 r.C -> top, not not C -> C. Idempotent.
Concept normalize(const Concept& c, AtMostMode mode = AtMostMode::Involutive);

bool is_normalized(const Concept& c);

// not C, collapsing a leading double negation: negate(not C) == C.
Concept negate(const Concept& c);

// Roles occurring in `c`.
void collect_roles(const Concept& c, std::set<std::string>& out);
// Concept names occurring in `c`.
void collect_names(const Concept& c, std::set<std::string>& out);

}  // namespace gcrisp
