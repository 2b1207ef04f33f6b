#pragma once

// Consistency of a classical ALCQ ontology with one named individual.
//
// Each node's Boolean content is saturated by a shared incremental SAT
// solver over the node-local vocabulary (order atoms, auxiliary variables
// for compound concepts, one variable per number/value restriction). The
// successors a node needs are then built per role by a search over
// successor types that realizes the choose and merge rules. Refuted
// successor requests come back as cores and are learned globally; a role
// whose requirements cannot be met blames the restrictions involved and the
// node is re-saturated. Nodes are blocked by an ancestor whose label already
// contains their request (equality blocking on the adopted label), or by a
// previously completed self-contained node.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcrisp/classical.hpp"

namespace gcrisp {

// Negation normal form. ¬ sits on atoms only; → is eliminated; ¬≥n becomes
// ≤(n-1), ¬≤n becomes ≥(n+1), ≤0 r.C becomes ∀r.¬C and ≥0 becomes ⊤.
// Nested ⊓/⊔ are flattened and ⊤/⊥ simplified.
ClassicalConcept nnf(const ClassicalConcept& c);

enum class Verdict : std::uint8_t { Consistent, Inconsistent, BudgetExhausted };
const char* to_string(Verdict v);

enum class BlockKind : std::uint8_t { None, Ancestor, Cached };

struct GraphNode {
  std::vector<bool> atoms;                   // truth of each atom
  std::vector<ClassicalConcept> restrictions;  // true ∀/≥/≤ concepts
  std::vector<std::pair<RoleId, std::size_t>> successors;
  BlockKind block = BlockKind::None;
  std::size_t blocked_by = 0;  // valid when block != None
  std::size_t depth = 0;       // distance from the root in the graph tree
};

// The clash-free completion graph of a consistent run. Node 0 is the root.
// A blocked node has no successors of its own; it reuses its blocker's.
struct CompletionGraph {
  std::vector<GraphNode> nodes;

  std::size_t size() const { return nodes.size(); }
  // Follows blocking pointers to the node whose successors apply.
  std::size_t resolve(std::size_t n) const;
};

struct AtomLit {
  AtomId atom;
  bool negated = false;
};

struct CanonicalOrder {
  std::vector<std::vector<AtomLit>> ladders;
  std::vector<AtomId> ties;

  bool empty() const { return ladders.empty() && ties.empty(); }
};

struct TableauOptions {
  std::size_t node_budget = 200000;
  // Decision polarity for a fresh successor: atom a prefers the parent's
  // value of atom successor_phase[a]. Empty means the same atom.
  std::vector<AtomId> successor_phase;
  // Canonical labels. Each ladder is a chain of literals, each implying the
  // next; a label takes the earliest satisfiable rung. Tie atoms then prefer
  // true and restrictions prefer false, in order. Ancestor blocking compares
  // only these atoms and the restrictions, so they must determine every
  // successor request. Empty means no canonicalization and full-label keys.
  CanonicalOrder canonical;
  // Receives one line per event when set.
  std::function<void(const std::string&)> trace;
};

struct TableauStats {
  std::size_t nodes = 0;
  std::size_t blocked = 0;
  std::size_t cache_hits = 0;
  std::size_t blames = 0;
  std::size_t child_failures = 0;
  std::uint64_t sat_calls = 0;
  std::uint64_t conflicts = 0;
};

struct TableauResult {
  Verdict verdict = Verdict::BudgetExhausted;
  CompletionGraph graph;  // filled when consistent
  TableauStats stats;
};

TableauResult check_consistency(const ClassicalOntology& o,
                                const TableauOptions& opts = {});

// Finite tree unraveling of a completion graph. Element 0 is the root.
struct TreeInterpretation {
  ClassicalInterpretation model;
  std::vector<std::optional<std::size_t>> parent;
  std::vector<RoleId> role;  // role of the edge from the parent
  std::vector<std::size_t> depth;
  std::vector<std::size_t> graph_node;
  // Cut nodes sit at the depth limit but have successors in the graph.
  std::vector<bool> cut;
  // Distance to the nearest cut node below; SIZE_MAX when none.
  std::vector<std::size_t> height;

  std::size_t size() const { return parent.size(); }
  // Nodes whose distance to the cut exceeds `quantifier_depth`.
  std::vector<bool> interior(std::size_t quantifier_depth) const;
};

// Throws Error when depth < 1.
TreeInterpretation extract_classical_model(const CompletionGraph& g,
                                           std::size_t depth);

}  // namespace gcrisp
