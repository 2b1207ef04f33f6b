#pragma once

// Reading a fuzzy model off a tree-shaped classical model of red(O): every
// node's order atoms define a total preorder on U; its classes get degrees
// (fixed by the values and by the parent's degrees for ↑C, interpolated in
// between), and concept and role degrees are read from those.

#include <cstddef>
#include <string>
#include <vector>

#include "gcrisp/algebra.hpp"
#include "gcrisp/error.hpp"
#include "gcrisp/fuzzy_model.hpp"
#include "gcrisp/reduction.hpp"
#include "gcrisp/tableau.hpp"

namespace gcrisp {

// A node's atoms do not form the preorder red(U) and red(↑) describe.
class ExtractionError : public Error {
 public:
  ExtractionError(std::size_t node, const std::string& what)
      : Error("node " + std::to_string(node) + ": " + what), node_(node) {}
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

// v(α, u) for every α in U (by position) and tree node u.
struct ValueAssignment {
  std::vector<std::vector<Degree>> v;  // [node][position in U]
};

struct FuzzyExtraction {
  FuzzyInterpretation model;  // same domain as the tree
  ValueAssignment values;
};

// Throws ExtractionError naming the node and the broken axiom when some
// node's atoms are not a well-formed preorder.
FuzzyExtraction extract_fuzzy_model(const Reduction& red,
                                    const TreeInterpretation& tree);

struct PropertyReport {
  std::size_t p1 = 0;  // v(q,u) = q
  std::size_t p2 = 0;  // v(α,u) ≤ v(β,u) iff <α ≤ β> holds at u
  std::size_t p3 = 0;  // v(inv α,u) = 1 - v(α,u)
  std::size_t p4 = 0;  // v(C,parent u) = v(↑C,u)
  std::string first;   // first violation found

  std::size_t total() const { return p1 + p2 + p3 + p4; }
};

PropertyReport check_value_properties(const Reduction& red,
                                      const TreeInterpretation& tree,
                                      const ValueAssignment& values);

}  // namespace gcrisp
