#pragma once

// Finite-model oracle for classical ALCQ: grounds the ontology over every
// domain of size 1..max_domain (element 0 is the individual, self-loops
// allowed) and asks a SAT solver for an interpretation.

#include <cstddef>
#include <cstdint>

#include "gcrisp/classical.hpp"

namespace gcrisp {

enum class BruteVerdict : std::uint8_t {
  Consistent,             // a model was found and re-checked
  InconsistentUpToBound,  // no model with at most max_domain elements
  Budget,                 // gave up before deciding every size
};

const char* to_string(BruteVerdict v);

struct BruteForceOptions {
  std::size_t max_domain = 4;
  std::uint64_t conflict_budget = 2'000'000;  // per domain size
  std::size_t clause_budget = 40'000'000;     // grounding size guard
};

struct BruteForceResult {
  BruteVerdict verdict = BruteVerdict::Budget;
  ClassicalInterpretation model;  // when consistent
  std::size_t sizes_refuted = 0;  // domain sizes 1..k shown model-free
  std::size_t clauses = 0;        // largest grounding built
};

BruteForceResult brute_force_consistency(const ClassicalOntology& o,
                                         const BruteForceOptions& opts = {});

}  // namespace gcrisp
