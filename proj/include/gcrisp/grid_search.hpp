#pragma once

// Exhaustive search for small fuzzy models with degrees from a finite grid.
// One-sided: a model found is a model; none found proves nothing.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gcrisp/algebra.hpp"
#include "gcrisp/fuzzy_model.hpp"
#include "gcrisp/ontology.hpp"

namespace gcrisp {

// V_O plus the midpoint of every two adjacent values.
std::vector<Degree> default_grid(const FuzzyOntology& o);
// V_O plus every multiple of `step`, closed under 1-x.
std::vector<Degree> step_grid(const FuzzyOntology& o, const Degree& step);

struct GridOptions {
  std::size_t max_domain = 2;
  std::vector<Degree> grid;  // empty: default_grid; must contain V_O
  std::uint64_t budget = 20'000'000;  // search nodes over all domain sizes
};

enum class GridStatus : std::uint8_t { Found, NotFound, Budget };

struct GridResult {
  GridStatus status = GridStatus::NotFound;
  std::optional<FuzzyInterpretation> model;
  std::size_t domain_size = 0;    // of the model, or the last size tried
  std::uint64_t explored = 0;
};

// Domains 1..max_domain in order, element 0 as the individual, concept
// names then roles (by source element) in a fixed order, degrees ascending.
// The first model found is re-checked with check_fuzzy_model.
GridResult grid_search_fuzzy_model(const FuzzyOntology& o,
                                   const GridOptions& opts = {});

}  // namespace gcrisp
