#include "gcrisp/extraction.hpp"

#include <algorithm>
#include <map>

namespace gcrisp {

namespace {

class NodeOrder {
 public:
  NodeOrder(const Reduction& red, const std::vector<bool>& atoms)
      : red_(red), atoms_(atoms), n_(red.structure().size()) {}

  bool le(std::size_t a, std::size_t b) const {
    return atoms_[red_.atom(a, b)];
  }

  // Elements grouped into ≡-classes, ascending. Throws on a relation that
  // is not a total preorder.
  std::vector<std::vector<std::size_t>> classes(std::size_t node) const {
    std::vector<std::size_t> rank(n_, 0);
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) rank[a] += le(b, a);
    }
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        if (le(a, b) != (rank[a] <= rank[b])) throw bad_preorder(node);
      }
    }
    std::map<std::size_t, std::vector<std::size_t>> by_rank;
    for (std::size_t a = 0; a < n_; ++a) by_rank[rank[a]].push_back(a);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [r, members] : by_rank) out.push_back(std::move(members));
    return out;
  }

 private:
  std::string name(std::size_t a) const {
    return red_.structure().name(red_.structure()[a]);
  }

  ExtractionError bad_preorder(std::size_t node) const {
    for (std::size_t a = 0; a < n_; ++a) {
      if (!le(a, a)) {
        return ExtractionError(node, "reflexivity fails for " + name(a));
      }
      for (std::size_t b = 0; b < n_; ++b) {
        if (!le(a, b) && !le(b, a)) {
          return ExtractionError(node, "totality fails for " + name(a) +
                                           ", " + name(b));
        }
        for (std::size_t c = 0; c < n_; ++c) {
          if (le(a, b) && le(b, c) && !le(a, c)) {
            return ExtractionError(node, "transitivity fails for " + name(a) +
                                             " <= " + name(b) + " <= " +
                                             name(c));
          }
        }
      }
    }
    return ExtractionError(node, "order atoms are not a total preorder");
  }

  const Reduction& red_;
  const std::vector<bool>& atoms_;
  std::size_t n_;
};

}  // namespace

FuzzyExtraction extract_fuzzy_model(const Reduction& red,
                                    const TreeInterpretation& tree) {
  const OrderStructure& u = red.structure();
  const std::size_t n = u.size();
  FuzzyExtraction out{FuzzyInterpretation(tree.size()), {}};
  out.values.v.assign(tree.size(), std::vector<Degree>(n));

  for (std::size_t node = 0; node < tree.size(); ++node) {
    NodeOrder ord(red, tree.model.atoms[node]);
    auto classes = ord.classes(node);
    const auto parent = tree.parent[node];

    // Degrees fixed by a value or, below the root, by ↑C.
    std::vector<std::optional<Degree>> fixed(classes.size());
    for (std::size_t k = 0; k < classes.size(); ++k) {
      for (std::size_t a : classes[k]) {
        std::optional<Degree> d;
        const UElement& e = u[a];
        if (e.kind == UKind::Value) {
          d = u.values()[e.index];
        } else if (e.kind == UKind::Up && parent) {
          d = out.values.v[*parent][u.position(UElement::current(e.index))];
        }
        if (!d) continue;
        if (fixed[k] && *fixed[k] != *d) {
          throw ExtractionError(node, "class of " + u.name(e) +
                                          " needs both " + fixed[k]->str() +
                                          " and " + d->str());
        }
        fixed[k] = d;
      }
    }
    if (!fixed.front() || !fixed.front()->is_zero() || !fixed.back() ||
        !fixed.back()->is_one()) {
      throw ExtractionError(node, "0 and 1 are not the extreme classes");
    }

    // Anonymous runs between fixed classes: q_i + j/(n_i+1)(q_{i+1} - q_i).
    std::size_t lo = 0;
    for (std::size_t k = 1; k < classes.size(); ++k) {
      if (!fixed[k]) continue;
      const mpq_class& a = fixed[lo]->value();
      const mpq_class& b = fixed[k]->value();
      if (!(a < b)) {
        throw ExtractionError(node, "fixed degrees " + fixed[lo]->str() +
                                        " and " + fixed[k]->str() +
                                        " are out of order");
      }
      const std::size_t gap = k - lo - 1;
      for (std::size_t j = 1; j <= gap; ++j) {
        mpq_class step(mpz_class(static_cast<unsigned long>(j)),
                       mpz_class(static_cast<unsigned long>(gap + 1)));
        step.canonicalize();
        fixed[lo + j] = Degree::from_rational(a + step * (b - a));
      }
      lo = k;
    }
    for (std::size_t k = 0; k < classes.size(); ++k) {
      for (std::size_t a : classes[k]) out.values.v[node][a] = *fixed[k];
    }
  }

  // I_f: A(u) = v(A,u); r(parent u, u) = v(λ,u) along tree edges.
  const std::size_t lambda = u.position(UElement::lambda());
  for (std::uint32_t i = 0; i < u.sub().size(); ++i) {
    const Concept& c = u.sub()[i];
    if (c.kind() != ConceptKind::Name) continue;
    const std::size_t pos = u.position(UElement::current(i));
    for (std::size_t node = 0; node < tree.size(); ++node) {
      out.model.set_concept(c.label(), node, out.values.v[node][pos]);
    }
  }
  for (std::size_t node = 0; node < tree.size(); ++node) {
    if (!tree.parent[node]) continue;
    out.model.set_role(red.classical().role_names[tree.role[node]],
                       *tree.parent[node], node, out.values.v[node][lambda]);
  }
  return out;
}

PropertyReport check_value_properties(const Reduction& red,
                                      const TreeInterpretation& tree,
                                      const ValueAssignment& values) {
  const OrderStructure& u = red.structure();
  const std::size_t n = u.size();
  PropertyReport rep;
  auto note = [&](std::size_t& counter, std::size_t node,
                  const std::string& what) {
    ++counter;
    if (rep.first.empty()) rep.first = "node " + std::to_string(node) + ": " + what;
  };
  for (std::size_t node = 0; node < tree.size(); ++node) {
    const auto& v = values.v[node];
    const auto& atoms = tree.model.atoms[node];
    for (std::uint32_t i = 0; i < u.values().size(); ++i) {
      if (v[u.position(UElement::value(i))] != u.values()[i]) {
        note(rep.p1, node, "P1 at " + u.values()[i].str());
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if ((v[a] <= v[b]) != atoms[red.atom(a, b)]) {
          note(rep.p2, node, "P2 at " + u.name(u[a]) + ", " + u.name(u[b]));
        }
      }
      if (v[u.position(u.inv(u[a]))] != v[a].complement()) {
        note(rep.p3, node, "P3 at " + u.name(u[a]));
      }
    }
    if (auto p = tree.parent[node]) {
      for (std::uint32_t i = 0; i < u.sub().size(); ++i) {
        if (values.v[*p][u.position(UElement::current(i))] !=
            v[u.position(UElement::up(i))]) {
          note(rep.p4, node, "P4 at " + u.sub()[i].str());
        }
      }
    }
  }
  return rep;
}

}  // namespace gcrisp
