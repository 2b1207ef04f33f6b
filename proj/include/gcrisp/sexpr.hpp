#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gcrisp {

// Minimal s-expression tree: an atom (symbol text) or a list. Positions are
// kept for error reporting.
struct Sexpr {
  bool is_list = false;
  std::string atom;
  std::vector<Sexpr> items;
  int line = 1;
  int column = 1;

  bool is_atom() const { return !is_list; }
  bool is_atom(std::string_view s) const { return !is_list && atom == s; }
  // True for a list whose first item is the atom `head`.
  bool has_head(std::string_view head) const {
    return is_list && !items.empty() && items.front().is_atom(head);
  }
};

// Reads every top-level form. `;` starts a comment running to end of line.
// Throws ParseError with the offending position.
std::vector<Sexpr> read_sexprs(std::string_view text);

std::string to_string(const Sexpr& s);
std::ostream& operator<<(std::ostream& out, const Sexpr& s);

}  // namespace gcrisp
