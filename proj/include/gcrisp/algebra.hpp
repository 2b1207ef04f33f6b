#pragma once

// Exact Gödel algebra over rational truth degrees.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gcrisp {

// A truth degree: an exact rational in [0,1], always kept in canonical form.
class Degree {
 public:
  Degree() : value_(0) {}

  // Throws gcrisp::Error if `value` lies outside [0,1].
  static Degree from_rational(const mpq_class& value);
  static Degree from_fraction(long num, unsigned long den);

  // Accepts "0", "1", "0.25", ".5", "3/4". Decimals are read exactly.
  // Throws gcrisp::Error on malformed text or a value outside [0,1].
  static Degree parse(std::string_view text);

  static Degree zero() { return Degree(); }
  static Degree half() { return from_fraction(1, 2); }
  static Degree one() { return from_fraction(1, 1); }

  const mpq_class& value() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return cmp(value_, 1) == 0; }

  // 1 - x.
  Degree complement() const;

  // Canonical "p/q" form ("0" and "1" for the endpoints).
  std::string str() const;

  friend bool operator==(const Degree& a, const Degree& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  explicit Degree(mpq_class v) : value_(std::move(v)) {}
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& out, const Degree& d);

Degree t_norm(const Degree& x, const Degree& y);
Degree residuum(const Degree& x, const Degree& y);
Degree residual_negation(const Degree& x);
Degree involutive_negation(const Degree& x);

// Strictly ascending set of degrees containing 0, 1/2 and 1 and closed
// under x -> 1-x.
class ValueSet {
 public:
  ValueSet();  // {0, 1/2, 1}

  static ValueSet closure_of(std::span<const Degree> degrees);

  std::size_t size() const { return degrees_.size(); }
  const Degree& operator[](std::size_t i) const { return degrees_[i]; }
  auto begin() const { return degrees_.begin(); }
  auto end() const { return degrees_.end(); }
  const std::vector<Degree>& degrees() const { return degrees_; }

  bool contains(const Degree& d) const;
  // Position of `d`, or size() if absent.
  std::size_t index_of(const Degree& d) const;

  friend bool operator==(const ValueSet&, const ValueSet&) = default;

 private:
  std::vector<Degree> degrees_;
};

std::ostream& operator<<(std::ostream& out, const ValueSet& v);

}  // namespace gcrisp
