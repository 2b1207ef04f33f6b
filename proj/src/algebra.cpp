#include "gcrisp/algebra.hpp"

#include <algorithm>
#include <cctype>

#include "gcrisp/error.hpp"

namespace gcrisp {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

}  // namespace

Degree Degree::from_rational(const mpq_class& value) {
  mpq_class v(value);
  v.canonicalize();
  if (sgn(v) < 0 || cmp(v, 1) > 0) {
    throw Error("degree outside [0,1]: " + v.get_str());
  }
  return Degree(std::move(v));
}

Degree Degree::from_fraction(long num, unsigned long den) {
  if (den == 0) throw Error("degree with zero denominator");
  mpq_class v(num, den);
  return from_rational(v);
}

Degree Degree::parse(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  mpq_class v;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw Error("malformed degree '" + std::string(text) + "'");
    }
    mpz_class n{std::string(num), 10}, d{std::string(den), 10};
    if (d == 0) throw Error("degree with zero denominator");
    v = mpq_class(n, d);
  } else {
    auto dot = s.find('.');
    std::string_view whole = s.substr(0, dot);
    std::string_view frac =
        dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (whole.empty() && frac.empty()) {
      throw Error("malformed degree '" + std::string(text) + "'");
    }
    if ((!whole.empty() && !all_digits(whole)) ||
        (dot != std::string_view::npos && !all_digits(frac))) {
      throw Error("malformed degree '" + std::string(text) + "'");
    }
    std::string digits = std::string(whole) + std::string(frac);
    mpz_class n{digits.empty() ? std::string("0") : digits, 10};
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
    v = mpq_class(n, d);
  }
  v.canonicalize();
  if (negative) v = -v;
  return from_rational(v);
}

Degree Degree::complement() const { return Degree(mpq_class(1 - value_)); }

std::string Degree::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_str();
}

std::ostream& operator<<(std::ostream& out, const Degree& d) {
  return out << d.str();
}

Degree t_norm(const Degree& x, const Degree& y) { return std::min(x, y); }

Degree residuum(const Degree& x, const Degree& y) {
  return x <= y ? Degree::one() : y;
}

Degree residual_negation(const Degree& x) {
  return residuum(x, Degree::zero());
}

Degree involutive_negation(const Degree& x) { return x.complement(); }

ValueSet::ValueSet()
    : degrees_{Degree::zero(), Degree::half(), Degree::one()} {}

ValueSet ValueSet::closure_of(std::span<const Degree> degrees) {
  ValueSet out;
  for (const Degree& d : degrees) {
    out.degrees_.push_back(d);
    out.degrees_.push_back(d.complement());
  }
  std::sort(out.degrees_.begin(), out.degrees_.end());
  out.degrees_.erase(std::unique(out.degrees_.begin(), out.degrees_.end()),
                     out.degrees_.end());
  return out;
}

bool ValueSet::contains(const Degree& d) const {
  return std::binary_search(degrees_.begin(), degrees_.end(), d);
}

std::size_t ValueSet::index_of(const Degree& d) const {
  auto it = std::lower_bound(degrees_.begin(), degrees_.end(), d);
  if (it == degrees_.end() || *it != d) return degrees_.size();
  return static_cast<std::size_t>(it - degrees_.begin());
}

std::ostream& operator<<(std::ostream& out, const ValueSet& v) {
  out << '{';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i];
  }
  return out << '}';
}

}  // namespace gcrisp
