#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "espo/rational.hpp"

namespace espo {

using Exponents = std::vector<unsigned>;

/// Sparse multivariate polynomial over Q. Terms are kept in a map keyed by
/// exponent vector, so there are never duplicate monomials or zero
/// coefficients, and iteration order is deterministic.
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t variables = 0) : variables_(variables) {}

  static MultiPoly constant(std::size_t variables, const Rational& c);
  static MultiPoly variable(std::size_t variables, std::size_t index);
  static MultiPoly monomial(const Rational& c, Exponents exponents);

  void add_term(const Rational& c, Exponents exponents);

  std::size_t variables() const noexcept { return variables_; }
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  unsigned degree() const;
  unsigned degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }
  Rational coefficient(const Exponents& e) const;

  // Throws DimensionError when point.size() != variables().
  Rational evaluate(std::span<const Rational> point) const;

  MultiPoly pow(unsigned k) const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Rational& s, const MultiPoly& a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
  }

  // Human readable, variables named x0, x1, ...
  std::string to_string() const;

 private:
  std::size_t variables_;
  std::map<Exponents, Rational> terms_;
};

Rational poly_eval(const MultiPoly& p, std::span<const Rational> point);

// All exponent vectors of total degree <= degree in `variables` variables,
// ordered by total degree, then lexicographically descending (x0^d first).
std::vector<Exponents> monomials_up_to(std::size_t variables, unsigned degree);

}  // namespace espo
