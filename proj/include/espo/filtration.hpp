#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "espo/rational.hpp"

namespace espo {

/// Element of a ring built by FiltrationSpec constructors: a rational leaf, or
/// a list of children (polynomial coefficients / module coordinates).
class RingElement {
 public:
  RingElement() : value_(Rational(0)) {}
  explicit RingElement(Rational q) : value_(std::move(q)) {}
  explicit RingElement(std::vector<RingElement> children) : value_(std::move(children)) {}

  bool is_scalar() const noexcept { return value_.index() == 0; }
  const Rational& scalar() const;
  const std::vector<RingElement>& children() const;

  std::size_t hash() const;
  std::string to_string() const;

  friend bool operator==(const RingElement& a, const RingElement& b) { return a.value_ == b.value_; }
  friend bool operator<(const RingElement& a, const RingElement& b);

 private:
  std::variant<Rational, std::vector<RingElement>> value_;
};

/// Level of a constrained filtration as a lattice box: the elements are
/// sum over slots s of c_s * scale * e_s with |c_s| <= bounds[s]. A slot is the
/// path of child indices leading to a leaf.
struct LevelShape {
  Rational scale = 1;
  std::map<std::vector<unsigned>, Integer> bounds;

  Integer size() const;
};

// a is a subset of b (both boxes).
bool shape_subset(const LevelShape& a, const LevelShape& b);
// {x + y : x, y in a}
LevelShape shape_sumset(const LevelShape& a);
// {c * x : x in a}
LevelShape shape_scaled(const LevelShape& a, const Integer& c);

// c[i][j][t]: a_i a_j = sum_t c[i][j][t] a_t
using StructureConstants = std::vector<std::vector<std::vector<Integer>>>;

/// Recursive description of a constrained filtration (O_n)_n:
///   base        O_n = [-2^n, 2^n] in Z
///   poly        O'_n = sum_{i<n} O_n X^i
///   localize    O'_n = a^-n O_{2kn}          (a an integer)
///   module_ext  O'_n = sum_i a_i O_n           (free module with structure constants)
class FiltrationSpec {
 public:
  enum class Kind { base, poly, localize, module_ext };

  static FiltrationSpec base();
  static FiltrationSpec poly(const FiltrationSpec& inner);
  static FiltrationSpec localize(const FiltrationSpec& inner, Integer a, unsigned k);
  static FiltrationSpec module_ext(const FiltrationSpec& inner, StructureConstants constants);
  // Z[i,j,k] over the base filtration, basis (1, i, j, k).
  static FiltrationSpec quaternion_order();

  Kind kind() const noexcept { return kind_; }
  const FiltrationSpec& inner() const;
  const Integer& localizer() const noexcept { return a_; }
  unsigned shift() const noexcept { return k_; }
  std::size_t module_rank() const noexcept { return constants_.size(); }
  const StructureConstants& constants() const noexcept { return constants_; }
  bool is_quaternion_order() const noexcept { return quaternion_; }

  RingElement zero() const;
  RingElement add(const RingElement& x, const RingElement& y) const;
  RingElement scale(const Rational& c, const RingElement& x) const;
  RingElement multiply(const RingElement& x, const RingElement& y) const;

  LevelShape shape(unsigned n) const;
  Integer level_size(unsigned n) const { return shape(n).size(); }
  bool in_level(const RingElement& x, unsigned n) const;

  // Materialized level in canonical order; BudgetError if larger than cap.
  std::vector<RingElement> level(unsigned n, std::size_t cap = 5'000'000) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::base;
  std::shared_ptr<const FiltrationSpec> inner_;
  Integer a_ = 1;
  unsigned k_ = 1;
  StructureConstants constants_;
  bool quaternion_ = false;

  RingElement trim(std::vector<RingElement> coeffs) const;
};

std::vector<RingElement> filtration_level(const FiltrationSpec& spec, unsigned n);

/// Finite-range check of one filtration axiom.
struct AxiomCheck {
  std::string axiom;
  unsigned n_min = 0;
  unsigned n_max = 0;
  bool holds = true;
  std::optional<unsigned> first_failure;
};

// O_n subset O_{n+1}
AxiomCheck check_cf0_chain(const FiltrationSpec& spec, unsigned n_max);
// O_n + O_n subset O_{n+k}
AxiomCheck check_cf1(const FiltrationSpec& spec, unsigned k, unsigned n_max);
// a O_n subset O_{n+k}
AxiomCheck check_cf2(const FiltrationSpec& spec, const Integer& a, unsigned k, unsigned n_max);
// |O_{n+1}| / |O_n| <= |O_n|^(1/2), compared exactly as |O_{n+1}|^2 <= |O_n|^3.
AxiomCheck check_cf3_surrogate(const FiltrationSpec& spec, unsigned n_min, unsigned n_max);

}  // namespace espo
