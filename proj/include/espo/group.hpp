#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "espo/matrix.hpp"
#include "espo/rational.hpp"

namespace espo {

enum class GroupKind { additive, multiplicative, elliptic };

std::string to_string(GroupKind kind);

/// One of the three exact group families:
///   additive(d)             (Q^d, +)
///   multiplicative(r, P)    ((Q_{>0})^r, *) with every coordinate factoring over the primes P
///   elliptic(a, b)          E(Q) for y^2 = x^3 + a x + b
class GroupModel {
 public:
  // The additive line Q.
  GroupModel() = default;

  static GroupModel additive(std::size_t dim);
  static GroupModel multiplicative(std::size_t dim, std::vector<long> primes);
  static GroupModel elliptic(Rational a, Rational b);

  GroupKind kind() const noexcept { return kind_; }
  // Algebraic dimension: d, r or 1.
  std::size_t dimension() const noexcept { return dim_; }
  const std::vector<long>& primes() const noexcept { return primes_; }
  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }

  // Number of int64 exponents (multiplicative) or rationals (additive) in an element.
  std::size_t element_width() const noexcept;

  std::string describe() const;

  friend bool operator==(const GroupModel& x, const GroupModel& y) {
    return x.kind_ == y.kind_ && x.dim_ == y.dim_ && x.primes_ == y.primes_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  GroupKind kind_ = GroupKind::additive;
  std::size_t dim_ = 1;
  std::vector<long> primes_;
  Rational a_, b_;
};

struct EllipticPoint {
  bool infinity = true;
  Rational x, y;

  friend bool operator==(const EllipticPoint& p, const EllipticPoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
};

/// A point of a GroupModel.
///
/// Multiplicative elements store r exponent vectors over the prime basis,
/// flattened row-major: exponent of prime p in coordinate a lives at index
/// a * |basis| + p.
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement additive(std::vector<Rational> coords);
  static GroupElement multiplicative(std::vector<std::int64_t> exponents);
  static GroupElement infinity();
  static GroupElement affine(Rational x, Rational y);

  GroupKind kind() const noexcept;
  const std::vector<Rational>& coords() const;
  const std::vector<std::int64_t>& exponents() const;
  const EllipticPoint& point() const;
  bool is_infinity() const { return point().infinity; }

  std::size_t hash() const;

  friend bool operator==(const GroupElement& p, const GroupElement& q) { return p.value_ == q.value_; }
  friend bool operator<(const GroupElement& p, const GroupElement& q);

 private:
  std::variant<std::vector<Rational>, std::vector<std::int64_t>, EllipticPoint> value_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& e) const { return e.hash(); }
};

/// An algebraic endomorphism of a GroupModel:
///   additive: a d x d rational matrix acting on column vectors,
///   multiplicative: an r x r integer matrix acting on the tuple of exponent vectors,
///   elliptic: multiplication by an integer.
class Endomorphism {
 public:
  static Endomorphism additive(RatMatrix m);
  static Endomorphism multiplicative(IntMatrix m);
  static Endomorphism elliptic(Integer n);
  // n times the identity in the given model.
  static Endomorphism scalar(const GroupModel& g, const Integer& n);
  static Endomorphism identity(const GroupModel& g) { return scalar(g, 1); }
  static Endomorphism zero(const GroupModel& g) { return scalar(g, 0); }

  GroupKind kind() const noexcept;
  const RatMatrix& rational_matrix() const;
  const IntMatrix& integer_matrix() const;
  const Integer& multiplier() const;

  bool is_zero() const;
  // True if this is +1 or -1 times the identity; sign receives the scalar.
  bool is_unit_scalar(int& sign) const;

  // Throws ValidationError when the shape does not match g.
  void validate(const GroupModel& g) const;

  // (f * g)(x) = f(g(x))
  friend Endomorphism operator*(const Endomorphism& f, const Endomorphism& g);
  friend Endomorphism operator+(const Endomorphism& f, const Endomorphism& g);
  friend Endomorphism operator-(const Endomorphism& f);
  friend bool operator==(const Endomorphism& f, const Endomorphism& g) { return f.value_ == g.value_; }

  std::string describe() const;

 private:
  std::variant<RatMatrix, IntMatrix, Integer> value_;
};

// Throws ValidationError with a reason when p is not a valid element of g.
void validate(const GroupModel& g, const GroupElement& p);
bool is_valid(const GroupModel& g, const GroupElement& p);

GroupElement identity(const GroupModel& g);
GroupElement group_add(const GroupModel& g, const GroupElement& p, const GroupElement& q);
GroupElement negate(const GroupModel& g, const GroupElement& p);
GroupElement group_sub(const GroupModel& g, const GroupElement& p, const GroupElement& q);
GroupElement scalar_mul(const GroupModel& g, const Integer& n, const GroupElement& p);
GroupElement apply_endomorphism(const GroupModel& g, const Endomorphism& e, const GroupElement& p);

// Exponent vector of a positive rational over the basis; EncodingError if it
// does not factor completely over the basis (or is not positive).
std::vector<std::int64_t> mul_encode(std::span<const long> basis, const Rational& q);
Rational mul_decode(std::span<const long> basis, std::span<const std::int64_t> exponents);

// Multiplicative element whose coordinates are the given positive rationals.
GroupElement multiplicative_from_values(const GroupModel& g, std::span<const Rational> values);
std::vector<Rational> multiplicative_values(const GroupModel& g, const GroupElement& p);

// Affine coordinates used by polynomial constraints: additive coords,
// multiplicative coordinate values, elliptic (x, y). Empty for the point at infinity.
std::vector<Rational> affine_coordinates(const GroupModel& g, const GroupElement& p);
std::size_t affine_width(const GroupModel& g);
// Inverse of affine_coordinates; returns false if the values name no element of g.
bool element_from_affine(const GroupModel& g, std::span<const Rational> values, GroupElement& out);

// Point file line encoding.
std::string format_element(const GroupModel& g, const GroupElement& p);
GroupElement parse_element(const GroupModel& g, std::string_view line);

// "additive:2", "multiplicative:4:2,3,5,7", "elliptic:0,-2"
GroupModel parse_group(std::string_view text);
std::string format_group(const GroupModel& g);

bool is_prime(long n);

}  // namespace espo
