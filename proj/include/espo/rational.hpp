#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace espo {

using Integer = mpz_class;
using Rational = mpq_class;

// Builds num/den in canonical form. Throws ValidationError on den == 0.
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);

// Throws ValidationError when q does not fit.
std::int64_t to_int64(const Integer& z);

Rational pow(const Rational& base, long exponent);
Integer pow(const Integer& base, unsigned long exponent);

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_value(const Integer& z);
std::size_t hash_value(const Rational& q);

struct RationalVectorHash {
  std::size_t operator()(const std::vector<Rational>& v) const;
};

}  // namespace espo
