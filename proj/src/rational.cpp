#include "espo/rational.hpp"

#include <cctype>
#include <limits>

#include "espo/errors.hpp"

namespace espo {
namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

bool valid_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  return true;
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(long num, long den) { return make_rational(Integer(num), Integer(den)); }

Integer parse_integer(std::string_view text) {
  text = trim(text);
  if (!valid_integer_literal(text)) throw ValidationError("malformed integer: '" + std::string(text) + "'");
  if (text[0] == '+') text.remove_prefix(1);
  return Integer(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) { return q.get_str(10); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw ValidationError("integer out of 64-bit range: " + to_string(z));
  return static_cast<std::int64_t>(z.get_si());
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw ValidationError("zero raised to a negative power");
    Rational inv = 1 / base;
    return pow(inv, -exponent);
  }
  auto e = static_cast<unsigned long>(exponent);
  return make_rational(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
}

namespace {
std::size_t hash_mpz(mpz_srcptr raw) {
  std::size_t seed = static_cast<std::size_t>(mpz_sgn(raw) + 1);
  const std::size_t limbs = mpz_size(raw);
  for (std::size_t i = 0; i < limbs; ++i) hash_combine(seed, static_cast<std::size_t>(mpz_getlimbn(raw, i)));
  return seed;
}
}  // namespace

std::size_t hash_value(const Integer& z) { return hash_mpz(z.get_mpz_t()); }

std::size_t hash_value(const Rational& q) {
  std::size_t seed = hash_mpz(mpq_numref(q.get_mpq_t()));
  hash_combine(seed, hash_mpz(mpq_denref(q.get_mpq_t())));
  return seed;
}

std::size_t RationalVectorHash::operator()(const std::vector<Rational>& v) const {
  std::size_t seed = v.size();
  for (const auto& q : v) hash_combine(seed, hash_value(q));
  return seed;
}

}  // namespace espo
