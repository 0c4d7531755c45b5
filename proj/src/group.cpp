#include "espo/group.hpp"

#include <algorithm>
#include <sstream>

#include "espo/errors.hpp"

namespace espo {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ValidationError("exponent overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ValidationError("exponent overflow");
  return r;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

EllipticPoint elliptic_add(const GroupModel& g, const EllipticPoint& p, const EllipticPoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  Rational lambda;
  if (p.x == q.x) {
    if (p.y == -q.y) return EllipticPoint{};
    lambda = (3 * p.x * p.x + g.a()) / (2 * p.y);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  EllipticPoint r;
  r.infinity = false;
  r.x = lambda * lambda - p.x - q.x;
  r.y = lambda * (p.x - r.x) - p.y;
  return r;
}

}  // namespace

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::additive: return "additive";
    case GroupKind::multiplicative: return "multiplicative";
    case GroupKind::elliptic: return "elliptic";
  }
  return "unknown";
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

GroupModel GroupModel::additive(std::size_t dim) {
  if (dim == 0) throw ValidationError("additive group of dimension 0");
  GroupModel g;
  g.kind_ = GroupKind::additive;
  g.dim_ = dim;
  return g;
}

GroupModel GroupModel::multiplicative(std::size_t dim, std::vector<long> primes) {
  if (dim == 0) throw ValidationError("multiplicative group of dimension 0");
  if (primes.empty()) throw ValidationError("multiplicative group needs a nonempty prime basis");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) throw ValidationError("prime basis entry is not prime: " + std::to_string(primes[i]));
    if (i && primes[i] <= primes[i - 1]) throw ValidationError("prime basis must be strictly increasing");
  }
  GroupModel g;
  g.kind_ = GroupKind::multiplicative;
  g.dim_ = dim;
  g.primes_ = std::move(primes);
  return g;
}

GroupModel GroupModel::elliptic(Rational a, Rational b) {
  if (4 * a * a * a + 27 * b * b == 0) throw ValidationError("singular curve: 4a^3 + 27b^2 = 0");
  GroupModel g;
  g.kind_ = GroupKind::elliptic;
  g.dim_ = 1;
  g.a_ = std::move(a);
  g.b_ = std::move(b);
  return g;
}

std::size_t GroupModel::element_width() const noexcept {
  switch (kind_) {
    case GroupKind::additive: return dim_;
    case GroupKind::multiplicative: return dim_ * primes_.size();
    case GroupKind::elliptic: return 2;
  }
  return 0;
}

std::string GroupModel::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case GroupKind::additive: out << "G_a^" << dim_ << "(Q)"; break;
    case GroupKind::multiplicative: {
      out << "G_m^" << dim_ << "(Q>0) over {";
      for (std::size_t i = 0; i < primes_.size(); ++i) out << (i ? "," : "") << primes_[i];
      out << '}';
      break;
    }
    case GroupKind::elliptic:
      out << "E: y^2 = x^3 + (" << to_string(a_) << ")x + (" << to_string(b_) << ")";
      break;
  }
  return out.str();
}

GroupElement GroupElement::additive(std::vector<Rational> coords) {
  GroupElement e;
  e.value_ = std::move(coords);
  return e;
}

GroupElement GroupElement::multiplicative(std::vector<std::int64_t> exponents) {
  GroupElement e;
  e.value_ = std::move(exponents);
  return e;
}

GroupElement GroupElement::infinity() {
  GroupElement e;
  e.value_ = EllipticPoint{};
  return e;
}

GroupElement GroupElement::affine(Rational x, Rational y) {
  GroupElement e;
  e.value_ = EllipticPoint{false, std::move(x), std::move(y)};
  return e;
}

GroupKind GroupElement::kind() const noexcept { return static_cast<GroupKind>(value_.index()); }

const std::vector<Rational>& GroupElement::coords() const {
  if (auto* v = std::get_if<0>(&value_)) return *v;
  throw ValidationError("element is not additive");
}

const std::vector<std::int64_t>& GroupElement::exponents() const {
  if (auto* v = std::get_if<1>(&value_)) return *v;
  throw ValidationError("element is not multiplicative");
}

const EllipticPoint& GroupElement::point() const {
  if (auto* v = std::get_if<2>(&value_)) return *v;
  throw ValidationError("element is not an elliptic point");
}

std::size_t GroupElement::hash() const {
  std::size_t seed = value_.index();
  switch (value_.index()) {
    case 0:
      for (const auto& q : std::get<0>(value_)) hash_combine(seed, hash_value(q));
      break;
    case 1:
      for (auto e : std::get<1>(value_)) hash_combine(seed, std::hash<std::int64_t>{}(e));
      break;
    default: {
      const auto& p = std::get<2>(value_);
      if (!p.infinity) {
        hash_combine(seed, hash_value(p.x));
        hash_combine(seed, hash_value(p.y));
      }
    }
  }
  return seed;
}

bool operator<(const GroupElement& p, const GroupElement& q) {
  if (p.value_.index() != q.value_.index()) return p.value_.index() < q.value_.index();
  switch (p.value_.index()) {
    case 0: return std::get<0>(p.value_) < std::get<0>(q.value_);
    case 1: return std::get<1>(p.value_) < std::get<1>(q.value_);
    default: {
      const auto& a = std::get<2>(p.value_);
      const auto& b = std::get<2>(q.value_);
      if (a.infinity || b.infinity) return a.infinity && !b.infinity;
      if (a.x != b.x) return a.x < b.x;
      return a.y < b.y;
    }
  }
}

Endomorphism Endomorphism::additive(RatMatrix m) {
  if (m.rows() != m.cols()) throw ValidationError("additive endomorphism must be square");
  Endomorphism e;
  e.value_ = std::move(m);
  return e;
}

Endomorphism Endomorphism::multiplicative(IntMatrix m) {
  if (m.rows() != m.cols()) throw ValidationError("multiplicative endomorphism must be square");
  Endomorphism e;
  e.value_ = std::move(m);
  return e;
}

Endomorphism Endomorphism::elliptic(Integer n) {
  Endomorphism e;
  e.value_ = std::move(n);
  return e;
}

Endomorphism Endomorphism::scalar(const GroupModel& g, const Integer& n) {
  switch (g.kind()) {
    case GroupKind::additive: return additive(Rational(n) * RatMatrix::identity(g.dimension()));
    case GroupKind::multiplicative: return multiplicative(n * IntMatrix::identity(g.dimension()));
    case GroupKind::elliptic: return elliptic(n);
  }
  throw ValidationError("unknown group kind");
}

GroupKind Endomorphism::kind() const noexcept { return static_cast<GroupKind>(value_.index()); }

const RatMatrix& Endomorphism::rational_matrix() const {
  if (auto* v = std::get_if<0>(&value_)) return *v;
  throw ValidationError("endomorphism is not additive");
}

const IntMatrix& Endomorphism::integer_matrix() const {
  if (auto* v = std::get_if<1>(&value_)) return *v;
  throw ValidationError("endomorphism is not multiplicative");
}

const Integer& Endomorphism::multiplier() const {
  if (auto* v = std::get_if<2>(&value_)) return *v;
  throw ValidationError("endomorphism is not an elliptic multiplier");
}

bool Endomorphism::is_zero() const {
  return std::visit(
      [](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, Integer>) {
          return v == 0;
        } else {
          return std::all_of(v.entries().begin(), v.entries().end(), [](const auto& x) { return x == 0; });
        }
      },
      value_);
}

bool Endomorphism::is_unit_scalar(int& sign) const {
  return std::visit(
      [&sign](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, Integer>) {
          if (v == 1 || v == -1) {
            sign = v == 1 ? 1 : -1;
            return true;
          }
          return false;
        } else {
          for (int s : {1, -1}) {
            bool ok = true;
            for (std::size_t i = 0; i < v.rows() && ok; ++i)
              for (std::size_t j = 0; j < v.cols() && ok; ++j) ok = v(i, j) == (i == j ? s : 0);
            if (ok) {
              sign = s;
              return true;
            }
          }
          return false;
        }
      },
      value_);
}

void Endomorphism::validate(const GroupModel& g) const {
  if (kind() != g.kind())
    throw ValidationError("endomorphism kind " + to_string(kind()) + " does not match group " + to_string(g.kind()));
  if (g.kind() == GroupKind::additive && rational_matrix().rows() != g.dimension())
    throw ValidationError("additive endomorphism size does not match group dimension");
  if (g.kind() == GroupKind::multiplicative && integer_matrix().rows() != g.dimension())
    throw ValidationError("multiplicative endomorphism size does not match group dimension");
}

Endomorphism operator*(const Endomorphism& f, const Endomorphism& g) {
  if (f.kind() != g.kind()) throw ValidationError("composing endomorphisms of different kinds");
  Endomorphism r;
  switch (f.kind()) {
    case GroupKind::additive: r.value_ = f.rational_matrix() * g.rational_matrix(); break;
    case GroupKind::multiplicative: r.value_ = f.integer_matrix() * g.integer_matrix(); break;
    case GroupKind::elliptic: r.value_ = Integer(f.multiplier() * g.multiplier()); break;
  }
  return r;
}

Endomorphism operator+(const Endomorphism& f, const Endomorphism& g) {
  if (f.kind() != g.kind()) throw ValidationError("adding endomorphisms of different kinds");
  Endomorphism r;
  switch (f.kind()) {
    case GroupKind::additive: r.value_ = f.rational_matrix() + g.rational_matrix(); break;
    case GroupKind::multiplicative: r.value_ = f.integer_matrix() + g.integer_matrix(); break;
    case GroupKind::elliptic: r.value_ = Integer(f.multiplier() + g.multiplier()); break;
  }
  return r;
}

Endomorphism operator-(const Endomorphism& f) {
  Endomorphism r;
  switch (f.kind()) {
    case GroupKind::additive: r.value_ = -f.rational_matrix(); break;
    case GroupKind::multiplicative: r.value_ = -f.integer_matrix(); break;
    case GroupKind::elliptic: r.value_ = Integer(-f.multiplier()); break;
  }
  return r;
}

std::string Endomorphism::describe() const {
  switch (kind()) {
    case GroupKind::additive: {
      std::ostringstream out;
      const auto& m = rational_matrix();
      out << '[';
      for (std::size_t i = 0; i < m.rows(); ++i) {
        out << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << to_string(m(i, j));
        out << ']';
      }
      out << ']';
      return out.str();
    }
    case GroupKind::multiplicative: return to_string(integer_matrix());
    case GroupKind::elliptic: return to_string(multiplier());
  }
  return {};
}

void validate(const GroupModel& g, const GroupElement& p) {
  if (p.kind() != g.kind())
    throw ValidationError("element kind " + to_string(p.kind()) + " does not match group " + to_string(g.kind()));
  switch (g.kind()) {
    case GroupKind::additive:
      if (p.coords().size() != g.dimension()) throw ValidationError("additive element has wrong length");
      return;
    case GroupKind::multiplicative:
      if (p.exponents().size() != g.element_width())
        throw ValidationError("multiplicative element exponent data has wrong length");
      return;
    case GroupKind::elliptic: {
      const auto& pt = p.point();
      if (pt.infinity) return;
      if (pt.y * pt.y != pt.x * pt.x * pt.x + g.a() * pt.x + g.b())
        throw ValidationError("point (" + to_string(pt.x) + ", " + to_string(pt.y) + ") is not on the curve");
      return;
    }
  }
}

bool is_valid(const GroupModel& g, const GroupElement& p) {
  try {
    validate(g, p);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

GroupElement identity(const GroupModel& g) {
  switch (g.kind()) {
    case GroupKind::additive: return GroupElement::additive(std::vector<Rational>(g.dimension(), Rational(0)));
    case GroupKind::multiplicative: return GroupElement::multiplicative(std::vector<std::int64_t>(g.element_width(), 0));
    case GroupKind::elliptic: return GroupElement::infinity();
  }
  throw ValidationError("unknown group kind");
}

GroupElement group_add(const GroupModel& g, const GroupElement& p, const GroupElement& q) {
  validate(g, p);
  validate(g, q);
  switch (g.kind()) {
    case GroupKind::additive: {
      std::vector<Rational> out = p.coords();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += q.coords()[i];
      return GroupElement::additive(std::move(out));
    }
    case GroupKind::multiplicative: {
      std::vector<std::int64_t> out = p.exponents();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_add(out[i], q.exponents()[i]);
      return GroupElement::multiplicative(std::move(out));
    }
    case GroupKind::elliptic: {
      const auto r = elliptic_add(g, p.point(), q.point());
      return r.infinity ? GroupElement::infinity() : GroupElement::affine(r.x, r.y);
    }
  }
  throw ValidationError("unknown group kind");
}

GroupElement negate(const GroupModel& g, const GroupElement& p) {
  validate(g, p);
  switch (g.kind()) {
    case GroupKind::additive: {
      std::vector<Rational> out = p.coords();
      for (auto& v : out) v = -v;
      return GroupElement::additive(std::move(out));
    }
    case GroupKind::multiplicative: {
      std::vector<std::int64_t> out = p.exponents();
      for (auto& v : out) v = checked_mul(v, -1);
      return GroupElement::multiplicative(std::move(out));
    }
    case GroupKind::elliptic:
      if (p.is_infinity()) return p;
      return GroupElement::affine(p.point().x, -p.point().y);
  }
  throw ValidationError("unknown group kind");
}

GroupElement group_sub(const GroupModel& g, const GroupElement& p, const GroupElement& q) {
  return group_add(g, p, negate(g, q));
}

GroupElement scalar_mul(const GroupModel& g, const Integer& n, const GroupElement& p) {
  validate(g, p);
  switch (g.kind()) {
    case GroupKind::additive: {
      std::vector<Rational> out = p.coords();
      for (auto& v : out) v *= n;
      return GroupElement::additive(std::move(out));
    }
    case GroupKind::multiplicative: {
      std::vector<std::int64_t> out = p.exponents();
      const bool trivial = std::all_of(out.begin(), out.end(), [](std::int64_t v) { return v == 0; });
      if (trivial) return p;
      const std::int64_t k = to_int64(n);
      for (auto& v : out) v = checked_mul(v, k);
      return GroupElement::multiplicative(std::move(out));
    }
    case GroupKind::elliptic: {
      // Double-and-add on |n|.
      EllipticPoint result;
      EllipticPoint addend = p.point();
      Integer k = abs(n);
      while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = elliptic_add(g, result, addend);
        k >>= 1;
        if (k > 0) addend = elliptic_add(g, addend, addend);
      }
      if (!result.infinity && n < 0) result.y = -result.y;
      return result.infinity ? GroupElement::infinity() : GroupElement::affine(result.x, result.y);
    }
  }
  throw ValidationError("unknown group kind");
}

GroupElement apply_endomorphism(const GroupModel& g, const Endomorphism& e, const GroupElement& p) {
  e.validate(g);
  validate(g, p);
  switch (g.kind()) {
    case GroupKind::additive: {
      const auto& m = e.rational_matrix();
      const auto& v = p.coords();
      std::vector<Rational> out(v.size(), Rational(0));
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (m(i, j) != 0) out[i] += m(i, j) * v[j];
      return GroupElement::additive(std::move(out));
    }
    case GroupKind::multiplicative: {
      const auto& m = e.integer_matrix();
      const auto& x = p.exponents();
      const std::size_t r = g.dimension();
      const std::size_t width = g.primes().size();
      std::vector<std::int64_t> out(x.size(), 0);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
          if (m(a, b) == 0) continue;
          const std::int64_t c = to_int64(m(a, b));
          for (std::size_t k = 0; k < width; ++k)
            out[a * width + k] = checked_add(out[a * width + k], checked_mul(c, x[b * width + k]));
        }
      return GroupElement::multiplicative(std::move(out));
    }
    case GroupKind::elliptic: return scalar_mul(g, e.multiplier(), p);
  }
  throw ValidationError("unknown group kind");
}

std::vector<std::int64_t> mul_encode(std::span<const long> basis, const Rational& q) {
  if (q <= 0) throw EncodingError("only positive rationals are encodable, got " + to_string(q));
  Integer num = q.get_num();
  Integer den = q.get_den();
  std::vector<std::int64_t> out(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Integer p = basis[i];
    while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
      num /= p;
      ++out[i];
    }
    while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
      den /= p;
      --out[i];
    }
  }
  if (num != 1 || den != 1) throw EncodingError(to_string(q) + " has a prime factor outside the basis");
  return out;
}

Rational mul_decode(std::span<const long> basis, std::span<const std::int64_t> exponents) {
  if (basis.size() != exponents.size()) throw DimensionError("exponent vector length does not match basis");
  Integer num = 1, den = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Integer p = basis[i];
    if (exponents[i] > 0) num *= pow(p, static_cast<unsigned long>(exponents[i]));
    if (exponents[i] < 0) den *= pow(p, static_cast<unsigned long>(-exponents[i]));
  }
  return make_rational(num, den);
}

GroupElement multiplicative_from_values(const GroupModel& g, std::span<const Rational> values) {
  if (g.kind() != GroupKind::multiplicative) throw ValidationError("group is not multiplicative");
  if (values.size() != g.dimension()) throw DimensionError("value count does not match group dimension");
  std::vector<std::int64_t> out;
  out.reserve(g.element_width());
  for (const auto& v : values) {
    auto e = mul_encode(g.primes(), v);
    out.insert(out.end(), e.begin(), e.end());
  }
  return GroupElement::multiplicative(std::move(out));
}

std::vector<Rational> multiplicative_values(const GroupModel& g, const GroupElement& p) {
  validate(g, p);
  const std::size_t width = g.primes().size();
  std::vector<Rational> out;
  for (std::size_t a = 0; a < g.dimension(); ++a)
    out.push_back(mul_decode(g.primes(), std::span(p.exponents()).subspan(a * width, width)));
  return out;
}

std::size_t affine_width(const GroupModel& g) {
  return g.kind() == GroupKind::elliptic ? 2 : g.dimension();
}

std::vector<Rational> affine_coordinates(const GroupModel& g, const GroupElement& p) {
  switch (g.kind()) {
    case GroupKind::additive: return p.coords();
    case GroupKind::multiplicative: return multiplicative_values(g, p);
    case GroupKind::elliptic:
      if (p.is_infinity()) return {};
      return {p.point().x, p.point().y};
  }
  return {};
}

bool element_from_affine(const GroupModel& g, std::span<const Rational> values, GroupElement& out) {
  switch (g.kind()) {
    case GroupKind::additive:
      out = GroupElement::additive(std::vector<Rational>(values.begin(), values.end()));
      return true;
    case GroupKind::multiplicative:
      try {
        out = multiplicative_from_values(g, values);
        return true;
      } catch (const EncodingError&) {
        return false;
      }
    case GroupKind::elliptic:
      out = GroupElement::affine(values[0], values[1]);
      return is_valid(g, out);
  }
  return false;
}

std::string format_element(const GroupModel& g, const GroupElement& p) {
  validate(g, p);
  std::ostringstream out;
  switch (g.kind()) {
    case GroupKind::additive: {
      const auto& c = p.coords();
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << to_string(c[i]);
      break;
    }
    case GroupKind::multiplicative: {
      const std::size_t width = g.primes().size();
      const auto& e = p.exponents();
      for (std::size_t a = 0; a < g.dimension(); ++a) {
        if (a) out << '|';
        for (std::size_t k = 0; k < width; ++k) out << (k ? " " : "") << e[a * width + k];
      }
      break;
    }
    case GroupKind::elliptic:
      if (p.is_infinity())
        out << 'O';
      else
        out << to_string(p.point().x) << ',' << to_string(p.point().y);
      break;
  }
  return out.str();
}

GroupElement parse_element(const GroupModel& g, std::string_view line) {
  line = trim(line);
  GroupElement e;
  switch (g.kind()) {
    case GroupKind::additive: {
      std::vector<Rational> coords;
      for (auto part : split(line, ',')) coords.push_back(parse_rational(part));
      e = GroupElement::additive(std::move(coords));
      break;
    }
    case GroupKind::multiplicative: {
      std::vector<std::int64_t> exps;
      for (auto group : split(line, '|')) {
        std::istringstream in{std::string(group)};
        std::string tok;
        std::size_t count = 0;
        while (in >> tok) {
          exps.push_back(to_int64(parse_integer(tok)));
          ++count;
        }
        if (count != g.primes().size()) throw ValidationError("exponent vector length does not match the prime basis");
      }
      e = GroupElement::multiplicative(std::move(exps));
      break;
    }
    case GroupKind::elliptic: {
      if (line == "O") return GroupElement::infinity();
      auto parts = split(line, ',');
      if (parts.size() != 2) throw ValidationError("elliptic point must be 'x,y' or 'O'");
      e = GroupElement::affine(parse_rational(parts[0]), parse_rational(parts[1]));
      break;
    }
  }
  validate(g, e);
  return e;
}

GroupModel parse_group(std::string_view text) {
  auto parts = split(trim(text), ':');
  const auto kind = parts[0];
  if (kind == "additive" && parts.size() == 2) return GroupModel::additive(std::stoul(std::string(parts[1])));
  if (kind == "multiplicative" && parts.size() == 3) {
    std::vector<long> primes;
    for (auto p : split(parts[2], ',')) primes.push_back(std::stol(std::string(trim(p))));
    return GroupModel::multiplicative(std::stoul(std::string(parts[1])), std::move(primes));
  }
  if (kind == "elliptic" && parts.size() == 2) {
    auto ab = split(parts[1], ',');
    if (ab.size() != 2) throw ValidationError("elliptic group spec must be elliptic:a,b");
    return GroupModel::elliptic(parse_rational(ab[0]), parse_rational(ab[1]));
  }
  throw ValidationError("malformed group spec '" + std::string(text) + "'");
}

std::string format_group(const GroupModel& g) {
  std::ostringstream out;
  switch (g.kind()) {
    case GroupKind::additive: out << "additive:" << g.dimension(); break;
    case GroupKind::multiplicative:
      out << "multiplicative:" << g.dimension() << ':';
      for (std::size_t i = 0; i < g.primes().size(); ++i) out << (i ? "," : "") << g.primes()[i];
      break;
    case GroupKind::elliptic: out << "elliptic:" << to_string(g.a()) << ',' << to_string(g.b()); break;
  }
  return out.str();
}

}  // namespace espo
