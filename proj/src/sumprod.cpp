#include "espo/sumprod.hpp"

#include <algorithm>
#include <cmath>

#include "espo/errors.hpp"
#include "espo/parallel.hpp"

namespace espo {

PointSet sumset(const PointSet& a, unsigned workers) {
  const auto& g = a.ambient();
  const std::size_t n = a.size();
  auto rows = parallel_map<std::vector<GroupElement>>(n, workers, [&](std::size_t i) {
    std::vector<GroupElement> out;
    for (std::size_t j = i; j < n; ++j) out.push_back(group_add(g, a[i], a[j]));
    return out;
  });
  PointSet out(g);
  for (auto& row : rows)
    for (auto& e : row) out.insert(std::move(e));
  return out;
}

std::vector<Rational> elliptic_x_set(const GroupModel& curve, const GroupElement& P, std::size_t M) {
  if (curve.kind() != GroupKind::elliptic) throw ValidationError("elliptic_x_set needs an elliptic curve");
  validate(curve, P);
  std::vector<Rational> xs;
  GroupElement acc = identity(curve);
  for (std::size_t k = 1; k <= M; ++k) {
    acc = group_add(curve, acc, P);
    if (acc.is_infinity()) throw ValidationError("generator has finite order " + std::to_string(k));
    xs.push_back(acc.point().x);
  }
  return xs;
}

namespace {

bool rational_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  const Integer num(q.get_num()), den(q.get_den());
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  root = make_rational(Integer(sqrt(num)), Integer(sqrt(den)));
  return true;
}

}  // namespace

PointSet elliptic_pullback(const GroupModel& curve, const std::vector<Rational>& xs) {
  if (curve.kind() != GroupKind::elliptic) throw ValidationError("elliptic_pullback needs an elliptic curve");
  PointSet out(curve);
  for (const auto& x : xs) {
    Rational y;
    if (!rational_sqrt(x * x * x + curve.a() * x + curve.b(), y))
      throw PullbackError("no rational point with x = " + to_string(x));
    out.insert(GroupElement::affine(x, y));
    out.insert(GroupElement::affine(x, -y));
  }
  return out;
}

std::string to_string(SumProdConstruction c) {
  switch (c) {
    case SumProdConstruction::interval: return "interval";
    case SumProdConstruction::geometric: return "geometric";
    case SumProdConstruction::elliptic: return "elliptic";
  }
  return "?";
}

SumProdConstruction parse_construction(std::string_view text) {
  if (text == "interval") return SumProdConstruction::interval;
  if (text == "geometric") return SumProdConstruction::geometric;
  if (text == "elliptic") return SumProdConstruction::elliptic;
  throw ValidationError("unknown construction '" + std::string(text) + "'");
}

SumProdReport run_sumprod(const SumProdOptions& options) {
  const std::size_t n = options.size;
  const GroupModel line = GroupModel::additive(1);
  PointSet a1(line);
  std::optional<PointSet> a2;
  switch (options.construction) {
    case SumProdConstruction::interval: {
      std::vector<long> primes;
      for (long p = 2; p <= static_cast<long>(n); ++p)
        if (is_prime(p)) primes.push_back(p);
      if (primes.empty()) primes.push_back(2);
      const GroupModel mult = GroupModel::multiplicative(1, primes);
      a2.emplace(mult);
      for (std::size_t k = 1; k <= n; ++k) {
        const Rational v(static_cast<unsigned long>(k));
        a1.insert(GroupElement::additive({v}));
        a2->insert(multiplicative_from_values(mult, std::vector<Rational>{v}));
      }
      break;
    }
    case SumProdConstruction::geometric: {
      const GroupModel mult = GroupModel::multiplicative(1, {2});
      a2.emplace(mult);
      for (std::size_t k = 0; k < n; ++k) {
        a1.insert(GroupElement::additive({Rational(pow(Integer(2), static_cast<unsigned long>(k)))}));
        a2->insert(GroupElement::multiplicative({static_cast<std::int64_t>(k)}));
      }
      break;
    }
    case SumProdConstruction::elliptic: {
      if (n > options.elliptic_cap)
        throw BudgetError("elliptic construction capped at M = " + std::to_string(options.elliptic_cap));
      const GroupModel curve = GroupModel::elliptic(options.a, options.b);
      const auto xs = elliptic_x_set(curve, GroupElement::affine(options.px, options.py), n);
      for (const auto& x : xs) a1.insert(GroupElement::additive({x}));
      a2.emplace(elliptic_pullback(curve, xs));
      break;
    }
  }
  SumProdReport r;
  r.construction = to_string(options.construction);
  r.size = a1.size();
  const std::size_t s1 = sumset(a1, options.workers).size();
  const std::size_t s2 = sumset(*a2, options.workers).size();
  r.group1 = format_group(a1.ambient());
  r.group2 = format_group(a2->ambient());
  r.sum1 = s1;
  r.sum2 = s2;
  if (options.swap) {
    std::swap(r.group1, r.group2);
    std::swap(r.sum1, r.sum2);
  }
  r.max = std::max(s1, s2);
  if (r.size > 1) {
    const double e = std::log(static_cast<double>(r.max)) / std::log(static_cast<double>(r.size));
    r.exponent = std::round(e * 10000.0) / 10000.0;
  }
  return r;
}

}  // namespace espo
