#include "espo/sets.hpp"

#include "espo/errors.hpp"
#include "espo/parallel.hpp"
#include "espo/special_subgroup.hpp"

namespace espo {

PointSet progression(const GroupModel& g, const GroupElement& base, std::size_t M, ProgressionKind kind) {
  validate(g, base);
  PointSet out(g);
  if (kind == ProgressionKind::one_sided) {
    GroupElement acc = identity(g);
    for (std::size_t k = 0; k < M; ++k) {
      out.insert(acc);
      acc = group_add(g, acc, base);
    }
    return out;
  }
  std::vector<GroupElement> pos{identity(g)};
  for (std::size_t k = 1; k <= M; ++k) pos.push_back(group_add(g, pos.back(), base));
  for (std::size_t k = M; k >= 1; --k) out.insert(negate(g, pos[k]));
  for (const auto& e : pos) out.insert(e);
  return out;
}

bool is_generic_quaternion_point(const GroupModel& g, const GroupElement& p) {
  if (g.kind() != GroupKind::multiplicative || g.dimension() != 4) return false;
  validate(g, p);
  const std::size_t width = g.primes().size();
  IntMatrix e(4, width);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t k = 0; k < width; ++k) e(a, k) = Integer(static_cast<long>(p.exponents()[a * width + k]));
  return rank(e) == 4;
}

PointSet quaternion_ball_image(const GroupModel& g, long N, const GroupElement& generator) {
  if (g.kind() != GroupKind::multiplicative || g.dimension() != 4)
    throw ValidationError("quaternion ball image needs the multiplicative torus of dimension 4");
  if (N < 0) throw ValidationError("N must be non-negative");
  if (!is_generic_quaternion_point(g, generator))
    throw GenericityError("exponent matrix of the generator is singular");
  PointSet out(g);
  for (long n = -N; n <= N; ++n)
    for (long m = -N; m <= N; ++m)
      for (long p = -N; p <= N; ++p)
        for (long q = -N; q <= N; ++q) out.insert(apply_endomorphism(g, quaternion_endomorphism(n, m, p, q), generator));
  return out;
}

namespace {

GroupElement scale_by_leaf(const GroupModel& g, const Rational& c, const GroupElement& x) {
  if (is_integer(c)) return scalar_mul(g, Integer(c.get_num()), x);
  if (g.kind() != GroupKind::additive)
    throw ValidationError("rational scalar " + to_string(c) + " does not act on " + g.describe());
  std::vector<Rational> coords = x.coords();
  for (auto& v : coords) v *= c;
  return GroupElement::additive(std::move(coords));
}

long leaf_long(const RingElement& e) {
  const Rational& q = e.scalar();
  if (!is_integer(q) || !q.get_num().fits_slong_p()) throw ValidationError("scalar coordinate is not a small integer");
  return q.get_num().get_si();
}

}  // namespace

ScalarAction default_scalar_action(const FiltrationSpec& spec, const GroupModel& g) {
  switch (spec.kind()) {
    case FiltrationSpec::Kind::base:
      return [g](const RingElement& s, const GroupElement& x) { return scale_by_leaf(g, s.scalar(), x); };
    case FiltrationSpec::Kind::localize:
      if (spec.inner().kind() == FiltrationSpec::Kind::base || spec.inner().kind() == FiltrationSpec::Kind::localize)
        return [g](const RingElement& s, const GroupElement& x) { return scale_by_leaf(g, s.scalar(), x); };
      break;
    case FiltrationSpec::Kind::module_ext:
      if (spec.is_quaternion_order()) {
        if (g.kind() != GroupKind::multiplicative || g.dimension() != 4)
          throw ValidationError("the quaternion order acts only on the 4-dimensional multiplicative torus");
        return [g](const RingElement& s, const GroupElement& x) {
          const auto& c = s.children();
          return apply_endomorphism(g, quaternion_endomorphism(leaf_long(c[0]), leaf_long(c[1]), leaf_long(c[2]), leaf_long(c[3])), x);
        };
      }
      break;
    case FiltrationSpec::Kind::poly: break;
  }
  throw ValidationError("no scalar action of " + spec.describe() + " on " + g.describe());
}

ScalarAction module_scalar_action(const GroupModel& g, std::vector<Endomorphism> basis) {
  for (const auto& e : basis) e.validate(g);
  return [g, basis = std::move(basis)](const RingElement& s, const GroupElement& x) {
    const auto& c = s.children();
    if (c.size() != basis.size()) throw DimensionError("scalar has the wrong number of module coordinates");
    GroupElement acc = identity(g);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Rational& q = c[i].scalar();
      if (!is_integer(q)) throw ValidationError("module coordinates must be integers");
      if (q != 0) acc = group_add(g, acc, scalar_mul(g, Integer(q.get_num()), apply_endomorphism(g, basis[i], x)));
    }
    return acc;
  };
}

PointSet approximate_module(const GroupModel& g, std::span<const RingElement> scalars, const ScalarAction& action,
                            std::span<const GroupElement> generators, std::size_t cap, unsigned workers) {
  for (const auto& x : generators) validate(g, x);
  PointSet out(g);
  if (generators.empty()) {
    out.insert(identity(g));
    return out;
  }
  if (scalars.empty()) return out;
  const std::size_t s = scalars.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (total > cap / s) throw BudgetError("approximate module needs more than " + std::to_string(cap) + " combinations");
    total *= s;
  }
  // images[i][j] = scalars[j] acting on generators[i]
  std::vector<std::vector<GroupElement>> images(generators.size());
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (const auto& lambda : scalars) images[i].push_back(action(lambda, generators[i]));

  // Partition over the scalar of the first generator; merge in partition order.
  auto parts = parallel_map<std::vector<GroupElement>>(s, workers, [&](std::size_t first) {
    std::vector<GroupElement> local;
    std::vector<std::size_t> idx(generators.size(), 0);
    idx[0] = first;
    while (true) {
      GroupElement acc = images[0][first];
      for (std::size_t i = 1; i < generators.size(); ++i) acc = group_add(g, acc, images[i][idx[i]]);
      local.push_back(std::move(acc));
      std::size_t pos = 1;
      while (pos < idx.size() && ++idx[pos] == s) idx[pos++] = 0;
      if (pos >= idx.size()) break;
    }
    return local;
  });
  for (auto& part : parts)
    for (auto& e : part) out.insert(std::move(e));
  return out;
}

PointSet approximate_module(const GroupModel& g, const FiltrationSpec& spec, unsigned n,
                            std::span<const GroupElement> generators, std::size_t cap, unsigned workers) {
  const auto level = spec.level(n);
  return approximate_module(g, level, default_scalar_action(spec, g), generators, cap, workers);
}

}  // namespace espo
