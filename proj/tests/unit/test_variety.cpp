#include <doctest.h>

#include "espo/errors.hpp"
#include "espo/random.hpp"
#include "espo/sets.hpp"
#include "espo/special_subgroup.hpp"
#include "espo/variety.hpp"

using namespace espo;

namespace {

// Closed form sum_{|t| <= M/2} (2M + 1 - |t|) for the progression of length 2M + 1.
std::uint64_t progression_count(long M) {
  std::uint64_t c = 0;
  for (long t = -M / 2; t <= M / 2; ++t) c += static_cast<std::uint64_t>(2 * M + 1 - std::labs(t));
  return c;
}

MultiPoly var4(std::size_t i) { return MultiPoly::variable(4, i); }

VarietySpec geometric_poly() {
  const GroupModel g = GroupModel::multiplicative(1, {2});
  const MultiPoly one = MultiPoly::constant(4, 1);
  return VarietySpec::poly({g, g, g, g},
                           {var4(0) * var4(2) * var4(3) - one, var4(1) * var4(2).pow(2) * var4(3).pow(2) - one}, 2);
}

VarietySpec geometric_lattice() {
  const GroupModel g = GroupModel::multiplicative(1, {2});
  auto s = [&](long n) { return Endomorphism::scalar(g, n); };
  return VarietySpec::lattice({g, 4, {{s(1), s(0), s(1), s(1)}, {s(0), s(1), s(2), s(2)}}});
}

VarietySpec geometric_graph() {
  const GroupModel g = GroupModel::multiplicative(1, {2});
  auto s = [&](long n) { return Endomorphism::scalar(g, n); };
  return VarietySpec::graph(g, 4, {GraphRelation{0, {{2, s(-1)}, {3, s(-1)}}, std::nullopt},
                                   GraphRelation{1, {{2, s(-2)}, {3, s(-2)}}, std::nullopt}});
}

std::vector<PointSet> progressions(long M) {
  const GroupModel g = GroupModel::multiplicative(1, {2});
  const PointSet x = progression(g, GroupElement::multiplicative({1}), static_cast<std::size_t>(M));
  return {x, x, x, x};
}

}  // namespace

TEST_CASE("geometric progression witness") {
  const auto sets = progressions(10);
  for (const auto& v : {geometric_poly(), geometric_lattice(), geometric_graph()}) {
    for (Strategy s : {Strategy::brute, Strategy::join}) {
      const CountResult r = count_intersection(v, sets, {s, 2});
      CHECK(r.count == 201);
      CHECK(r.strategy == s);
    }
  }
  CHECK(progression_count(10) == 201);
  for (long M : {8L, 16L, 32L, 64L})
    CHECK(count_intersection(geometric_lattice(), progressions(M), {Strategy::join}).count == progression_count(M));
}

TEST_CASE("variety dimensions") {
  CHECK(geometric_poly().declared_dimension() == 2);
  CHECK(geometric_lattice().declared_dimension() == 2);
  CHECK(geometric_graph().declared_dimension() == 2);
  CHECK(geometric_lattice().ambient_dimension() == 4);
  CHECK_THROWS_AS(VarietySpec::poly({GroupModel::additive(1)}, {MultiPoly::variable(2, 0)}, 1), DimensionError);
  CHECK_THROWS_AS(VarietySpec::poly({GroupModel::additive(1)}, {MultiPoly::variable(1, 0)}, 2), ValidationError);
}

TEST_CASE("membership agrees across modes") {
  const GroupModel g = GroupModel::multiplicative(1, {2});
  const auto p = geometric_poly(), l = geometric_lattice(), r = geometric_graph();
  TaskRng rng(2, "test/variety_membership");
  for (int t = 0; t < 200; ++t) {
    std::vector<GroupElement> tuple;
    for (int i = 0; i < 4; ++i) tuple.push_back(GroupElement::multiplicative({rng.between(-3, 3)}));
    const bool in = p.contains(tuple);
    CHECK(l.contains(tuple) == in);
    CHECK(r.contains(tuple) == in);
  }
  CHECK_THROWS_AS(p.contains(std::vector<GroupElement>{identity(g)}), DimensionError);
}

TEST_CASE("strategy selection") {
  CHECK(parse_strategy("auto") == Strategy::auto_select);
  CHECK(to_string(Strategy::join) == "join");
  CHECK_THROWS_AS(parse_strategy("fast"), ValidationError);
  // x^2 + y^2 = 1 is not solvable for a coordinate by the join planner.
  const GroupModel a = GroupModel::additive(1);
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  const VarietySpec circle = VarietySpec::poly({a, a}, {x * x + y * y - MultiPoly::constant(2, 1)}, 1);
  CHECK_FALSE(join_available(circle));
  PointSet s(a);
  for (long v = -2; v <= 2; ++v) s.insert(GroupElement::additive({v}));
  const std::vector<PointSet> sets{s, s};
  CHECK_THROWS_AS(count_intersection(circle, sets, {Strategy::join}), StrategyError);
  const CountResult r = count_intersection(circle, sets, {Strategy::auto_select});
  CHECK(r.count == 4);
  CHECK(r.strategy == Strategy::brute);
  CHECK_THROWS_AS(count_intersection(circle, sets, {Strategy::brute, 1, 10}), BudgetError);
  CHECK_THROWS_AS(count_intersection(circle, std::vector<PointSet>{s}, {}), DimensionError);
}

TEST_CASE("brute and join agree on random graph instances") {
  TaskRng rng(41, "test/graph_agreement");
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 1 + rng.below(2);
    const GroupModel g = GroupModel::additive(d);
    const std::size_t arity = 3 + rng.below(2);
    std::vector<GraphRelation> rels;
    const std::size_t count = 1 + rng.below(2);
    for (std::size_t r = 0; r < count; ++r) {
      GraphRelation rel;
      rel.target = arity - 1 - r;
      for (std::size_t i = 0; i + count < arity; ++i) {
        const long c = rng.between(-2, 2);
        if (c != 0) rel.terms.push_back({i, Endomorphism::scalar(g, c)});
      }
      if (rng.below(2)) {
        std::vector<Rational> c(d);
        for (auto& x : c) x = Rational(rng.between(-1, 1));
        rel.constant = GroupElement::additive(c);
      }
      rels.push_back(std::move(rel));
    }
    const VarietySpec v = VarietySpec::graph(g, arity, rels);
    std::vector<PointSet> sets;
    for (std::size_t i = 0; i < arity; ++i) {
      PointSet s(g);
      const std::size_t n = 3 + rng.below(5);
      while (s.size() < n) {
        std::vector<Rational> c(d);
        for (auto& x : c) x = Rational(rng.between(-3, 3));
        s.insert(GroupElement::additive(c));
      }
      sets.push_back(std::move(s));
    }
    const auto brute = count_intersection(v, sets, {Strategy::brute, 1});
    const auto join = count_intersection(v, sets, {Strategy::join, 3});
    CHECK(brute.count == join.count);
    CHECK(join.enumerated <= brute.enumerated);
  }
}

TEST_CASE("counts do not depend on the worker count") {
  const auto sets = progressions(16);
  const std::uint64_t expected = progression_count(16);
  for (unsigned w : {1u, 2u, 8u}) {
    CHECK(count_intersection(geometric_poly(), sets, {Strategy::join, w}).count == expected);
    CHECK(count_intersection(geometric_graph(), sets, {Strategy::brute, w}).count == expected);
  }
}

TEST_CASE("poly constraints over elliptic factors skip the point at infinity") {
  const GroupModel e = GroupModel::elliptic(0, -2);
  const PointSet pts = progression(e, GroupElement::affine(3, 5), 2);
  // x0 - 3 = 0 picks out the two points with x = 3.
  const VarietySpec v = VarietySpec::poly({e}, {MultiPoly::variable(2, 0) - MultiPoly::constant(2, 3)}, 0);
  const std::vector<PointSet> sets{pts};
  CHECK(count_intersection(v, sets, {Strategy::brute}).count == 2);
}

TEST_CASE("counts are monotone and permutation-equivariant") {
  const GroupModel g = GroupModel::multiplicative(1, {2});
  auto s = [&](long n) { return Endomorphism::scalar(g, n); };
  const auto sets = progressions(6);
  const std::uint64_t base = count_intersection(geometric_lattice(), sets, {}).count;
  auto bigger = sets;
  bigger[2].insert(GroupElement::multiplicative({40}));
  CHECK(count_intersection(geometric_lattice(), bigger, {}).count >= base);
  // Coordinates (x, y, z, w) -> (w, z, y, x).
  const VarietySpec permuted = VarietySpec::lattice({g, 4, {{s(1), s(1), s(0), s(1)}, {s(2), s(2), s(1), s(0)}}});
  const std::vector<PointSet> reversed{sets[3], sets[2], sets[1], sets[0]};
  CHECK(count_intersection(permuted, reversed, {Strategy::brute}).count == base);
  CHECK(count_intersection(permuted, reversed, {Strategy::join}).count == base);
}

TEST_CASE("subgroup counts are invariant under a common translation") {
  const GroupModel g = GroupModel::multiplicative(1, {2});
  const auto shift = GroupElement::multiplicative({3});
  // z = x + y on X^3 against z = x + y - t on (X + t)^3.
  auto s = [&](long n) { return Endomorphism::scalar(g, n); };
  const PointSet x = progression(g, GroupElement::multiplicative({1}), 7);
  PointSet xt(g);
  for (const auto& p : x) xt.insert(group_add(g, p, shift));
  const VarietySpec v = VarietySpec::graph(g, 3, {GraphRelation{2, {{0, s(1)}, {1, s(1)}}, std::nullopt}});
  const VarietySpec vt = VarietySpec::graph(g, 3, {GraphRelation{2, {{0, s(1)}, {1, s(1)}}, negate(g, shift)}});
  const std::vector<PointSet> plain{x, x, x}, moved{xt, xt, xt};
  CHECK(count_intersection(v, plain, {}).count == count_intersection(vt, moved, {}).count);
  CHECK(count_intersection(v, plain, {}).count == 169);
}
