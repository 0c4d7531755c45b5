#include <doctest.h>

#include <set>

#include "espo/errors.hpp"
#include "espo/sumprod.hpp"

using namespace espo;

TEST_CASE("sumsets") {
  const GroupModel line = GroupModel::additive(1);
  PointSet a(line);
  for (long k = 1; k <= 16; ++k) a.insert(GroupElement::additive({k}));
  CHECK(sumset(a).size() == 31);
  CHECK(sumset(a, 1).elements() == sumset(a, 8).elements());
}

TEST_CASE("interval construction") {
  SumProdOptions opt;
  opt.size = 16;
  const auto r = run_sumprod(opt);
  CHECK(r.size == 16);
  CHECK(r.sum1 == 31);
  CHECK(r.sum2 == 97);
  CHECK(r.max == 97);
  REQUIRE(r.exponent);
  CHECK(*r.exponent == doctest::Approx(1.65).epsilon(0.01));
  opt.swap = true;
  const auto s = run_sumprod(opt);
  CHECK(s.sum1 == 97);
  CHECK(s.group1 == r.group2);
}

TEST_CASE("geometric construction") {
  SumProdOptions opt;
  opt.construction = SumProdConstruction::geometric;
  opt.size = 10;
  const auto r = run_sumprod(opt);
  CHECK(r.sum1 == 55);
  CHECK(r.sum2 == 19);
}

TEST_CASE("elliptic construction") {
  const GroupModel e = GroupModel::elliptic(0, -2);
  const auto xs = elliptic_x_set(e, GroupElement::affine(3, 5), 30);
  CHECK(xs.size() == 30);
  CHECK(xs[1] == make_rational(129, 100));
  CHECK(elliptic_pullback(e, xs).size() == 60);
  std::set<Rational> sums;
  for (const auto& x : xs)
    for (const auto& y : xs) sums.insert(x + y);

  SumProdOptions opt;
  opt.construction = SumProdConstruction::elliptic;
  opt.size = 30;
  const auto r = run_sumprod(opt);
  CHECK(r.size == 30);
  CHECK(r.sum1 == sums.size());
  CHECK(r.sum1 == 465);
  CHECK(r.sum2 == 121);
  CHECK(r.sum2 <= 121);
  opt.size = 41;
  CHECK_THROWS_AS(run_sumprod(opt), BudgetError);
  CHECK_THROWS_AS(elliptic_pullback(e, std::vector<Rational>{2}), PullbackError);
}

TEST_CASE("construction names") {
  CHECK(parse_construction("elliptic") == SumProdConstruction::elliptic);
  CHECK(to_string(SumProdConstruction::geometric) == "geometric");
  CHECK_THROWS_AS(parse_construction("random"), ValidationError);
}

TEST_CASE("small cases") {
  const GroupModel e = GroupModel::elliptic(0, -2);
  CHECK(elliptic_pullback(e, {}).empty());
  const auto one = elliptic_pullback(e, elliptic_x_set(e, GroupElement::affine(3, 5), 1));
  CHECK(one.size() == 2);
  CHECK(one.contains(GroupElement::affine(3, -5)));
  SumProdOptions opt;
  opt.size = 1;
  const auto r = run_sumprod(opt);
  CHECK(r.sum1 == 1);
  CHECK(r.sum2 == 1);
  CHECK(r.max == 1);
  CHECK_FALSE(r.exponent);
}

TEST_CASE("sumsets in torsion-free groups have at least 2|A| - 1 elements") {
  const GroupModel line = GroupModel::additive(1);
  PointSet ap(line), other(line);
  for (long k = 0; k < 9; ++k) {
    ap.insert(GroupElement::additive({3 * k + 1}));
    other.insert(GroupElement::additive({k * k}));
  }
  CHECK(sumset(ap).size() == 17);
  CHECK(sumset(other).size() > 17);
  for (std::size_t M : {5u, 10u, 20u}) {
    SumProdOptions opt;
    opt.construction = SumProdConstruction::elliptic;
    opt.size = M;
    CHECK(run_sumprod(opt).sum2 <= 4 * M + 1);
  }
}
