#include <doctest.h>

#include "espo/errors.hpp"
#include "espo/group.hpp"
#include "espo/random.hpp"

using namespace espo;

TEST_CASE("additive group") {
  const GroupModel g = GroupModel::additive(2);
  const auto p = GroupElement::additive({1, make_rational(1, 2)});
  const auto q = GroupElement::additive({-3, 2});
  CHECK(group_add(g, p, q) == GroupElement::additive({-2, make_rational(5, 2)}));
  CHECK(group_add(g, p, negate(g, p)) == identity(g));
  CHECK(scalar_mul(g, 4, p) == GroupElement::additive({4, 2}));
  CHECK_THROWS_AS(validate(g, GroupElement::additive({1})), ValidationError);
  const Endomorphism swap = Endomorphism::additive(RatMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(apply_endomorphism(g, swap, p) == GroupElement::additive({make_rational(1, 2), 1}));
}

TEST_CASE("multiplicative encoding") {
  const std::vector<long> basis{2, 3, 5};
  CHECK(mul_encode(basis, make_rational(12, 25)) == std::vector<std::int64_t>{2, 1, -2});
  CHECK(mul_decode(basis, std::vector<std::int64_t>{2, 1, -2}) == make_rational(12, 25));
  CHECK_THROWS_AS(mul_encode(basis, Rational(7)), EncodingError);
  CHECK_THROWS_AS(mul_encode(basis, Rational(-2)), EncodingError);
  const GroupModel g = GroupModel::multiplicative(2, basis);
  const auto p = multiplicative_from_values(g, std::vector<Rational>{6, make_rational(1, 5)});
  const auto q = multiplicative_from_values(g, std::vector<Rational>{make_rational(1, 2), 9});
  CHECK(multiplicative_values(g, group_add(g, p, q)) == std::vector<Rational>{3, make_rational(9, 5)});
  CHECK(multiplicative_values(g, scalar_mul(g, -2, p)) == std::vector<Rational>{make_rational(1, 36), 25});
  const Endomorphism e = Endomorphism::multiplicative(IntMatrix::from_rows({{0, 1}, {-1, 0}}));
  CHECK(multiplicative_values(g, apply_endomorphism(g, e, p)) == std::vector<Rational>{make_rational(1, 5), make_rational(1, 6)});
}

TEST_CASE("multiplicative group rejects bad primes") {
  CHECK_THROWS_AS(GroupModel::multiplicative(1, {2, 4}), ValidationError);
  CHECK_THROWS_AS(GroupModel::multiplicative(1, {3, 3}), ValidationError);
}

TEST_CASE("elliptic doubling on y^2 = x^3 - 2") {
  const GroupModel e = GroupModel::elliptic(0, -2);
  const auto P = GroupElement::affine(3, 5);
  const auto twoP = group_add(e, P, P);
  CHECK(twoP == GroupElement::affine(make_rational(129, 100), make_rational(-383, 1000)));
  CHECK(scalar_mul(e, 2, P) == twoP);
  CHECK(group_add(e, P, negate(e, P)).is_infinity());
  CHECK(group_add(e, identity(e), P) == P);
  CHECK_THROWS_AS(validate(e, GroupElement::affine(3, 4)), ValidationError);
  CHECK_THROWS_AS(GroupModel::elliptic(0, 0), ValidationError);
}

TEST_CASE("elliptic multiples stay on the curve and respect the group law") {
  const GroupModel e = GroupModel::elliptic(0, -2);
  const auto P = GroupElement::affine(3, 5);
  for (long k = -20; k <= 20; ++k) {
    const auto kP = scalar_mul(e, k, P);
    CHECK(is_valid(e, kP));
    CHECK(group_add(e, kP, P) == scalar_mul(e, k + 1, P));
  }
  const auto a = scalar_mul(e, 3, P), b = scalar_mul(e, -5, P), c = scalar_mul(e, 7, P);
  CHECK(group_add(e, group_add(e, a, b), c) == group_add(e, a, group_add(e, b, c)));
  CHECK(group_add(e, a, b) == group_add(e, b, a));
}

TEST_CASE("element and group text formats round trip") {
  const GroupModel g = parse_group("multiplicative:2:2,3,5");
  CHECK(g.kind() == GroupKind::multiplicative);
  CHECK(g.dimension() == 2);
  CHECK(format_group(g) == "multiplicative:2:2,3,5");
  const auto p = multiplicative_from_values(g, std::vector<Rational>{make_rational(3, 10), 45});
  CHECK(parse_element(g, format_element(g, p)) == p);
  const GroupModel e = parse_group("elliptic:0,-2");
  const auto P = GroupElement::affine(3, 5);
  CHECK(parse_element(e, format_element(e, P)) == P);
  CHECK(parse_element(e, format_element(e, identity(e))).is_infinity());
  const GroupModel a = parse_group("additive:3");
  const auto x = GroupElement::additive({1, make_rational(-2, 3), 0});
  CHECK(parse_element(a, format_element(a, x)) == x);
  CHECK_THROWS_AS(parse_group("cyclic:3"), ValidationError);
}

TEST_CASE("affine coordinates round trip") {
  const GroupModel g = GroupModel::multiplicative(2, {2, 3});
  const auto p = multiplicative_from_values(g, std::vector<Rational>{6, make_rational(2, 9)});
  GroupElement back;
  REQUIRE(element_from_affine(g, affine_coordinates(g, p), back));
  CHECK(back == p);
  CHECK_FALSE(element_from_affine(g, std::vector<Rational>{5, 1}, back));
  const GroupModel e = GroupModel::elliptic(0, -2);
  CHECK(affine_coordinates(e, identity(e)).empty());
  CHECK(affine_width(e) == 2);
}

TEST_CASE("endomorphism algebra") {
  const GroupModel g = GroupModel::multiplicative(2, {2, 3});
  const Endomorphism f = Endomorphism::multiplicative(IntMatrix::from_rows({{1, 1}, {0, 1}}));
  const Endomorphism h = Endomorphism::multiplicative(IntMatrix::from_rows({{2, 0}, {1, -1}}));
  TaskRng rng(11, "test/endo");
  for (int t = 0; t < 20; ++t) {
    const auto p = GroupElement::multiplicative({rng.between(-4, 4), rng.between(-4, 4), rng.between(-4, 4), rng.between(-4, 4)});
    CHECK(apply_endomorphism(g, f * h, p) == apply_endomorphism(g, f, apply_endomorphism(g, h, p)));
    CHECK(apply_endomorphism(g, f + h, p) == group_add(g, apply_endomorphism(g, f, p), apply_endomorphism(g, h, p)));
  }
  int sign = 0;
  CHECK((-Endomorphism::identity(g)).is_unit_scalar(sign));
  CHECK(sign == -1);
  CHECK(Endomorphism::zero(g).is_zero());
  CHECK_THROWS_AS(Endomorphism::elliptic(2).validate(g), ValidationError);
}

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}
