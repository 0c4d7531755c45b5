#include <doctest.h>

#include "espo/errors.hpp"
#include "espo/filtration.hpp"
#include "espo/random.hpp"
#include "espo/sets.hpp"
#include "espo/special_subgroup.hpp"

using namespace espo;

namespace {

Integer ipow(long b, unsigned long e) { return pow(Integer(b), e); }

}  // namespace

TEST_CASE("base filtration levels") {
  const FiltrationSpec base = FiltrationSpec::base();
  CHECK(base.level_size(0) == 3);
  CHECK(base.level_size(5) == 65);
  const auto l2 = base.level(2);
  REQUIRE(l2.size() == 9);
  CHECK(l2.front() == RingElement(Rational(-4)));
  CHECK(l2.back() == RingElement(Rational(4)));
  CHECK(base.in_level(RingElement(Rational(4)), 2));
  CHECK_FALSE(base.in_level(RingElement(Rational(5)), 2));
  CHECK_FALSE(base.in_level(RingElement(make_rational(1, 2)), 2));
  CHECK_THROWS_AS(base.level(30, 1000), BudgetError);
}

TEST_CASE("base filtration axioms") {
  const FiltrationSpec base = FiltrationSpec::base();
  CHECK(check_cf0_chain(base, 20).holds);
  CHECK(check_cf1(base, 1, 20).holds);
  CHECK(check_cf2(base, 3, 2, 20).holds);
  const AxiomCheck tight = check_cf2(base, 3, 1, 20);
  CHECK_FALSE(tight.holds);
  CHECK(tight.first_failure == 0u);
  CHECK(check_cf3_surrogate(base, 2, 20).holds);
  CHECK(check_cf3_surrogate(base, 0, 20).holds);
  CHECK_FALSE(check_cf3_surrogate(FiltrationSpec::poly(base), 0, 20).holds);
}

TEST_CASE("polynomial filtration level sizes are |O_n|^n") {
  const FiltrationSpec poly = FiltrationSpec::poly(FiltrationSpec::base());
  for (unsigned n = 0; n <= 12; ++n) CHECK(poly.level_size(n) == pow(FiltrationSpec::base().level_size(n), n));
  CHECK(poly.level(2).size() == 81);
  CHECK(poly.level(3).size() == 17 * 17 * 17);
  CHECK(check_cf1(poly, 1, 12).holds);
  const AxiomCheck cf3 = check_cf3_surrogate(poly, 3, 20);
  CHECK_FALSE(cf3.holds);
  CHECK(cf3.first_failure == 3u);
  CHECK(check_cf3_surrogate(poly, 4, 20).holds);
  CHECK(ipow(33, 8) > ipow(17, 9));
}

TEST_CASE("localized filtration") {
  const FiltrationSpec loc = FiltrationSpec::localize(FiltrationSpec::base(), 2, 1);
  const LevelShape s = loc.shape(3);
  CHECK(s.scale == make_rational(1, 8));
  CHECK(s.bounds.at({}) == 64);
  CHECK(loc.level_size(3) == 129);
  CHECK(check_cf0_chain(loc, 10).holds);
  CHECK(check_cf1(loc, 1, 10).holds);
  CHECK(loc.in_level(RingElement(make_rational(-63, 8)), 3));
  CHECK_FALSE(loc.in_level(RingElement(make_rational(1, 16)), 3));
  CHECK_THROWS_AS(FiltrationSpec::localize(FiltrationSpec::base(), 0, 1), ValidationError);
  CHECK_THROWS_AS(FiltrationSpec::localize(FiltrationSpec::base(), 2, 0), ValidationError);
}

TEST_CASE("materialized sumsets stay inside the next level") {
  const std::vector<FiltrationSpec> specs{FiltrationSpec::base(), FiltrationSpec::localize(FiltrationSpec::base(), 2, 1),
                                          FiltrationSpec::poly(FiltrationSpec::base()), FiltrationSpec::quaternion_order()};
  for (const auto& spec : specs)
    for (unsigned n = 0; n <= 2; ++n) {
      const auto lvl = spec.level(n);
      CHECK(Integer(static_cast<unsigned long>(lvl.size())) == spec.level_size(n));
      for (std::size_t i = 0; i < lvl.size(); i += 7)
        for (std::size_t j = 0; j < lvl.size(); j += 5) {
          CHECK(spec.in_level(lvl[i], n));
          CHECK(spec.in_level(spec.add(lvl[i], lvl[j]), n + 1));
        }
    }
}

TEST_CASE("box shape algebra") {
  const FiltrationSpec base = FiltrationSpec::base();
  CHECK(shape_subset(base.shape(3), base.shape(4)));
  CHECK_FALSE(shape_subset(base.shape(4), base.shape(3)));
  CHECK(shape_subset(shape_sumset(base.shape(3)), base.shape(4)));
  CHECK(shape_scaled(base.shape(3), 0).size() == 1);
  CHECK(shape_scaled(base.shape(3), -3).size() == 17);
}

TEST_CASE("quaternion order multiplication") {
  const FiltrationSpec h = FiltrationSpec::quaternion_order();
  auto q = [](long a, long b, long c, long d) {
    return RingElement(std::vector<RingElement>{RingElement(Rational(a)), RingElement(Rational(b)), RingElement(Rational(c)),
                                                RingElement(Rational(d))});
  };
  CHECK(h.module_rank() == 4);
  CHECK(h.multiply(q(0, 1, 0, 0), q(0, 0, 1, 0)) == q(0, 0, 0, 1));
  CHECK(h.multiply(q(0, 0, 1, 0), q(0, 1, 0, 0)) == q(0, 0, 0, -1));
  CHECK(h.multiply(q(0, 0, 0, 1), q(0, 0, 0, 1)) == q(-1, 0, 0, 0));
  CHECK(h.level_size(1) == 625);
}

TEST_CASE("ring arithmetic in the polynomial filtration") {
  const FiltrationSpec poly = FiltrationSpec::poly(FiltrationSpec::base());
  const RingElement x(std::vector<RingElement>{RingElement(Rational(0)), RingElement(Rational(1))});
  const RingElement one(std::vector<RingElement>{RingElement(Rational(1))});
  const RingElement xp1 = poly.add(x, one);
  const RingElement sq = poly.multiply(xp1, xp1);
  CHECK(sq.to_string() == "[1,2,1]");
  CHECK(poly.add(x, poly.scale(-1, x)) == poly.zero());
}

TEST_CASE("progressions") {
  const GroupModel g = GroupModel::multiplicative(1, {2});
  const auto two = GroupElement::multiplicative({1});
  const PointSet p = progression(g, two, 10);
  CHECK(p.size() == 21);
  CHECK(p.contains(GroupElement::multiplicative({-10})));
  CHECK(progression(g, two, 4, ProgressionKind::one_sided).size() == 4);
  const GroupModel e = GroupModel::elliptic(0, -2);
  CHECK(progression(e, GroupElement::affine(3, 5), 3).size() == 7);
}

TEST_CASE("quaternion ball images") {
  const GroupModel g = quaternion_torus();
  const auto gen = multiplicative_from_values(g, std::vector<Rational>{2, 3, 5, 7});
  CHECK(is_generic_quaternion_point(g, gen));
  const PointSet x1 = quaternion_ball_image(g, 1, gen);
  CHECK(x1.size() == 81);
  for (const char* sym : {"i", "j", "k"}) {
    PointSet image(g);
    for (const auto& p : x1) image.insert(apply_endomorphism(g, quaternion_symbol(sym), p));
    CHECK(image == x1);
  }
  const auto degenerate = multiplicative_from_values(g, std::vector<Rational>{2, 2, 2, 2});
  CHECK_FALSE(is_generic_quaternion_point(g, degenerate));
  CHECK_THROWS_AS(quaternion_ball_image(g, 1, degenerate), GenericityError);
  CHECK_THROWS_AS(quaternion_ball_image(GroupModel::additive(4), 1, identity(GroupModel::additive(4))), ValidationError);
}

TEST_CASE("approximate modules") {
  const GroupModel line = GroupModel::additive(1);
  const std::vector<GroupElement> gens{GroupElement::additive({1}), GroupElement::additive({make_rational(1, 2)})};
  const PointSet m = approximate_module(line, FiltrationSpec::base(), 1, gens);
  // {a + b/2 : |a|, |b| <= 2} = (1/2) [-6, 6]
  CHECK(m.size() == 13);
  CHECK(approximate_module(line, FiltrationSpec::base(), 1, std::vector<GroupElement>{}).size() == 1);
  CHECK_THROWS_AS(approximate_module(line, FiltrationSpec::base(), 10, gens, 100), BudgetError);

  const GroupModel g = quaternion_torus();
  const auto gen = multiplicative_from_values(g, std::vector<Rational>{2, 3, 5, 7});
  const PointSet q = approximate_module(g, FiltrationSpec::quaternion_order(), 0, std::vector<GroupElement>{gen});
  CHECK(q == quaternion_ball_image(g, 1, gen));

  const auto action = module_scalar_action(line, {Endomorphism::identity(line), Endomorphism::scalar(line, 3)});
  const std::vector<RingElement> scalars = FiltrationSpec::module_ext(
      FiltrationSpec::base(), {{{1, 0}, {0, 1}}, {{0, 1}, {9, 0}}}).level(0);
  CHECK(approximate_module(line, scalars, action, std::vector<GroupElement>{GroupElement::additive({1})}).size() == 9);
}

TEST_CASE("approximate module is independent of worker count") {
  const GroupModel g = quaternion_torus();
  const auto a = multiplicative_from_values(g, std::vector<Rational>{2, 3, 5, 7});
  const auto b = multiplicative_from_values(g, std::vector<Rational>{3, 2, 7, 5});
  const std::vector<GroupElement> gens{a, b};
  const auto one = approximate_module(g, FiltrationSpec::quaternion_order(), 0, gens, 20'000'000, 1);
  const auto many = approximate_module(g, FiltrationSpec::quaternion_order(), 0, gens, 20'000'000, 8);
  CHECK(one.elements() == many.elements());
}
