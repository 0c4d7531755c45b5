#include <doctest.h>

#include "espo/errors.hpp"
#include "espo/random.hpp"
#include "espo/special_subgroup.hpp"

using namespace espo;

namespace {

GroupElement random_torus_element(TaskRng& rng) {
  std::vector<std::int64_t> e(16);
  for (auto& x : e) x = rng.between(-6, 6);
  return GroupElement::multiplicative(std::move(e));
}

}  // namespace

TEST_CASE("quaternion relations hold as endomorphism compositions") {
  const GroupModel g = quaternion_torus();
  const Endomorphism i = quaternion_symbol("i"), j = quaternion_symbol("j"), k = quaternion_symbol("k");
  const Endomorphism minus_one = quaternion_symbol("-1");
  CHECK(i * i == minus_one);
  CHECK(j * j == minus_one);
  CHECK(k * k == minus_one);
  CHECK(i * j == k);
  CHECK(j * k == i);
  CHECK(k * i == j);
  CHECK(j * i == quaternion_symbol("-k"));
  TaskRng rng(5, "test/quaternion");
  for (int t = 0; t < 50; ++t) {
    const auto x = random_torus_element(rng);
    const auto ij = apply_endomorphism(g, i, apply_endomorphism(g, j, x));
    CHECK(ij == apply_endomorphism(g, k, x));
    CHECK(apply_endomorphism(g, i, apply_endomorphism(g, i, x)) == negate(g, x));
  }
  CHECK(quaternion_matrix(1, 2, 3, 4) == IntMatrix::identity(4) + Integer(2) * quaternion_matrix(0, 1, 0, 0) +
                                             Integer(3) * quaternion_matrix(0, 0, 1, 0) +
                                             Integer(4) * quaternion_matrix(0, 0, 0, 1));
  CHECK_THROWS_AS(quaternion_symbol("q"), ValidationError);
}

TEST_CASE("alpha_i acts as a signed permutation") {
  const GroupModel g = quaternion_torus();
  const auto x = multiplicative_from_values(g, std::vector<Rational>{2, 3, 5, 7});
  const auto y = apply_endomorphism(g, quaternion_symbol("i"), x);
  CHECK(multiplicative_values(g, y) == std::vector<Rational>{make_rational(1, 3), 2, make_rational(1, 7), 5});
  const auto z = apply_endomorphism(g, quaternion_symbol("j"), x);
  CHECK(multiplicative_values(g, z) == std::vector<Rational>{make_rational(1, 5), 7, 2, make_rational(1, 3)});
}

TEST_CASE("quaternion representation subgroup") {
  const SpecialSubgroup h = build_special_subgroup(quaternion_rep());
  CHECK(subgroup_dimension(h) == 8);
  CHECK(h.kernel_connected());
  const GroupModel& g = h.group();
  TaskRng rng(9, "test/quaternion_rep");
  for (int t = 0; t < 10; ++t) {
    const auto x = random_torus_element(rng), y = random_torus_element(rng);
    std::vector<GroupElement> tuple{x, y, group_add(g, x, y),
                                    group_add(g, x, apply_endomorphism(g, quaternion_symbol("i"), y)),
                                    group_add(g, x, apply_endomorphism(g, quaternion_symbol("j"), y))};
    CHECK(membership(h, tuple));
    tuple[4] = tuple[3];
    if (!(apply_endomorphism(g, quaternion_symbol("i"), y) == apply_endomorphism(g, quaternion_symbol("j"), y)))
      CHECK_FALSE(membership(h, tuple));
  }
  CHECK_THROWS_AS(h.contains(std::vector<GroupElement>{identity(g)}), DimensionError);
}

TEST_CASE("kernel dimension equals dim(G) (n - rank)") {
  TaskRng rng(17, "test/kernel_dimension");
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 1 + rng.below(2);
    const std::size_t n = 1 + rng.below(5);
    const std::size_t m = 1 + rng.below(n);
    const GroupModel g = GroupModel::additive(d);
    EndoMatrix rel(m);
    IntMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = Integer(rng.between(-5, 5));
        rel[i].push_back(Endomorphism::scalar(g, a(i, j)));
      }
    const SpecialSubgroup h = build_special_subgroup({g, n, rel});
    const std::size_t r = rational_kernel(a).rank;
    CHECK(r == smith_normal_form(a).rank());
    CHECK(subgroup_dimension(h) == d * (n - r));
  }
}

TEST_CASE("integral kernels keep only the identity component") {
  // y^2 = x^3 - x has the 2-torsion point (0, 0).
  const GroupModel e = GroupModel::elliptic(-1, 0);
  const GroupElement t = GroupElement::affine(0, 0);
  REQUIRE(scalar_mul(e, 2, t).is_infinity());
  const SpecialSubgroup h = build_special_subgroup({e, 1, {{Endomorphism::elliptic(2)}}});
  CHECK_FALSE(h.kernel_connected());
  CHECK(subgroup_dimension(h) == 0);
  CHECK_FALSE(membership(h, std::vector<GroupElement>{t}));
  CHECK(membership(h, std::vector<GroupElement>{identity(e)}));

  // 2x - 2y = 0 on Q_{>0}: the saturation is x = y.
  const GroupModel m = GroupModel::multiplicative(1, {2, 3});
  const SpecialSubgroup k = build_special_subgroup(
      {m, 2, {{Endomorphism::scalar(m, 2), Endomorphism::scalar(m, -2)}}});
  CHECK(k.saturated_relations().rows() == 1);
  CHECK(abs(k.saturated_relations()(0, 0)) == 1);
  const auto x = multiplicative_from_values(m, std::vector<Rational>{6});
  CHECK(membership(k, std::vector<GroupElement>{x, x}));
  CHECK_FALSE(membership(k, std::vector<GroupElement>{x, identity(m)}));
}

TEST_CASE("flattened relation blocks") {
  const GroupModel g = GroupModel::additive(2);
  const Endomorphism f = Endomorphism::additive(RatMatrix::from_rows({{1, 2}, {3, 4}}));
  const RatMatrix flat = flatten_relations(g, 2, {{f, Endomorphism::zero(g)}});
  CHECK(flat == RatMatrix::from_rows({{1, 2, 0, 0}, {3, 4, 0, 0}}));
  CHECK_THROWS_AS(build_special_subgroup({g, 2, {{f}}}), ValidationError);
}

TEST_CASE("no relations gives the whole product") {
  const GroupModel g = GroupModel::additive(3);
  const SpecialSubgroup h = build_special_subgroup({g, 2, {}});
  CHECK(subgroup_dimension(h) == 6);
  const auto p = GroupElement::additive({1, make_rational(2, 3), -5});
  CHECK(membership(h, std::vector<GroupElement>{p, identity(g)}));
}
