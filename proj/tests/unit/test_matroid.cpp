#include <doctest.h>

#include <algorithm>

#include "espo/errors.hpp"
#include "espo/finite_field.hpp"
#include "espo/matroid.hpp"

using namespace espo;

namespace {

std::vector<std::size_t> class_sizes(const Decomposition& d) {
  std::vector<std::size_t> s;
  for (const auto& c : d.classes) s.push_back(c.size());
  std::sort(s.rbegin(), s.rend());
  return s;
}

RankOracle submodularity_violation() {
  // r({0,1}) = r({0,2}) = 1, r({1,2}) = 2, r({0,1,2}) = 2, singletons 1.
  return RankOracle::table(3, {0, 1, 1, 1, 1, 1, 2, 2});
}

}  // namespace

TEST_CASE("finite fields") {
  unsigned p = 0, e = 0;
  CHECK(prime_power(8, p, e));
  CHECK(p == 2);
  CHECK(e == 3);
  CHECK_FALSE(prime_power(12, p, e));
  for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u, 16u}) {
    const FiniteField f(q);
    for (unsigned a = 1; a < q; ++a) {
      CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.add(a, f.neg(a)) == 0);
      for (unsigned b = 0; b < q; ++b) CHECK(f.mul(a, f.add(b, 1)) == f.add(f.mul(a, b), a));
    }
  }
  CHECK_THROWS_AS(FiniteField(6), ValidationError);
  const FiniteField f4(4);
  CHECK(field_rank(f4, {{1, 0, 1}, {0, 1, 1}, {1, 1, 0}}) == 2);
}

TEST_CASE("rank oracle backends") {
  const RankOracle lin = RankOracle::linear_rational(RatMatrix::from_rows({{1, 0, 1, 2}, {0, 1, 1, 0}}));
  CHECK(lin.rank() == 2);
  CHECK(lin.rank(mask_of({0, 3})) == 1);
  CHECK(closure(lin, mask_of({0})) == mask_of({0, 3}));
  const RankOracle mul = RankOracle::mullattice({2, 4, 6, make_rational(3, 2)});
  CHECK(mul.backend() == "mullattice");
  CHECK(mul.rank() == 2);
  CHECK(mul.rank(mask_of({0, 1})) == 1);
  CHECK(mul.rank(mask_of({2, 3})) == 2);
  CHECK(mask_elements(mask_of({5, 1, 3})) == std::vector<std::size_t>{1, 3, 5});
  CHECK_THROWS_AS(closure(lin, mask_of({7})), ValidationError);
  const RankOracle t = lin.materialized();
  CHECK(t.is_table());
  for (Mask m = 0; m < 16; ++m) CHECK(t.rank(m) == lin.rank(m));
}

TEST_CASE("pregeometry axioms") {
  CHECK(check_pregeometry(fano()).holds);
  CHECK(check_pregeometry(free_matroid(6)).holds);
  // A loop is allowed.
  CHECK(check_pregeometry(RankOracle::table(2, {0, 1, 0, 1})).holds);
  const auto sub = check_pregeometry(submodularity_violation());
  CHECK_FALSE(sub.holds);
  CHECK(sub.failed_axiom == "submodularity");
  const auto unit = check_pregeometry(RankOracle::table(2, {0, 2, 1, 2}));
  CHECK_FALSE(unit.holds);
  CHECK(unit.failed_axiom == "unit_increase");
  const auto empty = check_pregeometry(RankOracle::table(1, {1, 1}));
  CHECK(empty.failed_axiom == "empty_rank");
  CHECK_THROWS_AS(Geometry::projectivize(submodularity_violation()), AxiomError);
}

TEST_CASE("Fano plane") {
  const Geometry g = Geometry::projectivize(fano());
  CHECK(g.point_count() == 7);
  CHECK(g.lines().size() == 7);
  CHECK(g.dimension() == 3);
  CHECK(check_modularity(g).holds);
  CHECK(check_veblen(g).holds);
  const auto pg = recognize_pg(g);
  CHECK(pg.status == PgStatus::recognized);
  CHECK(pg.m == 2);
  CHECK(pg.q == 2);
  const auto d = decompose_nonorthogonality(g);
  CHECK(d.classes.size() == 1);
}

TEST_CASE("projective spaces") {
  const Geometry g = Geometry::projectivize(projective_space(3, 2));
  CHECK(g.point_count() == 15);
  CHECK(g.lines().size() == 35);
  const auto pg = recognize_pg(g);
  CHECK(pg.status == PgStatus::recognized);
  CHECK(pg.m == 3);
  CHECK(pg.q == 2);
  const Geometry p3 = Geometry::projectivize(projective_space(2, 3));
  CHECK(p3.point_count() == 13);
  const auto r3 = recognize_pg(p3);
  CHECK(r3.status == PgStatus::recognized);
  CHECK(r3.q == 3);
  CHECK(Geometry::projectivize(projective_space(2, 4)).lines().size() == 21);
}

TEST_CASE("affine plane is not modular") {
  const Geometry g = Geometry::projectivize(affine_plane(3));
  CHECK(g.point_count() == 9);
  CHECK(g.lines().size() == 12);
  const auto m = check_modularity(g);
  CHECK_FALSE(m.holds);
  REQUIRE(m.witness);
  const auto [a, b] = *m.witness;
  CHECK(g.rank(a) == 2);
  CHECK(g.rank(b) == 2);
  CHECK((a & b) == 0);
  CHECK(g.rank(a | b) == 3);
  CHECK(recognize_pg(g).status == PgStatus::not_recognized);
  CHECK_THROWS_AS(decompose_nonorthogonality(g), PreconditionError);
}

TEST_CASE("broken quadrilateral fails Veblen") {
  const Geometry g = Geometry::projectivize(broken_quadrilateral());
  CHECK(g.point_count() == 5);
  const auto v = check_veblen(g);
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness);
  CHECK(*v.witness == std::array<std::size_t, 4>{0, 1, 2, 3});
}

TEST_CASE("direct sums decompose") {
  const Geometry g = Geometry::projectivize(RankOracle::direct_sum(fano(), free_matroid(1)));
  CHECK(g.point_count() == 8);
  CHECK(check_modularity(g).holds);
  const auto d = decompose_nonorthogonality(g);
  CHECK(class_sizes(d) == std::vector<std::size_t>{7, 1});
  CHECK(d.transitive);
  const Geometry two = Geometry::projectivize(RankOracle::direct_sum(fano(), fano()));
  CHECK(class_sizes(decompose_nonorthogonality(two)) == std::vector<std::size_t>{7, 7});
}

TEST_CASE("flats of the Fano plane") {
  const Geometry g = Geometry::projectivize(fano());
  const auto f = flats(g);
  // empty, 7 points, 7 lines, the plane
  CHECK(f.size() == 16);
  CHECK(f.front() == 0);
  CHECK(f.back() == full_mask(7));
}

TEST_CASE("parallel elements collapse to one point") {
  const RankOracle o = RankOracle::linear_rational(RatMatrix::from_rows({{1, 2, 0, 0}, {0, 0, 1, 0}}));
  const Geometry g = Geometry::projectivize(o);
  CHECK(g.point_count() == 2);
  CHECK(g.point_elements()[0] == mask_of({0, 1}));
}
