#include <doctest.h>

#include "espo/cgp.hpp"
#include "espo/counterexample.hpp"
#include "espo/errors.hpp"
#include "espo/random.hpp"

using namespace espo;

namespace {

PointSet plane_points(const std::vector<std::pair<long, long>>& xy) {
  PointSet p(GroupModel::additive(2));
  for (auto [x, y] : xy) p.insert(GroupElement::additive({x, y}));
  return p;
}

PointSet parabola(long n) {
  std::vector<std::pair<long, long>> xy;
  for (long t = 0; t < n; ++t) xy.push_back({t, t * t});
  return plane_points(xy);
}

PointSet grid3() {
  std::vector<std::pair<long, long>> xy;
  for (long x = 0; x < 3; ++x)
    for (long y = 0; y < 3; ++y) xy.push_back({x, y});
  return plane_points(xy);
}

}  // namespace

TEST_CASE("max on line") {
  const auto m = max_on_line(grid3());
  CHECK(m.count == 3);
  CHECK(max_on_line(parabola(8)).count == 2);
  CHECK_THROWS_AS(max_on_line(plane_points({{1, 1}})), InsufficientDataError);
  PointSet three(GroupModel::additive(3));
  three.insert(GroupElement::additive({0, 0, 0}));
  three.insert(GroupElement::additive({1, 0, 0}));
  CHECK_THROWS_AS(max_on_line(three), ValidationError);
}

TEST_CASE("max on line agrees with a pairwise scan") {
  TaskRng rng(29, "test/max_on_line");
  for (int t = 0; t < 20; ++t) {
    PointSet p(GroupModel::additive(2));
    while (p.size() < 12) p.insert(GroupElement::additive({rng.between(-3, 3), rng.between(-3, 3)}));
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        const Line l = line_through(p[i].coords()[0], p[i].coords()[1], p[j].coords()[0], p[j].coords()[1]);
        std::uint64_t c = 0;
        for (const auto& q : p) c += on_line(l, q.coords()[0], q.coords()[1]);
        best = std::max(best, c);
      }
    const auto m = max_on_line(p);
    CHECK(m.count == best);
    std::uint64_t on = 0;
    for (const auto& q : p) on += on_line(m.line, q.coords()[0], q.coords()[1]);
    CHECK(on == m.count);
  }
}

TEST_CASE("max on curve") {
  const auto conic = max_on_curve(grid3(), 2);
  CHECK(conic.count == 6);
  CHECK(conic.exact);
  REQUIRE(conic.witness);
  std::uint64_t on = 0;
  for (const auto& c : cgp_coordinates(grid3())) on += conic.witness->evaluate(c) == 0;
  CHECK(on == 6);

  std::vector<std::pair<long, long>> xy;
  for (long t = 0; t < 7; ++t) xy.push_back({t, t * t});
  xy.push_back({1, 5});
  xy.push_back({3, -2});
  CHECK(max_on_curve(plane_points(xy), 2).count == 7);
  CHECK(max_on_curve(parabola(10), 1).count == 2);
  CHECK_THROWS_AS(max_on_curve(parabola(40), 3, {CgpMode::exhaustive, 1000}), BudgetError);
  CHECK_THROWS_AS(max_on_curve(parabola(5), 0), ValidationError);
}

TEST_CASE("heuristic search is seeded") {
  CurveOptions opt{CgpMode::heuristic, 0, 300, 12345, 1};
  const auto a = max_on_curve(parabola(30), 3, opt);
  opt.workers = 4;
  const auto b = max_on_curve(parabola(30), 3, opt);
  CHECK(a.count == b.count);
  CHECK(a.subset == b.subset);
  CHECK_FALSE(a.exact);
  CHECK(a.subsets_examined <= 300);
  CHECK(a.count >= 30);
}

TEST_CASE("cgp verdicts") {
  const PointSet p = parabola(10);
  CHECK(cgp_verdict(p, 1, 3).passed);
  const auto fail = cgp_verdict(p, 1, 4);
  CHECK_FALSE(fail.passed);
  CHECK(fail.worst_count == 2);
  REQUIRE(fail.witness);
  CHECK(cgp_verdict(p, 2, 1).worst_count == 10);
  CHECK_THROWS_AS(cgp_verdict(p, 0, 1), ValidationError);
  CHECK_THROWS_AS(cgp_verdict(p, 1, 0), ValidationError);

  const GroupModel e = GroupModel::elliptic(0, -2);
  PointSet curve(e);
  curve.insert(GroupElement::affine(3, 5));
  curve.insert(GroupElement::affine(3, -5));
  const auto ev = cgp_verdict(curve, 5, 1);
  CHECK(ev.passed);
  CHECK(ev.worst_count == 1);
}

TEST_CASE("the counterexample grid is not 6-cgp") {
  for (unsigned N : {2u, 3u}) {
    const PointSet x = grid(N);
    CHECK(max_on_line(x).count >= N);
    const auto v = cgp_verdict(x, 1, 6);
    CHECK_FALSE(v.passed);
    CHECK(v.worst_count == static_cast<std::uint64_t>(N) * N * N * N);
  }
}

TEST_CASE("cgp on multiplicative sets uses coordinate values") {
  const GroupModel g = GroupModel::multiplicative(2, {2, 3});
  PointSet p(g);
  for (long k = 0; k < 6; ++k)
    p.insert(multiplicative_from_values(g, std::vector<Rational>{pow(Rational(2), k), pow(Rational(3), k)}));
  const auto coords = cgp_coordinates(p);
  CHECK(coords[1] == std::vector<Rational>{2, 3});
  CHECK(max_on_line(p).count == 2);
}
