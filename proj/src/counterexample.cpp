#include "espo/counterexample.hpp"

#include <algorithm>

#include "espo/errors.hpp"
#include "espo/random.hpp"

namespace espo {

StarPoint star(const StarPoint& x, const StarPoint& y) {
  return {x.a + y.a + x.b * x.b * y.b * y.b, x.b + y.b};
}

PointSet grid(unsigned N) {
  if (N < 1) throw ValidationError("grid needs N >= 1");
  const unsigned long width = static_cast<unsigned long>(N) * N * N * N;
  PointSet out(GroupModel::additive(2));
  for (unsigned long a = 0; a < width; ++a)
    for (unsigned b = 0; b < N; ++b) out.insert(GroupElement::additive({Rational(a), Rational(b)}));
  return out;
}

VarietySpec star_variety() {
  // variables: x_a, x_b, y_a, y_b, z_a, z_b
  auto v = [](std::size_t i) { return MultiPoly::variable(6, i); };
  MultiPoly ca = v(4) - v(0) - v(2) - v(1).pow(2) * v(3).pow(2);
  MultiPoly cb = v(5) - v(1) - v(3);
  const GroupModel plane = GroupModel::additive(2);
  return VarietySpec::poly({plane, plane, plane}, {ca, cb}, 4);
}

CountResult grid_star_count(unsigned N, const CountOptions& options) {
  const PointSet x = grid(N);
  const std::vector<PointSet> sets{x, x, x};
  return count_intersection(star_variety(), sets, options);
}

std::uint64_t vertical_line_count(unsigned N) {
  std::uint64_t c = 0;
  for (const auto& p : grid(N))
    if (p.coords()[0] == 0) ++c;
  return c;
}

const char* const kZ22Variables[8] = {"z11'", "z11''", "z12'", "z12''", "z21'", "z21''", "x2'", "x2''"};

namespace {

MultiPoly var(std::size_t i) { return MultiPoly::variable(8, i); }

struct PolyStar {
  MultiPoly a, b;
};

PolyStar pstar(const PolyStar& x, const PolyStar& y) { return {x.a + y.a + x.b.pow(2) * y.b.pow(2), x.b + y.b}; }

// Solve z = x * y for y given z and x.
PolyStar pright(const PolyStar& z, const PolyStar& x) {
  PolyStar y;
  y.b = z.b - x.b;
  y.a = z.a - x.a - x.b.pow(2) * y.b.pow(2);
  return y;
}

// Solve z = x * y for x given z and y.
PolyStar pleft(const PolyStar& z, const PolyStar& y) {
  PolyStar x;
  x.b = z.b - y.b;
  x.a = z.a - y.a - x.b.pow(2) * y.b.pow(2);
  return x;
}

StarPoint solve_right(const StarPoint& z, const StarPoint& x) {
  const Rational b = z.b - x.b;
  return {z.a - x.a - x.b * x.b * b * b, b};
}

StarPoint solve_left(const StarPoint& z, const StarPoint& y) {
  const Rational b = z.b - y.b;
  return {z.a - y.a - b * b * y.b * y.b, b};
}

Rational random_rational(TaskRng& rng) { return make_rational(Integer(rng.between(1, 1000)), Integer(rng.between(1, 1000))); }

}  // namespace

MultiPoly z22_formula_a() {
  const MultiPoly z11a = var(0), z11b = var(1), z12a = var(2), z12b = var(3), z21a = var(4), z21b = var(5), x2b = var(7);
  return z21a + z12a - z11a - x2b.pow(2) * (z21b - x2b).pow(2) + (z11b - z21b + x2b).pow(2) * (z21b - x2b).pow(2) -
         (z11b - z21b + x2b).pow(2) * (z12b - z11b + z21b - x2b).pow(2);
}

MultiPoly z22_formula_b() { return var(5) + var(3) - var(1); }

MultiPoly z22_corrected_a() {
  const MultiPoly z11b = var(1), z12b = var(3), z21b = var(5), x2b = var(7);
  return z22_formula_a() + x2b.pow(2) * (z12b - z11b + z21b - x2b).pow(2);
}

std::pair<MultiPoly, MultiPoly> z22_pipeline() {
  const PolyStar z11{var(0), var(1)}, z12{var(2), var(3)}, z21{var(4), var(5)}, x2{var(6), var(7)};
  const PolyStar y1 = pright(z21, x2);
  const PolyStar x1 = pleft(z11, y1);
  const PolyStar y2 = pright(z12, x1);
  const PolyStar z22 = pstar(x2, y2);
  return {z22.a, z22.b};
}

StarPoint z22_solve(const StarPoint& z11, const StarPoint& z12, const StarPoint& z21, const StarPoint& x2) {
  const StarPoint y1 = solve_right(z21, x2);
  const StarPoint x1 = solve_left(z11, y1);
  const StarPoint y2 = solve_right(z12, x1);
  return star(x2, y2);
}

Z22Verdict verify_z22(std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("verify_z22 needs at least one sample");
  Z22Verdict v;
  v.samples = samples;
  v.seed = seed;
  const MultiPoly fa = z22_formula_a(), fb = z22_formula_b(), ca = z22_corrected_a();
  TaskRng rng(seed, "counterexample/verify_z22");
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::vector<Rational> point(8);
    for (auto& q : point) q = random_rational(rng);
    const StarPoint z22 = z22_solve({point[0], point[1]}, {point[2], point[3]}, {point[4], point[5]}, {point[6], point[7]});
    v.residual_a = std::max(v.residual_a, Rational(abs(z22.a - fa.evaluate(point))));
    v.residual_b = std::max(v.residual_b, Rational(abs(z22.b - fb.evaluate(point))));
    v.corrected_residual_a = std::max(v.corrected_residual_a, Rational(abs(z22.a - ca.evaluate(point))));
  }
  v.holds = v.residual_a == 0 && v.residual_b == 0;
  v.corrected_holds = v.corrected_residual_a == 0 && v.residual_b == 0;
  const auto [pa, pb] = z22_pipeline();
  v.expansion_a_equal = pa == fa;
  v.expansion_b_equal = pb == fb;
  v.corrected_expansion_a_equal = pa == ca;
  v.difference_a = pa - fa;
  return v;
}

std::optional<AssociativityWitness> find_non_associative(long bound) {
  std::vector<StarPoint> pts;
  for (long a = 0; a <= bound; ++a)
    for (long b = 0; b <= bound; ++b) pts.push_back({Rational(a), Rational(b)});
  for (const auto& x : pts)
    for (const auto& y : pts)
      for (const auto& z : pts) {
        const StarPoint l = star(star(x, y), z), r = star(x, star(y, z));
        if (!(l == r)) return AssociativityWitness{x, y, z, l, r};
      }
  return std::nullopt;
}

}  // namespace espo
