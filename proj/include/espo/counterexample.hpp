#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "espo/multipoly.hpp"
#include "espo/point_set.hpp"
#include "espo/rational.hpp"
#include "espo/variety.hpp"

namespace espo {

struct StarPoint {
  Rational a, b;

  friend bool operator==(const StarPoint& x, const StarPoint& y) { return x.a == y.a && x.b == y.b; }
};

// (a1, b1) * (a2, b2) = (a1 + a2 + b1^2 b2^2, b1 + b2)
StarPoint star(const StarPoint& x, const StarPoint& y);

// {0, ..., N^4 - 1} x {0, ..., N - 1} in the rational plane.
PointSet grid(unsigned N);

// Graph of * as a polynomial variety in (Q^2)^3, dimension 4.
VarietySpec star_variety();

// |{(x, y) in X_N^2 : x * y in X_N}|
CountResult grid_star_count(unsigned N, const CountOptions& options = {});

// |X_N cap ({0} x Q)|
std::uint64_t vertical_line_count(unsigned N);

struct Z22Verdict {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  // Maximum |pipeline - displayed formula| per coordinate.
  Rational residual_a;
  Rational residual_b;
  // Same for the first coordinate with the missing term restored.
  Rational corrected_residual_a;
  bool holds = false;
  bool corrected_holds = false;
  // Coefficient-set comparison of the symbolic expansions.
  bool expansion_a_equal = false;
  bool expansion_b_equal = false;
  bool corrected_expansion_a_equal = false;
  // pipeline - displayed, as a polynomial in (z11', z11'', z12', z12'', z21', z21'', x2', x2'').
  MultiPoly difference_a{8};
};

// Variables of the closed forms, in this order.
extern const char* const kZ22Variables[8];

// The displayed closed form for the first coordinate of z22.
MultiPoly z22_formula_a();
MultiPoly z22_formula_b();
// The first coordinate with the x2''^2 y2''^2 term included.
MultiPoly z22_corrected_a();
// z22 computed through y1, x1, y2 as polynomials.
std::pair<MultiPoly, MultiPoly> z22_pipeline();
// Numeric pipeline for one tuple.
StarPoint z22_solve(const StarPoint& z11, const StarPoint& z12, const StarPoint& z21, const StarPoint& x2);

// Random tuples with numerators and denominators in [1, 1000].
Z22Verdict verify_z22(std::uint64_t samples, std::uint64_t seed);

struct AssociativityWitness {
  StarPoint x, y, z;
  StarPoint left, right;  // (x*y)*z and x*(y*z)
};

// First triple (integer coordinates in [0, bound]) with (x*y)*z != x*(y*z).
std::optional<AssociativityWitness> find_non_associative(long bound = 2);

}  // namespace espo
