#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "espo/point_set.hpp"
#include "espo/rational.hpp"
#include "espo/variety.hpp"

namespace espo {

/// The line A x + B y + C = 0.
struct Line {
  Rational a, b, c;

  friend bool operator==(const Line& p, const Line& q) { return p.a == q.a && p.b == q.b && p.c == q.c; }
  friend bool operator<(const Line& p, const Line& q);
};

// Scales to coprime integers with the first nonzero coefficient positive.
// ValidationError for the zero line.
Line normalize_line(const Line& l);
Line line_through(const Rational& x1, const Rational& y1, const Rational& x2, const Rational& y2);
bool on_line(const Line& l, const Rational& x, const Rational& y);

struct IncidenceResult {
  std::uint64_t count = 0;
  // |P|^(2/3) |L|^(2/3) + |P| + |L|, advisory.
  double reference = 0;
};

// points: a PointSet in additive(2).
IncidenceResult point_line_incidences(const PointSet& points, std::span<const Line> lines);

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;
};

// Least squares of log c against log N; InsufficientDataError for fewer than
// two samples, ValidationError when N < 2 or c < 1.
FitResult fit_exponent(std::span<const std::pair<double, double>> samples);

struct BoundVerdict {
  bool passed = false;
  Integer bound_base;   // N^dim
  Rational ratio;       // observed / N^dim
  Rational constant;
};

// observed <= constant * N^dim
BoundVerdict trivial_bound_check(std::size_t dim, std::uint64_t N, std::uint64_t observed, const Rational& constant);
BoundVerdict trivial_bound_check(const VarietySpec& v, std::uint64_t N, std::uint64_t observed, const Rational& constant);

}  // namespace espo
