#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "espo/group.hpp"
#include "espo/point_set.hpp"

namespace espo {

// {a + a' : a, a' in A}
PointSet sumset(const PointSet& a, unsigned workers = 0);

// x({+-kP : 1 <= k <= M}) for a point P of infinite order.
std::vector<Rational> elliptic_x_set(const GroupModel& curve, const GroupElement& P, std::size_t M);

// f^-1(A) for f(x, y) = x: every rational point with x in A (both signs of y).
// PullbackError when some x has no rational point.
PointSet elliptic_pullback(const GroupModel& curve, const std::vector<Rational>& xs);

enum class SumProdConstruction { interval, geometric, elliptic };

std::string to_string(SumProdConstruction c);
SumProdConstruction parse_construction(std::string_view text);

struct SumProdOptions {
  SumProdConstruction construction = SumProdConstruction::interval;
  // N for interval / geometric, M for elliptic.
  std::size_t size = 16;
  // Elliptic construction: curve coefficients and generator.
  Rational a = 0, b = -2;
  Rational px = 3, py = 5;
  std::size_t elliptic_cap = 40;
  // Report (G2, A2) first.
  bool swap = false;
  unsigned workers = 0;
};

struct SumProdReport {
  std::string construction;
  std::string group1, group2;
  std::size_t size = 0;
  std::size_t sum1 = 0;
  std::size_t sum2 = 0;
  std::size_t max = 0;
  // log(max) / log|A| rounded to 4 places; absent when |A| = 1.
  std::optional<double> exponent;
};

SumProdReport run_sumprod(const SumProdOptions& options);

}  // namespace espo
